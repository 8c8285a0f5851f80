"""Entry point for ``python -m nimeq.standalone ALG -a.. -f<dir>``."""

import sys

from .harness.protocol import main

if __name__ == "__main__":
    sys.exit(main())
