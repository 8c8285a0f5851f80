"""
nimeq: behavioral equivalence testing for nature-inspired metaheuristics.

A control optimizer and a controlled optimizer are run from identical seeds,
their behavior is condensed into feature vectors, and a differential
evolution loop tunes the controlled optimizer's hyper-parameters to make its
feature vector as cosine-similar as possible to the control's.
"""

__version__ = "0.1.0"
