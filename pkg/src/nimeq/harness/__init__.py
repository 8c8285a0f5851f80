"""Standalone optimizer protocol, case-study workflow and command line."""

from .campaign import (
    StudyResult,
    emit_metric_csv,
    parameter_summary,
    run_case_study,
    run_control_campaign,
    write_parameter_csv,
    write_report_csv,
)
from .presets import CASE_STUDIES, SCALES, CaseStudyConfig, load_study_config, make_study
from .protocol import (
    CliInvocation,
    FormatError,
    UsageError,
    format_switches,
    parse_cli,
    read_feature_vector,
    standalone_optimizer_main,
    write_feature_vector,
)
