"""OFDM link simulator with adaptive pilot-pattern channel estimation."""

from ._adapilot import (  # noqa: F401
    BoundarySet,
    ChannelProfile,
    LinkConfig,
    PatternSpec,
    ResultRow,
    RunMetrics,
    StudyConfig,
    ber_error,
    cross_correlation,
    emit_results,
    higher_boundary,
    lower_boundary,
    max_pilot_spacing,
    run_link,
    select_pattern,
    study_adaptive_vs_fixed,
    study_boundaries,
    study_models,
    __version__,
)

__all__ = [
    "BoundarySet",
    "ChannelProfile",
    "LinkConfig",
    "PatternSpec",
    "ResultRow",
    "RunMetrics",
    "StudyConfig",
    "ber_error",
    "cross_correlation",
    "emit_results",
    "higher_boundary",
    "lower_boundary",
    "max_pilot_spacing",
    "run_link",
    "select_pattern",
    "study_adaptive_vs_fixed",
    "study_boundaries",
    "study_models",
    "__version__",
]
