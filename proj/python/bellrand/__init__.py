"""Randomness assessment of two-station Bell-test outcome data."""

from ._core import (
    Error,
    ReportRow,
    RunDataset,
    __version__,
    analyze_bits,
    analyze_run,
    chsh,
    lz76_phrase_count,
    match_coincidences,
    normalized_complexity,
    parse_coincidences,
    read_coincidences,
    render,
    run_battery,
    run_test,
    synth_generate,
)

__all__ = [
    "Error",
    "ReportRow",
    "RunDataset",
    "__version__",
    "analyze_bits",
    "analyze_run",
    "chsh",
    "lz76_phrase_count",
    "match_coincidences",
    "normalized_complexity",
    "parse_coincidences",
    "read_coincidences",
    "render",
    "run_battery",
    "run_test",
    "synth_generate",
]
