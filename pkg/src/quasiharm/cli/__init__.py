"""Command-line surface and verification suites."""
from .report import CheckRecord, SuiteReport, render
from .suites import SUITES, SuiteConfig, run_suite

__all__ = ["CheckRecord", "SuiteReport", "SuiteConfig", "SUITES", "render", "run_suite", "main"]


def main(argv=None) -> int:
    from .main import main as _main
    return _main(argv)
