"""opstar: graded sequence-space norms, truncated operator algebras, and
dominating-norm certificates at finite truncation."""

__version__ = "0.1.0"

REPORT_SCHEMA = "opstar-report/1"
