"""
Command-line orchestration: run configuration, the acceptance commands and
report emission.
"""

from src.cli.commands import COMMAND_TABLE, cmd_char2, cmd_coformality, cmd_dioperad
from src.cli.reports import CheckResult, Report, RunConfig, write_report

__all__ = [
    "RunConfig",
    "CheckResult",
    "Report",
    "write_report",
    "cmd_coformality",
    "cmd_char2",
    "cmd_dioperad",
    "COMMAND_TABLE",
]
