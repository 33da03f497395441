from .enums import (
    CommandName, ContextMode, ExitCode, OrderAmbient, ReportFormat,
    TheoremVerdict, TransferDirection,
)

__all__ = [
    "CommandName", "ContextMode", "ExitCode", "OrderAmbient", "ReportFormat",
    "TheoremVerdict", "TransferDirection",
]
