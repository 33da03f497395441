from enum import Enum, IntEnum


class ContextMode(str, Enum):
    SPLIT = "split"
    FIELD = "field"


class OrderAmbient(str, Enum):
    GROUP_ALGEBRA = "kg"
    HOPF_LAMBDA = "hlambda"


class TransferDirection(str, Enum):
    KG_TO_HLAMBDA = "kg-to-hlambda"
    HLAMBDA_TO_KG = "hlambda-to-kg"


class TheoremVerdict(str, Enum):
    BOTH_FREE = "both-free"
    NEITHER_FOUND = "neither-found-within-box"
    CONTRADICTION = "contradiction"


class CommandName(str, Enum):
    ENUMERATE = "enumerate"
    NBG = "nbg"
    THEOREM = "theorem"
    HOPF_ORDER = "hopf-order"


class ReportFormat(str, Enum):
    JSON = "json"
    MARKDOWN = "markdown"


class ExitCode(IntEnum):
    SUCCESS = 0
    FIXTURE_INVALID = 2
    BUDGET_EXCEEDED = 3
    CONTRADICTION = 4
