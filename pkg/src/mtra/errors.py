"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the command line
front end can map failures to distinct exit statuses.
"""


class MTRAError(Exception):
    code = "error"


class MalformedPreferenceError(MTRAError):
    code = "malformed-preference"


class IncompleteRankingError(MalformedPreferenceError):
    code = "incomplete-ranking"


class UnknownItemError(MTRAError):
    code = "unknown-item"


class NonSquareError(MTRAError):
    code = "non-square"


class DuplicateItemError(MTRAError):
    code = "duplicate-item"


class DomainError(MTRAError):
    code = "domain"


class ShapeError(MTRAError):
    code = "shape"


class PreconditionError(MTRAError):
    code = "precondition"


class StarvationError(MTRAError):
    code = "starvation"


class NotRepresentableError(MTRAError):
    code = "not-representable"


class CapacityError(MTRAError):
    code = "capacity"


class ConsistencyError(MTRAError):
    code = "internal-consistency"
