"""Exception types shared across the package."""


class CtxsdError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CtxsdError, ValueError):
    """A numeric argument lies outside its mathematical domain."""


class ContractError(CtxsdError, TypeError):
    """Arguments are individually valid but jointly inconsistent."""


class UndefinedConfidenceError(CtxsdError):
    """Confidence requested for an outcome that never fires."""


class InfeasibleWeightsError(CtxsdError):
    """Requested weights leave the inconclusive element indefinite."""


class UsdImpossibleError(CtxsdError):
    """Unambiguous discrimination impossible: states linearly dependent."""


class DegenerateEnsembleError(CtxsdError):
    """Average state is singular; maximum-confidence directions undefined."""


class DivergenceError(CtxsdError):
    """A closed-form expression diverges at the requested parameter."""
