"""Exception hierarchy shared across the package."""


class GeometryError(ValueError):
    """A numerical precondition of a geometric operation is violated."""


class SingularMatrixError(GeometryError):
    """A linear system has no unique solution."""


class NotContractibleError(GeometryError):
    """A curve configuration fails the negative-definiteness criterion."""


class LerayHypothesisError(GeometryError):
    """The vanishing pipeline's relative-nefness hypothesis fails."""


class ScenarioError(ValueError):
    """A scenario file is malformed or references unknown names."""
