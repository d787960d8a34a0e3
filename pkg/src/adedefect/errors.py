"""Exception hierarchy.

Every error carries the module and operation that raised it so the command
line can report where a pipeline stopped.
"""


class AdeDefectError(Exception):
    module = "adedefect"

    def __init__(self, message, operation=None):
        super().__init__(message)
        self.operation = operation

    def where(self):
        if self.operation:
            return f"{self.module}.{self.operation}"
        return self.module


# core-algebra
class AlgebraError(AdeDefectError):
    module = "core-algebra"


class VariableMismatch(AlgebraError):
    pass


class TowerMismatch(AlgebraError):
    pass


class NotDivisible(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    pass


class IrreducibleDegreeTooHigh(AlgebraError):
    pass


class TowerHeightExceeded(AlgebraError):
    pass


class FactorizationFailed(AlgebraError):
    pass


class ParseError(AlgebraError):
    """Polynomial grammar or job-file syntax error with a 1-based position."""

    def __init__(self, message, line=1, column=1, operation="parse"):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})", operation)


# resolution-engine
class ResolutionError(AdeDefectError):
    module = "resolution-engine"


class NotDoublePoint(ResolutionError):
    pass


class PositiveDimensionalSingularLocus(ResolutionError):
    pass


class EliminationNotTriangular(ResolutionError):
    pass


class DepthExceeded(ResolutionError):
    pass


# ambient-models
class ModelError(AdeDefectError):
    module = "ambient-models"


class PointNotOnY(ModelError):
    pass


class PointNotSingular(ModelError):
    pass


class PointOnSingularAmbientLocus(ModelError):
    pass


class PointOutsideTorus(ModelError):
    pass


class UnboundedPolytope(ModelError):
    pass


class NonSimplicialFan(ModelError):
    pass


class InvalidModel(ModelError):
    pass


# hodge-assembly
class HypothesisViolated(AdeDefectError):
    module = "hodge-assembly"


# cli-io
class SchemaError(AdeDefectError):
    module = "cli-io"

    def __init__(self, message, field=None, operation="parse_job"):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message, operation)
