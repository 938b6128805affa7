"""Exception hierarchy shared by all trisurf modules."""


class TrisurfError(Exception):
    """Base class for all library errors."""


class InputError(TrisurfError):
    """Malformed or inconsistent user input (CLI exit code 2)."""


class MalformedLine(InputError):
    pass


class DegenerateEdge(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


class SameVertex(InputError):
    pass


class EmptyComplex(InputError):
    pass


class NotAClosedSurfaceError(TrisurfError):
    pass


class InconsistentChi(TrisurfError):
    """Orientable surface with odd Euler characteristic: internal corruption."""


class TooShort(InputError):
    pass


class RangeViolation(InputError):
    pass


class NotATopCycle(TrisurfError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NotThreePartite(InputError):
    pass


class DisjointnessViolation(InputError):
    pass


class SphereMissingEdge(InputError):
    pass


class NotASphere(InputError):
    pass


class TooLargeForExact(InputError):
    pass


class NotNeighboring(InputError):
    pass


class ColoringIncomplete(InputError):
    pass


class OverflowDetected(TrisurfError):
    """Exact integer result exceeds the configured width for a report field."""


class TooLarge(InputError):
    pass


class InvalidWitness(InputError):
    pass


class NotRainbow(InputError):
    pass


class MissingInterpolant(TrisurfError):
    """Direction data on the edge-link graph is inconsistent with the hypergraph."""


class CapExceeded(InputError):
    pass


class EmptyResult(TrisurfError):
    pass


class StageFailure(TrisurfError):
    """A pipeline stage failed; carries the stage id and diagnostics."""

    def __init__(self, stage: str, diagnostics: str = ""):
        super().__init__(f"stage {stage} failed: {diagnostics}")
        self.stage = stage
        self.diagnostics = diagnostics
