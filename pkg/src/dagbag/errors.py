"""Exception types shared across the package."""


class DagbagError(Exception):
    """Base class for all errors raised by this package."""


class CycleError(DagbagError):
    """An edge mutation would create a directed cycle."""


class DuplicateEdge(DagbagError):
    """Attempt to add an edge that is already present (in either direction)."""


class MissingEdge(DagbagError):
    """Attempt to delete or reverse an edge that is not present."""


class DimensionMismatch(DagbagError):
    """Two objects that must share a node count do not."""


class SingularDesign(DagbagError):
    """The parent Gram matrix is numerically singular (collinear parents)."""


class InfeasibleConstraints(DagbagError):
    """Whitelist is cyclic or intersects the blacklist."""


class DegenerateResample(DagbagError):
    """A bootstrap resample kept producing constant columns."""


class TooManyEdges(DagbagError):
    """Requested edge count exceeds what an acyclic graph can hold."""


class DataFormatError(DagbagError):
    """A data or edge-list file failed to parse; message names file, row, column."""


class EnsembleFitError(DagbagError):
    """A bootstrap fit failed; carries the resample index."""

    def __init__(self, resample_index: int, message: str):
        self.resample_index = resample_index
        super().__init__(f"fit on resample {resample_index} failed: {message}")
