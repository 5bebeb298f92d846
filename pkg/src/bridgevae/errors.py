"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Array dimensions disagree with what an operation requires.

    ``dim`` names the offending dimension so callers can report precisely
    which axis failed.
    """

    def __init__(self, message: str, dim: str | None = None):
        super().__init__(message if dim is None else f"{message} (dimension: {dim})")
        self.dim = dim


class UninitializedStatsError(RuntimeError):
    """Inference-mode batch norm used before any moving statistics exist."""


class CheckpointError(RuntimeError):
    """Base class for checkpoint container problems."""


class CheckpointMagicError(CheckpointError):
    """File does not start with the checkpoint magic bytes."""


class CheckpointVersionError(CheckpointError):
    """Checkpoint format version is not supported."""


class CheckpointTruncatedError(CheckpointError):
    """Checkpoint file ends before the declared payload."""


class CheckpointShapeError(CheckpointError):
    """Stored array shapes disagree with the embedded profile."""
