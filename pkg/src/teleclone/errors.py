"""Exception types raised by the simulator."""


class TelecloneError(Exception):
    """Base class for all simulator errors."""


class LabelCollisionError(TelecloneError, ValueError):
    """Two registers that should be disjoint share a qubit label."""


class UnknownLabelError(TelecloneError, IndexError):
    """A qubit label is not present in the state's layout."""


class ShapeMismatchError(TelecloneError, ValueError):
    """Operands have incompatible dimensions or layouts."""


class NotHermitianError(TelecloneError, ValueError):
    """A matrix expected to be Hermitian is not."""


class NotNormalizedError(TelecloneError, ValueError):
    """An input state or amplitude pair is not normalized."""


class ZeroProbabilityError(TelecloneError):
    """A projective measurement branch has (numerically) zero weight."""


class SubspaceViolationError(TelecloneError, ValueError):
    """A state lies outside the two-dimensional clone code subspace."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"state lies outside span{{phi0, phi1}}: residual {residual:.3e}")
