class AffineFieldsError(Exception):
  """Base class for every error raised by the affinefields package."""

class DimensionMismatch(AffineFieldsError):
  """Raised when points, maps or covectors of incompatible dimension meet."""

class SingularMapError(AffineFieldsError):
  """Raised when an affine map with singular linear part has to be inverted."""

class LatticeError(AffineFieldsError):
  """Raised for invalid lattice parameters or out-of-range site indices."""

class LatticeMismatch(AffineFieldsError):
  """Raised when objects living on different lattices are combined."""

class SupportError(AffineFieldsError):
  """Raised when a section or observable violates a support requirement."""

class ResidualError(AffineFieldsError):
  """Raised when a computed solution fails its residual check."""

class WindowError(AffineFieldsError):
  """Raised when a time window cannot host the requested construction."""

class StatisticsMismatch(AffineFieldsError):
  """Raised when bosonic and fermionic objects are mixed."""

class DegreeError(AffineFieldsError):
  """Raised when an algebra operation would exceed the degree cap."""

class GramError(AffineFieldsError):
  """Raised when a Gram matrix has the wrong symmetry or is not preserved."""

class BasisError(AffineFieldsError):
  """Raised when a vector cannot be expressed in a phase-space basis."""

class PositivityError(AffineFieldsError):
  """Raised when a two-point function does not define a positive state."""

class RangeError(AffineFieldsError):
  """Raised when a combinatorial size argument is out of range."""

class ConfigError(AffineFieldsError):
  """Raised when a run configuration fails validation."""
