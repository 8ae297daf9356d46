import numpy as np

from affinefields.affinepoint import AffinePoint
from affinefields.errors import DimensionMismatch
from affinefields.utils import frozenArray

class DualElement(object):
  """An element φ(a) = c + w·a of the vector dual A† of an affine space,
  i.e. an affine map A → ℝ. The pair (c, w) is its coefficient vector; dim A† =
  dim V + 1. The constant map 𝟙 has c = 1, w = 0.
  """

  def __init__(self, c, w):
    self._c = float(c)
    self._w = frozenArray(np.atleast_1d(np.asarray(w, dtype=float)).reshape(-1))

  def __repr__(self):
    return "D<%r|%s>" % (self._c, ",".join(repr(float(x)) for x in self._w))

  @classmethod
  def one(klass, dimension):
    """Returns the constant map 𝟙 on a `dimension`-dimensional space."""
    return klass(1.0, np.zeros(dimension))

  @classmethod
  def coordinate(klass, dimension, index):
    """Returns the coordinate functional a ↦ a[index] (the basis covector e*_index)."""
    w = np.zeros(dimension)
    w[index] = 1.0
    return klass(0.0, w)

  @classmethod
  def fromCoefficients(klass, coefficients):
    coefficients = np.asarray(coefficients, dtype=float)
    return klass(coefficients[0], coefficients[1:])

  @property
  def c(self):
    return self._c

  @property
  def w(self):
    """Returns the linear part φ_{V*} as a read-only covector."""
    return self._w

  @property
  def dimension(self):
    return len(self._w)

  @property
  def coefficients(self):
    """Returns (c, w_1, ..., w_d)."""
    return np.concatenate(([self._c], self._w))

  def __call__(self, point):
    if not isinstance(point, AffinePoint):
      point = AffinePoint(point)
    if point.dimension != self.dimension:
      raise DimensionMismatch(
        "Invalid point dimension; expected=%d, actual=%d." % (self.dimension, point.dimension))
    return self._c + float(self._w @ point.coords)

  def _checkDimension(self, other):
    if other.dimension != self.dimension:
      raise DimensionMismatch(
        "Invalid dual element dimension; expected=%d, actual=%d." % (self.dimension, other.dimension))

  def __add__(self, other):
    self._checkDimension(other)
    return DualElement(self._c + other._c, self._w + other._w)

  def __sub__(self, other):
    self._checkDimension(other)
    return DualElement(self._c - other._c, self._w - other._w)

  def __mul__(self, scalar):
    return DualElement(self._c * scalar, self._w * scalar)

  __rmul__ = __mul__

  def __neg__(self):
    return self * -1.0

  def isclose(self, other, tol=1e-12):
    if other.dimension != self.dimension:
      return False
    a, b = self.coefficients, other.coefficients
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return bool(np.all(np.abs(a - b) <= tol * scale))

  @property
  def isConstant(self):
    return not np.any(self._w)

  def inChart(self, origin):
    """Returns φ written in the chart with origin `origin`: φ'(a') = φ(a' + origin)."""
    origin = np.asarray(origin, dtype=float)
    return DualElement(self._c + float(self._w @ origin), self._w)


class DualMap(object):
  """A linear map between vector duals, stored as a matrix acting on
  coefficient vectors (c, w). `DualMap.ofAffineMap(f)` is f†(φ) = φ∘f⁻¹;
  dual maps compose with `@`."""

  def __init__(self, matrix):
    self._matrix = frozenArray(np.atleast_2d(np.asarray(matrix, dtype=float)))

  @classmethod
  def identity(klass, dimension):
    return klass(np.eye(dimension + 1))

  @classmethod
  def ofAffineMap(klass, f):
    inverse = f.inverse()
    d = f.sourceDimension
    matrix = np.zeros((d + 1, d + 1))
    matrix[0, 0] = 1.0
    # φ(f⁻¹(b)) = c + w·(A⁻¹b - A⁻¹o)
    matrix[0, 1:] = inverse.offset
    matrix[1:, 1:] = inverse.linear.T
    return klass(matrix)

  @property
  def matrix(self):
    return self._matrix

  def __call__(self, phi):
    if phi.dimension + 1 != self._matrix.shape[1]:
      raise DimensionMismatch(
        "Invalid dual element dimension; expected=%d, actual=%d." % (self._matrix.shape[1] - 1, phi.dimension))
    return DualElement.fromCoefficients(self._matrix @ phi.coefficients)

  def __matmul__(self, other):
    if other._matrix.shape[0] != self._matrix.shape[1]:
      raise DimensionMismatch("Cannot compose dual maps of shapes %s and %s." % (self._matrix.shape, other._matrix.shape))
    return DualMap(self._matrix @ other._matrix)

  def isclose(self, other, tol=1e-12):
    if self._matrix.shape != other._matrix.shape:
      return False
    scale = max(1.0, float(np.max(np.abs(self._matrix))), float(np.max(np.abs(other._matrix))))
    return bool(np.all(np.abs(self._matrix - other._matrix) <= tol * scale))


def vectorDualBasis(dimension):
  """Returns the basis (𝟙, e*_1, ..., e*_d) of A† for a d-dimensional space."""
  if dimension < 0:
    raise DimensionMismatch("Invalid dimension; expected >= 0, actual=%d." % dimension)
  return [DualElement.one(dimension)] + [DualElement.coordinate(dimension, b) for b in range(dimension)]

def coefficientMatrix(elements):
  """Stacks the coefficient vectors of dual elements as rows."""
  return np.array([e.coefficients for e in elements], dtype=float).reshape(len(elements), -1)

def decompose(phi, basis=None):
  """Returns the coordinates of φ over `basis` (default: `vectorDualBasis`)."""
  if basis is None:
    basis = vectorDualBasis(phi.dimension)
  matrix = coefficientMatrix(basis).T
  coordinates, *_ = np.linalg.lstsq(matrix, phi.coefficients, rcond=None)
  return coordinates
