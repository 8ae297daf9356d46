import numpy as np

from affinefields.affinepoint import AffinePoint
from affinefields.errors import DimensionMismatch, SingularMapError
from affinefields.utils import frozenArray

class AffineMap(object):
  """An affine map f(a) = linear·a + offset between two finite-dimensional
  affine spaces, written in fixed global charts.

  The linear part is what acts on differences of points: f(a + v) = f(a) + linear·v.
  Maps compose with the `@` operator, read right to left like ordinary
  function composition::

    >>> f = AffineMap.translation([1, 0])
    >>> g = AffineMap.scaling([2, 2])
    >>> (g @ f)(AffinePoint([0, 0]))
    <2.0,0.0>

  """

  def __init__(self, linear, offset=None):
    linear = np.atleast_2d(np.asarray(linear, dtype=float))
    if linear.ndim != 2:
      raise DimensionMismatch("Invalid 'linear' shape; expected a matrix, actual=%s." % (linear.shape,))
    if offset is None:
      offset = np.zeros(linear.shape[0])
    offset = np.asarray(offset, dtype=float).reshape(-1)
    if offset.shape != (linear.shape[0],):
      raise DimensionMismatch(
        "Invalid 'offset' shape; expected=%s, actual=%s." % ((linear.shape[0],), offset.shape))
    self._linear = frozenArray(linear)
    self._offset = frozenArray(offset)

  def __repr__(self):
    return "AffineMap<%s + %s>" % (self._linear.tolist(), self._offset.tolist())

  @classmethod
  def identity(klass, dimension):
    return klass(np.eye(dimension), np.zeros(dimension))

  @classmethod
  def translation(klass, vector):
    vector = np.asarray(vector, dtype=float)
    return klass(np.eye(len(vector)), vector)

  @classmethod
  def scaling(klass, factors):
    factors = np.asarray(factors, dtype=float)
    return klass(np.diag(factors), np.zeros(len(factors)))

  @classmethod
  def constant(klass, point, sourceDimension):
    """The map sending every point of a `sourceDimension`-space to `point`."""
    if isinstance(point, AffinePoint):
      point = point.coords
    point = np.asarray(point, dtype=float)
    return klass(np.zeros((len(point), sourceDimension)), point)

  @property
  def linear(self):
    """Returns the linear part f_V as a read-only matrix."""
    return self._linear

  linearPart = linear

  @property
  def offset(self):
    return self._offset

  @property
  def sourceDimension(self):
    return self._linear.shape[1]

  @property
  def targetDimension(self):
    return self._linear.shape[0]

  def apply(self, point):
    """Returns f(point)."""
    if not isinstance(point, AffinePoint):
      point = AffinePoint(point)
    if point.dimension != self.sourceDimension:
      raise DimensionMismatch(
        "Invalid point dimension; expected=%d, actual=%d." % (self.sourceDimension, point.dimension))
    return AffinePoint(self._linear @ point.coords + self._offset)

  __call__ = apply

  def applyLinear(self, vector):
    """Returns f_V(vector), the action on differences of points."""
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (self.sourceDimension,):
      raise DimensionMismatch(
        "Invalid vector shape; expected=%s, actual=%s." % ((self.sourceDimension,), vector.shape))
    return self._linear @ vector

  def compose(self, inner):
    """Returns self ∘ inner; its linear part is the product of linear parts."""
    if inner.targetDimension != self.sourceDimension:
      raise DimensionMismatch(
        "Cannot compose; inner map lands in dimension %d, outer map expects %d."
        % (inner.targetDimension, self.sourceDimension))
    return AffineMap(self._linear @ inner._linear, self._linear @ inner._offset + self._offset)

  def __matmul__(self, inner): # Composition. Same abuse as Point @ Point.
    return self.compose(inner)

  def estimateLinearPart(self, base, step=1.0):
    """Recovers the linear part as f(base + step·e_i) - f(base), column by
    column. The answer does not depend on `base`."""
    if not isinstance(base, AffinePoint):
      base = AffinePoint(base)
    image = self.apply(base)
    columns = []
    for i in range(self.sourceDimension):
      e = np.zeros(self.sourceDimension)
      e[i] = step
      columns.append((self.apply(base + e) - image) / step)
    return np.column_stack(columns) if columns else np.zeros((self.targetDimension, 0))

  @property
  def isInvertible(self):
    if self.sourceDimension != self.targetDimension:
      return False
    if self.sourceDimension == 0:
      return True
    return np.linalg.cond(self._linear) < 1.0 / np.finfo(float).eps

  def inverse(self):
    """Returns f⁻¹; raises `SingularMapError` if the linear part is singular."""
    if not self.isInvertible:
      raise SingularMapError("Linear part is singular or not square: shape=%s." % (self._linear.shape,))
    inv = np.linalg.inv(self._linear) if self.sourceDimension else np.zeros((0, 0))
    return AffineMap(inv, -inv @ self._offset)

  def dual(self):
    """Returns f†: φ ↦ φ∘f⁻¹, a linear map on vector duals."""
    from affinefields.dualelement import DualMap
    return DualMap.ofAffineMap(self)

  def inCharts(self, sourceOrigin, targetOrigin):
    """Returns this map written in translated charts: points a' = a - sourceOrigin
    on the source side and b' = b - targetOrigin on the target side."""
    sourceOrigin = np.asarray(sourceOrigin, dtype=float)
    targetOrigin = np.asarray(targetOrigin, dtype=float)
    return AffineMap(self._linear, self._offset + self._linear @ sourceOrigin - targetOrigin)

  def isclose(self, other, tol=1e-12):
    if self._linear.shape != other._linear.shape:
      return False
    scale = max(1.0, float(np.max(np.abs(self._linear), initial=0.0)), float(np.max(np.abs(self._offset), initial=0.0)))
    return bool(np.all(np.abs(self._linear - other._linear) <= tol * scale)
                and np.all(np.abs(self._offset - other._offset) <= tol * scale))
