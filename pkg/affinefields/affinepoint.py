import re
import numpy as np

from affinefields.errors import DimensionMismatch
from affinefields.utils import frozenArray, TOLERANCE

class AffinePoint(object):
  """A point of a finite-dimensional affine space, stored in a fixed global chart.

  Points are not vectors. The difference of two points is a vector (a numpy
  array) and a vector acts on a point by translation::

    >>> a = AffinePoint([1, 2])
    >>> b = AffinePoint([4, 6])
    >>> b - a
    array([3., 4.])
    >>> a + np.array([3., 4.])
    <4.0,6.0>

  Points are immutable.
  """

  def __init__(self, coords):
    self._coords = frozenArray(np.atleast_1d(np.asarray(coords, dtype=float)))
    if self._coords.ndim != 1:
      raise DimensionMismatch("Invalid 'coords' shape; expected a flat sequence, actual=%s." % (self._coords.shape,))

  def __repr__(self):
    return "<%s>" % ",".join(repr(float(c)) for c in self._coords)

  @classmethod
  def fromRepr(klass, text):
    m = re.match(r"^<([^>]*)>$", text.strip())
    if not m:
      raise ValueError("Not a point representation: %r" % text)
    body = m.group(1)
    return klass([float(c) for c in body.split(",")] if body else [])

  @classmethod
  def origin(klass, dimension):
    return klass(np.zeros(dimension))

  @property
  def coords(self):
    """Returns the (read-only) chart coordinates."""
    return self._coords

  @property
  def dimension(self):
    return len(self._coords)

  def _checkVector(self, vector):
    vector = np.asarray(vector, dtype=float)
    if vector.shape != self._coords.shape:
      raise DimensionMismatch(
        "Invalid vector shape; expected=%s, actual=%s." % (self._coords.shape, vector.shape))
    return vector

  def __add__(self, vector):
    """Translate the point by a vector (the affine group action)."""
    if isinstance(vector, AffinePoint):
      raise TypeError("Points cannot be added; add a vector instead.")
    return AffinePoint(self._coords + self._checkVector(vector))

  def __sub__(self, other):
    """Point minus point is a vector; point minus vector is a point."""
    if isinstance(other, AffinePoint):
      if other.dimension != self.dimension:
        raise DimensionMismatch(
          "Invalid point dimension; expected=%d, actual=%d." % (self.dimension, other.dimension))
      return self._coords - other._coords
    return AffinePoint(self._coords - self._checkVector(other))

  def __eq__(self, other):
    if not isinstance(other, AffinePoint) or other.dimension != self.dimension:
      return False
    scale = max(1.0, float(np.max(np.abs(self._coords), initial=0.0)), float(np.max(np.abs(other._coords), initial=0.0)))
    return bool(np.all(np.abs(self._coords - other._coords) <= TOLERANCE * scale))

  def __hash__(self):
    return hash(self._coords.tobytes())

  def translated(self, vector):
    """Returns a new point translated by `vector`."""
    return self + vector

  def inChart(self, origin):
    """Returns this point expressed in the chart whose origin sits at `origin`
    (given in the current chart)."""
    return AffinePoint(self._coords - np.asarray(origin, dtype=float))

  def lerp(self, other, t):
    """Interpolate between two points, at time t (an affine combination)."""
    return self + (other - self) * t
