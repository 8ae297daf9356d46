import numpy as np

from affinefields.errors import LatticeError, SupportError
from affinefields.utils import allclose

class Section(object):
  """A real scalar section over a lattice spacetime, i.e. an array of values
  indexed by (t, x), in the global chart with reference section zero.

  Sections are immutable; arithmetic returns new sections::

    >>> lat = LatticeSpacetime(8, 16)
    >>> h = Section.delta(lat, (4, 2)) * 3.0
    >>> h.support
    frozenset({Site(t=4, x=2)})

  """

  def __init__(self, lattice, values=None):
    self.lattice = lattice
    if values is None:
      values = np.zeros(lattice.shape)
    values = np.array(values, dtype=float)
    if values.shape != lattice.shape:
      raise LatticeError("Invalid section shape; expected=%s, actual=%s." % (lattice.shape, values.shape))
    values.flags.writeable = False
    self._values = values

  def __repr__(self):
    return "Section<%d sites on %r>" % (len(self.support), self.lattice)

  @classmethod
  def zero(klass, lattice):
    return klass(lattice)

  @classmethod
  def delta(klass, lattice, site, value=1.0):
    """Returns the section equal to `value` at `site` and zero elsewhere."""
    site = lattice.checkSite(site)
    values = np.zeros(lattice.shape)
    values[site.t, site.x] = value
    return klass(lattice, values)

  @classmethod
  def fromTriples(klass, lattice, triples):
    """Builds a section from (t, x, value) triples; repeated sites add up."""
    values = np.zeros(lattice.shape)
    for t, x, v in triples:
      site = lattice.checkSite((t, x))
      values[site.t, site.x] += float(v)
    return klass(lattice, values)

  @classmethod
  def random(klass, lattice, rng, slices=None, sites=None):
    """Returns a section with standard normal values on `slices` (default:
    the compact-support slices). With `sites` given, only that many randomly
    chosen sites of those slices are filled."""
    if slices is None:
      slices = lattice.compactSlices
    slices = list(slices)
    values = np.zeros(lattice.shape)
    if sites is None:
      values[slices] = rng.standard_normal((len(slices), lattice.nX))
    else:
      for _ in range(sites):
        t = slices[rng.integers(len(slices))]
        x = rng.integers(lattice.nX)
        values[t, x] = rng.standard_normal()
    return klass(lattice, values)

  @property
  def values(self):
    """Returns the read-only (nT, nX) value array."""
    return self._values

  def __getitem__(self, site):
    return float(self._values[site[0], site[1]])

  # Support

  @property
  def supportMask(self):
    return self._values != 0.0

  @property
  def support(self):
    return self.lattice.sitesOf(self.supportMask)

  @property
  def isZero(self):
    return not np.any(self._values)

  @property
  def slices(self):
    return [int(t) for t in np.nonzero(self.supportMask.any(axis=1))[0]]

  @property
  def tMin(self):
    s = self.slices
    return s[0] if s else None

  @property
  def tMax(self):
    s = self.slices
    return s[-1] if s else None

  def supportedIn(self, tA, tB):
    """Returns True if every nonzero value lies on a slice in [tA, tB]."""
    s = self.slices
    return not s or (s[0] >= tA and s[-1] <= tB)

  @property
  def isCompactlySupported(self):
    """Support within the interior margin [2, nT-3]."""
    return self.supportedIn(2, self.lattice.nT - 3)

  @property
  def vanishesOnBoundary(self):
    """Support away from the outer slices 0 and nT-1."""
    return self.supportedIn(1, self.lattice.nT - 2)

  def checkCompactSupport(self, name="section"):
    if not self.isCompactlySupported:
      raise SupportError(
        "Invalid %s support; expected slices in [2, %d], actual=[%d, %d]."
        % (name, self.lattice.nT - 3, self.tMin, self.tMax))
    return self

  def checkInterior(self, name="section"):
    if not self.vanishesOnBoundary:
      raise SupportError(
        "Invalid %s support; expected slices in [1, %d], actual=[%d, %d]."
        % (name, self.lattice.nT - 2, self.tMin, self.tMax))
    return self

  # Arithmetic

  def _other(self, other):
    if isinstance(other, Section):
      self.lattice.checkSame(other.lattice)
      return other._values
    return other

  def __add__(self, other):
    return Section(self.lattice, self._values + self._other(other))

  __radd__ = __add__

  def __sub__(self, other):
    return Section(self.lattice, self._values - self._other(other))

  def __rsub__(self, other):
    return Section(self.lattice, self._other(other) - self._values)

  def __mul__(self, other):
    """Scalar multiple, or pointwise product with another section."""
    return Section(self.lattice, self._values * self._other(other))

  __rmul__ = __mul__

  def __truediv__(self, scalar):
    return Section(self.lattice, self._values / scalar)

  def __neg__(self):
    return Section(self.lattice, -self._values)

  def __eq__(self, other):
    return isinstance(other, Section) and other.lattice == self.lattice and np.array_equal(self._values, other._values)

  __hash__ = None

  # Integration

  def integral(self):
    """Returns Σ vol·σ."""
    return self.lattice.vol * float(np.sum(self._values))

  def pairing(self, other):
    """Returns ⟨σ, σ'⟩ = Σ vol·σσ'."""
    self.lattice.checkSame(other.lattice)
    return self.lattice.vol * float(np.sum(self._values * other._values))

  def norm(self):
    """Returns the max norm."""
    return float(np.max(np.abs(self._values))) if self._values.size else 0.0

  # Reshaping

  def restrictedTo(self, tA, tB):
    """Returns the section with values outside slices [tA, tB] set to zero."""
    values = np.zeros(self.lattice.shape)
    values[tA:tB + 1] = self._values[tA:tB + 1]
    return Section(self.lattice, values)

  def timeReflected(self):
    """Returns the section t ↦ σ(nT-1-t)."""
    return Section(self.lattice, self._values[::-1])

  def slice(self, t):
    return self._values[t]

  def isclose(self, other, tol=1e-12):
    self.lattice.checkSame(other.lattice)
    return allclose(self._values, other._values, tol)

  def triples(self):
    """Yields (t, x, value) for each nonzero site, in (t, x) order."""
    for site in sorted(self.support):
      yield (site.t, site.x, float(self._values[site.t, site.x]))

