import numpy as np

from affinefields.errors import SupportError
from affinefields.section import Section
from affinefields.utils import scaleOf, TOLERANCE

class DualObservable(object):
  """A compactly supported section of the vector dual bundle: at each site an
  affine functional φ(s)(t,x) = c(t,x) + lin(t,x)·s(t,x).

  `c` is the coefficient of the constant map 𝟙 and `lin` is the linear part
  φ_V. Observables act on configurations by integration::

    φ(s) = Σ vol·(c + lin·s)

  """

  def __init__(self, lattice, c=None, lin=None):
    self.lattice = lattice
    self.c = c if isinstance(c, Section) else Section(lattice, c)
    self.lin = lin if isinstance(lin, Section) else Section(lattice, lin)
    lattice.checkSame(self.c.lattice)
    lattice.checkSame(self.lin.lattice)

  def __repr__(self):
    return "DualObservable<c on %s, lin on %s>" % (self.c.slices, self.lin.slices)

  @classmethod
  def zero(klass, lattice):
    return klass(lattice)

  @classmethod
  def one(klass, lattice, c):
    """Returns the scalar observable c·𝟙 (no linear part)."""
    return klass(lattice, c=c)

  @classmethod
  def linear(klass, lattice, lin):
    return klass(lattice, lin=lin)

  @classmethod
  def delta(klass, lattice, site, value=1.0):
    """Returns the pure linear observable s ↦ vol·value·s(site)."""
    return klass(lattice, lin=Section.delta(lattice, site, value))

  @classmethod
  def random(klass, lattice, rng, slices=None, sites=None):
    return klass(lattice,
                 c=Section.random(lattice, rng, slices, sites),
                 lin=Section.random(lattice, rng, slices, sites))

  def density(self, s):
    """Returns the pointwise values c + lin·s as a section."""
    return self.c + self.lin * s

  def __call__(self, s):
    """Returns Σ vol·φ(s)."""
    if not isinstance(s, Section):
      s = Section(self.lattice, s)
    return self.density(s).integral()

  def integral(self):
    """Returns Σ vol·c, the value on the reference section zero."""
    return self.c.integral()

  def __add__(self, other):
    return DualObservable(self.lattice, self.c + other.c, self.lin + other.lin)

  def __sub__(self, other):
    return DualObservable(self.lattice, self.c - other.c, self.lin - other.lin)

  def __mul__(self, scalar):
    return DualObservable(self.lattice, self.c * scalar, self.lin * scalar)

  __rmul__ = __mul__

  def __neg__(self):
    return self * -1.0

  @property
  def supportMask(self):
    return self.c.supportMask | self.lin.supportMask

  @property
  def support(self):
    return self.lattice.sitesOf(self.supportMask)

  @property
  def slices(self):
    return [int(t) for t in np.nonzero(self.supportMask.any(axis=1))[0]]

  def supportedIn(self, tA, tB):
    return self.c.supportedIn(tA, tB) and self.lin.supportedIn(tA, tB)

  @property
  def isAdmissible(self):
    """Admissible observables vanish on the outer slices 0 and nT-1."""
    return self.c.vanishesOnBoundary and self.lin.vanishesOnBoundary

  def checkAdmissible(self):
    if not self.isAdmissible:
      raise SupportError(
        "Invalid observable support; expected slices in [1, %d], actual=%s."
        % (self.lattice.nT - 2, self.slices))
    return self

  @property
  def isTrivial(self):
    """True for elements of Triv: no linear part and Σ vol·c = 0."""
    return self.lin.isZero and abs(self.integral()) <= TOLERANCE * scaleOf(self.c.values) * self.lattice.vol * self.c.values.size

  def isclose(self, other, tol=1e-12):
    return self.c.isclose(other.c, tol) and self.lin.isclose(other.lin, tol)
