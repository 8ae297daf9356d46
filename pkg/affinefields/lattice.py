from typing import NamedTuple

import numpy as np

from affinefields.errors import LatticeError, LatticeMismatch


WINDOW = "time-window"
GENERAL = "general"

class Site(NamedTuple):
  """A lattice site: time index t and (periodic) spatial index x."""
  t: int
  x: int


class LatticeSpacetime(object):
  """A discrete globally hyperbolic spacetime: a spatial circle of `nX` sites
  crossed with `nT` time slices.

  The causal cone is the stencil cone of the Klein-Gordon operator: one site
  per time step. Every full time slice is a Cauchy slice. Sections with support
  in slices [2, nT-3] count as compactly supported.
  """

  def __init__(self, nX, nT, dx=1.0, dt=0.5, mass=1.0):
    self.nX = int(nX)
    self.nT = int(nT)
    self.dx = float(dx)
    self.dt = float(dt)
    self.mass = float(mass)
    if self.nX < 3:
      raise LatticeError("Invalid 'nX'; expected >= 3, actual=%d." % self.nX)
    if self.nT < 8:
      raise LatticeError("Invalid 'nT'; expected >= 8, actual=%d." % self.nT)
    if self.dx <= 0 or self.dt <= 0:
      raise LatticeError("Invalid spacings; expected positive, actual dx=%r, dt=%r." % (self.dx, self.dt))
    if self.dt > self.dx:
      raise LatticeError("Invalid spacings; the explicit scheme needs dt <= dx, actual dt=%r > dx=%r." % (self.dt, self.dx))
    if self.mass <= 0:
      raise LatticeError("Invalid 'mass'; expected > 0, actual=%r." % self.mass)

  def __repr__(self):
    return "Lattice<%dx%d dx=%r dt=%r m=%r>" % (self.nT, self.nX, self.dx, self.dt, self.mass)

  def __eq__(self, other):
    return isinstance(other, LatticeSpacetime) and self.parameters == other.parameters

  def __hash__(self):
    return hash(self.parameters)

  @property
  def parameters(self):
    return (self.nX, self.nT, self.dx, self.dt, self.mass)

  def withSlices(self, nT):
    """Returns a lattice with the same spatial data and `nT` time slices."""
    return LatticeSpacetime(self.nX, nT, self.dx, self.dt, self.mass)

  def checkSame(self, other):
    if other != self:
      raise LatticeMismatch("Objects live on different lattices: %r and %r." % (self, other))

  @property
  def vol(self):
    """Returns the per-site volume weight dt·dx."""
    return self.dt * self.dx

  @property
  def shape(self):
    return (self.nT, self.nX)

  @property
  def tStar(self):
    """Returns the reference slice for Cauchy data, nT-3."""
    return self.nT - 3

  @property
  def interiorSlices(self):
    """Slices on which the stencil can be evaluated."""
    return range(1, self.nT - 1)

  @property
  def compactSlices(self):
    """Slices allowed in the support of a compactly supported section."""
    return range(2, self.nT - 2)

  def sites(self):
    for t in range(self.nT):
      for x in range(self.nX):
        yield Site(t, x)

  def includes(self, site):
    """Returns True if the site lies on the lattice."""
    return 0 <= site[0] < self.nT and 0 <= site[1] < self.nX

  def checkSite(self, site):
    if not self.includes(site):
      raise LatticeError("Site %s out of range for %r." % (tuple(site), self))
    return Site(int(site[0]), int(site[1]))

  def circleDistance(self, x1, x2):
    d = abs(int(x1) - int(x2)) % self.nX
    return min(d, self.nX - d)

  # Causal structure on boolean masks of shape (nT, nX)

  def maskOf(self, sites):
    mask = np.zeros(self.shape, dtype=bool)
    for s in sites:
      s = self.checkSite(s)
      mask[s.t, s.x] = True
    return mask

  def sitesOf(self, mask):
    return frozenset(Site(int(t), int(x)) for t, x in zip(*np.nonzero(mask)))

  def futureMask(self, mask):
    """Returns the mask of J⁺ of the sites in `mask`."""
    reach = np.array(mask, dtype=bool)
    for t in range(1, self.nT):
      previous = reach[t - 1]
      reach[t] |= previous | np.roll(previous, 1) | np.roll(previous, -1)
    return reach

  def pastMask(self, mask):
    """Returns the mask of J⁻ of the sites in `mask`."""
    return self.futureMask(np.asarray(mask, dtype=bool)[::-1])[::-1]

  def causalFuture(self, sites):
    """Returns J⁺(sites): every site reachable through the one-site-per-step cone."""
    return self.sitesOf(self.futureMask(self.maskOf(sites)))

  def causalPast(self, sites):
    """Returns J⁻(sites)."""
    return self.sitesOf(self.pastMask(self.maskOf(sites)))

  def causallyDisjoint(self, sites1, sites2):
    """Returns True if no site of `sites2` lies in J⁺(sites1) ∪ J⁻(sites1)."""
    m1 = self.maskOf(sites1)
    m2 = self.maskOf(sites2)
    return self.masksCausallyDisjoint(m1, m2)

  def masksCausallyDisjoint(self, mask1, mask2):
    shadow = self.futureMask(mask1) | self.pastMask(mask1)
    return not bool(np.any(shadow & np.asarray(mask2, dtype=bool)))

  # Regions

  def isCauchySlice(self, t):
    """Every full time slice is met exactly once by every inextensible cone path."""
    if not 0 <= t < self.nT:
      raise LatticeError("Slice %d out of range [0, %d)." % (t, self.nT))
    return True

  def window(self, tA, tB):
    """Returns the time window [tA, tB] over the full spatial circle."""
    if not 0 <= tA <= tB < self.nT:
      raise LatticeError("Invalid window [%d, %d]; expected 0 <= tA <= tB < %d." % (tA, tB, self.nT))
    mask = np.zeros(self.shape, dtype=bool)
    mask[tA:tB + 1] = True
    return Region(self, mask, WINDOW)

  def region(self, sites):
    """Returns the general region made of `sites`."""
    return Region(self, self.maskOf(sites), GENERAL)

  def whole(self):
    return self.window(0, self.nT - 1)


class Region(object):
  """A set of lattice sites with a kind tag: time windows (full spatial
  extent, contiguous time interval) or general regions."""

  def __init__(self, lattice, mask, kind=GENERAL):
    self.lattice = lattice
    self._mask = np.array(mask, dtype=bool)
    self._mask.flags.writeable = False
    if self._mask.shape != lattice.shape:
      raise LatticeError("Invalid region mask shape; expected=%s, actual=%s." % (lattice.shape, self._mask.shape))
    self.kind = kind

  def __repr__(self):
    if self.kind == WINDOW:
      return "Region<window %d..%d>" % (self.tMin, self.tMax)
    return "Region<%d sites>" % len(self)

  @property
  def mask(self):
    return self._mask

  @property
  def sites(self):
    return self.lattice.sitesOf(self._mask)

  def __len__(self):
    return int(self._mask.sum())

  def __iter__(self):
    return iter(sorted(self.sites))

  def __contains__(self, site):
    return self.lattice.includes(site) and bool(self._mask[site[0], site[1]])

  def includes(self, site):
    return site in self

  @property
  def isEmpty(self):
    return not self._mask.any()

  @property
  def slices(self):
    return [int(t) for t in np.nonzero(self._mask.any(axis=1))[0]]

  @property
  def tMin(self):
    return min(self.slices) if not self.isEmpty else None

  @property
  def tMax(self):
    return max(self.slices) if not self.isEmpty else None

  def containsCauchySlice(self):
    """Returns True if some full time slice lies inside the region."""
    return bool(np.any(self._mask.all(axis=1)))

  def isCausallyCompatible(self):
    """Returns True if J⁺(R) ∩ J⁻(R) ⊆ R, i.e. every cone path between two
    sites of the region stays in the region."""
    lattice = self.lattice
    between = lattice.futureMask(self._mask) & lattice.pastMask(self._mask)
    return not bool(np.any(between & ~self._mask))
