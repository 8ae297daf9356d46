import logging
from typing import NamedTuple

import numpy as np

from affinefields.errors import LatticeMismatch, ResidualError, SupportError, WindowError
from affinefields.lattice import Region
from affinefields.observable import DualObservable
from affinefields.operator import AffineOperator
from affinefields.phasespace import PhaseSpace, PhaseVector
from affinefields.section import Section

logger = logging.getLogger(__name__)

class WindowReport(NamedTuple):
  """Diagnostic of `RegionEmbedding.isIsoOnWindow`."""
  passed: bool
  checked: int
  maxDelta: float
  message: str = ""

  def __bool__(self):
    return self.passed


class RegionEmbedding(object):
  """Embedding of a lattice theory as the time window
  [offset, offset + nT₁ - 1] of a taller lattice with the same spatial data,
  mass and (extended by zero) source.

  Observables push forward by extension by zero and pull back by
  restriction. The Green operators of the source are those of the target
  restricted to the window."""

  def __init__(self, source, target, offset):
    if isinstance(source, AffineOperator):
      source = PhaseSpace(source)
    if isinstance(target, AffineOperator):
      target = PhaseSpace(target)
    self.source = source
    self.target = target
    self.offset = int(offset)
    s, t = source.lattice, target.lattice
    if (s.nX, s.dx, s.dt, s.mass) != (t.nX, t.dx, t.dt, t.mass):
      raise LatticeMismatch("Embedded lattices differ in spatial data or mass: %r and %r." % (s, t))
    if self.offset < 0 or self.offset + s.nT > t.nT:
      raise LatticeMismatch(
        "Invalid embedding offset; expected 0 <= offset <= %d, actual=%d." % (t.nT - s.nT, self.offset))
    expected = self.pushforwardSection(source.operator.source)
    if not np.array_equal(expected.values, target.operator.source.values):
      raise LatticeMismatch("Target source is not the source extended by zero.")

  def __repr__(self):
    return "RegionEmbedding<%d slices at offset %d in %d>" % (self.source.lattice.nT, self.offset, self.target.lattice.nT)

  @classmethod
  def window(klass, target, tA, nT):
    """Returns the embedding of the `nT`-slice window starting at `tA` of the
    theory `target` (a PhaseSpace or AffineOperator); the target source must
    vanish outside the window."""
    if isinstance(target, AffineOperator):
      target = PhaseSpace(target)
    lattice = target.lattice.withSlices(nT)
    values = target.operator.source.values[tA:tA + nT]
    if values.shape[0] != nT:
      raise LatticeMismatch("Window [%d, %d) exceeds the target lattice." % (tA, tA + nT))
    source = AffineOperator(lattice, Section(lattice, values))
    return klass(PhaseSpace(source), target, tA)

  @classmethod
  def identity(klass, phaseSpace):
    return klass(phaseSpace, phaseSpace, 0)

  @property
  def image(self):
    """The window of the target covered by the source."""
    return self.target.lattice.window(self.offset, self.offset + self.source.lattice.nT - 1)

  # Sections

  def pushforwardSection(self, sigma):
    """Extends a source section by zero."""
    self.source.lattice.checkSame(sigma.lattice)
    values = np.zeros(self.target.lattice.shape)
    values[self.offset:self.offset + self.source.lattice.nT] = sigma.values
    return Section(self.target.lattice, values)

  def pullbackSection(self, sigma):
    """Restricts a target section to the window."""
    self.target.lattice.checkSame(sigma.lattice)
    return Section(self.source.lattice, sigma.values[self.offset:self.offset + self.source.lattice.nT])

  # Observables

  def pushforward(self, phi):
    self.source._checkObservable(phi)
    return DualObservable(self.target.lattice, self.pushforwardSection(phi.c), self.pushforwardSection(phi.lin))

  def pullback(self, phi):
    """Restricts a target observable supported inside the window interior."""
    tA = self.offset + 1
    tB = self.offset + self.source.lattice.nT - 2
    if not phi.supportedIn(tA, tB):
      raise SupportError("Observable on slices %s is not supported in [%d, %d]." % (phi.slices, tA, tB))
    return DualObservable(self.source.lattice, self.pullbackSection(phi.c), self.pullbackSection(phi.lin))

  def compose(self, inner):
    """Returns self ∘ inner."""
    if inner.target.lattice != self.source.lattice:
      raise LatticeMismatch("Cannot compose; inner embedding lands in %r, outer starts from %r."
                            % (inner.target.lattice, self.source.lattice))
    return RegionEmbedding(inner.source, self.target, inner.offset + self.offset)

  def inducedMap(self):
    """Returns the matrix of the induced map on canonical coordinates
    (I′, u, uNext), column by column."""
    columns = []
    for k in range(self.source.dimension):
      e = np.zeros(self.source.dimension)
      e[k] = 1.0
      phi = self.source.realize(PhaseVector.fromCoordinates(e))
      columns.append(self.target.classify(self.pushforward(phi)).coordinates)
    return np.column_stack(columns)

  def spanningObservables(self):
    """Observables whose target classes span the target phase space: deltas
    on the slices 2 and 3 and one scalar bump."""
    lat = self.target.lattice
    out = [DualObservable.one(lat, self.target.bump(2))]
    for t in (2, 3):
      for x in range(lat.nX):
        out.append(DualObservable.delta(lat, (t, x)))
    return out

  def isIsoOnWindow(self, window=None, tol=1e-9):
    """Checks that every spanning target class is the image of a source
    class: deform into `window` (default: the compact slices of the image),
    pull back, push forward and compare canonical forms."""
    if window is None:
      window = (self.offset + 2, self.offset + self.source.lattice.nT - 3)
    if isinstance(window, Region) and window.isEmpty:
      return WindowReport(False, 0, float("inf"), "empty window")
    maxDelta = 0.0
    checked = 0
    for phi in self.spanningObservables():
      try:
        moved = self.pushforward(self.pullback(self.target.timesliceDeform(phi, window)))
      except (WindowError, SupportError, ResidualError) as e:
        return WindowReport(False, checked, float("inf"), str(e))
      a = self.target.classify(phi).coordinates
      b = self.target.classify(moved).coordinates
      delta = float(np.max(np.abs(a - b))) / max(1.0, float(np.max(np.abs(a))))
      maxDelta = max(maxDelta, delta)
      checked += 1
    logger.debug("Window iso check over %d classes, max delta %.3e", checked, maxDelta)
    return WindowReport(maxDelta <= tol, checked, maxDelta)
