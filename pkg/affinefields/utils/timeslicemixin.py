import logging
from typing import NamedTuple

import numpy as np

from affinefields.errors import ResidualError, WindowError
from affinefields.lattice import Region
from affinefields.observable import DualObservable
from affinefields.section import Section
from affinefields.utils import scaleOf, TOLERANCE

logger = logging.getLogger(__name__)

class Deformation(NamedTuple):
  """Result of moving an observable into a time window."""
  observable: DualObservable
  leakage: float
  tMid: int
  testSection: Section

class TimeSliceMixin(object):
  """Moves observables into a time window containing a Cauchy slice without
  changing their phase-space class."""

  def _windowBounds(self, window):
    if isinstance(window, Region):
      if window.isEmpty:
        raise WindowError("Cannot deform into an empty window.")
      if not window.containsCauchySlice():
        raise WindowError("Window %r contains no Cauchy slice." % window)
      window = (window.tMin, window.tMax)
    tA, tB = int(window[0]), int(window[1])
    if not 0 <= tA <= tB < self.lattice.nT:
      raise WindowError("Window [%d, %d] out of range [0, %d)." % (tA, tB, self.lattice.nT))
    if tB - tA < 4:
      raise WindowError("Window [%d, %d] too narrow; expected tB - tA >= 4." % (tA, tB))
    return tA, tB

  def deform(self, phi, window):
    """Returns the `Deformation` of `phi` into `window`.

    The linear part is split at tMid = ⌊(tA+tB)/2⌋. The late piece is cut off
    by h⁺ = -χ·G⁻(lin⁺) (χ = 1 from tMid on), the early piece by
    h⁻ = -ψ·G⁺(lin⁻) (ψ = 1 before tMid-1). Adding P*(h⁺ + h⁻) leaves a linear
    part on slices [tMid-2, tMid]; the constant part is replaced by a bump on
    slice tMid carrying the same integral."""
    self._checkObservable(phi)
    tA, tB = self._windowBounds(window)
    lat = self.lattice
    op = self.operator
    tMid = (tA + tB) // 2

    lin = phi.lin.values
    late = np.zeros(lat.shape)
    late[tMid - 1:] = lin[tMid - 1:]
    early = lin - late

    chi = np.zeros(lat.shape)
    chi[tMid:] = 1.0
    psi = np.zeros(lat.shape)
    psi[:tMid - 1] = 1.0
    hLate = -chi * op.advanced(Section(lat, late)).values
    hEarly = -psi * op.retarded(Section(lat, early)).values
    h = Section(lat, hLate + hEarly)

    deformed = phi.lin + op.applyLinear(h)
    outside = deformed.values.copy()
    outside[tA:tB + 1] = 0.0
    leakage = float(np.max(np.abs(outside), initial=0.0))
    scale = scaleOf(lin, deformed.values)
    logger.debug("Deformed into [%d, %d] at tMid=%d, leakage %.3e", tA, tB, tMid, leakage)
    if leakage > TOLERANCE * scale:
      raise ResidualError("Support leakage outside [%d, %d]; expected <= %g, actual=%g." % (tA, tB, TOLERANCE * scale, leakage))
    lin = deformed.restrictedTo(tA, tB)

    total = (phi.c + h * op.source).integral()
    c = self.bump(tMid) * total
    return Deformation(DualObservable(lat, c, lin), leakage, tMid, h)

  def timesliceDeform(self, phi, window):
    """Returns an observable supported in `window` with the class of `phi`."""
    return self.deform(phi, window).observable
