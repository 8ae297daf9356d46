import logging
from functools import cached_property

import numpy as np

from affinefields.errors import ResidualError
from affinefields.observable import DualObservable
from affinefields.section import Section
from affinefields.utils import leapfrog, scaleOf, GREEN_TOLERANCE

logger = logging.getLogger(__name__)

class AffineOperator(object):
  """The affine Klein-Gordon operator P(s) = P_V(s) + J on a lattice.

  P_V is the leapfrog stencil of `affinefields.utils.leapfrog`, formally
  self-adjoint for the pairing Σ vol·σσ' on interior-supported sections.
  The source J must be compactly supported. Green operators are the explicit
  recursions; their sources must vanish on the outer slices.
  """

  def __init__(self, lattice, source=None):
    self.lattice = lattice
    if source is None:
      source = Section.zero(lattice)
    elif not isinstance(source, Section):
      source = Section(lattice, source)
    lattice.checkSame(source.lattice)
    self.source = source.checkCompactSupport("source")

  def __repr__(self):
    return "AffineOperator<%r, J on %d sites>" % (self.lattice, len(self.source.support))

  @classmethod
  def homogeneous(klass, lattice):
    return klass(lattice)

  def _stencil(self, values):
    lat = self.lattice
    return leapfrog.kleinGordon(values, lat.dx, lat.dt, lat.mass)

  def applyLinear(self, s):
    """Returns P_V(s); zero on slices 0 and nT-1."""
    self.lattice.checkSame(s.lattice)
    return Section(self.lattice, self._stencil(s.values))

  def apply(self, s):
    """Returns P(s) = P_V(s) + J."""
    return self.applyLinear(s) + self.source

  __call__ = apply

  # Formal adjoint

  def timeDivergence(self, h):
    """Returns the forward time difference (h(t+1) - h(t))/dt, a section with
    vanishing integral whenever h is compactly supported."""
    self.lattice.checkSame(h.lattice)
    values = np.zeros(self.lattice.shape)
    values[:-1] = np.diff(h.values, axis=0) / self.lattice.dt
    return Section(self.lattice, values)

  def formalAdjoint(self, h, withDivergence=False):
    """Returns P*(h), the observable s ↦ ⟨h, P(s)⟩, with constant part h·J and
    linear part P_V(h). With `withDivergence`, the zero-integral density
    `timeDivergence(h)` is added to the constant part; both choices satisfy

      Σ vol·h·P(s) = Σ vol·(P*(h))(s)  for every s.

    """
    self.lattice.checkSame(h.lattice)
    h.checkCompactSupport("test section")
    c = h * self.source
    if withDivergence:
      c = c + self.timeDivergence(h)
    return DualObservable(self.lattice, c, self.applyLinear(h))

  # Green operators

  def retarded(self, h):
    """Returns G⁺(h): zero before the first slice of supp(h), P_V G⁺(h) = h.
    Sources may use every interior slice, 1..nT-2."""
    self.lattice.checkSame(h.lattice)
    h.checkInterior("Green source")
    lat = self.lattice
    return Section(lat, leapfrog.retarded(h.values, lat.dx, lat.dt, lat.mass))

  def advanced(self, h):
    """Returns G⁻(h): zero after the last slice of supp(h), P_V G⁻(h) = h."""
    self.lattice.checkSame(h.lattice)
    h.checkInterior("Green source")
    lat = self.lattice
    return Section(lat, leapfrog.advanced(h.values, lat.dx, lat.dt, lat.mass))

  def causalPropagator(self, h):
    """Returns G(h) = G⁺(h) - G⁻(h), a homogeneous solution."""
    return self.retarded(h) - self.advanced(h)

  # Reference solution

  @cached_property
  def referenceSolution(self):
    """Returns ŝ* = -G⁺(J), the retarded solution of P(ŝ*) = 0."""
    s = -self.retarded(self.source)
    residual = self.apply(s).norm()
    logger.debug("Reference solution residual %.3e", residual)
    if residual > GREEN_TOLERANCE * scaleOf(self.source.values):
      raise ResidualError("Reference solution residual too large; expected <= %g, actual=%g." % (GREEN_TOLERANCE, residual))
    return s

  def solveReference(self):
    return self.referenceSolution
