"""The on-shell phase space of an affine lattice field theory.

Classes of observables modulo trivial observables and the image of the formal
adjoint are labelled by a `PhaseVector`: the scalar I′ = Σ vol·φ(ŝ*) evaluated
on the reference solution, together with the Cauchy data of G(φ_V) on the
reference slices t* = nT-3 and t*+1. Two observables have the same class
exactly when their phase vectors agree.
"""
import logging

import numpy as np

from affinefields.errors import DimensionMismatch, LatticeMismatch
from affinefields.observable import DualObservable
from affinefields.section import Section
from affinefields.utils import frozenArray, scaleOf, ADJOINT_TOLERANCE
from affinefields.utils import leapfrog
from affinefields.utils.linearizationmixin import LinearizationMixin
from affinefields.utils.timeslicemixin import TimeSliceMixin

logger = logging.getLogger(__name__)

class CauchyData(object):
  """Values of a homogeneous solution on two consecutive slices."""

  def __init__(self, u, uNext):
    self._u = frozenArray(u)
    self._uNext = frozenArray(uNext)
    if self._u.shape != self._uNext.shape or self._u.ndim != 1:
      raise DimensionMismatch("Invalid Cauchy data shapes: %s and %s." % (self._u.shape, self._uNext.shape))

  def __repr__(self):
    return "CauchyData<u=%s, uNext=%s>" % (self._u.tolist(), self._uNext.tolist())

  @classmethod
  def zero(klass, nX):
    return klass(np.zeros(nX), np.zeros(nX))

  @classmethod
  def fromCoordinates(klass, coordinates):
    coordinates = np.asarray(coordinates, dtype=float)
    n = len(coordinates) // 2
    return klass(coordinates[:n], coordinates[n:])

  @property
  def u(self):
    return self._u

  @property
  def uNext(self):
    return self._uNext

  @property
  def nX(self):
    return len(self._u)

  @property
  def coordinates(self):
    """Returns (u, uNext) concatenated."""
    return np.concatenate((self._u, self._uNext))

  def __add__(self, other):
    return CauchyData(self._u + other._u, self._uNext + other._uNext)

  def __sub__(self, other):
    return CauchyData(self._u - other._u, self._uNext - other._uNext)

  def __mul__(self, scalar):
    return CauchyData(self._u * scalar, self._uNext * scalar)

  __rmul__ = __mul__

  def __neg__(self):
    return self * -1.0

  def norm(self):
    return float(np.max(np.abs(self.coordinates), initial=0.0))

  def isclose(self, other, tol=1e-12):
    a, b = self.coordinates, other.coordinates
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol * scaleOf(a, b)))


class PhaseVector(object):
  """The canonical form (I′, data) of a phase-space class."""

  def __init__(self, iPrime, data):
    self.iPrime = float(iPrime)
    self.data = data

  def __repr__(self):
    return "PhaseVector<%r | %r>" % (self.iPrime, self.data)

  @classmethod
  def zero(klass, nX):
    return klass(0.0, CauchyData.zero(nX))

  @classmethod
  def null(klass, nX, iPrime=1.0):
    """Returns the null vector iPrime·e₀, the class of a scalar observable."""
    return klass(iPrime, CauchyData.zero(nX))

  @classmethod
  def fromCoordinates(klass, coordinates):
    """Inverse of `coordinates`: (I′, u..., uNext...)."""
    coordinates = np.asarray(coordinates, dtype=float)
    if (len(coordinates) - 1) % 2:
      raise DimensionMismatch("Invalid phase vector length; expected 1 + 2·nX, actual=%d." % len(coordinates))
    return klass(coordinates[0], CauchyData.fromCoordinates(coordinates[1:]))

  @property
  def coordinates(self):
    return np.concatenate(([self.iPrime], self.data.coordinates))

  @property
  def nX(self):
    return self.data.nX

  def __add__(self, other):
    return PhaseVector(self.iPrime + other.iPrime, self.data + other.data)

  def __sub__(self, other):
    return PhaseVector(self.iPrime - other.iPrime, self.data - other.data)

  def __mul__(self, scalar):
    return PhaseVector(self.iPrime * scalar, self.data * scalar)

  __rmul__ = __mul__

  def __neg__(self):
    return self * -1.0

  def isNull(self, tol=1e-10, scale=1.0):
    """True if the Cauchy data vanish, i.e. the class lies in the null space."""
    return self.data.norm() <= tol * scale

  def isclose(self, other, tol=1e-9):
    a, b = self.coordinates, other.coordinates
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol * scaleOf(a, b)))


class PhaseSpace(LinearizationMixin, TimeSliceMixin, object):
  """Phase space of the theory defined by an `AffineOperator`.

  Provides the classification of observables, the bilinear form τ both as
  a spacetime sum and from Cauchy data, and realization of phase vectors by
  representative observables.
  """

  def __init__(self, operator):
    self.operator = operator
    self.lattice = operator.lattice

  def __repr__(self):
    return "PhaseSpace<%r>" % self.operator

  @property
  def referenceSolution(self):
    return self.operator.referenceSolution

  @property
  def dimension(self):
    """Dimension of the canonical coordinates (I′, u, uNext)."""
    return 1 + 2 * self.lattice.nX

  @property
  def symplecticScale(self):
    """The prefactor dx/dt of the equal-time form."""
    return self.lattice.dx / self.lattice.dt

  def _checkObservable(self, phi):
    if phi.lattice != self.lattice:
      raise LatticeMismatch("Observable lives on %r, phase space on %r." % (phi.lattice, self.lattice))
    return phi.checkAdmissible()

  def cauchyDataOf(self, solution):
    """Returns the data of a section on the slices t*, t*+1."""
    t = self.lattice.tStar
    return CauchyData(solution.values[t], solution.values[t + 1])

  def classify(self, phi):
    """Returns the canonical form of the class of `phi`.

    Any admissible observable is accepted, including supports that reach
    slice nT-2 past t*-1: the data come from the full causal propagator."""
    self._checkObservable(phi)
    iPrime = phi(self.referenceSolution)
    data = self.cauchyDataOf(self.operator.causalPropagator(phi.lin))
    return PhaseVector(iPrime, data)

  def isNull(self, pv, tol=1e-10):
    return pv.isNull(tol)

  def tau(self, phi, psi):
    """Returns τ(φ, ψ) = Σ vol·φ_V·G(ψ_V)."""
    self._checkObservable(phi)
    self._checkObservable(psi)
    return phi.lin.pairing(self.operator.causalPropagator(psi.lin))

  def tauCanonical(self, a, b):
    """Evaluates τ from canonical forms alone:

      τ(a, b) = (dx/dt)·Σ_x (a.uNext·b.u - a.u·b.uNext)

    """
    if a.nX != self.lattice.nX or b.nX != self.lattice.nX:
      raise LatticeMismatch("Phase vectors of width %d and %d on a lattice with nX=%d." % (a.nX, b.nX, self.lattice.nX))
    return self.symplecticScale * float(a.data.uNext @ b.data.u - a.data.u @ b.data.uNext)

  def gramCanonical(self, withNull=True):
    """Returns the matrix of `tauCanonical` over canonical coordinates, with
    a zero row and column for I′ when `withNull`."""
    n = self.lattice.nX
    block = np.zeros((2 * n, 2 * n))
    block[:n, n:] = -self.symplecticScale * np.eye(n)
    block[n:, :n] = self.symplecticScale * np.eye(n)
    if not withNull:
      return block
    gram = np.zeros((1 + 2 * n, 1 + 2 * n))
    gram[1:, 1:] = block
    return gram

  def homogeneousSolution(self, data):
    """Returns the homogeneous solution of P_V with the given Cauchy data at t*."""
    lat = self.lattice
    values = leapfrog.evolve(data.u, data.uNext, lat.tStar, lat.nT, lat.dx, lat.dt, lat.mass)
    return Section(lat, values)

  @property
  def realizationSlice(self):
    """The slice at which representatives switch the homogeneous solution on."""
    return self.lattice.nT // 2

  def bump(self, t=None):
    """Returns the uniform density on slice `t` with unit integral."""
    lat = self.lattice
    t = self.realizationSlice if t is None else t
    values = np.zeros(lat.shape)
    values[t] = 1.0 / (lat.vol * lat.nX)
    return Section(lat, values)

  def realize(self, pv):
    """Returns an admissible observable whose class is `pv`.

    The linear part is P_V(χU) with U the homogeneous solution of the data
    and χ the step switching on at `realizationSlice`; the constant part is a
    bump fixing I′."""
    lin = self.realizeLinear(pv.data)
    c = self.bump() * pv.iPrime - lin * self.referenceSolution
    return DualObservable(self.lattice, c, lin)

  def classesAgree(self, phi, psi, tol=1e-9):
    """True if two observables have the same class."""
    return self.classify(phi).isclose(self.classify(psi), tol)

  def adjointDefect(self, h, s, withDivergence=False):
    """Returns |Σ vol·h·P(s) - Σ vol·(P*(h))(s)| relative to the larger side."""
    lhs = h.pairing(self.operator.apply(s))
    rhs = self.operator.formalAdjoint(h, withDivergence)(s)
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))

  def satisfiesAdjointIdentity(self, h, s, withDivergence=False):
    return self.adjointDefect(h, s, withDivergence) <= ADJOINT_TOLERANCE
