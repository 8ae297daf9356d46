"""Quasi-free states and the affine states they induce.

A quasi-free state is fixed by its two-point matrix ω₂ over the ambient
coordinates of a linear `PhaseBasis`. An element over another basis B of the
same space is evaluated with W = Cᵀ·ω₂·C, C = B.dataCoordinates; on a
normal-ordered word the value is the sum over perfect pairings of the
positions of Π W[i_a][i_b], signed by the pairing parity for fermions.
"""
import logging
from typing import Dict, NamedTuple

import numpy as np
import scipy.linalg

from affinefields.algebra import AlgebraElement, PhaseBasis, kappa
from affinefields.errors import BasisError, DegreeError, PositivityError, RangeError, StatisticsMismatch
from affinefields.states.combinatorics import perfectPairings, setPartitions, truncate
from affinefields.states.groundstate import groundStateTwoPoint, oscillatorTwoPoint
from affinefields.utils import scaleOf, BOSONIC, FERMIONIC, DEGREE_CAP, MOMENT_TOLERANCE, POSITIVITY_FLOOR

logger = logging.getLogger(__name__)

TWO_POINT_CACHE_SIZE = 32

def _minEigenvalue(matrix):
  if not len(matrix):
    return 0.0
  return float(scipy.linalg.eigh(matrix, eigvals_only=True)[0])

class QuasiFreeState(object):
  """A quasi-free state over the algebra of a linear basis."""

  def __init__(self, basis, omega2):
    if not basis.linear:
      raise BasisError("Quasi-free states live on linear bases; use InducedAffineState for affine ones.")
    self.basis = basis
    omega2 = np.array(omega2, dtype=complex)
    if omega2.shape != basis.gram.shape:
      raise BasisError("Invalid two-point shape; expected=%s, actual=%s." % (basis.gram.shape, omega2.shape))
    omega2.flags.writeable = False
    self.omega2 = omega2
    self._validate()
    self._twoPoints = {}

  def __repr__(self):
    return "QuasiFreeState<%s, %d modes>" % (self.statistics, self.basis.size)

  @property
  def statistics(self):
    return self.basis.statistics

  def _validate(self):
    g = self.basis.gram
    w = self.omega2
    scale = scaleOf(w, g)
    if np.max(np.abs(w - w.conj().T), initial=0.0) > 1e-10 * scale:
      raise PositivityError("Two-point matrix is not hermitian.")
    if self.statistics == BOSONIC:
      if np.max(np.abs(w.imag - 0.5 * g), initial=0.0) > 1e-10 * scale:
        raise PositivityError("Imaginary part of the two-point matrix differs from gram/2.")
    else:
      if _minEigenvalue(g) < POSITIVITY_FLOOR * scale:
        raise PositivityError("CAR states need a positive semi-definite gram; min eigenvalue=%g." % _minEigenvalue(g))
      if np.max(np.abs(w + w.T - g), initial=0.0) > 1e-10 * scale:
        raise PositivityError("Two-point matrix plus its transpose differs from gram.")
    lowest = _minEigenvalue(w)
    if lowest < POSITIVITY_FLOOR * scale:
      raise PositivityError("Two-point matrix is not positive; min eigenvalue=%g." % lowest)

  @classmethod
  def bosonic(klass, basis, symmetric):
    """Returns the state with ω₂ = μ + (i/2)·gram for a real symmetric μ."""
    return klass(basis, np.asarray(symmetric, dtype=float) + 0.5j * basis.gram)

  @classmethod
  def fermionic(klass, basis, antisymmetric=None):
    """Returns the state with ω₂ = gram/2 + i·A for a real antisymmetric A."""
    if basis.statistics != FERMIONIC:
      raise StatisticsMismatch("Expected a fermionic basis, actual=%s." % basis.statistics)
    A = np.zeros(basis.gram.shape) if antisymmetric is None else np.asarray(antisymmetric, dtype=float)
    return klass(basis, 0.5 * basis.gram + 1j * A)

  @classmethod
  def groundState(klass, phaseSpace):
    """The vacuum of the lattice field over the canonical linear basis."""
    basis = PhaseBasis.canonicalLinear(phaseSpace)
    return klass(basis, groundStateTwoPoint(phaseSpace))

  def twoPointOver(self, basis):
    """Returns W = Cᵀ·ω₂·C for a linear basis of the same space. Results are
    cached by coordinates, keeping the TWO_POINT_CACHE_SIZE most recent."""
    if basis is self.basis:
      return self.omega2
    if not basis.linear or basis.statistics != self.statistics:
      raise BasisError("Cannot evaluate over %r." % basis)
    C = basis.dataCoordinates
    if C.shape[0] != self.omega2.shape[0]:
      raise BasisError("Basis coordinates have %d rows, state has %d." % (C.shape[0], self.omega2.shape[0]))
    key = (C.shape, C.tobytes())
    W = self._twoPoints.pop(key, None)
    if W is None:
      W = C.T @ self.omega2 @ C
      if len(self._twoPoints) >= TWO_POINT_CACHE_SIZE:
        del self._twoPoints[next(iter(self._twoPoints))]
    self._twoPoints[key] = W
    return W

  @property
  def mu(self):
    return self.omega2.real

  def wordValue(self, word, W):
    """Returns the pairing sum of a word of generator indices."""
    if len(word) > DEGREE_CAP:
      raise DegreeError("Word degree %d exceeds the cap %d." % (len(word), DEGREE_CAP))
    fermionic = self.statistics == FERMIONIC
    total = 0j
    for pairs, sign in perfectPairings(len(word)):
      term = sign if fermionic else 1
      for a, b in pairs:
        term = term * W[word[a], word[b]]
      total += term
    return total

  def evaluate(self, x):
    """Returns Ω(x) for an element over a linear basis."""
    if x.statistics != self.statistics:
      raise StatisticsMismatch("State is %s, element is %s." % (self.statistics, x.statistics))
    W = self.twoPointOver(x.basis)
    return sum((c * self.wordValue(w, W) for w, c in x.terms.items()), 0j)

  __call__ = evaluate

  def nPoint(self, phaseSpace, observables):
    """Returns Ω(Ψ_lin([φ₁_V])...Ψ_lin([φₙ_V]))."""
    basis = PhaseBasis.spannedByObservables(phaseSpace, observables).linearized()
    return self.evaluate(AlgebraElement.monomial(basis, tuple(range(len(observables)))))

  def momentFunction(self, elements):
    """Returns S ↦ Ω(x_{S₁}...x_{S_k}) for ascending index tuples S."""
    unit = AlgebraElement.unit(self.basis)

    def moment(subset):
      product = unit
      for i in subset:
        product = product.mul(elements[i])
      return self.evaluate(product)

    return moment


class DeformedState(QuasiFreeState):
  """A quasi-free state with every degree-4 word shifted by ε·W[i₁][i₂]·W[i₃][i₄].
  Not quasi-free for ε ≠ 0."""

  def __init__(self, base, epsilon):
    super().__init__(base.basis, base.omega2)
    self.epsilon = float(epsilon)

  def __repr__(self):
    return "DeformedState<ε=%r>" % self.epsilon

  def wordValue(self, word, W):
    value = super().wordValue(word, W)
    if len(word) == 4:
      value += self.epsilon * W[word[0], word[1]] * W[word[2], word[3]]
    return value


class InducedAffineState(object):
  """The state Ω∘κ on the algebra of the affine theory, for a bosonic base
  state of the linearized theory."""

  def __init__(self, base, phaseSpace):
    if base.statistics != BOSONIC:
      raise StatisticsMismatch("Induced states need a bosonic base state.")
    self.base = base
    self.phaseSpace = phaseSpace

  def __repr__(self):
    return "InducedAffineState<%r>" % self.base

  @property
  def statistics(self):
    return BOSONIC

  @classmethod
  def groundState(klass, phaseSpace):
    return klass(QuasiFreeState.groundState(phaseSpace), phaseSpace)

  def evaluate(self, x):
    return self.base.evaluate(kappa(x))

  __call__ = evaluate

  def basisFor(self, observables):
    return PhaseBasis.spannedByObservables(self.phaseSpace, observables)

  def nPoint(self, observables):
    """Returns ω̃ₙ(φ₁, ..., φₙ) = Ω(κ(Ψ([φ₁])...Ψ([φₙ])))."""
    basis = self.basisFor(observables)
    return self.evaluate(AlgebraElement.monomial(basis, tuple(range(len(observables)))))

  def onePoint(self, phi):
    return self.nPoint([phi])

  def momentFunction(self, observables):
    """Returns S ↦ ω̃(φ_{S₁}, ..., φ_{S_k}) for ascending index tuples S, over
    one shared basis."""
    basis = self.basisFor(observables)

    def moment(subset):
      return self.evaluate(AlgebraElement.monomial(basis, tuple(subset)))

    return moment

  def truncatedMoments(self, observables, nMax):
    return truncatedMoments(self, observables, nMax)


class QuasiFreeReport(NamedTuple):
  """Result of `checkAffineQuasiFree`."""
  passed: bool
  maxTruncated: Dict[int, float]
  scale: float

  def __bool__(self):
    return self.passed


class MomentExpansion(NamedTuple):
  """Moments ω_n and truncated moments ω^T_n of x₁..xₙ, n = 1..nMax."""
  moments: Dict[int, complex]
  truncated: Dict[int, complex]
  scale: float


def momentExpansion(state, arguments, nMax):
  """Returns the `MomentExpansion` of the first nMax arguments: observables
  for an `InducedAffineState`, algebra elements for a `QuasiFreeState`.
  `scale` is the largest moment magnitude over all argument subsets (at
  least 1)."""
  setPartitions(nMax)
  arguments = list(arguments)[:nMax]
  if len(arguments) < nMax:
    raise RangeError("Need %d arguments for moments up to n=%d, actual=%d." % (nMax, nMax, len(arguments)))
  moment = state.momentFunction(arguments)
  cache = {}

  def cached(subset):
    if subset not in cache:
      cache[subset] = moment(subset)
    return cache[subset]

  signed = state.statistics == FERMIONIC
  truncated = {n: truncate(cached, tuple(range(n)), signed) for n in range(1, nMax + 1)}
  moments = {n: cache[tuple(range(n))] for n in range(1, nMax + 1)}
  scale = max([1.0] + [abs(v) for v in cache.values()])
  return MomentExpansion(moments, truncated, scale)

def truncatedMoments(state, arguments, nMax):
  """Returns {n: ω^T_n(x₁, ..., xₙ)} for n = 1..nMax."""
  return momentExpansion(state, arguments, nMax).truncated

def checkAffineQuasiFree(state, samples, nMax, tol=MOMENT_TOLERANCE):
  """Checks |ω^T_n| ≤ tol·scale for 2 < n ≤ nMax over each sample tuple of
  arguments; scale is the largest moment magnitude seen."""
  worst = {n: 0.0 for n in range(3, nMax + 1)}
  scale = 1.0
  for arguments in samples:
    expansion = momentExpansion(state, arguments, nMax)
    scale = max(scale, expansion.scale)
    for n in worst:
      worst[n] = max(worst[n], abs(expansion.truncated[n]))
  passed = all(v <= tol * scale for v in worst.values())
  logger.debug("Quasi-free check up to n=%d: %s (scale %.3e)", nMax, worst, scale)
  return QuasiFreeReport(passed, worst, scale)

groundState = QuasiFreeState.groundState

__all__ = ["QuasiFreeState", "DeformedState", "InducedAffineState", "truncatedMoments", "momentExpansion",
           "checkAffineQuasiFree", "groundState", "oscillatorTwoPoint", "setPartitions"]
