"""CCR and CAR algebras over a presented phase space.

A `PhaseBasis` presents (E, τ) by a finite family of vectors together with
their Gram matrix g[i][j] = τ(e_i, e_j). Elements of the free unital
*-algebra on hermitian generators Ψ_i = Ψ(e_i), modulo

  [Ψ_i, Ψ_j] = i·g[i][j]·𝟏   (bosonic)
  {Ψ_i, Ψ_j} = g[i][j]·𝟏     (fermionic)

are stored in normal form by `AlgebraElement`.
"""
import logging
import numbers
from collections import defaultdict

import numpy as np

from affinefields.algebra.normalorder import addInto, normalOrder, pruned
from affinefields.errors import BasisError, DegreeError, GramError, StatisticsMismatch
from affinefields.utils import checkStatistics, scaleOf, BOSONIC, DEGREE_CAP, ADJOINT_TOLERANCE

logger = logging.getLogger(__name__)

class PhaseBasis(object):
  """A finite family of phase-space vectors with their Gram matrix.

  `coordinates` holds the vectors as columns in an ambient coordinate system:
  (I′, u, uNext) for bases of the affine phase space, (u, uNext) for
  linearized bases (`linear=True`), the identity for abstract bases.
  """

  def __init__(self, statistics, gram, coordinates=None, linear=False, phaseSpace=None):
    self.statistics = checkStatistics(statistics)
    gram = np.array(gram, dtype=float)
    if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
      raise GramError("Invalid gram shape; expected square, actual=%s." % (gram.shape,))
    sign = -1.0 if statistics == BOSONIC else 1.0
    if np.max(np.abs(gram - sign * gram.T), initial=0.0) > ADJOINT_TOLERANCE * scaleOf(gram):
      raise GramError("Gram matrix is not %s." % ("antisymmetric" if statistics == BOSONIC else "symmetric"))
    gram = 0.5 * (gram + sign * gram.T)
    gram.flags.writeable = False
    self.gram = gram
    if coordinates is None:
      coordinates = np.eye(len(gram))
    coordinates = np.array(coordinates, dtype=float)
    if coordinates.ndim != 2 or coordinates.shape[1] != len(gram):
      raise BasisError("Invalid coordinates shape; expected %d columns, actual=%s." % (len(gram), coordinates.shape))
    coordinates.flags.writeable = False
    self.coordinates = coordinates
    self.linear = linear
    self.phaseSpace = phaseSpace
    self._orderCache = {}
    self._linearized = None

  def __repr__(self):
    return "PhaseBasis<%s, %d generators>" % (self.statistics, self.size)

  @property
  def size(self):
    return len(self.gram)

  @property
  def dataCoordinates(self):
    """Rows of the coordinates that carry Cauchy data."""
    return self.coordinates if self.linear or self.phaseSpace is None else self.coordinates[1:]

  # Constructors

  @classmethod
  def canonical(klass, phaseSpace):
    """e₀ = (I′ = 1, data 0) followed by unit u- and uNext-impulses."""
    return klass(BOSONIC, phaseSpace.gramCanonical(), np.eye(phaseSpace.dimension), phaseSpace=phaseSpace)

  @classmethod
  def canonicalLinear(klass, phaseSpace):
    """Unit u- and uNext-impulses of the linearized phase space."""
    return klass(BOSONIC, phaseSpace.gramCanonical(withNull=False), np.eye(phaseSpace.dimension - 1),
                 linear=True, phaseSpace=phaseSpace)

  @classmethod
  def spannedBy(klass, phaseSpace, vectors):
    """Basis of the given phase vectors, Gram matrix from Cauchy data."""
    gram = [[phaseSpace.tauCanonical(a, b) for b in vectors] for a in vectors]
    coordinates = np.column_stack([v.coordinates for v in vectors])
    return klass(BOSONIC, gram, coordinates, phaseSpace=phaseSpace)

  @classmethod
  def spannedByObservables(klass, phaseSpace, observables):
    """Basis of the classes of the given observables, Gram matrix from the
    spacetime sum τ; causally disjoint entries are exactly zero."""
    vectors = [phaseSpace.classify(phi) for phi in observables]
    propagated = [phaseSpace.operator.causalPropagator(phi.lin) for phi in observables]
    gram = [[phi.lin.pairing(g) for g in propagated] for phi in observables]
    coordinates = np.column_stack([v.coordinates for v in vectors])
    return klass(BOSONIC, gram, coordinates, phaseSpace=phaseSpace)

  @classmethod
  def fromGram(klass, gram, statistics):
    """Abstract basis (E, τ) with the identity as coordinates."""
    return klass(statistics, gram, linear=True)

  def linearized(self):
    """Basis of the linearized phase space with the same indices and Gram
    matrix; the I′ coordinate is dropped."""
    if self.linear:
      return self
    if self._linearized is None:
      self._linearized = PhaseBasis(self.statistics, self.gram, self.dataCoordinates, linear=True, phaseSpace=self.phaseSpace)
    return self._linearized

  def scalars(self):
    """Returns the I′ coordinate of each basis vector."""
    if self.linear or self.phaseSpace is None:
      return np.zeros(self.size)
    return self.coordinates[0]

  def coordinatesOf(self, pv):
    """Returns the coefficients of `pv` (a PhaseVector, or ambient coordinates)
    over the basis; raises `BasisError` outside the span."""
    target = np.asarray(getattr(pv, "coordinates", pv), dtype=float)
    if self.linear and self.phaseSpace is not None and len(target) == self.coordinates.shape[0] + 1:
      target = target[1:]
    if len(target) != self.coordinates.shape[0]:
      raise BasisError("Invalid vector length; expected=%d, actual=%d." % (self.coordinates.shape[0], len(target)))
    solution, *_ = np.linalg.lstsq(self.coordinates, target, rcond=None)
    residual = float(np.max(np.abs(self.coordinates @ solution - target), initial=0.0))
    if residual > 1e-9 * scaleOf(target):
      raise BasisError("Vector is not in the span of the basis; residual=%g." % residual)
    return solution

  def isCompatible(self, other):
    return self is other or (self.statistics == other.statistics and np.array_equal(self.gram, other.gram)
                             and np.array_equal(self.coordinates, other.coordinates))

  def normalOrder(self, word):
    return normalOrder(word, self.gram, self.statistics, self._orderCache)


class AlgebraElement(object):
  """A normal-ordered polynomial in the generators of a `PhaseBasis` with
  complex coefficients. The empty word is the unit 𝟏."""

  def __init__(self, basis, terms=None):
    self.basis = basis
    self.terms = pruned(terms or {})

  @property
  def statistics(self):
    return self.basis.statistics

  def __repr__(self):
    if not self.terms:
      return "0"
    parts = []
    for word in sorted(self.terms, key=lambda w: (len(w), w)):
      c = self.terms[word]
      name = "·".join("Ψ%d" % i for i in word) if word else "𝟏"
      parts.append("(%.17g%+.17gj)%s" % (c.real, c.imag, name))
    return " + ".join(parts)

  @classmethod
  def unit(klass, basis):
    return klass(basis, {(): 1.0})

  @classmethod
  def zero(klass, basis):
    return klass(basis)

  @classmethod
  def generatorAt(klass, basis, index):
    if not 0 <= index < basis.size:
      raise BasisError("Generator index %d out of range [0, %d)." % (index, basis.size))
    return klass(basis, {(index,): 1.0})

  @classmethod
  def monomial(klass, basis, word, coefficient=1.0):
    """Returns coefficient·Ψ_{w1}...Ψ_{wn}, normal ordered."""
    if len(word) > DEGREE_CAP:
      raise DegreeError("Monomial degree %d exceeds the cap %d." % (len(word), DEGREE_CAP))
    terms = defaultdict(complex)
    addInto(terms, basis.normalOrder(word), coefficient)
    return klass(basis, terms)

  @property
  def degree(self):
    return max((len(w) for w in self.terms), default=0)

  def unitCoefficient(self):
    return self.terms.get((), 0j)

  def coefficient(self, word):
    return self.terms.get(tuple(word), 0j)

  def _check(self, other):
    if other.statistics != self.statistics:
      raise StatisticsMismatch("Cannot combine %s and %s elements." % (self.statistics, other.statistics))
    if not self.basis.isCompatible(other.basis):
      raise BasisError("Elements live over different bases.")

  def _coerce(self, other):
    if isinstance(other, numbers.Number):
      return AlgebraElement(self.basis, {(): other})
    self._check(other)
    return other

  def __add__(self, other):
    other = self._coerce(other)
    terms = defaultdict(complex, self.terms)
    addInto(terms, other.terms)
    return AlgebraElement(self.basis, terms)

  __radd__ = __add__

  def __sub__(self, other):
    return self + (-1.0) * self._coerce(other)

  def __rsub__(self, other):
    return (-1.0) * self + other

  def __neg__(self):
    return (-1.0) * self

  def scaled(self, scalar):
    return AlgebraElement(self.basis, {w: scalar * c for w, c in self.terms.items()})

  def __mul__(self, other):
    if isinstance(other, numbers.Number):
      return self.scaled(other)
    return self.mul(other)

  def __rmul__(self, scalar):
    return self.scaled(scalar)

  def mul(self, other):
    """Returns the normal-ordered product self·other."""
    self._check(other)
    terms = defaultdict(complex)
    for w1, c1 in self.terms.items():
      for w2, c2 in other.terms.items():
        if len(w1) + len(w2) > DEGREE_CAP:
          raise DegreeError("Product degree %d exceeds the cap %d." % (len(w1) + len(w2), DEGREE_CAP))
        addInto(terms, self.basis.normalOrder(w1 + w2), c1 * c2)
    return AlgebraElement(self.basis, terms)

  def __pow__(self, n):
    result = AlgebraElement.unit(self.basis)
    for _ in range(n):
      result = result.mul(self)
    return result

  def star(self):
    """Reverses each word and conjugates coefficients."""
    terms = defaultdict(complex)
    for word, c in self.terms.items():
      addInto(terms, self.basis.normalOrder(word[::-1]), np.conj(c))
    return AlgebraElement(self.basis, terms)

  def isclose(self, other, tol=1e-12):
    other = self._coerce(other)
    words = set(self.terms) | set(other.terms)
    diff = [abs(self.coefficient(w) - other.coefficient(w)) for w in words]
    scale = max([1.0] + [abs(c) for c in self.terms.values()] + [abs(c) for c in other.terms.values()])
    return all(d <= tol * scale for d in diff)

  def isZero(self, tol=1e-12):
    return all(abs(c) <= tol for c in self.terms.values())

  def substituted(self, images, targetBasis):
    """Replaces each generator Ψ_i by `images[i]` (elements over
    `targetBasis`) and multiplies out in word order."""
    result = AlgebraElement.zero(targetBasis)
    unit = AlgebraElement.unit(targetBasis)
    for word, c in self.terms.items():
      product = unit
      for i in word:
        product = product.mul(images[i])
      result = result + product.scaled(c)
    return result


def generator(pv, basis):
  """Returns Ψ(pv) = Σ_i coeff_i·Ψ_i, with pv expanded over the basis."""
  coefficients = basis.coordinatesOf(pv)
  return AlgebraElement(basis, {(i,): c for i, c in enumerate(coefficients)})

def commutator(x, y):
  return x.mul(y) - y.mul(x)

def anticommutator(x, y):
  return x.mul(y) + y.mul(x)

def kappa(x):
  """Returns the image of a bosonic element over a phase-space basis in the
  algebra of the linearized theory:

    Ψ(e_a) ↦ Ψ_lin(e_a) + I′_a·𝟏

  with Ψ_lin(e_a) = 0 when e_a has no Cauchy data."""
  basis = x.basis
  if x.statistics != BOSONIC:
    raise StatisticsMismatch("Induction is defined on the bosonic algebra; actual=%s." % x.statistics)
  target = basis.linearized()
  scalars = basis.scalars()
  data = basis.dataCoordinates
  images = []
  for a in range(basis.size):
    image = AlgebraElement.unit(target).scaled(scalars[a])
    if np.any(data[:, a]):
      image = image + AlgebraElement.generatorAt(target, a)
    images.append(image)
  return x.substituted(images, target)

def functorMap(L, x, targetBasis=None, tol=1e-10):
  """Returns the image of `x` under the homomorphism Ψ_i ↦ Σ_j L[j][i]·Ψ'_j
  induced by a τ-preserving linear map L between basis coordinates."""
  source = x.basis
  target = source if targetBasis is None else targetBasis
  if target.statistics != source.statistics:
    raise StatisticsMismatch("Cannot map %s elements into a %s algebra." % (source.statistics, target.statistics))
  L = np.asarray(L, dtype=float)
  if L.shape != (target.size, source.size):
    raise GramError("Invalid map shape; expected=%s, actual=%s." % ((target.size, source.size), L.shape))
  pulled = L.T @ target.gram @ L
  defect = float(np.max(np.abs(pulled - source.gram), initial=0.0))
  if defect > tol * scaleOf(source.gram, pulled):
    raise GramError("Map does not preserve the Gram matrix; defect=%g." % defect)
  logger.debug("Functor map %s -> %s, gram defect %.3e", source, target, defect)
  images = [AlgebraElement(target, {(j,): L[j, i] for j in range(target.size)}) for i in range(source.size)]
  return x.substituted(images, target)
