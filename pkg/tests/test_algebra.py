import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinefields.algebra import (AlgebraElement, PhaseBasis, anticommutator, commutator, functorMap, generator,
                                  kappa)
from affinefields.algebra.normalorder import normalOrder
from affinefields.errors import BasisError, DegreeError, GramError, StatisticsMismatch
from affinefields.observable import DualObservable
from affinefields.phasespace import PhaseVector
from affinefields.phasespace.embedding import RegionEmbedding
from affinefields.utils import BOSONIC, FERMIONIC

SYMPLECTIC = np.array([[0.0, -1.0], [1.0, 0.0]])


def random_antisymmetric(rng, n):
    a = rng.standard_normal((n, n))
    return a - a.T


def random_element(rng, basis, degree=2):
    x = AlgebraElement.zero(basis)
    for _ in range(4):
        word = tuple(int(i) for i in rng.integers(0, basis.size, size=int(rng.integers(0, degree + 1))))
        coefficient = complex(rng.standard_normal(), rng.standard_normal())
        x = x + AlgebraElement.monomial(basis, word, coefficient)
    return x


@pytest.fixture
def bosonic(rng):
    return PhaseBasis.fromGram(random_antisymmetric(rng, 4), BOSONIC)


@pytest.fixture
def fermionic(rng):
    m = rng.standard_normal((4, 4))
    return PhaseBasis.fromGram(m.T @ m + np.eye(4), FERMIONIC)


def test_canonical_commutation_relations(small_phase_space):
    basis = PhaseBasis.canonical(small_phase_space)
    for i in range(basis.size):
        for j in range(basis.size):
            bracket = commutator(AlgebraElement.generatorAt(basis, i), AlgebraElement.generatorAt(basis, j))
            expected = AlgebraElement.unit(basis) * (1j * basis.gram[i][j])
            assert bracket.isclose(expected, 1e-12)


def test_canonical_anticommutation_relations(fermionic):
    for i in range(fermionic.size):
        for j in range(fermionic.size):
            bracket = anticommutator(AlgebraElement.generatorAt(fermionic, i), AlgebraElement.generatorAt(fermionic, j))
            assert bracket.isclose(AlgebraElement.unit(fermionic) * fermionic.gram[i][j], 1e-12)


def test_fermionic_squares_are_scalars(fermionic):
    psi = AlgebraElement.generatorAt(fermionic, 2)
    assert (psi * psi).isclose(AlgebraElement.unit(fermionic) * (0.5 * fermionic.gram[2][2]), 1e-12)
    assert (psi ** 2).degree == 0


def test_bosonic_squares_stay_normal_ordered(bosonic):
    psi = AlgebraElement.generatorAt(bosonic, 1)
    assert (psi * psi).terms == {(1, 1): 1.0}


def test_associativity(rng, bosonic, fermionic):
    for basis in (bosonic, fermionic):
        for _ in range(50):
            x, y, z = (random_element(rng, basis) for _ in range(3))
            assert ((x * y) * z).isclose(x * (y * z), 1e-10)


def test_star_is_an_antilinear_antiautomorphism(rng, bosonic, fermionic):
    for basis in (bosonic, fermionic):
        for i in range(basis.size):
            psi = AlgebraElement.generatorAt(basis, i)
            assert psi.star().isclose(psi, 0.0)
        for _ in range(20):
            x, y = random_element(rng, basis), random_element(rng, basis)
            assert (x * y).star().isclose(y.star() * x.star(), 1e-10)
            assert (x * 1j).star().isclose(x.star() * -1j, 1e-12)


@settings(max_examples=50, deadline=None)
@given(word=st.lists(st.integers(min_value=0, max_value=3), max_size=6))
def test_normal_forms(word):
    gram = np.array([[0.0, 1.0, -2.0, 0.5], [-1.0, 0.0, 3.0, 0.0], [2.0, -3.0, 0.0, 1.0], [-0.5, 0.0, -1.0, 0.0]])
    form = normalOrder(word, gram, BOSONIC)
    for w in form:
        assert list(w) == sorted(w)
        assert len(w) <= len(word) and (len(word) - len(w)) % 2 == 0
    assert normalOrder(word, gram, BOSONIC, {}) == form
    if list(word) == sorted(word):
        assert form == {tuple(word): 1.0}


def test_gram_symmetry_is_checked():
    with pytest.raises(GramError, match="antisymmetric"):
        PhaseBasis.fromGram([[0.0, 1.0], [1.0, 0.0]], BOSONIC)
    with pytest.raises(GramError, match="symmetric"):
        PhaseBasis.fromGram(SYMPLECTIC, FERMIONIC)
    with pytest.raises(GramError, match="square"):
        PhaseBasis.fromGram(np.zeros((2, 3)), BOSONIC)
    with pytest.raises(StatisticsMismatch):
        PhaseBasis.fromGram(SYMPLECTIC, "anyonic")


def test_mixing_bases_is_rejected(bosonic, fermionic):
    with pytest.raises(StatisticsMismatch):
        AlgebraElement.generatorAt(bosonic, 0) + AlgebraElement.generatorAt(fermionic, 0)
    other = PhaseBasis.fromGram(-bosonic.gram, BOSONIC)
    with pytest.raises(BasisError):
        AlgebraElement.generatorAt(bosonic, 0) * AlgebraElement.generatorAt(other, 0)
    with pytest.raises(BasisError, match="out of range"):
        AlgebraElement.generatorAt(bosonic, 4)


def test_degree_cap(bosonic):
    with pytest.raises(DegreeError):
        AlgebraElement.monomial(bosonic, (0,) * 13)
    psi = AlgebraElement.generatorAt(bosonic, 0)
    with pytest.raises(DegreeError):
        AlgebraElement.monomial(bosonic, (0,) * 12) * psi


def test_causally_disjoint_generators_commute_exactly(phase_space, lattice):
    phi = DualObservable.delta(lattice, (30, 0))
    psi = DualObservable.delta(lattice, (33, 4))
    basis = PhaseBasis.spannedByObservables(phase_space, [phi, psi])
    assert basis.gram[0, 1] == 0.0
    bracket = commutator(AlgebraElement.generatorAt(basis, 0), AlgebraElement.generatorAt(basis, 1))
    assert bracket.terms == {}


def test_generators_of_phase_vectors(small_phase_space, rng):
    basis = PhaseBasis.canonical(small_phase_space)
    pv = PhaseVector.fromCoordinates(rng.standard_normal(small_phase_space.dimension))
    psi = generator(pv, basis)
    assert psi.degree == 1
    np.testing.assert_allclose([psi.coefficient((i,)).real for i in range(basis.size)], pv.coordinates, atol=1e-12)
    narrow = PhaseBasis.spannedBy(small_phase_space, [PhaseVector.null(small_phase_space.lattice.nX)])
    with pytest.raises(BasisError, match="span"):
        generator(pv, narrow)


def test_kappa_is_a_unital_star_homomorphism(small_phase_space, rng):
    lattice = small_phase_space.lattice
    observables = [DualObservable.random(lattice, rng, sites=3) for _ in range(3)]
    basis = PhaseBasis.spannedByObservables(small_phase_space, observables)
    target = basis.linearized()
    assert kappa(AlgebraElement.unit(basis)).isclose(AlgebraElement.unit(target), 0.0)
    for _ in range(50):
        x, y = random_element(rng, basis), random_element(rng, basis)
        assert kappa(x * y).isclose(kappa(x) * kappa(y), 1e-10)
        assert kappa(x.star()).isclose(kappa(x).star(), 1e-10)


def test_kappa_sends_scalars_to_multiples_of_the_unit(small_phase_space, rng):
    lattice = small_phase_space.lattice
    scalar = DualObservable.one(lattice, small_phase_space.bump(8) * 3.0)
    basis = PhaseBasis.spannedByObservables(small_phase_space, [scalar])
    image = kappa(AlgebraElement.generatorAt(basis, 0))
    assert image.degree == 0
    assert image.unitCoefficient() == pytest.approx(3.0)


def test_kappa_needs_bosonic_elements(fermionic):
    with pytest.raises(StatisticsMismatch):
        kappa(AlgebraElement.generatorAt(fermionic, 0))


def test_functor_map_is_a_homomorphism(rng):
    basis = PhaseBasis.fromGram(SYMPLECTIC, BOSONIC)
    L = np.array([[2.0, 1.0], [3.0, 2.0]])
    for _ in range(20):
        x, y = random_element(rng, basis), random_element(rng, basis)
        assert functorMap(L, x * y).isclose(functorMap(L, x) * functorMap(L, y), 1e-10)
    with pytest.raises(GramError, match="preserve"):
        functorMap(2.0 * L, AlgebraElement.generatorAt(basis, 0))
    with pytest.raises(GramError, match="shape"):
        functorMap(np.eye(3), AlgebraElement.generatorAt(basis, 0))


def test_functor_map_along_window_embeddings(phase_space, rng):
    embedding = RegionEmbedding.window(phase_space, 10, 40)
    source = PhaseBasis.canonical(embedding.source)
    target = PhaseBasis.canonical(embedding.target)
    L = embedding.inducedMap()
    x = random_element(rng, source, degree=1)
    y = random_element(rng, source, degree=1)
    image = functorMap(L, x * y, target, tol=1e-8)
    assert image.isclose(functorMap(L, x, target, tol=1e-8) * functorMap(L, y, target, tol=1e-8), 1e-9)


def test_window_embedding_reaches_every_target_generator(phase_space):
    embedding = RegionEmbedding.window(phase_space, 10, 40)
    source = PhaseBasis.canonical(embedding.source)
    target = PhaseBasis.canonical(embedding.target)
    L = embedding.inducedMap()
    for k in range(target.size):
        e = np.zeros(target.size)
        e[k] = 1.0
        a = np.linalg.solve(L, e)
        x = AlgebraElement(source, {(i,): a[i] for i in range(source.size)})
        assert functorMap(L, x, target, tol=1e-8).isclose(AlgebraElement.generatorAt(target, k), 1e-8)
