import numpy as np
import pytest

from affinefields.errors import LatticeError, LatticeMismatch, ResidualError, SupportError
from affinefields.lattice import LatticeSpacetime
from affinefields.observable import DualObservable
from affinefields.operator import AffineOperator
from affinefields.section import Section
from affinefields.utils import leapfrog


def test_section_basics(lattice):
    h = Section.delta(lattice, (4, 2)) * 3.0
    assert h.support == {(4, 2)}
    assert h[(4, 2)] == 3.0
    assert h.integral() == pytest.approx(1.5)
    assert list(h.triples()) == [(4, 2, 3.0)]
    assert h.isCompactlySupported
    assert (h + h - h) == h
    assert h.restrictedTo(5, 10).isZero
    assert h.timeReflected().slices == [59]
    with pytest.raises(LatticeError):
        Section.delta(lattice, (0, 16))
    with pytest.raises(LatticeError, match="shape"):
        Section(lattice, np.zeros((3, 3)))
    with pytest.raises(LatticeMismatch):
        h + Section.zero(lattice.withSlices(30))


def test_section_support_checks(lattice):
    edge = Section.delta(lattice, (1, 0))
    assert edge.vanishesOnBoundary
    assert not edge.isCompactlySupported
    with pytest.raises(SupportError, match=r"\[2, 61\]"):
        edge.checkCompactSupport()
    with pytest.raises(SupportError):
        Section.delta(lattice, (63, 0)).checkInterior()


def test_from_triples_adds_repeated_sites(lattice):
    s = Section.fromTriples(lattice, [(5, 1, 1.0), (5, 1, 2.5)])
    assert s[(5, 1)] == 3.5


def test_observable_evaluation(lattice, rng):
    s = Section(lattice, rng.standard_normal(lattice.shape))
    phi = DualObservable.delta(lattice, (10, 3), 2.0) + DualObservable.one(lattice, Section.delta(lattice, (12, 0)))
    assert phi(s) == pytest.approx(lattice.vol * (2.0 * s[(10, 3)] + 1.0))
    assert phi.isAdmissible
    assert not DualObservable.delta(lattice, (0, 3)).isAdmissible
    trivial = DualObservable.one(lattice, Section.delta(lattice, (10, 0)) - Section.delta(lattice, (20, 5)))
    assert trivial.isTrivial
    assert not phi.isTrivial


def test_source_must_be_compactly_supported(lattice):
    with pytest.raises(SupportError, match="source"):
        AffineOperator(lattice, Section.delta(lattice, (1, 4)))


def test_green_operators_invert_the_stencil(operator, lattice, rng):
    for _ in range(50):
        h = Section.random(lattice, rng)
        assert operator.applyLinear(operator.retarded(h)).isclose(h, 1e-9)
        assert operator.applyLinear(operator.advanced(h)).isclose(h, 1e-9)
        d = operator.applyLinear(h)
        assert operator.retarded(d).isclose(h, 1e-9)
        assert operator.advanced(d).isclose(h, 1e-9)


def test_green_supports_stay_in_the_cones(operator, lattice, rng):
    for _ in range(50):
        h = Section.random(lattice, rng, sites=3)
        future = lattice.futureMask(h.supportMask)
        past = lattice.pastMask(h.supportMask)
        assert not np.any(operator.retarded(h).supportMask & ~future)
        assert not np.any(operator.advanced(h).supportMask & ~past)


def test_exactness(operator, lattice, rng):
    for _ in range(20):
        h = Section.random(lattice, rng)
        d = operator.applyLinear(h)
        assert operator.causalPropagator(d).isclose(Section.zero(lattice), 1e-9)
        assert operator.applyLinear(operator.retarded(d)).isclose(d, 1e-9)


def test_causal_propagator_is_homogeneous(operator, lattice, rng):
    h = Section.random(lattice, rng)
    g = operator.causalPropagator(h)
    assert operator.applyLinear(g).isclose(Section.zero(lattice), 1e-9)


def test_green_sources_must_be_interior(operator, lattice):
    with pytest.raises(SupportError, match="Green source"):
        operator.retarded(Section.delta(lattice, (0, 0)))


def test_formal_adjoint_identity(phase_space, operator, lattice, rng):
    for _ in range(50):
        h = Section.random(lattice, rng)
        s = Section(lattice, rng.standard_normal(lattice.shape))
        assert phase_space.adjointDefect(h, s) <= 1e-10
        assert phase_space.adjointDefect(h, s, withDivergence=True) <= 1e-10
        assert phase_space.satisfiesAdjointIdentity(h, s)


def test_stencil_is_symmetric(operator, lattice, rng):
    for _ in range(20):
        a, b = Section.random(lattice, rng), Section.random(lattice, rng)
        lhs = a.pairing(operator.applyLinear(b))
        rhs = operator.applyLinear(a).pairing(b)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_causal_propagator_is_skew(operator, lattice, rng):
    for _ in range(50):
        h, k = Section.random(lattice, rng, sites=6), Section.random(lattice, rng, sites=6)
        lhs = k.pairing(operator.causalPropagator(h))
        rhs = -h.pairing(operator.causalPropagator(k))
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs), abs(rhs))


def test_time_divergence_integrates_to_zero(operator, lattice, rng):
    h = Section.random(lattice, rng)
    assert abs(operator.timeDivergence(h).integral()) <= 1e-10 * max(1.0, h.norm())


def test_formal_adjoint_needs_compact_sections(operator, lattice):
    with pytest.raises(SupportError, match="test section"):
        operator.formalAdjoint(Section.delta(lattice, (1, 0)))


def test_reference_solution(operator, source, lattice):
    s = operator.referenceSolution
    assert operator.apply(s).norm() <= 1e-9
    assert not np.any(s.values[:source.tMin + 1])
    assert operator.solveReference() is s


def test_homogeneous_theory_has_zero_reference(lattice):
    assert AffineOperator.homogeneous(lattice).referenceSolution.isZero


def test_unstable_reference_solution_is_rejected():
    lattice = LatticeSpacetime(8, 120, dx=1.0, dt=1.0, mass=1.0)
    operator = AffineOperator(lattice, Section.delta(lattice, (5, 0)))
    with pytest.raises(ResidualError):
        operator.referenceSolution


def test_evolve_reproduces_its_data(lattice, rng):
    u, uNext = rng.standard_normal(lattice.nX), rng.standard_normal(lattice.nX)
    values = leapfrog.evolve(u, uNext, 30, lattice.nT, lattice.dx, lattice.dt, lattice.mass)
    np.testing.assert_array_equal(values[30], u)
    np.testing.assert_array_equal(values[31], uNext)
    residual = leapfrog.kleinGordon(values, lattice.dx, lattice.dt, lattice.mass)
    assert np.max(np.abs(residual)) <= 1e-9 * np.max(np.abs(values))


def test_delta_source_examples(operator, lattice):
    t0, x0 = 20, 5
    forward = operator.retarded(Section.delta(lattice, (t0, x0)))
    assert forward.tMin == t0 + 1
    assert forward[(t0 + 1, x0)] == lattice.dt ** 2
    assert forward.slice(t0 + 1).tolist() == [lattice.dt ** 2 if x == x0 else 0.0 for x in range(lattice.nX)]
    backward = operator.advanced(Section.delta(lattice, (t0, x0)))
    assert backward.tMax == t0 - 1
    assert backward[(t0 - 1, x0)] == lattice.dt ** 2


def test_reference_solution_of_a_delta_source(lattice):
    operator = AffineOperator(lattice, Section.delta(lattice, (12, 7), 2.0))
    s = operator.solveReference()
    assert s.tMin == 13
    assert s[(13, 7)] == -2.0 * lattice.dt ** 2
    assert s.slice(13).tolist().count(0.0) == lattice.nX - 1
    assert operator.apply(s).norm() <= 1e-9


def test_green_sources_may_use_every_interior_slice(operator, lattice):
    for t in (1, lattice.nT - 2):
        h = Section.delta(lattice, (t, 0))
        assert operator.applyLinear(operator.retarded(h)).isclose(h, 1e-9)
    with pytest.raises(SupportError):
        operator.advanced(Section.delta(lattice, (lattice.nT - 1, 0)))
