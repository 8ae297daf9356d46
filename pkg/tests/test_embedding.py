import numpy as np
import pytest

from affinefields.errors import LatticeMismatch, SupportError
from affinefields.lattice import Region
from affinefields.observable import DualObservable
from affinefields.operator import AffineOperator
from affinefields.phasespace import PhaseSpace, PhaseVector
from affinefields.phasespace.embedding import RegionEmbedding
from affinefields.section import Section


@pytest.fixture
def embedding(phase_space):
    return RegionEmbedding.window(phase_space, 10, 40)


def test_window_embedding(embedding, phase_space):
    assert embedding.source.lattice.nT == 40
    assert embedding.target is phase_space
    assert (embedding.image.tMin, embedding.image.tMax) == (10, 49)
    assert embedding.pushforwardSection(embedding.source.operator.source) == phase_space.operator.source


def test_pushforward_preserves_tau(embedding, rng):
    lattice = embedding.source.lattice
    for _ in range(20):
        phi = DualObservable.random(lattice, rng, sites=5)
        psi = DualObservable.random(lattice, rng, sites=5)
        expected = embedding.source.tau(phi, psi)
        pushed = embedding.target.tau(embedding.pushforward(phi), embedding.pushforward(psi))
        assert pushed == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_pushforward_preserves_scalars_and_nulls(embedding, rng):
    lattice = embedding.source.lattice
    phi = DualObservable.random(lattice, rng, sites=5)
    a = embedding.source.classify(phi)
    b = embedding.target.classify(embedding.pushforward(phi))
    assert b.iPrime == pytest.approx(a.iPrime, rel=1e-9, abs=1e-9)
    null = DualObservable.one(lattice, Section.random(lattice, rng, sites=3))
    assert embedding.target.classify(embedding.pushforward(null)).isNull()


def test_green_restriction(embedding, rng):
    source, target = embedding.source.operator, embedding.target.operator
    for _ in range(50):
        h = Section.random(source.lattice, rng)
        pushed = embedding.pushforwardSection(h)
        assert embedding.pullbackSection(target.retarded(pushed)).isclose(source.retarded(h), 1e-9)
        assert embedding.pullbackSection(target.advanced(pushed)).isclose(source.advanced(h), 1e-9)


def test_induced_map_preserves_the_canonical_form(embedding):
    L = embedding.inducedMap()
    pulled = L.T @ embedding.target.gramCanonical() @ L
    np.testing.assert_allclose(pulled, embedding.source.gramCanonical(), atol=1e-9)
    assert L[0, 0] == pytest.approx(1.0)
    np.testing.assert_allclose(L[1:, 0], 0.0, atol=1e-12)


def test_compose_adds_offsets(embedding, rng):
    inner = RegionEmbedding.window(embedding.source, 4, 30)
    composed = embedding.compose(inner)
    assert composed.offset == 14
    phi = DualObservable.random(inner.source.lattice, rng, sites=4)
    direct = composed.pushforward(phi)
    stepwise = embedding.pushforward(inner.pushforward(phi))
    assert direct.isclose(stepwise, 0.0)
    with pytest.raises(LatticeMismatch):
        inner.compose(embedding)


def test_pullback_needs_support_in_the_window(embedding, lattice):
    with pytest.raises(SupportError):
        embedding.pullback(DualObservable.delta(lattice, (5, 0)))
    inside = DualObservable.delta(lattice, (30, 0))
    assert embedding.pushforward(embedding.pullback(inside)).isclose(inside, 0.0)


def test_source_must_extend_by_zero(phase_space, small_lattice):
    wide = phase_space.lattice.withSlices(40)
    with pytest.raises(LatticeMismatch, match="extended by zero"):
        RegionEmbedding(AffineOperator(wide), phase_space, 10)
    with pytest.raises(LatticeMismatch, match="spatial data"):
        RegionEmbedding(AffineOperator(small_lattice), phase_space, 0)
    with pytest.raises(LatticeMismatch, match="offset"):
        RegionEmbedding(AffineOperator(wide), phase_space, 30)


def test_window_iso_on_identity(phase_space):
    report = RegionEmbedding.identity(phase_space).isIsoOnWindow((28, 36))
    assert report
    assert report.checked == phase_space.dimension
    assert report.maxDelta <= 1e-9


def test_window_iso_on_window_embedding(embedding):
    report = embedding.isIsoOnWindow()
    assert report.passed, report.message


def test_window_iso_accepts_regions(phase_space):
    embedding = RegionEmbedding.identity(phase_space)
    assert embedding.isIsoOnWindow(phase_space.lattice.window(28, 36))
    empty = Region(phase_space.lattice, np.zeros(phase_space.lattice.shape, dtype=bool))
    report = embedding.isIsoOnWindow(empty)
    assert not report
    assert report.message == "empty window"


def test_narrow_window_is_reported(phase_space):
    report = RegionEmbedding.identity(phase_space).isIsoOnWindow((30, 32))
    assert not report.passed
    assert "too narrow" in report.message


def test_accepts_operators(operator):
    embedding = RegionEmbedding(operator, operator, 0)
    assert isinstance(embedding.source, PhaseSpace)


def test_window_embedding_is_onto(embedding):
    L = embedding.inducedMap()
    assert np.linalg.matrix_rank(L) == embedding.target.dimension
    for k in range(embedding.target.dimension):
        e = np.zeros(embedding.target.dimension)
        e[k] = 1.0
        preimage = embedding.source.realize(PhaseVector.fromCoordinates(np.linalg.solve(L, e)))
        image = embedding.target.classify(embedding.pushforward(preimage))
        np.testing.assert_allclose(image.coordinates, e, atol=1e-8)
