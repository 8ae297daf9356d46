import numpy as np
import pytest

from affinefields.errors import WindowError
from affinefields.lattice import Region
from affinefields.observable import DualObservable
from affinefields.operator import AffineOperator
from affinefields.phasespace import PhaseSpace
from affinefields.section import Section


def test_deformation_lands_in_the_window_with_the_same_class(phase_space, lattice, rng):
    window = (28, 36)
    for _ in range(100):
        phi = DualObservable.random(lattice, rng, sites=5)
        deformation = phase_space.deform(phi, window)
        moved = deformation.observable
        assert moved.supportedIn(*window)
        assert deformation.tMid == 32
        assert deformation.testSection.isCompactlySupported
        a = phase_space.classify(phi).coordinates
        b = phase_space.classify(moved).coordinates
        assert np.max(np.abs(a - b)) <= 1e-9 * max(1.0, np.max(np.abs(a)))


def test_deformed_linear_part_is_thin(phase_space, lattice, rng):
    phi = DualObservable.random(lattice, rng)
    moved = phase_space.timesliceDeform(phi, (10, 50))
    outside = np.delete(moved.lin.values, [28, 29, 30], axis=0)
    assert np.max(np.abs(outside)) <= 1e-9 * max(1.0, phi.lin.norm())
    assert moved.c.slices == [30]


def test_region_windows(phase_space, lattice, rng):
    phi = DualObservable.random(lattice, rng, sites=5)
    moved = phase_space.timesliceDeform(phi, lattice.window(28, 36))
    assert moved.supportedIn(28, 36)
    assert phase_space.classesAgree(phi, moved)


def test_observables_inside_the_window_keep_their_class(phase_space, lattice, rng):
    phi = DualObservable.random(lattice, rng, slices=range(30, 34), sites=6)
    moved = phase_space.timesliceDeform(phi, (28, 36))
    assert phase_space.classesAgree(phi, moved)


def test_scalar_observables_move_as_bumps(phase_space, lattice):
    phi = DualObservable.one(lattice, Section.delta(lattice, (5, 3), 2.0))
    moved = phase_space.timesliceDeform(phi, (40, 50))
    assert moved.lin.isZero
    assert moved.integral() == pytest.approx(phi.integral())
    assert moved.c.slices == [45]


@pytest.mark.parametrize("window,message", [
    ((30, 33), "too narrow"),
    ((60, 70), "out of range"),
])
def test_invalid_windows(phase_space, lattice, window, message):
    with pytest.raises(WindowError, match=message):
        phase_space.deform(DualObservable.delta(lattice, (10, 0)), window)


def test_regions_without_a_cauchy_slice(phase_space, lattice):
    phi = DualObservable.delta(lattice, (10, 0))
    with pytest.raises(WindowError, match="empty"):
        phase_space.deform(phi, Region(lattice, np.zeros(lattice.shape, dtype=bool)))
    with pytest.raises(WindowError, match="Cauchy"):
        phase_space.deform(phi, lattice.region([(30, 0), (36, 0)]))


def test_deformation_in_the_homogeneous_theory(lattice, rng):
    ps = PhaseSpace(AffineOperator.homogeneous(lattice))
    phi = DualObservable.linear(lattice, Section.random(lattice, rng, sites=4))
    moved = ps.timesliceDeform(phi, (20, 30))
    assert moved.supportedIn(20, 30)
    assert ps.classesAgree(phi, moved)
