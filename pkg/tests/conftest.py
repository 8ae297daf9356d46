import numpy as np
import pytest

from affinefields.lattice import LatticeSpacetime
from affinefields.operator import AffineOperator
from affinefields.phasespace import PhaseSpace
from affinefields.section import Section


@pytest.fixture
def lattice():
    return LatticeSpacetime(16, 64, dx=1.0, dt=0.5, mass=1.0)


@pytest.fixture
def small_lattice():
    return LatticeSpacetime(6, 20, dx=1.0, dt=0.5, mass=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def source(lattice):
    return Section.fromTriples(lattice, [(20, 3, 1.5), (31, 8, -0.75), (40, 12, 2.0)])


@pytest.fixture
def operator(lattice, source):
    return AffineOperator(lattice, source)


@pytest.fixture
def phase_space(operator):
    return PhaseSpace(operator)


@pytest.fixture
def small_phase_space(small_lattice):
    source = Section.fromTriples(small_lattice, [(7, 1, 1.0), (10, 4, -0.5)])
    return PhaseSpace(AffineOperator(small_lattice, source))
