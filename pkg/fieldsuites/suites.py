import logging
from typing import Any, Dict, List, NamedTuple, Sequence

import numpy as np
from tqdm import tqdm

from affinefields.algebra import AlgebraElement, PhaseBasis, commutator
from affinefields.errors import ConfigError
from affinefields.observable import DualObservable
from affinefields.phasespace import PhaseSpace
from affinefields.phasespace.embedding import RegionEmbedding
from affinefields.section import Section
from affinefields.states import InducedAffineState, QuasiFreeState, momentExpansion
from affinefields.utils import FERMIONIC, GREEN_TOLERANCE, MOMENT_TOLERANCE
from fieldsuites.config import RunConfig

logger = logging.getLogger(__name__)

N_MAX = 6
SCAN_STEPS = 6
MIN_DISJOINT_PAIRS = 200
FERMIONIC_MODES = 6


class SuiteResult(NamedTuple):
    name: str
    header: Sequence[str]
    rows: List[Sequence[Any]]
    summary: Dict[str, Any]
    passed: bool


class SuiteRunner:
    """
    Runs the verification suites for one configuration. Every randomized
    suite draws from its own generator seeded with `config.seed`, so results
    do not depend on the order suites are run in.
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.operator = config.operator()
        self.lattice = self.operator.lattice
        self.phase_space = PhaseSpace(self.operator)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.config.seed)

    def run(self, name: str) -> SuiteResult:
        suites = {
            "demo-inhomogeneous": self.demo_inhomogeneous,
            "moments": self.moments,
            "causality-scan": self.causality_scan,
            "timeslice": self.timeslice,
        }
        if name not in suites:
            raise ConfigError(f"Unknown suite {name!r}; expected one of {', '.join(suites)}.")
        logger.info("Running %s on %r", name, self.lattice)
        return suites[name]()

    def demo_inhomogeneous(self) -> SuiteResult:
        """
        Recovers the source J from the one-point values of the observables
        <P_V h, .> for delta sections h: on-shell, F(h) = -vol * J(site).
        The linearized observables <h, . - s*> are reported alongside; their
        one-point values vanish for every J.
        """
        lattice = self.lattice
        state = InducedAffineState.groundState(self.phase_space)
        s_star = self.phase_space.referenceSolution
        sites = [(t, x) for t in lattice.compactSlices for x in range(lattice.nX)]
        one_points, direct, linearized = [], [], []
        for site in tqdm(sites, desc="demo-inhomogeneous", disable=None):
            h = Section.delta(lattice, site)
            phi = DualObservable.linear(lattice, self.operator.applyLinear(h))
            one_points.append(state.onePoint(phi).real)
            direct.append(phi(s_star))
            linearized.append(state.onePoint(self.phase_space.linearObservable(h)).real)
        response = -lattice.vol * np.eye(len(sites))
        recovered, *_ = np.linalg.lstsq(response, np.array(one_points), rcond=None)
        source = self.operator.source.values
        expected = np.array([source[t, x] for t, x in sites])
        errors = np.abs(recovered - expected)
        max_error = float(errors.max(initial=0.0))
        passed = max_error <= GREEN_TOLERANCE * max(1.0, float(np.abs(expected).max(initial=0.0)))
        rows = [
            (t, x, float(expected[i]), float(one_points[i]), float(direct[i]), float(recovered[i]),
             float(errors[i]), float(linearized[i]))
            for i, (t, x) in enumerate(sites)
        ]
        summary = {
            "sites": len(sites),
            "max_error": max_error,
            "max_linearized_one_point": float(np.abs(linearized).max(initial=0.0)),
        }
        header = ("t", "x", "j_input", "one_point", "on_shell_value", "j_recovered", "error",
                  "linearized_one_point")
        return SuiteResult("demo-inhomogeneous", header, rows, summary, passed)

    def _random_observables(self, rng: np.random.Generator) -> List[DualObservable]:
        return [DualObservable.random(self.lattice, rng, sites=3) for _ in range(N_MAX)]

    def _fermionic_state(self, rng: np.random.Generator):
        m = rng.standard_normal((FERMIONIC_MODES, FERMIONIC_MODES))
        gram = m.T @ m + 2.0 * np.eye(FERMIONIC_MODES)
        a = rng.standard_normal((FERMIONIC_MODES, FERMIONIC_MODES))
        a = a - a.T
        a *= 0.5 / max(1e-12, float(np.linalg.norm(a, 2)))
        basis = PhaseBasis.fromGram(gram, FERMIONIC)
        state = QuasiFreeState.fermionic(basis, a)
        return state, basis

    def moments(self) -> SuiteResult:
        """
        Moments and truncated moments up to n = 6 over seeded random
        arguments. Bosonic runs use the state induced by the ground state
        on the configured theory; fermionic runs use a quasi-free CAR state
        over a random positive Gram matrix.
        """
        rng = self.rng()
        rows = []
        worst = 0.0
        scale = 1.0
        passed = True
        if self.config.statistics == FERMIONIC:
            state, basis = self._fermionic_state(rng)
        else:
            state = InducedAffineState.groundState(self.phase_space)
        for sample in tqdm(range(self.config.samples), desc="moments", disable=None):
            if self.config.statistics == FERMIONIC:
                arguments = [
                    AlgebraElement(basis, {(j,): c for j, c in enumerate(rng.standard_normal(basis.size))})
                    for _ in range(N_MAX)
                ]
            else:
                arguments = self._random_observables(rng)
            expansion = momentExpansion(state, arguments, N_MAX)
            scale = max(scale, expansion.scale)
            for n in range(1, N_MAX + 1):
                value = complex(expansion.moments[n])
                truncated = complex(expansion.truncated[n])
                flagged = n > 2 and abs(truncated) > MOMENT_TOLERANCE * expansion.scale
                if n > 2:
                    worst = max(worst, abs(truncated) / expansion.scale)
                passed = passed and not flagged
                rows.append((sample, n, " ".join(str(i) for i in range(n)), value.real, value.imag,
                             truncated.real, truncated.imag, flagged))
        summary = {"samples": self.config.samples, "n_max": N_MAX, "max_relative_truncated": worst,
                   "statistics": self.config.statistics, "scale": scale}
        header = ("sample", "n", "arguments", "re", "im", "truncated_re", "truncated_im", "flagged")
        return SuiteResult("moments", header, rows, summary, passed)

    def _scan_centers(self):
        lattice = self.lattice
        middle = lattice.nT // 2
        return [(middle, 0), (middle + 1, lattice.nX // 2)]

    def causality_scan(self) -> SuiteResult:
        """
        Pairs each of two centers with the delta observable at every site
        within SCAN_STEPS slices of it: tau and the commutator of the
        generators must vanish exactly for every causally disjoint pair.
        """
        lattice = self.lattice
        ps = self.phase_space
        rows = []
        violations = 0
        pairs = []
        for center in self._scan_centers():
            for step in range(-SCAN_STEPS, SCAN_STEPS + 1):
                for x in range(lattice.nX):
                    other = (center[0] + step, x)
                    if other[0] in lattice.compactSlices and center[0] in lattice.compactSlices:
                        pairs.append((center, other, step))
        for center, other, step in tqdm(pairs, desc="causality-scan", disable=None):
            phi = DualObservable.delta(lattice, center)
            psi = DualObservable.delta(lattice, other)
            disjoint = lattice.causallyDisjoint([center], [other])
            tau = ps.tau(phi, psi)
            basis = PhaseBasis.spannedByObservables(ps, [phi, psi])
            bracket = commutator(AlgebraElement.generatorAt(basis, 0), AlgebraElement.generatorAt(basis, 1))
            norm = max([0.0] + [abs(c) for c in bracket.terms.values()])
            ok = not disjoint or (tau == 0.0 and norm == 0.0)
            violations += 0 if ok else 1
            rows.append((center[0], center[1], other[0], other[1], step, lattice.circleDistance(center[1], other[1]),
                         disjoint, tau, norm, ok))
        zero = DualObservable.zero(lattice)
        empty_tau = ps.tau(zero, zero)
        rows.append((-1, -1, -1, -1, 0, 0, True, empty_tau, 0.0, empty_tau == 0.0))
        violations += 0 if empty_tau == 0.0 else 1
        disjoint_pairs = sum(1 for r in rows[:-1] if r[6])
        if disjoint_pairs < MIN_DISJOINT_PAIRS:
            logger.warning("Only %d causally disjoint pairs fit on %r (wanted %d)", disjoint_pairs, lattice, MIN_DISJOINT_PAIRS)
        summary = {
            "pairs": len(pairs),
            "disjoint_pairs": disjoint_pairs,
            "min_disjoint_pairs": MIN_DISJOINT_PAIRS,
            "violations": violations,
        }
        header = ("t1", "x1", "t2", "x2", "dt", "distance", "disjoint", "tau", "commutator_norm", "ok")
        return SuiteResult("causality-scan", header, rows, summary, violations == 0)

    def timeslice(self) -> SuiteResult:
        """
        Deforms a seeded family of observables into the configured window and
        reports leakage and canonical-form deltas; then checks that the
        window reaches every class of a spanning family.
        """
        if self.config.window is None:
            raise ConfigError("The timeslice suite needs a 'window' (t_a t_b) in the configuration.")
        t_a, t_b = self.config.window
        lattice = self.lattice
        ps = self.phase_space
        rng = self.rng()
        rows = []
        passed = True
        worst = 0.0
        for sample in tqdm(range(self.config.samples), desc="timeslice", disable=None):
            phi = DualObservable.random(lattice, rng, sites=4)
            deformation = ps.deform(phi, (t_a, t_b))
            moved = deformation.observable
            leakage = 0.0 if moved.supportedIn(t_a, t_b) else float("inf")
            a = ps.classify(phi).coordinates
            b = ps.classify(moved).coordinates
            delta = float(np.max(np.abs(a - b))) / max(1.0, float(np.max(np.abs(a))))
            worst = max(worst, delta)
            ok = leakage == 0.0 and delta <= GREEN_TOLERANCE
            passed = passed and ok
            slices = phi.slices
            rows.append((sample, slices[0], slices[-1], deformation.tMid, deformation.leakage, leakage, delta, ok))
        report = RegionEmbedding.identity(ps).isIsoOnWindow((t_a, t_b))
        passed = passed and report.passed
        summary = {"window": [t_a, t_b], "samples": self.config.samples, "max_class_delta": worst,
                   "spanning_classes": report.checked, "spanning_max_delta": report.maxDelta,
                   "spanning_passed": report.passed}
        header = ("sample", "t_min", "t_max", "t_mid", "residual_before_cut", "leakage", "class_delta", "ok")
        return SuiteResult("timeslice", header, rows, summary, passed)
