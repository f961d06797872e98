"""Self-checks that compare independent computations of the same quantity."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Callable, Mapping

import numpy as np

from .catalog import catalog_for, reduce_catalog
from .channel import CMS2, PMS2, GaussianChannelSpec, SplittingParams, sample_params_batch
from .explorer import (
    comprehensive_support,
    explore,
    region_points,
    slice2d,
    zero_user3_coupling,
)
from .gaussian import (
    THETA_NAMES,
    THETA_TABLES,
    build_covariance,
    check_against_table,
    sample_theta,
    table_deviation,
)
from .infotheory import entropy, mutual_information
from .polytope import (
    HalfspaceSystem,
    cube_directions,
    dominated_by,
    enumerate_vertices,
    project_sums,
    quadrant_directions,
    supports,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_deviation: float
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: max deviation {self.max_deviation:.3e}; {self.detail} ({self.seconds:.1f}s)"


def _timed(name: str, fn: Callable[[], tuple[bool, float, str]]) -> SuiteResult:
    t0 = time.perf_counter()
    ok, dev, detail = fn()
    return SuiteResult(name, ok, dev, detail, time.perf_counter() - t0)


def _models(spec: GaussianChannelSpec, draws: int, seed: int):
    raw = sample_params_batch(spec.variant, seed, 0, draws)
    for row in raw:
        yield build_covariance(spec, SplittingParams.from_array(row))


def theta_table_suite(spec: GaussianChannelSpec | None = None, draws: int = 1000, seed: int = 11,
                      tables: Mapping | None = None) -> SuiteResult:
    """Tabulated entry formulas against the generated covariance, both sharing schemes."""
    base = spec or GaussianChannelSpec.simulation_setup()

    def run():
        worst, bad, where = 0.0, 0, ""
        for variant in (CMS2, PMS2):
            s = base.with_variant(variant)
            table = None if tables is None else tables.get(variant.sharing)
            ref = table if table is not None else THETA_TABLES[variant.sharing]
            for model in _models(s, draws, seed):
                for mm in check_against_table(model, ref):
                    bad += 1
                    where = where or f"{variant.name} {mm.label}"
                worst = max(worst, table_deviation(model, ref))
        detail = f"{bad} mismatching entries over {2 * draws} models"
        if where:
            detail += f", first at {where}"
        return bad == 0, worst, detail

    return _timed("theta-table", run)


def sampling_suite(spec: GaussianChannelSpec | None = None, draws: int = 20, samples: int = 1_000_000,
                   seed: int = 12, need: float = 0.99) -> SuiteResult:
    """Empirical covariance of simulated realizations against the analytic one."""
    spec = spec or GaussianChannelSpec.simulation_setup()

    def run():
        inside = total = 0
        worst = 0.0
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, 1])))
        iu = np.triu_indices(len(THETA_NAMES))
        for model in _models(spec, draws, seed):
            emp = sample_theta(model, samples, rng)
            s = model.sigma
            se = np.sqrt((np.outer(np.diag(s), np.diag(s)) + s ** 2) / samples)
            z = np.abs(emp - s)[iu] / se[iu]
            inside += int(np.sum(z <= 3.0))
            total += z.size
            worst = max(worst, float(np.max(z)))
        frac = inside / total
        return frac >= need, worst, f"{inside}/{total} entries within 3 standard errors ({frac:.2%}); deviation in SE units"

    return _timed("sampling", run)


def _random_disjoint(rng: np.random.Generator, k: int) -> list[tuple[str, ...]]:
    """``k`` nonempty disjoint variable sets, together covering ``k..8`` variables."""
    n = int(rng.integers(k, len(THETA_NAMES) + 1))
    perm = rng.permutation(len(THETA_NAMES))[:n]
    cuts = np.sort(rng.choice(np.arange(1, n), size=k - 1, replace=False))
    return [tuple(THETA_NAMES[i] for i in part) for part in np.split(perm, cuts)]


def information_suite(spec: GaussianChannelSpec | None = None, draws: int = 500,
                      seed: int = 13) -> SuiteResult:
    """Symmetry, nonnegativity, chain rule and monotonicity of mutual information."""
    spec = spec or GaussianChannelSpec.simulation_setup()

    def run():
        rng = np.random.default_rng(seed)
        worst = {"symmetry": 0.0, "nonnegativity": 0.0, "chain": 0.0, "monotonicity": 0.0}
        fails = []
        for model in _models(spec, draws, seed):
            s_, t_, u_ = _random_disjoint(rng, 3)
            st = mutual_information(model, s_, t_)
            ts = mutual_information(model, t_, s_)
            stu = mutual_information(model, s_, t_ + u_)
            cond = (entropy(model, s_ + t_) + entropy(model, u_ + t_) - entropy(model, t_)
                    - entropy(model, s_ + t_ + u_))
            worst["symmetry"] = max(worst["symmetry"], abs(st - ts))
            worst["nonnegativity"] = max(worst["nonnegativity"], -min(st, stu, 0.0))
            worst["chain"] = max(worst["chain"], abs(stu - st - cond))
            worst["monotonicity"] = max(worst["monotonicity"], st - stu)
        limits = {"symmetry": 1e-12, "nonnegativity": 1e-9, "chain": 1e-9, "monotonicity": 1e-9}
        for key, lim in limits.items():
            if worst[key] > lim:
                fails.append(key)
        detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
        if fails:
            detail += f"; violated: {', '.join(fails)}"
        return not fails, max(worst.values()), detail

    return _timed("information-identities", run)


TOTALS_OF_FIVE = {"T1": ("x0",), "T2": ("x1", "x2"), "T3": ("x3", "x4")}
_SUM_MAP = np.array([[1, 0, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 0, 1, 1]], dtype=float)


def random_rate_system(rng: np.random.Generator, max_rows: int = 40) -> HalfspaceSystem:
    """Bounded 5-variable system shaped like a rate catalog.

    Rows are nonnegativity, one upper bound per variable and a random number
    of sum constraints with 0/1 coefficients, at most ``max_rows`` in total.
    """
    d = 5
    n_extra = int(rng.integers(1, max_rows - 2 * d + 1))
    rows, rhs = [], []
    for _ in range(n_extra):
        mask = rng.random(d) < 0.5
        if not mask.any():
            mask[rng.integers(d)] = True
        rows.append(mask.astype(float))
        rhs.append(rng.uniform(0.2, 2.0) * mask.sum())
    A = np.vstack([np.eye(d), np.array(rows), -np.eye(d)])
    b = np.concatenate([rng.uniform(0.3, 2.0, d), rhs, np.zeros(d)])
    return HalfspaceSystem(A, b, tuple(f"x{i}" for i in range(d)))


def projection_suite(systems: int = 200, seed: int = 14, tol: float = 1e-9) -> SuiteResult:
    """Fourier-Motzkin image against the hull of sum-mapped enumerated vertices."""

    def run():
        rng = np.random.default_rng(seed)
        dirs = cube_directions(3)
        worst, bad = 0.0, 0
        for _ in range(systems):
            sys = random_rate_system(rng)
            proj = project_sums(sys, TOTALS_OF_FIVE)
            verts = enumerate_vertices(sys) @ _SUM_MAP.T
            gap = np.abs(supports(proj, dirs) - np.max(verts @ dirs.T, axis=0))
            worst = max(worst, float(np.max(gap)))
            bad += int(np.sum(gap > tol))
        return bad == 0, worst, f"{bad} direction mismatches over {systems} systems x {len(dirs)} directions"

    return _timed("fm-projection", run)


def coupling_suite(spec: GaussianChannelSpec | None = None, draws: int = 10_000, seed: int = 15,
                   tol: float = 1e-9, threads: int = 1) -> SuiteResult:
    """Primary-only region inside the cumulative one under shared draws."""
    base = spec or GaussianChannelSpec.simulation_setup()

    def run():
        pms = explore(base.with_variant(PMS2), draws, seed, threads=threads)
        cms = explore(base.with_variant(CMS2), draws, seed, threads=threads, include_beta_zero_twin=True)
        dom = dominated_by(pms.pareto, cms.pareto, tol)
        dev = 0.0
        for p in pms.pareto[~dom]:
            # how far p sticks out of the best dominating candidate
            dev = max(dev, float(np.min(np.max(p - cms.pareto, axis=1))))
        return bool(dom.all()), dev, (f"{int((~dom).sum())} of {len(dom)} primary-only Pareto points "
                                      f"not dominated, {cms.draws_total} shared draws")

    return _timed("coupled-inclusion", run)


def degeneration_suite(draws: int = 20_000, seed: int = 16, tol: float = 1e-3,
                       p3: float = 1e-9) -> SuiteResult:
    """Vanishing third user: (R1, R2) view against the two-user catalog."""

    def run():
        base = GaussianChannelSpec.simulation_setup(CMS2)
        spec = replace(base, p3=p3)
        full = explore(spec, draws, seed, sampler=zero_user3_coupling)
        view = slice2d(full, "R3", 0.0)
        reduced = reduce_catalog(catalog_for(CMS2), ("R31", "R33"), ("V1", "V3"))
        two = region_points(spec, reduced, draws, seed, sampler=zero_user3_coupling)
        two = np.vstack([two, np.zeros((1, 2))])
        dirs = quadrant_directions(12)
        diff = comprehensive_support(view, dirs) - comprehensive_support(two, dirs)
        dev = float(np.max(np.abs(diff)))
        r3 = full.max_r3
        return dev <= tol, dev, f"12 directions, max R3 {r3:.2e}, {full.draws_vacuous} vacuous of {draws}"

    return _timed("degeneration", run)


def reference_metrics(draws: int, seed: int = 2026, threads: int = 1,
                    spec: GaussianChannelSpec | None = None) -> dict[str, dict[str, float]]:
    base = spec or GaussianChannelSpec.simulation_setup()
    out = {}
    for variant in (CMS2, PMS2):
        est = explore(base.with_variant(variant), draws, seed, threads=threads)
        out[variant.name] = est.metrics()
    return out


def run_all(spec: GaussianChannelSpec | None = None, threads: int = 1) -> list[SuiteResult]:
    return [
        theta_table_suite(spec),
        sampling_suite(spec),
        information_suite(spec),
        projection_suite(),
        coupling_suite(spec, threads=threads),
        degeneration_suite(),
    ]
