"""Monte-Carlo union of per-draw rate regions.

Each draw fixes one coding-parameter vector, which yields one polytope of
achievable total-rate triples.  The union over draws is kept as the set of
Pareto-maximal vertices plus the origin.  Every region here is closed
downward in the nonnegative orthant, so this set describes the union
exactly.

Work is split into fixed chunks of draw indices and every draw owns its own
random stream, so results do not depend on how chunks are scheduled.
"""

from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .catalog import BoundCatalog, catalog_for
from .channel import (
    BETA_SLICE,
    PARAM_BLOCK,
    Decoding,
    GaussianChannelSpec,
    ModelVariant,
    Sharing,
    sample_params_batch,
    validate_spec,
)
from .errors import EmptySlice, VariantUnsupported
from .gaussian import THETA_NAMES, build_sigma_batch
from .polytope import (
    BatchedProjection,
    BatchedVertices,
    cube_directions,
    hull2d,
    pareto3d,
)

CHUNK = PARAM_BLOCK
SLICE_TOL = 0.02
COMPARE_TOL = 1e-6
AXES = ("R1", "R2", "R3")

Sampler = Callable[[np.ndarray], np.ndarray]


def zero_user3_coupling(raw: np.ndarray) -> np.ndarray:
    """Sampler hook: alpha3 = alpha4 = beta1 = beta2 = 0."""
    out = raw.copy()
    out[:, 5:9] = 0.0
    return out


def zero_all_coupling(raw: np.ndarray) -> np.ndarray:
    """Sampler hook: every alpha and beta set to zero."""
    out = raw.copy()
    out[:, 3:9] = 0.0
    return out


@dataclass(frozen=True, eq=False)
class RegionEstimate:
    variant: ModelVariant
    draws_total: int
    draws_vacuous: int
    pareto: np.ndarray
    seed: int
    spec: GaussianChannelSpec | None = None
    draws_singular: int = 0

    @property
    def max_r1(self) -> float:
        return float(np.max(self.pareto[:, 0]))

    @property
    def max_r2(self) -> float:
        return float(np.max(self.pareto[:, 1]))

    @property
    def max_r3(self) -> float:
        return float(np.max(self.pareto[:, 2]))

    @property
    def max_sum(self) -> float:
        return float(np.max(self.pareto.sum(axis=1)))

    def metrics(self) -> dict[str, object]:
        return {
            "max_r1": self.max_r1,
            "max_r2": self.max_r2,
            "max_r3": self.max_r3,
            "max_sum": self.max_sum,
            "draws": self.draws_total,
            "draws_vacuous": self.draws_vacuous,
            "seed": self.seed,
        }


@dataclass
class _Pipeline:
    """Per-catalog precomputation shared by every chunk."""

    spec: GaussianChannelSpec
    catalog: BoundCatalog
    plan: object = field(init=False)
    proj: BatchedProjection = field(init=False)
    verts: BatchedVertices = field(init=False)
    keep: np.ndarray = field(init=False)

    def __post_init__(self):
        cat = self.catalog
        self.plan = cat.plan(THETA_NAMES)
        self.proj = BatchedProjection(cat.system_matrix(), cat.recombination, cat.split_rates)
        if self.proj.unbounded:
            raise ValueError(f"projection unbounded in {self.proj.unbounded}")
        self.keep = ~self.proj.zero_rows
        self.verts = BatchedVertices(self.proj.coef[self.keep])

    def points(self, raw: np.ndarray):
        """Feasible projected vertices of every nonvacuous draw.

        Returns ``(points, vacuous_mask, singular_mask)``; ``points`` has
        shape (k, d) and is in draw order.
        """
        sigmas = build_sigma_batch(self.spec, raw)
        vals = self.plan.evaluate(sigmas)
        singular = ~np.all(np.isfinite(vals), axis=1)
        vacuous = singular | np.any(np.where(singular[:, None], 0.0, vals) < 0.0, axis=1)
        good = ~vacuous
        d = len(self.proj.names)
        if not np.any(good):
            return np.zeros((0, d)), vacuous, singular
        b = np.hstack([vals[good], np.zeros((int(good.sum()), len(self.catalog.split_rates)))])
        rhs = self.proj.rhs(b)
        if np.any(self.proj.zero_rows):
            # 0 <= c rows: a negative c also means no feasible point
            bad = np.any(rhs[:, self.proj.zero_rows] < 0.0, axis=1)
            idx = np.flatnonzero(good)
            vacuous[idx[bad]] = True
            rhs = rhs[~bad]
        pts, feas = self.verts.vertices(rhs[:, self.keep])
        out = pts[feas]
        return np.where(np.abs(out) < 1e-12, 0.0, out) + 0.0, vacuous, singular


def _raw_for_chunk(variant: ModelVariant, seed: int, start: int, stop: int,
                   sampler: Sampler | None, twin: bool) -> tuple[np.ndarray, int]:
    raw = sample_params_batch(variant, seed, start, stop)
    if sampler is not None:
        raw = sampler(raw)
        if variant.sharing is Sharing.PMS:
            raw[:, BETA_SLICE] = 0.0
    n = raw.shape[0]
    if twin and variant.sharing is Sharing.CMS:
        zero = raw.copy()
        zero[:, BETA_SLICE] = 0.0
        raw = np.vstack([raw, zero])
    return raw, n


def _chunk_task(spec: GaussianChannelSpec, catalog: BoundCatalog | None, seed: int,
                sampler: Sampler | None, twin: bool, bounds: tuple[int, int]):
    start, stop = bounds
    pipe = _pipeline(spec, catalog)
    raw, n = _raw_for_chunk(spec.variant, seed, start, stop, sampler, twin)
    pts, vacuous, singular = pipe.points(raw)
    if raw.shape[0] != n:
        vacuous = vacuous[:n] & vacuous[n:]
        singular = singular[:n] & singular[n:]
    if pts.shape[1] == 3:
        pts = pareto3d(pts)
    return pts, int(vacuous.sum()), int(singular.sum())


@functools.lru_cache(maxsize=8)
def _pipeline_cached(spec: GaussianChannelSpec, catalog: BoundCatalog) -> _Pipeline:
    return _Pipeline(spec, catalog)


def _pipeline(spec: GaussianChannelSpec, catalog: BoundCatalog | None) -> _Pipeline:
    return _pipeline_cached(spec, catalog if catalog is not None else catalog_for(spec.variant))


def chunk_bounds(draws: int, start: int = 0, chunk: int = CHUNK) -> list[tuple[int, int]]:
    """Index ranges covering ``start .. start+draws-1``, cut at multiples of ``chunk``."""
    stop = start + draws
    cuts = [start] + list(range((start // chunk + 1) * chunk, stop, chunk)) + [stop]
    return list(zip(cuts[:-1], cuts[1:]))


def run_chunks(spec: GaussianChannelSpec, draws: int, seed: int, *, threads: int = 1,
               sampler: Sampler | None = None, include_beta_zero_twin: bool = False,
               catalog: BoundCatalog | None = None, start: int = 0, chunk: int = CHUNK):
    """Evaluate draws ``start .. start+draws-1`` chunk by chunk, results in chunk order."""
    task = functools.partial(_chunk_task, spec, catalog, seed, sampler, include_beta_zero_twin)
    bounds = chunk_bounds(draws, start, chunk)
    if threads <= 1 or len(bounds) == 1:
        return [task(b) for b in bounds]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, bounds))


def explore(spec: GaussianChannelSpec, draws: int, seed: int, *, threads: int = 1,
            sampler: Sampler | None = None, include_beta_zero_twin: bool = False,
            catalog: BoundCatalog | None = None, start: int = 0,
            chunk: int = CHUNK) -> RegionEstimate:
    """Union of the projected regions of ``draws`` parameter draws.

    ``sampler`` may rewrite the raw parameter rows (columns as in
    ``PARAM_NAMES``) before use; it must be a module-level function when
    ``threads > 1``.  With ``include_beta_zero_twin`` a cumulative-sharing
    draw also contributes its copy with beta1 = beta2 = 0, which is the
    matching primary-only draw.
    """
    if draws < 1:
        raise ValueError("draws must be at least 1")
    validate_spec(spec)
    if catalog is None and spec.variant.decoding is not Decoding.VARIANT2:
        raise VariantUnsupported(f"{spec.variant.name} has no Gaussian construction to sample")
    _pipeline(spec, catalog)  # fail early on catalogs the covariance cannot serve
    parts = run_chunks(spec, draws, seed, threads=threads, sampler=sampler,
                       include_beta_zero_twin=include_beta_zero_twin, catalog=catalog,
                       start=start, chunk=chunk)
    cloud = [np.zeros((1, 3))] + [p for p, _, _ in parts]
    pareto = pareto3d(np.vstack(cloud))
    return RegionEstimate(
        variant=spec.variant,
        draws_total=draws,
        draws_vacuous=sum(v for _, v, _ in parts),
        pareto=pareto,
        seed=seed,
        spec=spec,
        draws_singular=sum(s for _, _, s in parts),
    )


def merge_estimates(a: RegionEstimate, b: RegionEstimate) -> RegionEstimate:
    """Union of two estimates over disjoint draw ranges of the same stream."""
    return RegionEstimate(a.variant, a.draws_total + b.draws_total,
                          a.draws_vacuous + b.draws_vacuous,
                          pareto3d(np.vstack([a.pareto, b.pareto])), a.seed, a.spec,
                          a.draws_singular + b.draws_singular)


@dataclass(frozen=True)
class CompareReport:
    labels: tuple[str, ...]
    directions: np.ndarray
    supports: np.ndarray  # (regions, directions)
    tol: float

    def contains(self, i: int, j: int) -> bool:
        """Region ``i`` contains region ``j`` up to ``tol`` in every direction."""
        return bool(np.all(self.supports[i] >= self.supports[j] - self.tol))

    def worst_gap(self, i: int, j: int) -> float:
        """Largest amount by which region ``j`` sticks out of region ``i``."""
        return float(np.max(self.supports[j] - self.supports[i]))

    def format(self) -> str:
        lines = []
        for i, a in enumerate(self.labels):
            for j, b in enumerate(self.labels):
                if i != j:
                    verdict = "contains" if self.contains(i, j) else "does not contain"
                    lines.append(f"{a} {verdict} {b} (max excess {self.worst_gap(i, j):.3e})")
        return "\n".join(lines)


def comprehensive_support(points: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """Support of the downward closure (in the nonnegative orthant) of ``points``."""
    return np.max(np.asarray(points) @ np.maximum(np.asarray(directions), 0.0).T, axis=0)


def compare(regions: Sequence[RegionEstimate], directions: np.ndarray | None = None,
            tol: float = COMPARE_TOL, labels: Sequence[str] | None = None) -> CompareReport:
    """Support-function comparison of Pareto clouds.

    Each region is read as the downward closure of its Pareto points, whose
    support in direction ``d`` is the plain support in ``max(d, 0)``.
    """
    if len(regions) < 2:
        raise ValueError("need at least two regions")
    dirs = cube_directions(3) if directions is None else np.asarray(directions, dtype=float)
    sup = np.array([comprehensive_support(r.pareto, dirs) for r in regions])
    labels = tuple(labels) if labels is not None else tuple(r.variant.name for r in regions)
    return CompareReport(labels, dirs, sup, tol)


def slice2d(estimate: RegionEstimate, fixed_axis: int | str, fixed_value: float,
            tol: float = SLICE_TOL, downward: bool = False) -> np.ndarray:
    """Boundary of a planar view of the region, counterclockwise.

    By default the view is the hull of the Pareto points whose fixed
    coordinate lies within ``tol`` of ``fixed_value``, on the free axes.
    With ``downward`` it is the true section of the downward-closed region:
    every Pareto point reaching ``fixed_value - tol`` counts, and the
    boundary includes the axis projections.
    """
    axis = AXES.index(fixed_axis) if isinstance(fixed_axis, str) else int(fixed_axis)
    if fixed_value < 0:
        raise ValueError("fixed_value must be nonnegative")
    coord = estimate.pareto[:, axis]
    if downward:
        sel = coord >= fixed_value - tol
    else:
        sel = np.abs(coord - fixed_value) <= tol
    if not np.any(sel):
        raise EmptySlice(f"no points with {AXES[axis]} near {fixed_value}")
    free = [k for k in range(3) if k != axis]
    pts = estimate.pareto[sel][:, free]
    if downward:
        pts = np.vstack([pts, [[0.0, 0.0]], np.column_stack([pts[:, 0], np.zeros(len(pts))]),
                         np.column_stack([np.zeros(len(pts)), pts[:, 1]])])
    return hull2d(pts)


def region_points(spec: GaussianChannelSpec, catalog: BoundCatalog, draws: int, seed: int, *,
                  sampler: Sampler | None = None, start: int = 0) -> np.ndarray:
    """All projected vertices of all nonvacuous draws, any output dimension."""
    out = []
    for s, e in chunk_bounds(draws, start):
        raw, _ = _raw_for_chunk(spec.variant, seed, s, e, sampler, False)
        pts, _, _ = _pipeline(spec, catalog).points(raw)
        out.append(pts)
    return np.vstack(out)
