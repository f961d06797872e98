"""Low-dimensional polyhedra: elimination, vertices, supports, hulls, Pareto sets.

A :class:`HalfspaceSystem` is ``{x : A x <= b}``.  Everything here targets
dimensions up to about eight, where brute-force vertex enumeration is cheap
enough to serve both as an oracle and as the redundancy filter.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DegenerateSystem, Unbounded

FEAS_TOL = 1e-9
DEDUP_TOL = 1e-8
MERGE_TOL = 1e-12
PARETO_TOL = 1e-9
_SINGULAR = 1e-12


@dataclass(frozen=True, eq=False)
class HalfspaceSystem:
    A: np.ndarray
    b: np.ndarray
    names: tuple[str, ...] = ()
    # variables eliminated without any finite upper bound
    unbounded: tuple[str, ...] = ()

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.size == 0:
            A = A.reshape(0, len(self.names) if self.names else A.shape[-1])
        if A.shape[0] != b.shape[0]:
            raise ValueError(f"A has {A.shape[0]} rows but b has {b.shape[0]}")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("halfspace entries must be finite")
        names = tuple(self.names) or tuple(f"x{i}" for i in range(A.shape[1]))
        if len(names) != A.shape[1]:
            raise ValueError(f"{len(names)} names for {A.shape[1]} columns")
        if A.shape[1] < 1:
            raise ValueError("dimension must be at least 1")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "names", names)

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[Sequence[float], float]], names: Sequence[str] = ()):
        rows = list(rows)
        if not rows:
            raise ValueError("need at least one row, or use the constructor with an empty A")
        A = np.array([r[0] for r in rows], dtype=float)
        b = np.array([r[1] for r in rows], dtype=float)
        return cls(A, b, tuple(names))

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    @property
    def n_rows(self) -> int:
        return self.A.shape[0]

    @property
    def rows(self) -> list[tuple[np.ndarray, float]]:
        return [(self.A[i].copy(), float(self.b[i])) for i in range(self.n_rows)]

    def contains(self, x, tol: float = FEAS_TOL) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(self.A @ x <= self.b + tol * np.maximum(1.0, np.abs(self.b))))

    def with_nonnegativity(self) -> "HalfspaceSystem":
        eye = -np.eye(self.dim)
        return HalfspaceSystem(np.vstack([self.A, eye]), np.concatenate([self.b, np.zeros(self.dim)]),
                               self.names, self.unbounded)

    def __str__(self) -> str:
        lines = []
        for a, rhs in self.rows:
            lhs = " ".join(f"{c:+g}*{n}" for c, n in zip(a, self.names) if c != 0.0) or "0"
            lines.append(f"{lhs} <= {rhs!r}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# row hygiene
# ---------------------------------------------------------------------------

def _normalize(A: np.ndarray, b: np.ndarray):
    scale = np.max(np.abs(A), axis=1) if A.size else np.zeros(0)
    nz = scale > 0
    A = A.copy()
    b = b.copy()
    A[nz] /= scale[nz, None]
    b[nz] /= scale[nz]
    return A, b, nz


def merge_parallel(sys: HalfspaceSystem, tol: float = MERGE_TOL) -> HalfspaceSystem:
    """Normalize rows, drop trivially true zero rows, keep the tightest of parallel rows.

    Output rows are in lexicographic order of their coefficients, which makes
    the result independent of input row order.
    """
    A, b, nz = _normalize(sys.A, sys.b)
    best: dict[tuple, int] = {}
    infeasible_zero = None
    for i in range(A.shape[0]):
        if not nz[i]:
            if b[i] < -FEAS_TOL:
                if infeasible_zero is None or b[i] < b[infeasible_zero]:
                    infeasible_zero = i
            continue
        key = tuple(np.round(A[i] / tol).astype(np.int64)) if tol > 0 else tuple(A[i])
        j = best.get(key)
        if j is None or b[i] < b[j]:
            best[key] = i
    keep = [best[k] for k in sorted(best)]
    if infeasible_zero is not None:
        keep.append(infeasible_zero)
    keep_arr = np.array(keep, dtype=int)
    return HalfspaceSystem(A[keep_arr].reshape(len(keep), sys.dim), b[keep_arr], sys.names,
                           sys.unbounded)


def is_infeasible_trivially(sys: HalfspaceSystem) -> bool:
    zero = ~np.any(sys.A != 0.0, axis=1)
    return bool(np.any(sys.b[zero] < -FEAS_TOL))


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------

def fm_eliminate(sys: HalfspaceSystem, var_index: int) -> HalfspaceSystem:
    """Project out one variable.

    Rows are combined pairwise (one with a positive and one with a negative
    coefficient on the variable) after scaling that coefficient to +-1, then
    parallel rows are merged.  If the variable has no upper bound at all its
    name is recorded in ``unbounded``.
    """
    if not 0 <= var_index < sys.dim:
        raise IndexError(f"variable index {var_index} out of range for dim {sys.dim}")
    if sys.dim < 2:
        raise ValueError("cannot eliminate the only variable")
    A, b = sys.A, sys.b
    col = A[:, var_index]
    pos = np.flatnonzero(col > 0)
    neg = np.flatnonzero(col < 0)
    zero = np.flatnonzero(col == 0)
    keep_cols = [j for j in range(sys.dim) if j != var_index]
    names = tuple(sys.names[j] for j in keep_cols)
    unbounded = sys.unbounded
    if pos.size == 0:
        unbounded = unbounded + (sys.names[var_index],)

    new_A = [A[zero][:, keep_cols]]
    new_b = [b[zero]]
    if pos.size and neg.size:
        P = A[pos] / col[pos, None]
        N = A[neg] / -col[neg, None]
        comb = (P[:, None, :] + N[None, :, :]).reshape(-1, sys.dim)
        new_A.append(comb[:, keep_cols])
        new_b.append((b[pos, None] / col[pos, None] + b[None, neg] / -col[None, neg]).reshape(-1))
    out = HalfspaceSystem(np.vstack(new_A).reshape(-1, len(keep_cols)), np.concatenate(new_b),
                          names, unbounded)
    return merge_parallel(out)


# ---------------------------------------------------------------------------
# vertices
# ---------------------------------------------------------------------------

def _dedup_points(pts: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    if pts.shape[0] == 0:
        return pts
    order = np.lexsort(pts.T[::-1])
    pts = pts[order]
    # exact-grid duplicates first; first occurrence is the lexicographic minimum
    _, first = np.unique(np.round(pts / tol), axis=0, return_index=True)
    pts = pts[np.sort(first)]
    kept = np.empty_like(pts)
    n = 0
    for p in pts:
        if n and np.min(np.max(np.abs(kept[:n] - p), axis=1)) <= tol:
            continue
        kept[n] = p
        n += 1
    return kept[:n].copy()


def _edge_lines(An: np.ndarray, bn: np.ndarray, chunk: int = 20000):
    """Lines cut out by every independent ``(dim - 1)``-subset of unit rows.

    Yields ``(points, directions)``: each line is ``point + t * direction``
    with a unit direction spanning the subset's null space.
    """
    m, d = An.shape
    k = d - 1
    if k == 0:
        yield np.zeros((1, d)), np.ones((1, d))
        return
    combos = itertools.chain.from_iterable(itertools.combinations(range(m), k))
    total = math.comb(m, k)
    cols = [np.delete(np.arange(d), j) for j in range(d)]
    signs = (-1.0) ** np.arange(d)
    for start in range(0, total, chunk):
        n = min(chunk, total - start)
        idx = np.fromiter(itertools.islice(combos, n * k), dtype=np.int64, count=n * k).reshape(n, k)
        M = An[idx]
        # generalized cross product: cofactors along an extra row
        u = np.stack([np.linalg.det(M[:, :, c]) for c in cols], axis=1) * signs
        norm = np.linalg.norm(u, axis=1)
        ok = norm > _SINGULAR
        if not np.any(ok):
            continue
        M, u, rhs = M[ok], u[ok] / norm[ok, None], bn[idx[ok]]
        gram = M @ np.swapaxes(M, 1, 2)
        p = (np.swapaxes(M, 1, 2) @ np.linalg.solve(gram, rhs[..., None]))[..., 0]
        yield p, u


def _vertex_candidates(A: np.ndarray, b: np.ndarray, tol: float):
    """Finite endpoints of the feasible segment on every edge line."""
    norms = np.linalg.norm(A, axis=1)
    norms[norms == 0] = 1.0
    An, bn = A / norms[:, None], b / norms
    for p, u in _edge_lines(An, bn):
        s = u @ An.T
        r = bn - p @ An.T
        par = np.abs(s) <= 1e-9
        with np.errstate(divide="ignore", invalid="ignore"):
            t = r / s
        hi = np.min(np.where(s > 1e-9, t, np.inf), axis=1)
        lo = np.max(np.where(s < -1e-9, t, -np.inf), axis=1)
        live = np.all(~par | (r >= -tol), axis=1) & (lo <= hi + tol)
        for end in (lo, hi):
            use = live & np.isfinite(end)
            if np.any(use):
                yield p[use] + end[use, None] * u[use]


def enumerate_vertices(sys: HalfspaceSystem, tol: float = FEAS_TOL,
                       return_tight: bool = False):
    """All vertices of the system.

    Every vertex is an endpoint of the feasible segment on some line cut
    out by ``dim - 1`` independent rows, so those lines are clipped against
    all rows and their finite endpoints collected.  Candidates are kept when
    they satisfy all rows within ``tol`` (relative to ``max(1, |b|)``) and
    are deduplicated within 1e-8 keeping the lexicographically smallest
    representative.
    """
    if sys.n_rows < sys.dim or is_infeasible_trivially(sys):
        empty = np.zeros((0, sys.dim))
        return (empty, np.zeros((0, sys.n_rows), dtype=bool)) if return_tight else empty
    slack_tol = tol * np.maximum(1.0, np.abs(sys.b))
    found = []
    # parallel rows only duplicate lines, so candidates come from the merged system
    base = merge_parallel(sys)
    for cand in _vertex_candidates(base.A, base.b, tol):
        feas = np.all(cand @ sys.A.T <= sys.b + slack_tol, axis=1)
        if np.any(feas):
            found.append(cand[feas])
    pts = _dedup_points(np.vstack(found)) if found else np.zeros((0, sys.dim))
    pts = pts + 0.0
    if return_tight:
        tight = np.abs(pts @ sys.A.T - sys.b) <= 1e3 * slack_tol
        return pts, tight
    return pts


def solve_subset(sys: HalfspaceSystem, rows: Sequence[int]) -> np.ndarray:
    """Intersection point of the given ``dim`` rows; raises DegenerateSystem if singular."""
    M = sys.A[list(rows)]
    if M.shape[0] != sys.dim:
        raise ValueError(f"need exactly {sys.dim} rows")
    scale = np.prod(np.linalg.norm(M, axis=1))
    if abs(np.linalg.det(M)) <= _SINGULAR * max(scale, 1e-300):
        raise DegenerateSystem(f"rows {tuple(rows)} are linearly dependent")
    return np.linalg.solve(M, sys.b[list(rows)])


def _affine_dim(pts: np.ndarray) -> int:
    if pts.shape[0] <= 1:
        return 0
    diffs = pts[1:] - pts[0]
    return int(np.linalg.matrix_rank(diffs, tol=1e-7 * max(1.0, np.max(np.abs(pts)))))


def prune_redundant(sys: HalfspaceSystem, vertices: np.ndarray | None = None) -> HalfspaceSystem:
    """Drop rows that are not facets, using the vertex oracle.

    A row tight at no vertex is redundant for a bounded nonempty polytope.
    When the polytope is full-dimensional a row is also dropped if the
    vertices tight on it span less than a facet.
    """
    sys = merge_parallel(sys)
    if sys.unbounded:
        return sys
    if vertices is None:
        vertices, tight = enumerate_vertices(sys, return_tight=True)
    else:
        slack_tol = FEAS_TOL * np.maximum(1.0, np.abs(sys.b))
        tight = np.abs(vertices @ sys.A.T - sys.b) <= 1e3 * slack_tol
    if vertices.shape[0] == 0:
        return sys
    full = _affine_dim(vertices) == sys.dim
    keep = []
    for r in range(sys.n_rows):
        on = vertices[tight[:, r]]
        if on.shape[0] == 0:
            continue
        if full and _affine_dim(on) < sys.dim - 1:
            continue
        keep.append(r)
    keep_arr = np.array(keep, dtype=int)
    return HalfspaceSystem(sys.A[keep_arr].reshape(len(keep), sys.dim), sys.b[keep_arr], sys.names,
                           sys.unbounded)


def project_sums(sys: HalfspaceSystem, groups: Mapping[str, Sequence[str]],
                 prune: bool = True) -> HalfspaceSystem:
    """Exact image of ``sys`` under ``total_g = sum of the variables in group g``.

    The first member of each group is replaced by the total minus the other
    members, after which the other members are eliminated one by one.
    """
    T, new_names, extra = sum_substitution(sys.names, groups)
    out = HalfspaceSystem(sys.A @ T, sys.b, tuple(new_names))
    out = merge_parallel(out)
    # projections of a bounded set stay bounded, so one check suffices
    prune = prune and bool(extra) and is_bounded(out)
    for _ in extra:
        out = fm_eliminate(out, out.dim - 1)
        if prune:
            out = _maybe_prune(out)
    return out


def sum_substitution(names: Sequence[str], groups: Mapping[str, Sequence[str]]):
    """Change of variables from members to (totals, non-leading members).

    Returns ``(T, new_names, extra)`` with ``x = T @ y``: the leading member
    of each group becomes its total minus the other members, and ``extra``
    lists those other members, which sit at the end of ``new_names``.
    """
    names = list(names)
    members = [m for g in groups.values() for m in g]
    if sorted(members) != sorted(names) or len(set(members)) != len(members):
        raise ValueError("groups must partition the system's variables")
    col = {n: i for i, n in enumerate(names)}
    extra = [m for g in groups.values() for m in g[1:]]
    new_names = list(groups) + extra
    T = np.zeros((len(names), len(new_names)))
    for ti, g in enumerate(groups.values()):
        first = col[g[0]]
        T[first, ti] = 1.0
        for m in g[1:]:
            T[first, new_names.index(m)] = -1.0
            T[col[m], new_names.index(m)] = 1.0
    return T, tuple(new_names), extra


def is_bounded(sys: HalfspaceSystem) -> bool:
    """True when the recession cone {y : A y <= 0} is trivial."""
    box = np.vstack([np.eye(sys.dim), -np.eye(sys.dim)])
    cone = HalfspaceSystem(np.vstack([sys.A, box]), np.concatenate([np.zeros(sys.n_rows), np.ones(2 * sys.dim)]),
                           sys.names)
    rays = enumerate_vertices(cone)
    return bool(rays.shape[0] == 0 or np.max(np.abs(rays)) <= 1e-7)


def _maybe_prune(sys: HalfspaceSystem, budget: int = 200_000) -> HalfspaceSystem:
    """Vertex-oracle pruning of a system already known to be bounded."""
    if is_infeasible_trivially(sys):
        return sys
    if math.comb(sys.n_rows, sys.dim) > budget:
        return sys
    return prune_redundant(sys)


# ---------------------------------------------------------------------------
# supports
# ---------------------------------------------------------------------------

def support(sys: HalfspaceSystem, direction) -> float:
    """max of direction . x over the polytope (``-inf`` when it is empty)."""
    d = np.asarray(direction, dtype=float)
    if d.shape != (sys.dim,):
        raise ValueError(f"direction must have length {sys.dim}")
    verts = enumerate_vertices(sys)
    if verts.shape[0] == 0:
        return float("-inf")
    if not np.any(d):
        return 0.0
    _check_bounded(sys, d)
    return float(np.max(verts @ d))


def supports(sys: HalfspaceSystem, directions) -> np.ndarray:
    """Support values for each row of ``directions``, enumerating vertices once."""
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    verts = enumerate_vertices(sys)
    if verts.shape[0] == 0:
        return np.full(dirs.shape[0], -np.inf)
    if not is_bounded(sys):
        raise Unbounded("system is unbounded")
    return np.max(verts @ dirs.T, axis=0)


def _check_bounded(sys: HalfspaceSystem, d: np.ndarray) -> None:
    # Bounded in direction d iff d is a nonnegative combination of row normals;
    # with a nonempty vertex set the recession cone is {y : A y <= 0}.
    # Test the cone's extreme rays through the vertex oracle on a capped cone.
    cone = HalfspaceSystem(np.vstack([sys.A, d[None, :]]), np.concatenate([np.zeros(sys.n_rows), [1.0]]),
                           sys.names)
    rays = enumerate_vertices(cone)
    if rays.shape[0] and np.max(rays @ d) > FEAS_TOL:
        raise Unbounded("system is unbounded in the requested direction")


def support_points(points, direction, comprehensive: bool = False) -> float:
    """Support of the convex hull of ``points``.

    With ``comprehensive`` the hull is first closed downward within the
    nonnegative orthant, so negative direction components count as zero.
    """
    pts = np.asarray(points, dtype=float)
    d = np.asarray(direction, dtype=float)
    if comprehensive:
        d = np.maximum(d, 0.0)
    if pts.shape[0] == 0:
        return float("-inf")
    return float(np.max(pts @ d))


def cube_directions(dim: int = 3) -> np.ndarray:
    """All nonzero vectors of {-1, 0, 1}^dim, normalized (26 in 3D)."""
    dirs = [v for v in itertools.product((-1, 0, 1), repeat=dim) if any(v)]
    arr = np.array(dirs, dtype=float)
    return arr / np.linalg.norm(arr, axis=1, keepdims=True)


def quadrant_directions(n: int = 12) -> np.ndarray:
    """``n`` unit vectors spread over the closed first quadrant."""
    ang = np.linspace(0.0, np.pi / 2, n)
    return np.column_stack([np.cos(ang), np.sin(ang)])


# ---------------------------------------------------------------------------
# point clouds
# ---------------------------------------------------------------------------

def hull2d(points) -> np.ndarray:
    """Convex hull by Andrew's monotone chain, counterclockwise, no collinear points."""
    pts = np.unique(np.asarray(points, dtype=float).reshape(-1, 2), axis=0)
    if pts.shape[0] <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def pareto3d(points, tol: float = PARETO_TOL) -> np.ndarray:
    """Points not dominated coordinatewise by another point.

    ``q`` dominates ``p`` when ``q >= p - tol`` in every coordinate.  Among
    near-duplicates the first in (R1, R2, R3)-descending order survives.
    The sweep visits points by decreasing first coordinate and keeps a
    staircase of the (second, third) maxima seen so far.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    if pts.shape[0] == 0:
        return pts
    order = np.lexsort((-pts[:, 2], -pts[:, 1], -pts[:, 0]))
    pts = pts[order]
    # staircase: ys ascending, zs descending
    ys: list[float] = []
    zs: list[float] = []
    kept = []
    for p in pts:
        y, z = float(p[1]), float(p[2])
        k = bisect_left(ys, y - tol)
        if k < len(ys) and zs[k] >= z - tol:
            continue
        kept.append(p)
        # insert (y, z); drop staircase points it dominates exactly
        k = bisect_left(ys, y)
        lo = k
        while lo > 0 and zs[lo - 1] <= z:
            lo -= 1
        hi = k
        while hi < len(ys) and ys[hi] == y and zs[hi] <= z:
            hi += 1
        if hi < len(ys) and ys[hi] == y:
            continue
        ys[lo:hi] = [y]
        zs[lo:hi] = [z]
    return np.array(kept).reshape(-1, 3)


def dominated_by(points, cloud, tol: float = PARETO_TOL) -> np.ndarray:
    """Boolean mask: is each of ``points`` dominated by some point of ``cloud``."""
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    cl = np.asarray(cloud, dtype=float).reshape(-1, 3)
    out = np.zeros(pts.shape[0], dtype=bool)
    if cl.shape[0] == 0:
        return out
    for s in range(0, pts.shape[0], 512):
        blk = pts[s:s + 512]
        out[s:s + 512] = np.any(np.all(cl[None, :, :] >= blk[:, None, :] - tol, axis=2), axis=1)
    return out


# ---------------------------------------------------------------------------
# batched projection for a fixed coefficient matrix
# ---------------------------------------------------------------------------

class BatchedProjection:
    """Fourier-Motzkin on a fixed coefficient matrix, applied to many right-hand sides.

    Elimination only combines coefficient rows, so the combination weights
    are the same for every right-hand side.  Each output row keeps the list
    of input-row combinations producing it; for a given ``b`` its right-hand
    side is the smallest of those combinations.  Combinations are only
    pruned in ways valid for ``b >= 0`` (Chernikov's rule, and dropping a
    combination that is elementwise no smaller than another for the same
    row), which holds for every nonvacuous draw.
    """

    def __init__(self, A: np.ndarray, groups: Mapping[str, Sequence[str]], names: Sequence[str]):
        A = np.asarray(A, dtype=float)
        T, new_names, extra = sum_substitution(names, groups)
        totals = list(groups)
        self.input_rows = A.shape[0]
        coef = A @ T
        # rows: list of (coef vector, list of combination vectors)
        rows = self._merge([(coef[i], [np.eye(A.shape[0])[i]]) for i in range(A.shape[0])])
        for step in range(len(extra)):
            rows = self._eliminate(rows, len(new_names) - 1 - step, step)
        d = len(totals)
        self.names = tuple(totals)
        self.coef = np.array([r[0][:d] for r in rows]).reshape(-1, d)
        combos, owner = [], []
        for gi, (_, cs) in enumerate(rows):
            for c in cs:
                combos.append(c)
                owner.append(gi)
        self.combos = np.array(combos).reshape(-1, A.shape[0])
        self.owner = np.array(owner, dtype=int)
        self.starts = np.flatnonzero(np.r_[True, self.owner[1:] != self.owner[:-1]])
        self.zero_rows = ~np.any(self.coef != 0.0, axis=1)
        self.unbounded = tuple(
            n for j, n in enumerate(totals) if not np.any(self.coef[:, j] > 0)
        )

    @staticmethod
    def _merge(rows):
        merged: dict[tuple, list] = {}
        for a, cs in rows:
            scale = np.max(np.abs(a))
            if scale > 0:
                a = a / scale
                cs = [c / scale for c in cs]
            key = tuple(np.round(a, 12) + 0.0)
            merged.setdefault(key, []).extend(cs)
        out = []
        for key in sorted(merged):
            out.append((np.array(key), BatchedProjection._minimal(merged[key])))
        return out

    @staticmethod
    def _minimal(cs):
        uniq = {tuple(np.round(c, 12) + 0.0) for c in cs}
        arr = [np.array(c) for c in sorted(uniq)]
        keep = []
        for i, c in enumerate(arr):
            dominated = any(j != i and np.all(arr[j] <= c + 1e-12) and np.any(arr[j] < c - 1e-12)
                            for j in range(len(arr)))
            if not dominated:
                keep.append(c)
        return keep

    def _eliminate(self, rows, k, step):
        limit = step + 2
        out = []
        pos = [(a, cs) for a, cs in rows if a[k] > 0]
        neg = [(a, cs) for a, cs in rows if a[k] < 0]
        for a, cs in rows:
            if a[k] == 0:
                out.append((np.delete(a, k), cs))
        for ap, cps in pos:
            for an, cns in neg:
                sp, sn = ap[k], -an[k]
                a = ap / sp + an / sn
                a[k] = 0.0
                cs = []
                for cp in cps:
                    for cn in cns:
                        c = cp / sp + cn / sn
                        if np.count_nonzero(c) <= limit:
                            cs.append(c)
                if cs:
                    out.append((np.delete(a, k), cs))
        return self._merge(out)

    def rhs(self, b: np.ndarray) -> np.ndarray:
        """Projected right-hand sides for a stack ``b`` of shape (n, input_rows)."""
        vals = b @ self.combos.T
        return np.minimum.reduceat(vals, self.starts, axis=1)

    def system(self, b: np.ndarray) -> HalfspaceSystem:
        r = self.rhs(np.asarray(b, dtype=float)[None, :])[0]
        nz = ~self.zero_rows
        return HalfspaceSystem(self.coef[nz], r[nz], self.names, self.unbounded)


class BatchedVertices:
    """Vertex enumeration for many right-hand sides sharing one coefficient matrix."""

    def __init__(self, A: np.ndarray):
        A = np.asarray(A, dtype=float)
        self.A = A
        m, d = A.shape
        subsets, inverses = [], []
        for idx in itertools.combinations(range(m), d):
            M = A[list(idx)]
            scale = np.prod(np.linalg.norm(M, axis=1))
            if abs(np.linalg.det(M)) > _SINGULAR * max(scale, 1e-300):
                subsets.append(idx)
                inverses.append(np.linalg.inv(M))
        self.subsets = np.array(subsets, dtype=int).reshape(-1, d)
        self.inverses = np.array(inverses).reshape(-1, d, d)

    def vertices(self, b: np.ndarray, tol: float = FEAS_TOL):
        """Candidate points (n, k, d) and their feasibility mask (n, k)."""
        b = np.asarray(b, dtype=float)
        pts = np.einsum("kij,nkj->nki", self.inverses, b[:, self.subsets])
        lhs = np.einsum("rd,nkd->nkr", self.A, pts)
        slack = tol * np.maximum(1.0, np.abs(b))
        feas = np.all(lhs <= (b + slack)[:, None, :], axis=2)
        return pts, feas
