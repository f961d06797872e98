import numpy as np
import pytest
from hypothesis import given, strategies as st

from cogregion import DegenerateSystem, HalfspaceSystem, Unbounded, catalog_for, enumerate_vertices, fm_eliminate, project_sums, support
from cogregion.channel import CMS2
from cogregion.polytope import (
    BatchedProjection,
    BatchedVertices,
    cube_directions,
    dominated_by,
    hull2d,
    is_bounded,
    merge_parallel,
    pareto3d,
    prune_redundant,
    quadrant_directions,
    solve_subset,
    supports,
)
from cogregion.verify import TOTALS_OF_FIVE, _SUM_MAP, random_rate_system


def box(d=2, hi=1.0):
    return HalfspaceSystem(np.vstack([np.eye(d), -np.eye(d)]), np.r_[np.full(d, hi), np.zeros(d)])


def sorted_rows(pts):
    pts = np.asarray(pts)
    return pts[np.lexsort(pts.T[::-1])]


def test_fm_example():
    sys = HalfspaceSystem.from_rows([([1, 1], 1), ([-1, 0], 0), ([0, -1], 0)], ["x", "y"])
    out = fm_eliminate(sys, 1)
    assert out.names == ("x",)
    got = sorted((float(a[0]), rhs) for a, rhs in out.rows)
    assert got == [(-1.0, 0.0), (1.0, 1.0)]


def test_fm_flags_unbounded_variable():
    sys = HalfspaceSystem.from_rows([([1, -1], 0), ([-1, 0], 0)], ["x", "y"])
    assert fm_eliminate(sys, 1).unbounded == ("y",)


def test_vertices_of_box_and_example():
    assert enumerate_vertices(box()).shape == (4, 2)
    sys = HalfspaceSystem.from_rows([([1, 0], 1), ([0, 1], 1), ([1, 1], 1.5), ([-1, 0], 0), ([0, -1], 0)])
    v = enumerate_vertices(sys)
    np.testing.assert_allclose(sorted_rows(v), [[0, 0], [0, 1], [0.5, 1], [1, 0], [1, 0.5]], atol=1e-12)
    assert not np.signbit(v).any()


def test_vertices_of_empty_system():
    sys = HalfspaceSystem.from_rows([([1.0], -1.0), ([-1.0], 0.0)])
    assert enumerate_vertices(sys).shape == (0, 1)


def test_vertices_match_brute_force_on_degenerate_polytope():
    # pyramid with four facets through the apex
    A = np.array([[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1], [0, 0, -1]], float)
    v = enumerate_vertices(HalfspaceSystem(A, [1, 1, 1, 1, 0]))
    np.testing.assert_allclose(sorted_rows(v), sorted_rows([[-1, -1, 0], [-1, 1, 0], [1, -1, 0], [1, 1, 0], [0, 0, 1]]),
                               atol=1e-12)


def test_tight_rows():
    v, tight = enumerate_vertices(box(), return_tight=True)
    assert tight.shape == (4, 4) and np.all(tight.sum(axis=1) == 2)


def test_support_examples():
    assert support(box(), [1, 1]) == pytest.approx(2.0)
    assert support(box(), [0, 0]) == 0.0
    empty = HalfspaceSystem.from_rows([([1.0], -1.0), ([-1.0], 0.0)])
    assert support(empty, [1.0]) == -np.inf
    half_line = HalfspaceSystem.from_rows([([-1.0, 0.0], 0.0), ([0.0, 1.0], 1.0), ([0.0, -1.0], 0.0)])
    assert support(half_line, [-1.0, 1.0]) == pytest.approx(1.0)
    with pytest.raises(Unbounded):
        support(half_line, [1.0, 0.0])
    with pytest.raises(Unbounded):
        supports(half_line, [[1.0, 0.0]])
    assert not is_bounded(half_line) and is_bounded(box(3))


def test_project_sums_prunes_redundant_total():
    sys = HalfspaceSystem.from_rows(
        [([1, 0], 1), ([0, 1], 1), ([1, 1], 1.5), ([-1, 0], 0), ([0, -1], 0)], ["R21", "R22"])
    out = project_sums(sys, {"R2": ("R21", "R22")})
    assert out.names == ("R2",)
    got = sorted((float(a[0]), rhs) for a, rhs in out.rows)
    assert got == [(-1.0, 0.0), (1.0, 1.5)]


@given(st.integers(0, 2**32 - 1))
def test_projection_matches_vertex_oracle(seed):
    rng = np.random.default_rng(seed)
    sys = random_rate_system(rng, max_rows=22)
    proj = project_sums(sys, TOTALS_OF_FIVE)
    verts = enumerate_vertices(sys) @ _SUM_MAP.T
    dirs = cube_directions()
    np.testing.assert_allclose(supports(proj, dirs), np.max(verts @ dirs.T, axis=0), atol=1e-9)
    # projected system is irredundant: each row supports a facet
    assert prune_redundant(proj).n_rows == proj.n_rows


def test_prune_and_merge():
    sys = HalfspaceSystem.from_rows([([1, 0], 1), ([2, 0], 3), ([0, 1], 1), ([1, 1], 5), ([-1, 0], 0), ([0, -1], 0)])
    merged = merge_parallel(sys)
    assert merged.n_rows == 5
    assert prune_redundant(sys).n_rows == 4
    shuffled = HalfspaceSystem(sys.A[::-1], sys.b[::-1])
    np.testing.assert_array_equal(merge_parallel(shuffled).A, merged.A)


def test_solve_subset():
    np.testing.assert_allclose(solve_subset(box(), [0, 1]), [1, 1])
    with pytest.raises(DegenerateSystem):
        solve_subset(box(), [0, 2])


def test_system_validation():
    with pytest.raises(ValueError):
        HalfspaceSystem(np.eye(2), [1.0])
    with pytest.raises(ValueError):
        HalfspaceSystem(np.eye(2), [1.0, np.nan])
    with pytest.raises(ValueError):
        HalfspaceSystem(np.eye(2), [1.0, 1.0], ("x",))
    assert box().contains([0.5, 1.0]) and not box().contains([1.1, 0])
    assert "<=" in str(box())


def test_directions():
    d = cube_directions()
    assert d.shape == (26, 3)
    np.testing.assert_allclose(np.linalg.norm(d, axis=1), 1.0)
    q = quadrant_directions(12)
    assert q.shape == (12, 2) and np.all(q >= -1e-15)


def test_hull2d():
    assert hull2d([[0, 0], [1, 1], [2, 2], [0.5, 0.5]]).shape == (2, 2)
    h = hull2d([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5], [0.5, 0]])
    assert h.shape == (4, 2)
    area = 0.5 * np.sum(h[:, 0] * np.roll(h[:, 1], -1) - np.roll(h[:, 0], -1) * h[:, 1])
    assert area == pytest.approx(1.0)  # positive: counterclockwise


def test_pareto_keeps_undominated_point_inside_hull():
    pts = np.array([(1, 0, 0), (0, 1, 0), (0, 0, 1), (0.1, 0.1, 0.1)], dtype=float)
    # no single point dominates the last one, so it stays in the Pareto set
    assert sorted_rows(pareto3d(pts)).tolist() == sorted_rows(pts).tolist()
    # it adds nothing to the downward-closed hull: no nonnegative direction favours it
    dirs = np.abs(cube_directions())
    assert np.all(pts[3] @ dirs.T <= np.max(pts[:3] @ dirs.T, axis=0))
    assert sorted_rows(pareto3d(np.vstack([pts, [(0.1, 0.1, 0.0)]]))).tolist() == sorted_rows(pts).tolist()


points3 = st.lists(st.tuples(*[st.integers(0, 6).map(lambda v: v / 3)] * 3), min_size=1, max_size=60)


@given(points3)
def test_pareto_matches_brute_force(pts):
    pts = np.array(pts, dtype=float)
    kept = pareto3d(pts)
    assert np.all(dominated_by(pts, kept))
    # no kept point dominated by another kept point
    for i, p in enumerate(kept):
        others = np.delete(kept, i, axis=0)
        assert not np.any(np.all(others >= p - 1e-9, axis=1))


@given(points3, st.integers(1, 5))
def test_pareto_chunk_independent(pts, parts):
    pts = np.array(pts, dtype=float)
    whole = pareto3d(pts)
    pieces = [pareto3d(c) for c in np.array_split(pts, parts) if len(c)]
    np.testing.assert_array_equal(pareto3d(np.vstack(pieces)), whole)


def test_pareto_of_random_union_dominates_inputs():
    rng = np.random.default_rng(8)
    pts = rng.random((100 * 8, 3))
    assert np.all(dominated_by(pts, pareto3d(pts)))


def test_batched_projection_matches_single_path():
    cat = catalog_for(CMS2)
    bp = BatchedProjection(cat.system_matrix(), cat.recombination, cat.split_rates)
    assert bp.unbounded == ()
    rng = np.random.default_rng(4)
    dirs = cube_directions()
    bv = BatchedVertices(bp.coef[~bp.zero_rows])
    for _ in range(25):
        b = np.r_[rng.uniform(0, 2, len(cat)), np.zeros(5)]
        sys = HalfspaceSystem(cat.system_matrix(), b, cat.split_rates)
        ref = project_sums(sys, cat.recombination)
        fast = bp.system(b)
        np.testing.assert_allclose(supports(fast, dirs), supports(ref, dirs), atol=1e-9)
        pts, feas = bv.vertices(bp.rhs(b[None, :])[:, ~bp.zero_rows])
        got = np.unique(np.round(pts[feas], 9), axis=0)
        want = np.unique(np.round(enumerate_vertices(ref), 9), axis=0)
        np.testing.assert_allclose(got, want, atol=1e-8)
