import numpy as np
import pytest
from dataclasses import replace

from cogregion import CMS1, CMS2, PMS1, PMS2, GaussianChannelSpec, MissingVariable, SplittingParams, build_covariance
from cogregion.catalog import (
    RateBound,
    catalog_for,
    format_catalog,
    instantiate,
    project_to_totals,
    reduce_catalog,
)
from cogregion.infotheory import entropy, mutual_information
from cogregion.polytope import enumerate_vertices

from conftest import params


@pytest.mark.parametrize("variant,count", [(CMS2, 10), (PMS2, 10), (CMS1, 36), (PMS1, 36)])
def test_catalog_sizes(variant, count):
    cat = catalog_for(variant)
    assert len(cat) == count
    assert [b.index for b in cat.bounds] == list(range(1, count + 1))
    assert catalog_for(variant.name) is cat


def test_known_bounds():
    b5 = catalog_for(CMS2).bounds[4]
    assert b5.rates == ("R21",)
    assert b5.rhs_text() == "I(U1;U2,Y2) - I(W;U1)"
    b3 = catalog_for(PMS2).bounds[2]
    assert b3.rates == ("R11", "R31") and b3.rhs_text() == "I(W,V1;U1,Y1)"
    assert str(b5) == "bound 5: R21 <= I(U1;U2,Y2) - I(W;U1)"


def test_variant1_repairs_parse():
    rhs = [b.rhs_text() for b in catalog_for(CMS1).bounds]
    assert rhs[2] == "I(W0,W1;U0,V0,Y1) + I(W0;W1)"
    assert any(r.endswith("+ I(W0;U0) - I(W0,W1;U0) - I(W0,W1;U2) - I(W0,W1,U0,U2;V0)") for r in rhs)


def test_catalog_structure():
    cat = catalog_for(CMS2)
    assert cat.split_rates == ("R11", "R21", "R22", "R31", "R33")
    assert set(cat.variables) == {"W", "U1", "U2", "V1", "V3", "Y1", "Y2", "Y3"}
    A = cat.matrix()
    assert set(np.unique(A)) <= {0.0, 1.0}
    assert cat.system_matrix().shape == (15, 5)
    assert format_catalog(cat).count("\n") == 10


def test_rate_bound_validation():
    with pytest.raises(ValueError):
        RateBound.parse("", "I(A;B)")
    with pytest.raises(ValueError):
        RateBound.parse("R11+R11", "I(A;B)")
    with pytest.raises(ValueError):
        RateBound.parse("X1", "I(A;B)")
    assert RateBound.parse("R11+R21", "I(A;B)").coeffs == {"R11": 1, "R21": 1}


def test_zero_coupling_removes_penalties(setup_spec):
    m = build_covariance(setup_spec, params(tau=0.3, kappa=0.6))
    poly = instantiate(catalog_for(CMS2), m)
    assert poly.bound_values[4] == pytest.approx(mutual_information(m, "U1", "U2,Y2"), abs=1e-12)
    assert not poly.empty


def test_negative_bound_makes_polytope_empty(setup_spec):
    # strong primary leakage into U1 with little own power
    m = build_covariance(setup_spec, params(tau=0.01, alpha1=3.0))
    poly = instantiate(catalog_for(CMS2), m)
    assert mutual_information(m, "U1", "U2,Y2") < mutual_information(m, "W", "U1")
    assert poly.empty
    with pytest.raises(ValueError):
        project_to_totals(poly)


def test_values_match_entropy_chain(setup_spec):
    rng = np.random.default_rng(21)
    cat = catalog_for(CMS2)

    def h(s):
        return entropy(m, s)

    for _ in range(5):
        p = SplittingParams(rng.uniform(0.1, 1), *rng.uniform(0.1, 0.9, 2), *rng.normal(size=6))
        m = build_covariance(setup_spec, p)
        vals = instantiate(cat, m).bound_values
        for b, v in zip(cat.bounds, vals):
            ref = sum(t.sign * (h(t.left.names) + h(t.right.names) - h(t.left.names + t.right.names))
                      for t in b.terms)
            assert v == pytest.approx(ref, abs=1e-10)


def test_instantiate_needs_all_variables():
    with pytest.raises(MissingVariable):
        instantiate(catalog_for(CMS2), np.eye(2), ["W", "U1"])


def test_projection_of_instantiated_polytope(setup_spec):
    m = build_covariance(setup_spec, params(tau=0.7, kappa=0.8, alpha1=0.2, beta1=0.1))
    poly = instantiate(catalog_for(CMS2), m)
    proj = project_to_totals(poly)
    assert proj.names == ("R1", "R2", "R3")
    split = enumerate_vertices(poly.system)
    totals = np.column_stack([split[:, 0], split[:, 1] + split[:, 2], split[:, 3] + split[:, 4]])
    for d in np.eye(3):
        assert np.max(enumerate_vertices(proj) @ d) == pytest.approx(np.max(totals @ d), abs=1e-9)


def test_vanishing_third_user_collapses_r3():
    spec = replace(GaussianChannelSpec.simulation_setup(), p3=1e-9)
    m = build_covariance(spec, params(tau=0.6, kappa=0.4, alpha1=0.3, alpha2=-0.2))
    cat = catalog_for(CMS2)
    vals = instantiate(cat, m).bound_values
    r3_only = [i for i, b in enumerate(cat.bounds) if set(b.rates) <= {"R31", "R33"}]
    assert len(r3_only) == 3
    assert np.all(np.abs(vals[r3_only]) <= 1e-6)
    proj = project_to_totals(instantiate(cat, m))
    assert np.max(enumerate_vertices(proj)[:, 2]) <= 1e-6


def test_reduce_catalog_removes_third_user():
    red = reduce_catalog(catalog_for(CMS2), ("R31", "R33"), ("V1", "V3"))
    assert red.split_rates == ("R11", "R21", "R22")
    assert dict(red.recombination) == {"R1": ("R11",), "R2": ("R21", "R22")}
    assert [b.index for b in red.bounds] == [1, 2, 3, 4, 5, 6, 7]
    assert all(not {"V1", "V3"} & set(b.variables) for b in red.bounds)
    assert red.name == "custom"
