import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cogregion import GaussianChannelSpec, MissingVariable, OverlappingSets, SingularSubmatrix, build_covariance
from cogregion.infotheory import (
    EPS_BITS,
    MITerm,
    TermPlan,
    VarSet,
    entropy,
    evaluate_terms,
    evaluate_terms_batch,
    mutual_information,
    parse_terms,
)
from cogregion.gaussian import THETA_NAMES

from conftest import params
from test_gaussian import draws


def test_scalar_entropy_constant():
    assert EPS_BITS == pytest.approx(2.047095585, abs=1e-9)
    assert entropy(np.eye(1), "A", ["A"]) == pytest.approx(EPS_BITS, abs=1e-9)
    assert entropy(np.eye(2), "A,B", ["A", "B"]) == pytest.approx(2 * EPS_BITS, abs=1e-9)


def test_entropy_of_primary_auxiliary():
    m = build_covariance(GaussianChannelSpec.symmetric(10.0, 0.55), params(lam=0.5))
    assert entropy(m, "W") == pytest.approx(EPS_BITS + 0.5 * math.log2(5.0), abs=1e-9)


def test_independent_mi_is_zero():
    m = build_covariance(GaussianChannelSpec.symmetric(10.0, 0.55), params(alpha1=0.0))
    assert abs(mutual_information(m, "W", "U1")) <= 1e-12


def test_half_bit_example():
    # W and U1 = W + U1~ with unit variances: correlation^2 = 1/2
    spec = GaussianChannelSpec(1.0, 2.0, 1.0)
    m = build_covariance(spec, params(lam=1.0, tau=0.5, alpha1=1.0))
    assert mutual_information(m, "W", "U1") == pytest.approx(0.5, abs=1e-9)


def test_bivariate_closed_form():
    rho = 0.8
    s = np.array([[1.0, rho], [rho, 1.0]])
    assert mutual_information(s, "A", "B", ["A", "B"]) == pytest.approx(-0.5 * math.log2(1 - rho * rho), rel=1e-9)


def test_evaluate_terms_examples():
    m = build_covariance(GaussianChannelSpec.simulation_setup(), params())
    assert evaluate_terms(m, []) == 0.0
    terms = parse_terms("I(U1;U2,Y2) - I(W;U1)")
    assert evaluate_terms(m, terms) == pytest.approx(mutual_information(m, "U1", "U2,Y2"), abs=1e-12)


@given(draws())
def test_terms_match_entropy_chain(case):
    spec, p = case
    m = build_covariance(spec, p)
    terms = parse_terms("I(W,U1;V1,Y1) + I(W,U1;V1) - I(W;V1)")

    def mi(a, b):
        return entropy(m, a) + entropy(m, b) - entropy(m, a + "," + b)

    chain = mi("W,U1", "V1,Y1") + mi("W,U1", "V1") - mi("W", "V1")
    assert evaluate_terms(m, terms) == pytest.approx(chain, abs=1e-9)


@given(draws(), st.randoms(use_true_random=False))
def test_mi_properties(case, rnd):
    spec, p = case
    m = build_covariance(spec, p)
    names = list(THETA_NAMES)
    rnd.shuffle(names)
    k = rnd.randint(3, 8)
    c1, c2 = sorted(rnd.sample(range(1, k), 2))
    s, t, u = names[:c1], names[c1:c2], names[c2:k]
    st_ = mutual_information(m, s, t)
    assert st_ == pytest.approx(mutual_information(m, t, s), abs=1e-10)
    assert st_ >= -1e-9
    assert mutual_information(m, s, t + u) >= st_ - 1e-9


def test_plan_matches_scalar_path():
    spec = GaussianChannelSpec.simulation_setup()
    rng = np.random.default_rng(3)
    rows = [parse_terms("I(W;U1,V1,Y1)"), parse_terms("I(U1,U2;Y2) + I(U1;U2) - I(W;U1) - I(W;U2)"), []]
    models = [build_covariance(spec, params(alpha1=a, beta1=b)) for a, b in rng.normal(size=(6, 2))]
    batch = evaluate_terms_batch(np.stack([m.sigma for m in models]), rows)
    for m, got in zip(models, batch):
        np.testing.assert_allclose(got, [evaluate_terms(m, r) for r in rows], atol=1e-10)


def test_plan_flags_singular_rows():
    s = np.zeros((1, 2, 2))
    plan = TermPlan([parse_terms("I(A;B)")], ["A", "B"])
    assert np.isnan(plan.evaluate(s)).all()


def test_singular_and_missing_errors():
    with pytest.raises(SingularSubmatrix):
        entropy(np.zeros((2, 2)), "A", ["A", "B"])
    with pytest.raises(MissingVariable):
        entropy(np.eye(2), "C", ["A", "B"])
    with pytest.raises(OverlappingSets):
        mutual_information(np.eye(2), "A", "A,B", ["A", "B"])


def test_parse_terms():
    terms = parse_terms(" -I(A;B) + I(A,C ; D)")
    assert [t.sign for t in terms] == [-1, 1]
    assert terms[1].left == VarSet(("A", "C")) and terms[1].right.names == ("D",)
    assert str(terms[0]) == "-I(A;B)"
    assert parse_terms("") == []
    for bad in ("I(A;B) I(C;D)", "I(A,B)", "I(A;B) + junk"):
        with pytest.raises(ValueError):
            parse_terms(bad)


def test_varset_and_term_basics():
    v = VarSet.of("A, B") | VarSet.of(["B", "C"])
    assert v.names == ("A", "B", "C") and len(v) == 3 and str(v) == "A,B,C"
    with pytest.raises(ValueError):
        VarSet(())
    with pytest.raises(ValueError):
        VarSet(("A", "A"))
    t = MITerm("A", "B")
    assert t.negated().sign == -1 and t.variables == ("A", "B")
    with pytest.raises(ValueError):
        MITerm("A", "B", 2)
