"""Joint Gaussian model of (Y1, Y2, Y3, W, U1, U2, V1, V3).

The covariance is generated, never transcribed: every variable is a linear
combination of eight independent zero-mean Gaussians

    G = (W~, U1~, U2~, V1~, V3~, Z1, Z2, Z3)

with variances (lam P1, tau P2, (1-tau) P2, kappa P3, (1-kappa) P3, Q1, Q2, Q3),
so ``sigma = M diag(v) M^T`` is positive semidefinite by construction.  The
hand-derived entry tables in :data:`THETA_TABLES` are kept only as an
independent cross-check (:func:`check_against_table`).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .channel import (
    BETA_SLICE,
    Decoding,
    GaussianChannelSpec,
    ModelVariant,
    Sharing,
    SplittingParams,
)
from .errors import VariantUnsupported

THETA_NAMES = ("Y1", "Y2", "Y3", "W", "U1", "U2", "V1", "V3")
SOURCE_NAMES = ("W~", "U1~", "U2~", "V1~", "V3~", "Z1", "Z2", "Z3")
SIGNAL_NAMES = ("X1", "X2", "X3")

IDX = {name: i for i, name in enumerate(THETA_NAMES)}


@dataclass(frozen=True, eq=False)
class CovarianceModel:
    spec: GaussianChannelSpec
    params: SplittingParams
    mixing: np.ndarray
    source_variances: np.ndarray
    sigma: np.ndarray
    variable_names: tuple[str, ...] = THETA_NAMES

    def entry(self, a: str, b: str) -> float:
        return float(self.sigma[IDX[a], IDX[b]])

    def signal_variances(self) -> np.ndarray:
        """Var(X1), Var(X2), Var(X3) from the signal rows of the mixing map."""
        rows = signal_mixing()
        return (rows ** 2) @ self.source_variances


def signal_mixing() -> np.ndarray:
    # X1 = W~, X2 = U1~ + U2~, X3 = V1~ + V3~
    rows = np.zeros((3, 8))
    rows[0, 0] = 1.0
    rows[1, 1:3] = 1.0
    rows[2, 3:5] = 1.0
    return rows


def _mixing_batch(spec: GaussianChannelSpec, raw: np.ndarray) -> np.ndarray:
    n = raw.shape[0]
    a1, a2, a3, a4 = raw[:, 3], raw[:, 4], raw[:, 5], raw[:, 6]
    b1, b2 = raw[:, 7], raw[:, 8]
    m = np.zeros((n, 8, 8))
    x = signal_mixing()
    # outputs
    m[:, 0] = x[0] + spec.a12 * x[1] + spec.a13 * x[2]
    m[:, 1] = spec.a21 * x[0] + x[1] + spec.a23 * x[2]
    m[:, 2] = spec.a31 * x[0] + spec.a32 * x[1] + x[2]
    m[:, 0, 5] = m[:, 1, 6] = m[:, 2, 7] = 1.0
    # auxiliaries
    m[:, 3, 0] = 1.0
    m[:, 4, 0], m[:, 4, 1] = a1, 1.0
    m[:, 5, 0], m[:, 5, 2] = a2, 1.0
    m[:, 6, 0], m[:, 6, 1], m[:, 6, 2], m[:, 6, 3] = a3, b1, b1, 1.0
    m[:, 7, 0], m[:, 7, 1], m[:, 7, 2], m[:, 7, 4] = a4, b2, b2, 1.0
    return m


def _variances_batch(spec: GaussianChannelSpec, raw: np.ndarray) -> np.ndarray:
    lam, tau, kappa = raw[:, 0], raw[:, 1], raw[:, 2]
    n = raw.shape[0]
    v = np.empty((n, 8))
    v[:, 0] = lam * spec.p1
    v[:, 1] = tau * spec.p2
    v[:, 2] = (1.0 - tau) * spec.p2
    v[:, 3] = kappa * spec.p3
    v[:, 4] = (1.0 - kappa) * spec.p3
    v[:, 5:] = spec.noises
    return v


def _require_variant2(variant: ModelVariant) -> None:
    if variant.decoding is not Decoding.VARIANT2:
        raise VariantUnsupported(
            f"no Gaussian auxiliary construction for {variant.name}; "
            "supply an external covariance instead"
        )


def build_sigma_batch(spec: GaussianChannelSpec, raw: np.ndarray) -> np.ndarray:
    """Covariances for a batch of raw parameter rows, shape (n, 8, 8)."""
    _require_variant2(spec.variant)
    raw = np.atleast_2d(np.asarray(raw, dtype=float))
    if spec.variant.sharing is Sharing.PMS and np.any(raw[:, BETA_SLICE] != 0.0):
        raise ValueError("PMS parameters must have beta1 = beta2 = 0")
    m = _mixing_batch(spec, raw)
    v = _variances_batch(spec, raw)
    sigma = np.einsum("nik,nk,njk->nij", m, v, m)
    return 0.5 * (sigma + np.swapaxes(sigma, 1, 2))


def build_covariance(spec: GaussianChannelSpec, params: SplittingParams) -> CovarianceModel:
    _require_variant2(spec.variant)
    if not params.consistent_with(spec.variant):
        raise ValueError("PMS parameters must have beta1 = beta2 = 0")
    raw = params.as_array()[None, :]
    m = _mixing_batch(spec, raw)[0]
    v = _variances_batch(spec, raw)[0]
    sigma = build_sigma_batch(spec, raw)[0]
    return CovarianceModel(spec, params, m, v, sigma)


def sample_theta(model: CovarianceModel, n: int, rng: np.random.Generator,
                 block: int = 250_000) -> np.ndarray:
    """Sample covariance of ``n`` realizations drawn through the mixing map."""
    if n < 2:
        raise ValueError("need at least two samples")
    sd = np.sqrt(model.source_variances)
    d = model.mixing.shape[0]
    total = np.zeros(d)
    cross = np.zeros((d, d))
    done = 0
    while done < n:
        k = min(block, n - done)
        g = rng.standard_normal((k, sd.size)) * sd
        theta = g @ model.mixing.T
        total += theta.sum(axis=0)
        cross += theta.T @ theta
        done += k
    mean = total / n
    return (cross - n * np.outer(mean, mean)) / (n - 1)


# ---------------------------------------------------------------------------
# Hand-derived entry tables, used only as a cross-check.
#
# Keys are 1-based (row, column) of theta_j^i; entries marked "don't care" in
# the derivation are absent.  Each formula takes a namespace ``c`` holding the
# channel and coding parameters.
# ---------------------------------------------------------------------------

Formula = Callable[[Mapping[str, float]], float]


def _cms_table() -> dict[tuple[int, int], Formula]:
    t: dict[tuple[int, int], Formula] = {
        (1, 1): lambda c: c["lP1"] + c["a12"] ** 2 * c["P2"] + c["a13"] ** 2 * c["P3"] + c["Q1"],
        (1, 4): lambda c: c["lP1"],
        (1, 5): lambda c: c["al1"] * c["lP1"] + c["a12"] * c["tau"] * c["P2"],
        (1, 6): lambda c: c["al2"] * c["lP1"] + c["a12"] * c["taub"] * c["P2"],
        (1, 7): lambda c: c["al3"] * c["lP1"] + c["a12"] * c["b1"] * c["P2"] + c["a13"] * c["kap"] * c["P3"],
        (1, 8): lambda c: c["al4"] * c["lP1"] + c["a12"] * c["b2"] * c["P2"] + c["a13"] * c["kapb"] * c["P3"],
        (2, 2): lambda c: c["a21"] ** 2 * c["lP1"] + c["P2"] + c["a23"] ** 2 * c["P3"] + c["Q2"],
        (2, 5): lambda c: c["a21"] * c["al1"] * c["lP1"] + c["tau"] * c["P2"],
        (2, 6): lambda c: c["a21"] * c["al2"] * c["lP1"] + c["taub"] * c["P2"],
        (2, 7): lambda c: c["a21"] * c["al3"] * c["lP1"] + c["b1"] * c["P2"] + c["a23"] * c["kap"] * c["P3"],
        (3, 3): lambda c: c["a31"] ** 2 * c["lP1"] + c["a32"] ** 2 * c["P2"] + c["P3"] + c["Q3"],
        (3, 4): lambda c: c["a31"] * c["lP1"],
        (3, 5): lambda c: c["a31"] * c["al1"] * c["lP1"] + c["a32"] * c["tau"] * c["P2"],
        (3, 6): lambda c: c["a31"] * c["al2"] * c["lP1"] + c["a32"] * c["taub"] * c["P2"],
        (3, 7): lambda c: c["a31"] * c["al3"] * c["lP1"] + c["a32"] * c["b1"] * c["P2"] + c["kap"] * c["P3"],
        (3, 8): lambda c: c["a31"] * c["al4"] * c["lP1"] + c["a32"] * c["b2"] * c["P2"] + c["kapb"] * c["P3"],
        (4, 1): lambda c: c["lP1"],
        (4, 3): lambda c: c["a31"] * c["lP1"],
        (4, 4): lambda c: c["lP1"],
        (4, 5): lambda c: c["al1"] * c["lP1"],
        (4, 6): lambda c: c["al2"] * c["lP1"],
        (4, 7): lambda c: c["al3"] * c["lP1"],
        (4, 8): lambda c: c["al4"] * c["lP1"],
        (5, 1): lambda c: c["al1"] * c["lP1"] + c["a12"] * c["tau"] * c["P2"],
        (5, 2): lambda c: c["a21"] * c["al1"] * c["lP1"] + c["tau"] * c["P2"],
        (5, 3): lambda c: c["a31"] * c["al1"] * c["lP1"] + c["a32"] * c["tau"] * c["P2"],
        (5, 4): lambda c: c["al1"] * c["lP1"],
        (5, 5): lambda c: c["al1"] ** 2 * c["lP1"] + c["tau"] * c["P2"],
        (5, 6): lambda c: c["al1"] * c["al2"] * c["lP1"],
        (5, 7): lambda c: c["al1"] * c["al3"] * c["lP1"] + c["b1"] * c["tau"] * c["P2"],
        (5, 8): lambda c: c["al1"] * c["al4"] * c["lP1"] + c["b2"] * c["tau"] * c["P2"],
        (6, 1): lambda c: c["al2"] * c["lP1"] + c["a12"] * c["taub"] * c["P2"],
        (6, 2): lambda c: c["a21"] * c["al2"] * c["lP1"] + c["taub"] * c["P2"],
        (6, 3): lambda c: c["a31"] * c["al2"] * c["lP1"] + c["a32"] * c["taub"] * c["P2"],
        (6, 4): lambda c: c["al2"] * c["lP1"],
        (6, 5): lambda c: c["al1"] * c["al2"] * c["lP1"],
        (6, 6): lambda c: c["al2"] ** 2 * c["lP1"] + c["taub"] * c["P2"],
        (6, 7): lambda c: c["al2"] * c["al3"] * c["lP1"] + c["b1"] * c["taub"] * c["P2"],
        (6, 8): lambda c: c["al2"] * c["al4"] * c["lP1"] + c["b2"] * c["taub"] * c["P2"],
        (7, 1): lambda c: c["al3"] * c["lP1"] + c["a12"] * c["b1"] * c["P2"] + c["a13"] * c["kap"] * c["P3"],
        (7, 2): lambda c: c["a21"] * c["al3"] * c["lP1"] + c["b1"] * c["P2"] + c["a23"] * c["kap"] * c["P3"],
        (7, 3): lambda c: c["a31"] * c["al3"] * c["lP1"] + c["a32"] * c["b1"] * c["P2"] + c["kap"] * c["P3"],
        (7, 4): lambda c: c["al3"] * c["lP1"],
        (7, 5): lambda c: c["al1"] * c["al3"] * c["lP1"] + c["b1"] * c["tau"] * c["P2"],
        (7, 6): lambda c: c["al2"] * c["al3"] * c["lP1"] + c["b1"] * c["taub"] * c["P2"],
        (7, 7): lambda c: c["al3"] ** 2 * c["lP1"] + c["b1"] ** 2 * c["P2"] + c["kap"] * c["P3"],
        (7, 8): lambda c: c["al3"] * c["al4"] * c["lP1"] + c["b1"] * c["b2"] * c["P2"],
        (8, 1): lambda c: c["al4"] * c["lP1"] + c["a12"] * c["b2"] * c["P2"] + c["a13"] * c["kapb"] * c["P3"],
        (8, 3): lambda c: c["a31"] * c["al4"] * c["lP1"] + c["a32"] * c["b2"] * c["P2"] + c["kapb"] * c["P3"],
        (8, 4): lambda c: c["al4"] * c["lP1"],
        (8, 5): lambda c: c["al1"] * c["al4"] * c["lP1"] + c["b2"] * c["tau"] * c["P2"],
        (8, 6): lambda c: c["al2"] * c["al4"] * c["lP1"] + c["b2"] * c["taub"] * c["P2"],
        (8, 7): lambda c: c["al3"] * c["al4"] * c["lP1"] + c["b1"] * c["b2"] * c["P2"],
        # printed as al4^2 P1 (lambda dropped); every other W-power term carries lambda
        (8, 8): lambda c: c["al4"] ** 2 * c["lP1"] + c["b2"] ** 2 * c["P2"] + c["kapb"] * c["P3"],
    }
    return t


def _pms_table() -> dict[tuple[int, int], Formula]:
    t: dict[tuple[int, int], Formula] = {
        # printed with P1; X1 = W~ has variance lam P1, as in (4, 4)
        (1, 1): lambda c: c["lP1"] + c["a12"] ** 2 * c["P2"] + c["a13"] ** 2 * c["P3"] + c["Q1"],
        (1, 4): lambda c: c["lP1"],
        (1, 5): lambda c: c["al1"] * c["lP1"] + c["a12"] * c["tau"] * c["P2"],
        (1, 6): lambda c: c["al2"] * c["lP1"] + c["a12"] * c["taub"] * c["P2"],
        (1, 7): lambda c: c["al3"] * c["lP1"] + c["a13"] * c["kap"] * c["P3"],
        (1, 8): lambda c: c["al4"] * c["lP1"] + c["a13"] * c["kapb"] * c["P3"],
        (2, 2): lambda c: c["a21"] ** 2 * c["lP1"] + c["P2"] + c["a23"] ** 2 * c["P3"] + c["Q2"],
        (2, 4): lambda c: c["a21"] * c["lP1"],
        (2, 5): lambda c: c["a21"] * c["al1"] * c["lP1"] + c["tau"] * c["P2"],
        (2, 6): lambda c: c["a21"] * c["al2"] * c["lP1"] + c["taub"] * c["P2"],
        (2, 7): lambda c: c["a21"] * c["al3"] * c["lP1"] + c["a23"] * c["kap"] * c["P3"],
        (3, 3): lambda c: c["a31"] ** 2 * c["lP1"] + c["a32"] ** 2 * c["P2"] + c["P3"] + c["Q3"],
        (3, 4): lambda c: c["a31"] * c["lP1"],
        (3, 5): lambda c: c["a31"] * c["al1"] * c["lP1"] + c["a32"] * c["tau"] * c["P2"],
        (3, 6): lambda c: c["a31"] * c["al2"] * c["lP1"] + c["a32"] * c["taub"] * c["P2"],
        (3, 7): lambda c: c["a31"] * c["al3"] * c["lP1"] + c["kap"] * c["P3"],
        (3, 8): lambda c: c["a31"] * c["al4"] * c["lP1"] + c["kapb"] * c["P3"],
        (4, 1): lambda c: c["lP1"],
        (4, 2): lambda c: c["a21"] * c["lP1"],
        (4, 3): lambda c: c["a31"] * c["lP1"],
        (4, 4): lambda c: c["lP1"],
        (4, 5): lambda c: c["al1"] * c["lP1"],
        (4, 6): lambda c: c["al2"] * c["lP1"],
        (4, 7): lambda c: c["al3"] * c["lP1"],
        (4, 8): lambda c: c["al4"] * c["lP1"],
        (5, 1): lambda c: c["al1"] * c["lP1"] + c["a12"] * c["tau"] * c["P2"],
        (5, 2): lambda c: c["a21"] * c["al1"] * c["lP1"] + c["tau"] * c["P2"],
        (5, 3): lambda c: c["a31"] * c["al1"] * c["lP1"] + c["a32"] * c["tau"] * c["P2"],
        (5, 4): lambda c: c["al1"] * c["lP1"],
        (5, 5): lambda c: c["al1"] ** 2 * c["lP1"] + c["tau"] * c["P2"],
        (5, 6): lambda c: c["al1"] * c["al2"] * c["lP1"],
        (5, 7): lambda c: c["al1"] * c["al3"] * c["lP1"],
        (5, 8): lambda c: c["al1"] * c["al4"] * c["lP1"],
        (6, 1): lambda c: c["al2"] * c["lP1"] + c["a12"] * c["taub"] * c["P2"],
        (6, 2): lambda c: c["a21"] * c["al2"] * c["lP1"] + c["taub"] * c["P2"],
        (6, 3): lambda c: c["a31"] * c["al2"] * c["lP1"] + c["a32"] * c["taub"] * c["P2"],
        (6, 4): lambda c: c["al2"] * c["lP1"],
        (6, 5): lambda c: c["al1"] * c["al2"] * c["lP1"],
        # printed with tau P2; U2~ carries (1 - tau) P2 as in (2, 6) and (6, 2)
        (6, 6): lambda c: c["al2"] ** 2 * c["lP1"] + c["taub"] * c["P2"],
        # printed as al1 al3; the symmetric pair of E(U2 V1) must use al2
        (6, 7): lambda c: c["al2"] * c["al3"] * c["lP1"],
        (6, 8): lambda c: c["al2"] * c["al4"] * c["lP1"],
        (7, 1): lambda c: c["al3"] * c["lP1"] + c["a13"] * c["kap"] * c["P3"],
        (7, 2): lambda c: c["a21"] * c["al3"] * c["lP1"] + c["a23"] * c["kap"] * c["P3"],
        (7, 3): lambda c: c["a31"] * c["al3"] * c["lP1"] + c["kap"] * c["P3"],
        (7, 4): lambda c: c["al3"] * c["lP1"],
        (7, 5): lambda c: c["al1"] * c["al3"] * c["lP1"],
        (7, 6): lambda c: c["al2"] * c["al3"] * c["lP1"],
        (7, 7): lambda c: c["al3"] ** 2 * c["lP1"] + c["kap"] * c["P3"],
        (7, 8): lambda c: c["al3"] * c["al4"] * c["lP1"],
        (8, 1): lambda c: c["al4"] * c["lP1"] + c["a13"] * c["kapb"] * c["P3"],
        (8, 3): lambda c: c["a31"] * c["al4"] * c["lP1"] + c["kapb"] * c["P3"],
        (8, 4): lambda c: c["al4"] * c["lP1"],
        (8, 5): lambda c: c["al1"] * c["al4"] * c["lP1"],
        (8, 6): lambda c: c["al2"] * c["al4"] * c["lP1"],
        (8, 7): lambda c: c["al3"] * c["al4"] * c["lP1"],
        (8, 8): lambda c: c["al4"] ** 2 * c["lP1"] + c["kapb"] * c["P3"],
    }
    return t


THETA_TABLES: dict[Sharing, dict[tuple[int, int], Formula]] = {
    Sharing.CMS: _cms_table(),
    Sharing.PMS: _pms_table(),
}

# Entries whose printed formula is inconsistent with the construction; the
# tables above hold the corrected form.  Printed text kept for auditing.
THETA_REPAIRS: dict[Sharing, dict[tuple[int, int], str]] = {
    Sharing.CMS: {
        (8, 8): "alpha_4^2 P_1 + beta_2^2 P_2 + kappa_bar P_3",
    },
    Sharing.PMS: {
        (1, 1): "P_1 + a_12^2 P_2 + a_13^2 P_3 + Q_1",
        (6, 6): "alpha_2^2 lambda P_1 + tau P_2",
        (6, 7): "alpha_1 alpha_3 lambda P_1",
        (7, 6): "alpha_1 alpha_3 lambda P_1",
    },
}


def _namespace(spec: GaussianChannelSpec, params: SplittingParams) -> dict[str, float]:
    return {
        "P1": spec.p1, "P2": spec.p2, "P3": spec.p3,
        "Q1": spec.q1, "Q2": spec.q2, "Q3": spec.q3,
        **spec.gains,
        "lP1": params.lam * spec.p1,
        "tau": params.tau, "taub": 1.0 - params.tau,
        "kap": params.kappa, "kapb": 1.0 - params.kappa,
        "al1": params.alpha1, "al2": params.alpha2, "al3": params.alpha3, "al4": params.alpha4,
        "b1": params.beta1, "b2": params.beta2,
    }


@dataclass(frozen=True)
class Mismatch:
    row: int
    col: int
    table_value: float
    sigma_value: float

    @property
    def label(self) -> str:
        return f"theta[{self.row},{self.col}] = E({THETA_NAMES[self.row - 1]}{THETA_NAMES[self.col - 1]})"

    def __str__(self) -> str:
        return f"{self.label}: table {self.table_value!r} vs sigma {self.sigma_value!r}"


def _table_rows(model: CovarianceModel, table):
    if table is None:
        table = THETA_TABLES[model.spec.variant.sharing]
    ns = _namespace(model.spec, model.params)
    sigma = model.sigma
    for (i, j), formula in sorted(table.items()):
        expected = float(formula(ns))
        actual = float(sigma[i - 1, j - 1])
        scale = max(abs(expected), math.sqrt(abs(sigma[i - 1, i - 1] * sigma[j - 1, j - 1])))
        yield i, j, expected, actual, abs(expected - actual) / scale if scale > 0 else abs(expected - actual)


def check_against_table(model: CovarianceModel,
                        table: Mapping[tuple[int, int], Formula] | None = None,
                        rtol: float = 1e-10) -> list[Mismatch]:
    """Compare sigma with every tabulated entry formula.

    An entry mismatches when it differs by more than ``rtol`` relative to
    ``max(|table value|, sqrt(sigma_ii sigma_jj))``; the second scale keeps
    entries that cancel to nearly zero from failing on round-off alone.
    """
    return [Mismatch(i, j, e, a) for i, j, e, a, rel in _table_rows(model, table) if not rel <= rtol]


def table_deviation(model: CovarianceModel,
                    table: Mapping[tuple[int, int], Formula] | None = None) -> float:
    """Largest scaled difference between the table and sigma."""
    return max(rel for *_, rel in _table_rows(model, table))


def sigma_to_csv(sigma: np.ndarray, names=THETA_NAMES) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for row in np.asarray(sigma, dtype=float):
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def read_covariance_csv(path) -> tuple[np.ndarray, tuple[str, ...]]:
    """Read a header row of variable names followed by a symmetric matrix."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    if not rows:
        raise ValueError(f"{path}: empty covariance file")
    names = tuple(n.strip() for n in rows[0])
    body = np.array([[float(x) for x in r] for r in rows[1:]])
    if body.shape != (len(names), len(names)):
        raise ValueError(f"{path}: expected a {len(names)}x{len(names)} matrix, got {body.shape}")
    if len(set(names)) != len(names):
        raise ValueError(f"{path}: duplicate variable names")
    if not np.all(np.isfinite(body)):
        raise ValueError(f"{path}: non-finite entries")
    if not np.allclose(body, body.T, rtol=1e-9, atol=1e-12):
        raise ValueError(f"{path}: matrix is not symmetric")
    return 0.5 * (body + body.T), names
