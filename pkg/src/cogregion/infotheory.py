"""Gaussian differential entropies and mutual informations, in bits.

Every quantity reduces to log-determinants of principal submatrices of a
covariance matrix.  Before any determinant the diagonal receives a ridge of
``RIDGE * trace / dim`` so boundary draws stay finite.

Functions accept either a bare covariance array together with the ordered
variable names, or a :class:`~cogregion.gaussian.CovarianceModel`.  The
``*_batch`` variants work on stacks of covariances of shape ``(n, d, d)``
and evaluate each distinct submatrix once per stack.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import MissingVariable, OverlappingSets, SingularSubmatrix
from .gaussian import THETA_NAMES

RIDGE = 1e-12
EPS_BITS = 0.5 * math.log2(2.0 * math.pi * math.e)
_LOG2E = 1.0 / math.log(2.0)
_MIN_LOGDET = math.log(1e-300)


@dataclass(frozen=True)
class VarSet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a variable set must be nonempty")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variables in {names}")

    @classmethod
    def of(cls, spec: "VarSet | str | Iterable[str]") -> "VarSet":
        if isinstance(spec, VarSet):
            return spec
        if isinstance(spec, str):
            spec = [s.strip() for s in spec.split(",") if s.strip()]
        return cls(tuple(spec))

    def __or__(self, other: "VarSet") -> "VarSet":
        return VarSet(self.names + tuple(n for n in other.names if n not in self.names))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __str__(self) -> str:
        return ",".join(self.names)


@dataclass(frozen=True)
class MITerm:
    left: VarSet
    right: VarSet
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "left", VarSet.of(self.left))
        object.__setattr__(self, "right", VarSet.of(self.right))
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        common = set(self.left.names) & set(self.right.names)
        if common:
            raise OverlappingSets(f"I({self.left};{self.right}) shares {sorted(common)}")

    @property
    def variables(self) -> tuple[str, ...]:
        return self.left.names + self.right.names

    def negated(self) -> "MITerm":
        return MITerm(self.left, self.right, -self.sign)

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}I({self.left};{self.right})"


_TERM_RE = re.compile(r"([+-]?)\s*I\(\s*([^;()]+?)\s*;\s*([^;()]+?)\s*\)")


def parse_terms(text: str) -> list[MITerm]:
    """Parse ``"I(A,B;C) - I(A;D) + ..."`` into signed terms."""
    terms = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse term list at {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        if terms and not m.group(1):
            raise ValueError(f"missing operator before {m.group(0)!r}")
        terms.append(MITerm(VarSet.of(m.group(2)), VarSet.of(m.group(3)), sign))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return terms


def _unpack(sigma, names):
    if hasattr(sigma, "sigma") and hasattr(sigma, "variable_names"):
        return np.asarray(sigma.sigma, dtype=float), tuple(sigma.variable_names)
    arr = np.asarray(sigma, dtype=float)
    return arr, tuple(names if names is not None else THETA_NAMES)


def _indices(vars_: Iterable[str], names: Sequence[str]) -> tuple[int, ...]:
    lookup = {n: i for i, n in enumerate(names)}
    try:
        return tuple(lookup[v] for v in vars_)
    except KeyError as exc:
        raise MissingVariable(f"variable {exc.args[0]!r} not among {list(names)}") from None


def _ridged(sigma: np.ndarray) -> np.ndarray:
    d = sigma.shape[-1]
    ridge = RIDGE * np.trace(sigma, axis1=-2, axis2=-1) / d
    out = np.array(sigma, dtype=float, copy=True)
    idx = np.arange(d)
    out[..., idx, idx] += np.asarray(ridge)[..., None]
    return out


def _logdet(ridged: np.ndarray, idx: tuple[int, ...]) -> float:
    sub = ridged[np.ix_(idx, idx)]
    sign, ld = np.linalg.slogdet(sub)
    if sign <= 0 or ld <= _MIN_LOGDET:
        raise SingularSubmatrix(f"submatrix on indices {idx} is singular")
    return float(ld)


def entropy(sigma, s, names: Sequence[str] | None = None) -> float:
    """Differential entropy h(S) in bits."""
    sig, nm = _unpack(sigma, names)
    vs = VarSet.of(s)
    ld = _logdet(_ridged(sig), _indices(vs, nm))
    return len(vs) * EPS_BITS + 0.5 * ld * _LOG2E


def mutual_information(sigma, left, right, names: Sequence[str] | None = None) -> float:
    """I(L;R) in bits via the log-determinant ratio."""
    sig, nm = _unpack(sigma, names)
    term = MITerm(VarSet.of(left), VarSet.of(right))
    r = _ridged(sig)
    li, ri = _indices(term.left, nm), _indices(term.right, nm)
    return 0.5 * _LOG2E * (_logdet(r, li) + _logdet(r, ri) - _logdet(r, li + ri))


def evaluate_terms(sigma, terms: Sequence[MITerm], names: Sequence[str] | None = None) -> float:
    sig, nm = _unpack(sigma, names)
    total = 0.0
    for t in terms:
        total += t.sign * mutual_information(sig, t.left, t.right, nm)
    return total


# ---------------------------------------------------------------------------
# batched evaluation
# ---------------------------------------------------------------------------

def _key(idx: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(idx))


class TermPlan:
    """Precompiled signed MI sums over a fixed variable ordering.

    ``rows`` is a list of term lists (one per bound).  Evaluation computes
    each distinct principal log-determinant once per covariance stack and
    combines them with a sparse coefficient matrix.
    """

    def __init__(self, rows: Sequence[Sequence[MITerm]], names: Sequence[str]):
        self.names = tuple(names)
        subsets: dict[tuple[int, ...], int] = {}
        coeffs: list[dict[int, float]] = []

        def slot(idx):
            return subsets.setdefault(_key(idx), len(subsets))

        for terms in rows:
            acc: dict[int, float] = {}
            for t in terms:
                li, ri = _indices(t.left, self.names), _indices(t.right, self.names)
                for s, c in ((slot(li), 1.0), (slot(ri), 1.0), (slot(li + ri), -1.0)):
                    acc[s] = acc.get(s, 0.0) + t.sign * c
            coeffs.append(acc)
        self.subsets = list(subsets)
        self.matrix = np.zeros((len(coeffs), len(self.subsets)))
        for r, acc in enumerate(coeffs):
            for s, c in acc.items():
                self.matrix[r, s] = c
        self.matrix *= 0.5 * _LOG2E
        by_size: dict[int, list[int]] = {}
        for s, idx in enumerate(self.subsets):
            by_size.setdefault(len(idx), []).append(s)
        self._by_size = by_size

    def logdets(self, sigmas: np.ndarray) -> np.ndarray:
        """Natural log-determinants, shape (n, n_subsets); NaN where singular."""
        sigmas = _ridged(np.asarray(sigmas, dtype=float))
        n = sigmas.shape[0]
        out = np.empty((n, len(self.subsets)))
        for size, slots in self._by_size.items():
            idx = np.array([self.subsets[s] for s in slots])  # (k, size)
            sub = sigmas[:, idx[:, :, None], idx[:, None, :]]  # (n, k, size, size)
            sign, ld = np.linalg.slogdet(sub)
            ld = np.where((sign > 0) & (ld > _MIN_LOGDET), ld, np.nan)
            out[:, slots] = ld
        return out

    def evaluate(self, sigmas: np.ndarray) -> np.ndarray:
        """Bound values, shape (n, n_rows); NaN rows flag singular draws."""
        return self.logdets(sigmas) @ self.matrix.T


def evaluate_terms_batch(sigmas: np.ndarray, rows: Sequence[Sequence[MITerm]],
                         names: Sequence[str] = THETA_NAMES) -> np.ndarray:
    return TermPlan(rows, names).evaluate(sigmas)
