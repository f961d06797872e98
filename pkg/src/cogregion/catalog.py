"""Bound catalogs and their numeric instantiation into split-rate polytopes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import _bounds
from .channel import Decoding, ModelVariant
from .errors import MissingVariable
from .gaussian import THETA_NAMES
from .infotheory import MITerm, TermPlan, VarSet, evaluate_terms, parse_terms
from .polytope import HalfspaceSystem, project_sums

SPLIT_RATES = {
    Decoding.VARIANT2: ("R11", "R21", "R22", "R31", "R33"),
    Decoding.VARIANT1: ("R10", "R11", "R20", "R22", "R30", "R33"),
}
RECOMBINATION = {
    Decoding.VARIANT2: {"R1": ("R11",), "R2": ("R21", "R22"), "R3": ("R31", "R33")},
    Decoding.VARIANT1: {"R1": ("R10", "R11"), "R2": ("R20", "R22"), "R3": ("R30", "R33")},
}
_RATE_RE = re.compile(r"^R\d\d$")


@dataclass(frozen=True)
class RateBound:
    """``sum of rates <= signed sum of mutual informations``; ``index`` is 1-based."""

    rates: tuple[str, ...]
    terms: tuple[MITerm, ...]
    index: int = 0

    def __post_init__(self):
        if not self.rates:
            raise ValueError("a bound needs at least one rate")
        if len(set(self.rates)) != len(self.rates):
            raise ValueError(f"repeated rate in {self.rates}")
        for r in self.rates:
            if not _RATE_RE.match(r):
                raise ValueError(f"bad rate name {r!r}")

    @classmethod
    def parse(cls, lhs: str, rhs: str, index: int = 0) -> "RateBound":
        rates = tuple(s.strip() for s in lhs.split("+"))
        return cls(rates, tuple(parse_terms(rhs)), index)

    @property
    def coeffs(self) -> dict[str, int]:
        return {r: 1 for r in self.rates}

    @property
    def variables(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for t in self.terms:
            for v in t.variables:
                seen.setdefault(v)
        return tuple(seen)

    def lhs_text(self) -> str:
        return "+".join(self.rates)

    def rhs_text(self) -> str:
        parts = []
        for i, t in enumerate(self.terms):
            body = f"I({t.left};{t.right})"
            if i == 0:
                parts.append(body if t.sign > 0 else "-" + body)
            else:
                parts.append(("+ " if t.sign > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return f"bound {self.index}: {self.lhs_text()} <= {self.rhs_text() or '0'}"


@dataclass(frozen=True, eq=False)
class BoundCatalog:
    variant: ModelVariant | None
    split_rates: tuple[str, ...]
    bounds: tuple[RateBound, ...]
    recombination: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        known = set(self.split_rates)
        for b in self.bounds:
            extra = set(b.rates) - known
            if extra:
                raise ValueError(f"bound {b.index} uses unknown rates {sorted(extra)}")
        members = [m for g in self.recombination.values() for m in g]
        if sorted(members) != sorted(self.split_rates):
            raise ValueError("recombination must partition the split rates")

    @property
    def variables(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for b in self.bounds:
            for v in b.variables:
                seen.setdefault(v)
        return tuple(seen)

    def matrix(self) -> np.ndarray:
        col = {r: i for i, r in enumerate(self.split_rates)}
        A = np.zeros((len(self.bounds), len(self.split_rates)))
        for i, b in enumerate(self.bounds):
            for r in b.rates:
                A[i, col[r]] = 1.0
        return A

    def system_matrix(self) -> np.ndarray:
        """Bound rows followed by the nonnegativity rows."""
        return np.vstack([self.matrix(), -np.eye(len(self.split_rates))])

    def term_rows(self) -> list[tuple[MITerm, ...]]:
        return [b.terms for b in self.bounds]

    def plan(self, names: Sequence[str]) -> TermPlan:
        missing = [v for v in self.variables if v not in names]
        if missing:
            raise MissingVariable(f"covariance lacks variables {missing}")
        return TermPlan(self.term_rows(), names)

    @property
    def name(self) -> str:
        return self.variant.name if self.variant is not None else "custom"

    def __len__(self) -> int:
        return len(self.bounds)


def _build(variant: ModelVariant) -> BoundCatalog:
    table = getattr(_bounds, variant.name.upper())
    bounds = tuple(RateBound.parse(lhs, rhs, i + 1) for i, (lhs, rhs) in enumerate(table))
    return BoundCatalog(variant, SPLIT_RATES[variant.decoding], bounds,
                        dict(RECOMBINATION[variant.decoding]))


@lru_cache(maxsize=None)
def _cached(variant: ModelVariant) -> BoundCatalog:
    return _build(variant)


def catalog_for(variant: ModelVariant | str) -> BoundCatalog:
    if isinstance(variant, str):
        variant = ModelVariant.from_name(variant)
    return _cached(variant)


def format_catalog(catalog: BoundCatalog) -> str:
    return "\n".join(str(b) for b in catalog.bounds) + "\n"


def reduce_catalog(catalog: BoundCatalog, drop_rates: Sequence[str],
                   drop_variables: Sequence[str]) -> BoundCatalog:
    """Remove users from a catalog.

    Dropped rates are set to zero, dropped variables are deleted from every
    term (a term left with an empty side vanishes), and bounds with no rate
    left are removed.
    """
    drop_r, drop_v = set(drop_rates), set(drop_variables)
    bounds = []
    for b in catalog.bounds:
        rates = tuple(r for r in b.rates if r not in drop_r)
        if not rates:
            continue
        terms = []
        for t in b.terms:
            left = [v for v in t.left if v not in drop_v]
            right = [v for v in t.right if v not in drop_v]
            if left and right:
                terms.append(MITerm(VarSet(tuple(left)), VarSet(tuple(right)), t.sign))
        bounds.append(RateBound(rates, tuple(terms), b.index))
    split = tuple(r for r in catalog.split_rates if r not in drop_r)
    recomb = {k: tuple(m for m in g if m not in drop_r) for k, g in catalog.recombination.items()}
    recomb = {k: g for k, g in recomb.items() if g}
    return BoundCatalog(None, split, tuple(bounds), recomb)


@dataclass(frozen=True, eq=False)
class RatePolytope:
    """Numeric image of a catalog under one covariance.

    ``bound_values`` holds the catalog right-hand sides in catalog order;
    ``system`` adds the nonnegativity rows.  ``empty`` marks a vacuous draw,
    i.e. some bound is negative so not even the zero rate tuple qualifies.
    """

    catalog: BoundCatalog
    bound_values: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.catalog.split_rates)

    @property
    def empty(self) -> bool:
        return bool(np.any(self.bound_values < 0.0))

    @property
    def system(self) -> HalfspaceSystem:
        b = np.concatenate([self.bound_values, np.zeros(self.dim)])
        return HalfspaceSystem(self.catalog.system_matrix(), b, self.catalog.split_rates)

    @property
    def halfspaces(self) -> list[tuple[np.ndarray, float]]:
        return self.system.rows


def instantiate(catalog: BoundCatalog, sigma, names: Sequence[str] | None = None) -> RatePolytope:
    """Evaluate every bound's right-hand side on a covariance.

    ``sigma`` may be a CovarianceModel or an array with ``names`` giving
    its variable order.
    """
    if hasattr(sigma, "variable_names"):
        names = tuple(sigma.variable_names)
        sigma = sigma.sigma
    if names is None:
        names = THETA_NAMES
    missing = [v for v in catalog.variables if v not in names]
    if missing:
        raise MissingVariable(f"covariance lacks variables {missing}")
    values = np.array([evaluate_terms(sigma, b.terms, names) for b in catalog.bounds])
    if not np.all(np.isfinite(values)):
        raise ArithmeticError("non-finite bound value")
    return RatePolytope(catalog, values)


def project_to_totals(poly: RatePolytope,
                      recomb: Mapping[str, Sequence[str]] | None = None) -> HalfspaceSystem:
    """Exact irredundant image of a nonempty split-rate polytope on the total rates."""
    if poly.empty:
        raise ValueError("cannot project a vacuous polytope")
    recomb = poly.catalog.recombination if recomb is None else recomb
    return project_sums(poly.system, recomb)

