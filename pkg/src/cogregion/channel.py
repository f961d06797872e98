"""Channel parameters, model variants and the coding-parameter sampling law.

The Gaussian three-user channel is

    Y1 = X1 + a12 X2 + a13 X3 + Z1
    Y2 = a21 X1 + X2 + a23 X3 + Z2
    Y3 = a31 X1 + a32 X2 + X3 + Z3

with transmit powers P_k and noise variances Q_k.  A model variant pairs a
message-sharing scheme (cumulative or primary-only) with a decoding
capability (public parts decodable everywhere, or only at the intended and
primary receivers).
"""

from __future__ import annotations

import enum
import math
from dataclasses import astuple, dataclass, fields, replace

import numpy as np

from .errors import NonFiniteCoefficient, NonPositiveNoise, NonPositivePower

# Open-interval guard for tau, kappa and lambda draws.
DELTA = 1e-6

PARAM_NAMES = ("lam", "tau", "kappa", "alpha1", "alpha2", "alpha3", "alpha4", "beta1", "beta2")
BETA_SLICE = slice(7, 9)


class Sharing(enum.Enum):
    CMS = "cms"
    PMS = "pms"


class Decoding(enum.IntEnum):
    # public parts decodable at all receivers
    VARIANT1 = 1
    # public parts decodable at the intended and the primary receiver
    VARIANT2 = 2


@dataclass(frozen=True)
class ModelVariant:
    sharing: Sharing
    decoding: Decoding

    @property
    def name(self) -> str:
        return f"{self.sharing.value}{int(self.decoding)}"

    @classmethod
    def from_name(cls, name: str) -> "ModelVariant":
        key = name.strip().lower()
        try:
            return VARIANTS[key]
        except KeyError:
            raise ValueError(f"unknown model {name!r}; expected one of {sorted(VARIANTS)}") from None

    def __str__(self) -> str:
        return self.name


VARIANTS = {
    f"{s.value}{int(d)}": ModelVariant(s, d) for s in Sharing for d in Decoding
}
CMS1, CMS2 = VARIANTS["cms1"], VARIANTS["cms2"]
PMS1, PMS2 = VARIANTS["pms1"], VARIANTS["pms2"]


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


@dataclass(frozen=True)
class GaussianChannelSpec:
    p1: float
    p2: float
    p3: float
    q1: float = 1.0
    q2: float = 1.0
    q3: float = 1.0
    a12: float = 0.0
    a13: float = 0.0
    a21: float = 0.0
    a23: float = 0.0
    a31: float = 0.0
    a32: float = 0.0
    variant: ModelVariant = CMS2

    @classmethod
    def symmetric(cls, power: float, gain: float, noise: float = 1.0,
                  variant: ModelVariant = CMS2) -> "GaussianChannelSpec":
        """Equal powers, equal noise and a single cross gain on every link."""
        return cls(power, power, power, noise, noise, noise,
                   gain, gain, gain, gain, gain, gain, variant)

    @classmethod
    def simulation_setup(cls, variant: ModelVariant = CMS2,
                         power_db: float = 10.0) -> "GaussianChannelSpec":
        """Cross gains 0.55, unit noise, equal powers given in dB."""
        return cls.symmetric(db_to_linear(power_db), 0.55, 1.0, variant)

    @property
    def powers(self) -> tuple[float, float, float]:
        return (self.p1, self.p2, self.p3)

    @property
    def noises(self) -> tuple[float, float, float]:
        return (self.q1, self.q2, self.q3)

    @property
    def gains(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in ("a12", "a13", "a21", "a23", "a31", "a32")}

    def with_variant(self, variant: ModelVariant) -> "GaussianChannelSpec":
        return replace(self, variant=variant)


def validate_spec(spec: GaussianChannelSpec) -> None:
    """Raise a SpecError subclass naming the first offending field."""
    for name in ("p1", "p2", "p3"):
        v = getattr(spec, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise NonPositivePower(name, v, f"{name} must be a finite positive power, got {v!r}")
    for name in ("q1", "q2", "q3"):
        v = getattr(spec, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise NonPositiveNoise(name, v, f"{name} must be a finite positive noise variance, got {v!r}")
    for name, v in spec.gains.items():
        if not (isinstance(v, (int, float)) and math.isfinite(v)):
            raise NonFiniteCoefficient(name, v, f"{name} must be a finite real, got {v!r}")
    if not isinstance(spec.variant, ModelVariant):
        raise TypeError(f"variant must be a ModelVariant, got {type(spec.variant).__name__}")


@dataclass(frozen=True)
class SplittingParams:
    """One coding-parameter vector (lambda, tau, kappa, alpha1..4, beta1, beta2)."""

    lam: float
    tau: float
    kappa: float
    alpha1: float = 0.0
    alpha2: float = 0.0
    alpha3: float = 0.0
    alpha4: float = 0.0
    beta1: float = 0.0
    beta2: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.lam <= 1.0:
            raise ValueError(f"lam must lie in (0, 1], got {self.lam}")
        if not 0.0 < self.tau < 1.0:
            raise ValueError(f"tau must lie in (0, 1), got {self.tau}")
        if not 0.0 < self.kappa < 1.0:
            raise ValueError(f"kappa must lie in (0, 1), got {self.kappa}")

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, values) -> "SplittingParams":
        values = [float(v) for v in values]
        if len(values) != len(PARAM_NAMES):
            raise ValueError(f"expected {len(PARAM_NAMES)} values, got {len(values)}")
        return cls(*values)

    def without_betas(self) -> "SplittingParams":
        return replace(self, beta1=0.0, beta2=0.0)

    def consistent_with(self, variant: ModelVariant) -> bool:
        return variant.sharing is Sharing.CMS or (self.beta1 == 0.0 and self.beta2 == 0.0)


assert tuple(f.name for f in fields(SplittingParams)) == PARAM_NAMES


# Draw indices are grouped in fixed blocks; each block owns one stream.
PARAM_BLOCK = 2048


def param_stream(seed: int, block: int) -> np.random.Generator:
    """Counter-based stream of one index block: Philox keyed by (seed, block)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(block)])))


def _draw_raw(rng: np.random.Generator, n: int = 1) -> np.ndarray:
    out = np.empty((n, len(PARAM_NAMES)))
    out[:, 0] = rng.uniform(DELTA, 1.0, n)
    out[:, 1:3] = rng.uniform(DELTA, 1.0 - DELTA, (n, 2))
    out[:, 3:] = rng.standard_normal((n, 6))
    return out


def sample_params(spec: GaussianChannelSpec | ModelVariant, seed: int, index: int) -> SplittingParams:
    """Parameter vector of draw ``index``; betas are drawn and then zeroed under PMS.

    Drawing the betas unconditionally keeps a PMS draw identical to the CMS
    draw with the same index, restricted to beta1 = beta2 = 0.
    """
    variant = spec.variant if isinstance(spec, GaussianChannelSpec) else spec
    return SplittingParams.from_array(sample_params_batch(variant, seed, index, index + 1)[0])


def sample_params_batch(variant: ModelVariant, seed: int, start: int, stop: int) -> np.ndarray:
    """Rows of raw parameter vectors for draw indices start..stop-1.

    Row ``i`` depends only on ``seed`` and ``i``: the blocks covering the
    range are generated whole and then sliced.
    """
    if not 0 <= start <= stop:
        raise ValueError(f"bad index range {start}..{stop}")
    first, last = start // PARAM_BLOCK, -(-stop // PARAM_BLOCK)
    blocks = [_draw_raw(param_stream(seed, k), PARAM_BLOCK) for k in range(first, last)]
    out = np.vstack(blocks) if blocks else np.empty((0, len(PARAM_NAMES)))
    off = first * PARAM_BLOCK
    out = out[start - off:stop - off].copy()
    if variant.sharing is Sharing.PMS:
        out[:, BETA_SLICE] = 0.0
    return out
