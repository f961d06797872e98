"""Command-line front end: ``region``, ``catalog``, ``verify`` and ``dump-sigma``.

Settings come from an optional flat ``key=value`` file (``#`` starts a
comment) and are overridden by flags.  Powers are given in dB and turned
into linear values once, when the :class:`RunConfig` is built.

Exit codes: 0 success, 1 usage or configuration error, 2 a verification
suite failed, 3 numeric failure during the run.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .catalog import catalog_for, format_catalog, instantiate, project_to_totals
from .channel import (
    Decoding,
    GaussianChannelSpec,
    ModelVariant,
    db_to_linear,
    sample_params,
    validate_spec,
)
from .errors import MissingVariable, RegionError, SpecError, VariantUnsupported
from .explorer import RegionEstimate, explore, slice2d, zero_all_coupling
from .gaussian import build_covariance, read_covariance_csv, sigma_to_csv
from .polytope import enumerate_vertices, pareto3d

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2, 3

POWER_KEYS = ("p1", "p2", "p3")
NOISE_KEYS = ("q1", "q2", "q3")
GAIN_KEYS = ("a12", "a13", "a21", "a23", "a31", "a32")
DEFAULTS: dict[str, str] = {
    "model": "cms2",
    **{k: "10" for k in POWER_KEYS},
    **{k: "1" for k in NOISE_KEYS},
    **{k: "0.55" for k in GAIN_KEYS},
    "draws": "200000",
    "seed": "2026",
    "out": "",
    "threads": "1",
    "cov": "",
    "zero_coupling": "false",
    "index": "0",
}


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run; ``spec`` already holds linear powers."""

    model: ModelVariant
    spec: GaussianChannelSpec
    draws: int
    seed: int
    out: Path | None
    threads: int = 1
    cov: Path | None = None
    zero_coupling: bool = False
    index: int = 0

    @classmethod
    def from_values(cls, values: Mapping[str, str]) -> "RunConfig":
        unknown = set(values) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown setting(s): {', '.join(sorted(unknown))}")
        v = {**DEFAULTS, **values}
        try:
            model = ModelVariant.from_name(v["model"])
        except (KeyError, ValueError):
            raise ConfigError(f"unknown model {v['model']!r}; choose cms1, cms2, pms1 or pms2") from None
        nums = {k: _float(k, v[k]) for k in POWER_KEYS + NOISE_KEYS + GAIN_KEYS}
        for k in POWER_KEYS:
            nums[k] = db_to_linear(nums[k])
        spec = GaussianChannelSpec(**nums, variant=model)
        validate_spec(spec)
        draws, seed, threads, index = (_int(k, v[k]) for k in ("draws", "seed", "threads", "index"))
        if draws < 1:
            raise ConfigError("draws must be at least 1")
        if threads < 1:
            raise ConfigError("threads must be at least 1")
        if seed < 0 or index < 0:
            raise ConfigError("seed and index must be nonnegative")
        return cls(model, spec, draws, seed, Path(v["out"]) if v["out"] else None, threads,
                   Path(v["cov"]) if v["cov"] else None, _bool("zero_coupling", v["zero_coupling"]), index)


def _float(key: str, text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {text!r}") from None
    if not math.isfinite(x):
        raise ConfigError(f"{key} must be finite, got {text!r}")
    return x


def _int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {text!r}") from None


def _bool(key: str, text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"{key} must be true or false, got {text!r}")


def parse_config_text(text: str) -> dict[str, str]:
    values = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected key=value, got {line!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = val
    return values


def load_config(args: argparse.Namespace) -> RunConfig:
    values: dict[str, str] = {}
    if args.config:
        try:
            values.update(parse_config_text(Path(args.config).read_text()))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    for key in DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None and flag is not False:
            values[key] = str(flag)
    return RunConfig.from_values(values)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _csv(header: Sequence[str], rows: np.ndarray) -> str:
    lines = [",".join(header)]
    lines += [",".join(repr(float(x)) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _metrics_text(metrics: Mapping[str, object]) -> str:
    return "".join(f"{k}={repr(float(v)) if isinstance(v, float) else v}\n" for k, v in metrics.items())


def write_region(est: RegionEstimate, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "pareto.csv", _csv(("R1", "R2", "R3"), est.pareto))
    _write(out / "metrics.txt", _metrics_text(est.metrics()))
    _write(out / "slice_R1_0.csv", _csv(("R2", "R3"), slice2d(est, "R1", 0.0, downward=True)))


def single_polytope_estimate(cfg: RunConfig) -> RegionEstimate:
    """Region of one external covariance, in the same form as a Monte-Carlo estimate."""
    try:
        sigma, names = read_covariance_csv(cfg.cov)
        poly = instantiate(catalog_for(cfg.model), sigma, names)
    except (ValueError, MissingVariable) as exc:
        raise ConfigError(str(exc)) from None
    cloud = [np.zeros((1, 3))]
    if not poly.empty:
        proj = project_to_totals(poly)
        cloud.append(enumerate_vertices(proj))
    return RegionEstimate(cfg.model, 1, int(poly.empty), pareto3d(np.vstack(cloud)), cfg.seed, cfg.spec)


def cmd_region(cfg: RunConfig) -> int:
    if cfg.cov is not None:
        est = single_polytope_estimate(cfg)
    elif cfg.model.decoding is Decoding.VARIANT1:
        raise ConfigError(f"{cfg.model.name} has no built-in covariance; pass --cov <csv>")
    else:
        sampler = zero_all_coupling if cfg.zero_coupling else None
        est = explore(cfg.spec, cfg.draws, cfg.seed, threads=cfg.threads, sampler=sampler)
    write_region(est, cfg.out or Path("out"))
    print(_metrics_text(est.metrics()), end="")
    return EXIT_OK


def cmd_catalog(cfg: RunConfig) -> int:
    print(format_catalog(catalog_for(cfg.model)), end="")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    from .verify import run_all

    ok = True
    for result in run_all(cfg.spec, threads=cfg.threads):
        print(result.line(), flush=True)
        ok &= result.passed
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_dump_sigma(cfg: RunConfig) -> int:
    params = sample_params(cfg.model, cfg.seed, cfg.index)
    model = build_covariance(cfg.spec, params)
    text = sigma_to_csv(model.sigma, model.variable_names)
    if cfg.out is not None:
        cfg.out.mkdir(parents=True, exist_ok=True)
        _write(cfg.out / "sigma.csv", text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {"region": cmd_region, "catalog": cmd_catalog, "verify": cmd_verify, "dump-sigma": cmd_dump_sigma}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value settings file")
    common.add_argument("--model", help="cms1, cms2, pms1 or pms2 (default cms2)")
    common.add_argument("--draws", type=int, help="parameter draws (default 200000)")
    common.add_argument("--seed", type=int, help="random seed (default 2026)")
    common.add_argument("--out", help="output directory (default ./out)")
    common.add_argument("--threads", type=int, help="worker processes (default 1)")
    for k in POWER_KEYS:
        common.add_argument(f"--{k}", type=float, help=f"transmit power of user {k[1]} in dB (default 10)")
    for k in NOISE_KEYS:
        common.add_argument(f"--{k}", type=float, help=f"noise variance at receiver {k[1]} (default 1)")
    for k in GAIN_KEYS:
        common.add_argument(f"--{k}", type=float, help=f"cross gain from user {k[2]} to receiver {k[1]} (default 0.55)")
    common.add_argument("--cov", help="external covariance CSV; the region is that single polytope")
    common.add_argument("--zero-coupling", dest="zero_coupling", action="store_true",
                        help="set every precoding coefficient to zero (test mode)")
    common.add_argument("--index", type=int, help="draw index for dump-sigma (default 0)")

    parser = _Parser(prog="cogregion", description="Achievable rate regions of three-user cognitive interference channels.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("region", parents=[common], help="Monte-Carlo rate region, written as CSV files")
    sub.add_parser("catalog", parents=[common], help="list the bound catalog of a model")
    sub.add_parser("verify", parents=[common], help="run the self-check suites")
    sub.add_parser("dump-sigma", parents=[common], help="covariance of one parameter draw as CSV")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        return COMMANDS[args.command](cfg)
    except (ConfigError, SpecError, VariantUnsupported) as exc:
        print(f"cogregion: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cogregion: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, RegionError, np.linalg.LinAlgError) as exc:
        print(f"cogregion: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
