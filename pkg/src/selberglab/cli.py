"""Command-line surface.

Subcommands mirror the library modules:

    selberglab mellin eval|verify ...
    selberglab selberg eval|oracle ...
    selberglab chaos simulate|verify ...
    selberglab zeros stat|cov|moments --zeros PATH ...
    selberglab verify all [--quick|--full] [--zeros PATH] ...

Exit codes: 0 on success with every check passing, 1 if any check fails,
2 on usage, configuration, or domain errors.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import chaos, mellin, selberg, verify, zeros as zmod
from .report import RunReport, emit_report
from .selberg import ChaosParams
from .specfun import DomainError, PoleError
from .zeros import StatisticConfig

USAGE_ERROR, FAIL_EXIT = 2, 1

_CONFIG_SCHEMA: dict[str, type] = {
    "mu": float,
    "lambda1": float,
    "lambda2": float,
    "q": complex,
    "n": int,
    "epsilon": float,
    "grid": int,
    "samples": int,
    "seed": int,
    "t0": float,
    "alpha": float,
    "beta": float,
    "variant": int,
    "zeros": str,
    "format": str,
    "out": str,
}

_DEFAULTS = {
    "mu": 0.5,
    "lambda1": 0.0,
    "lambda2": 0.0,
    "n": 2,
    "epsilon": 0.05,
    "grid": 4096,
    "samples": 10_000,
    "seed": 0,
    "t0": 3.0e4,
    "alpha": 0.5,
    "beta": 0.5,
    "variant": 1,
    "format": "json",
}


class ConfigError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse 'a', 'a+bi' or 'a-bi' forms."""
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError:
        raise ConfigError(f"cannot parse complex number {text!r}") from None


def _coerce(key: str, raw):
    if key not in _CONFIG_SCHEMA:
        raise ConfigError(f"unknown configuration key {key!r}")
    typ = _CONFIG_SCHEMA[key]
    try:
        if typ is complex and isinstance(raw, str):
            value = parse_complex(raw)
        else:
            value = typ(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"key {key!r}: cannot interpret {raw!r} as {typ.__name__}") from None
    if key == "mu" and not 0.0 < value < 2.0:
        raise ConfigError(f"key 'mu': value {value} outside (0, 2)")
    if key == "variant" and value not in (1, 2):
        raise ConfigError(f"key 'variant': must be 1 or 2, got {value}")
    if key in ("samples", "grid", "n") and value < 1:
        raise ConfigError(f"key {key!r}: must be positive, got {value}")
    if key == "format" and value not in ("json", "csv"):
        raise ConfigError(f"key 'format': must be json or csv, got {value!r}")
    return value


def load_config(path: str | None, overrides: dict) -> dict:
    """Resolve parameters: file values, then flag overrides, then defaults."""
    resolved = dict(_DEFAULTS)
    if path is not None:
        with open(path, "r", encoding="ascii") as fh:
            for lineno, line in enumerate(fh, start=1):
                s = line.strip()
                if not s or s.startswith("#"):
                    continue
                if "=" not in s:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, _, raw = s.partition("=")
                key = key.strip()
                resolved[key] = _coerce(key, raw.strip())
    for key, raw in overrides.items():
        if raw is None:
            continue
        resolved[key] = _coerce(key, raw)
    return resolved


def _params(cfg: dict) -> ChaosParams:
    return ChaosParams(cfg["mu"], cfg["lambda1"], cfg["lambda2"])


def _finish(report: RunReport, cfg: dict, t_start: float) -> int:
    report.timings["total_s"] = time.monotonic() - t_start
    fmt = cfg.get("format", "json")
    dest = cfg.get("out")
    text = emit_report(report, fmt=fmt, destination=dest)
    if dest is None:
        sys.stdout.write(text)
    else:
        sys.stderr.write(f"report written to {dest}\n")
    return 0 if report.all_passed else FAIL_EXIT


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_mellin(args, cfg: dict) -> int:
    t0 = time.monotonic()
    if args.action == "eval":
        q = cfg.get("q")
        if q is None:
            raise ConfigError("mellin eval requires --q")
        p = _params(cfg)
        value = mellin.mellin_transform(q, p)
        if abs(complex(value).imag) < 1e-14 and abs(complex(q).imag) < 1e-15:
            print(f"{complex(value).real:.8g}")
        else:
            print(f"{complex(value):.8g}")
        if cfg.get("out"):
            rep = RunReport("mellin eval", _public(cfg), seed=cfg["seed"])
            rep.add("mellin_value_re", complex(value).real)
            rep.add("mellin_value_im", complex(value).imag)
            return _finish(rep, cfg, t0)
        return 0
    rep = RunReport("mellin verify", _public(cfg), seed=cfg["seed"])
    rep.results += verify.verify_quick(cfg["seed"])
    return _finish(rep, cfg, t0)


def _cmd_selberg(args, cfg: dict) -> int:
    t0 = time.monotonic()
    p = _params(cfg)
    rep = RunReport(f"selberg {args.action}", _public(cfg), seed=cfg["seed"])
    if args.action == "eval":
        n = cfg["n"]
        rep.add("selberg_closed", selberg.selberg_closed(n, p))
        if n < (p.tau + 1) / 2:
            rep.add("mass_moment_neg_plain", selberg.mass_moment_neg(n, p))
        return _finish(rep, cfg, t0)
    spec = selberg.IntegralSpec(blocks=(((0.0, 1.0), cfg["n"]),), kernel_exponent=-p.mu)
    est, se = selberg.selberg_oracle(spec, p, budget=cfg["samples"], seed=cfg["seed"])
    rep.add("oracle_estimate", est, stderr=se)
    try:
        closed = selberg.selberg_closed(cfg["n"], p)
        rep.add("closed_form", closed)
        rep.add(
            "oracle_abs_z",
            abs(est - closed) / se if se > 0 else 0.0,
            stderr=se,
            tolerance=4.0,
            passed=bool(se > 0 and abs(est - closed) / se <= 4.0),
        )
    except selberg.MomentDivergenceError:
        pass
    return _finish(rep, cfg, t0)


def _cmd_chaos(args, cfg: dict) -> int:
    t0 = time.monotonic()
    rep = RunReport(f"chaos {args.action}", _public(cfg), seed=cfg["seed"])
    if args.action == "simulate":
        spec = chaos.FieldGridSpec(n_points=cfg["grid"], mu=cfg["mu"])
        masses = []
        for blk in chaos.field_stream(spec, cfg["samples"], cfg["seed"]):
            masses.append(chaos.total_mass(blk, spec))
        m = np.concatenate(masses)
        rep.add("mean_mass", m.mean(), stderr=float(m.std() / np.sqrt(len(m))))
        rep.add("second_moment", float((m**2).mean()))
        return _finish(rep, cfg, t0)
    kappa = zmod.make_bump().kappa
    rep.results += verify._chaos_battery(cfg["seed"], kappa)
    return _finish(rep, cfg, t0)


def _zeros_cfg(cfg: dict) -> StatisticConfig:
    eps = cfg["epsilon"]
    return StatisticConfig(
        mu=cfg["mu"],
        t0=cfg["t0"],
        variant=cfg["variant"],
        alpha=cfg["alpha"],
        epsilon=eps,
        beta=cfg["beta"],
        u_grid=np.linspace(2 * eps, 1 - 2 * eps, 64),
        omega_samples=cfg["samples"],
        seed=cfg["seed"],
    )


def _cmd_zeros(args, cfg: dict) -> int:
    t0 = time.monotonic()
    if not cfg.get("zeros"):
        raise ConfigError("zeros subcommands require --zeros PATH")
    table = zmod.load_zeros(cfg["zeros"])
    bump = zmod.make_bump()
    scfg = _zeros_cfg(cfg)
    rep = RunReport(f"zeros {args.action}", _public(cfg), seed=cfg["seed"])
    mean, cov, stderr = zmod.empirical_field(table, scfg, bump)
    us = np.asarray(scfg.u_grid)
    if args.action == "stat":
        i = int(np.argmin(np.abs(us - 0.5)))
        rep.add("mean_at_u_mid", mean[i], stderr=float(stderr[i]))
        rep.add("variance_at_u_mid", float(cov[i, i]))
        rep.add("finite_t_mean_offset", zmod.finite_t_mean_offset(table, scfg, float(us[i])))
    elif args.action == "cov":
        for i in range(0, len(us), 9):
            rep.add(f"variance_u_{us[i]:.3f}", float(cov[i, i]))
    else:
        est, se = zmod.exp_functional_moment(table, scfg, bump, n=cfg["n"])
        rep.add("rescaled_moment", est, stderr=se)
    return _finish(rep, cfg, t0)


def _cmd_verify(args, cfg: dict) -> int:
    t0 = time.monotonic()
    rep = RunReport("verify all", _public(cfg), seed=cfg["seed"])
    rep.results += verify.verify_quick(cfg["seed"])
    if not args.quick:
        rep.results += verify.verify_full(cfg["seed"])
    if cfg.get("zeros"):
        rep.results += verify.verify_zeros(cfg["zeros"], cfg["seed"])
    return _finish(rep, cfg, t0)


def _public(cfg: dict) -> dict:
    # 'out' is an emission destination, not a run parameter; keeping it out of
    # the payload lets identical runs produce identical bytes anywhere
    out = {}
    for k in sorted(cfg):
        if k == "out":
            continue
        v = cfg[k]
        out[k] = str(v) if isinstance(v, complex) else v
    return out


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="selberglab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=None)
        p.add_argument("--mu", default=None)
        p.add_argument("--lambda1", default=None)
        p.add_argument("--lambda2", default=None)
        p.add_argument("--q", default=None)
        p.add_argument("--n", default=None)
        p.add_argument("--epsilon", default=None)
        p.add_argument("--grid", default=None)
        p.add_argument("--samples", default=None)
        p.add_argument("--seed", default=None)
        p.add_argument("--t0", default=None)
        p.add_argument("--alpha", default=None)
        p.add_argument("--beta", default=None)
        p.add_argument("--variant", default=None)
        p.add_argument("--zeros", default=None)
        p.add_argument("--format", default=None)
        p.add_argument("--out", default=None)

    pm = sub.add_parser("mellin")
    pm.add_argument("action", choices=["eval", "verify"])
    common(pm)
    ps = sub.add_parser("selberg")
    ps.add_argument("action", choices=["eval", "oracle"])
    common(ps)
    pc = sub.add_parser("chaos")
    pc.add_argument("action", choices=["simulate", "verify"])
    common(pc)
    pz = sub.add_parser("zeros")
    pz.add_argument("action", choices=["stat", "cov", "moments"])
    common(pz)
    pv = sub.add_parser("verify")
    pv.add_argument("action", choices=["all"])
    pv.add_argument("--quick", action="store_true")
    pv.add_argument("--full", action="store_true")
    common(pv)
    return ap


_DISPATCH = {
    "mellin": _cmd_mellin,
    "selberg": _cmd_selberg,
    "chaos": _cmd_chaos,
    "zeros": _cmd_zeros,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    overrides = {
        k: getattr(args, k, None)
        for k in _CONFIG_SCHEMA
        if getattr(args, k, None) is not None
    }
    try:
        cfg = load_config(args.config, overrides)
        return _DISPATCH[args.command](args, cfg)
    except (ConfigError, DomainError, PoleError, zmod.ZeroTableError,
            zmod.CoverageError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
