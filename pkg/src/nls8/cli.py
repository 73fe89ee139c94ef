"""Command-line front end.

    python3 -m nls8 sample  --preset figure1 --out out/
    python3 -m nls8 verify  --preset figure1 --tol pde=1e-6
    python3 -m nls8 params  --preset figure1
    python3 -m nls8 laxcheck --preset figure1
    python3 -m nls8 scatter --preset figure1
    python3 -m nls8 reduce  --preset case-ii

Configuration is a JSON file (``--config``) and/or a preset; command-line
flags override both.  Exit status: 0 pass, 1 verification failure, 2 usage or
configuration error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field, replace

import numpy as np

from . import laxpair, soliton, verify
from .model import (COEFFICIENT_NAMES, Coefficients, DegenerateConfigurationError, Grid,
                    Nls8Error, SpectralDataset, ValidationError, validate_dataset)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_GRID = (-40.0, 40.0, 801, -5.0, 5.0, 101)

ALL_ONES = {name: 1.0 for name in COEFFICIENT_NAMES}

# parameter values of the figure presets and the coefficient patterns of the reductions
PRESETS = {
    "figure1": {
        "coefficients": ALL_ONES,
        "spectral": [{"re": 0.3, "im": 0.2, "alpha": [1.0, 0.0], "beta": [1.0, 0.0]}],
        "checks": ["pde", "conservation", "closed-form-consistency", "shape"],
    },
    "figure4": {
        "coefficients": ALL_ONES,
        "spectral": [{"re": 0.3, "im": 0.1, "alpha": [1.0, 0.0], "beta": [1.0, 0.0]},
                     {"re": 0.0, "im": 0.2, "alpha": [1.0, 0.0], "beta": [1.0, 0.0]}],
        "checks": ["pde", "conservation", "closed-form-consistency"],
    },
}
for _case, _A in verify.REDUCTIONS.items():
    PRESETS[f"case-{_case}"] = {
        "coefficients": _A.as_dict(),
        "spectral": [{"re": 0.3, "im": 0.2, "alpha": [1.0, 0.0], "beta": [1.0, 0.0]}],
        "checks": ["pde", "laxpair", "shape"],
        "reduction": _case,
    }


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    dataset: SpectralDataset | None
    A: Coefficients
    grid: Grid
    checks: tuple
    tolerances: dict
    out: str | None = None
    name: str = "custom"
    grid_is_default: bool = True
    slices: tuple | None = None
    reduction: str | None = None
    extra: dict = field(default_factory=dict)

    def campaign(self) -> verify.Campaign:
        return verify.Campaign(self.name, self.dataset, self.A, self.grid, self.checks,
                               self.tolerances)


def _pair(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            pass
    raise ConfigError(f"{where}: expected a number or [re, im], got {value!r}")


def parse_grid(spec) -> Grid:
    if isinstance(spec, str):
        parts = spec.split(",")
        if len(parts) != 6:
            raise ConfigError(f"grid: expected x0,x1,nx,t0,t1,nt, got {spec!r}")
        spec = parts
    if isinstance(spec, dict):
        try:
            spec = [spec[k] for k in ("x0", "x1", "nx", "t0", "t1", "nt")]
        except KeyError as exc:
            raise ConfigError(f"grid: missing field {exc.args[0]}") from None
    try:
        x0, x1, nx, t0, t1, nt = spec
        return Grid(float(x0), float(x1), int(nx), float(t0), float(t1), int(nt))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"grid: {exc}") from None


def parse_spectral(items) -> SpectralDataset | None:
    if not items:
        return None
    triples = []
    for i, item in enumerate(items):
        where = f"spectral[{i}]"
        if not isinstance(item, dict):
            raise ConfigError(f"{where}: expected an object")
        for key in ("re", "im"):
            if key not in item:
                raise ConfigError(f"{where}: missing field '{key}'")
        try:
            zeta = complex(float(item["re"]), float(item["im"]))
        except (TypeError, ValueError):
            raise ConfigError(f"{where}: re/im must be numbers") from None
        alpha = _pair(item.get("alpha", 1.0), f"{where}.alpha")
        beta = _pair(item.get("beta", 1.0), f"{where}.beta")
        triples.append((zeta, alpha, beta))
    try:
        return validate_dataset(triples)
    except ValidationError as exc:
        raise ConfigError(f"spectral: {exc}") from None


def parse_tolerances(pairs) -> dict:
    out = {}
    for p in pairs or ():
        name, sep, value = p.partition("=")
        if not sep:
            raise ConfigError(f"--tol: expected CHECK=VALUE, got {p!r}")
        if name not in verify.DEFAULT_TOLERANCES:
            raise ConfigError(f"--tol: unknown check {name!r}")
        try:
            out[name] = float(value)
        except ValueError:
            raise ConfigError(f"--tol: {value!r} is not a number") from None
    return out


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    known = {"coefficients", "spectral", "grid", "checks", "tolerances", "output", "name", "slices"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"{path}: unknown field(s) {sorted(unknown)}")
    return data


def build_config(args) -> RunConfig:
    raw = {}
    name = "custom"
    if getattr(args, "preset", None):
        raw.update(json.loads(json.dumps(PRESETS[args.preset])))
        name = args.preset
    if getattr(args, "config", None):
        raw.update(load_config_file(args.config))
        name = raw.get("name", name)
    try:
        A = Coefficients.from_mapping(raw.get("coefficients", {}))
    except (ValidationError, TypeError, ValueError) as exc:
        raise ConfigError(f"coefficients: {exc}") from None
    dataset = parse_spectral(raw.get("spectral", []))
    grid_default = True
    grid = Grid(*DEFAULT_GRID)
    if "grid" in raw:
        grid, grid_default = parse_grid(raw["grid"]), False
    if getattr(args, "grid", None):
        grid, grid_default = parse_grid(args.grid), False
    checks = tuple(raw.get("checks", verify.CHECKS))
    bad = [c for c in checks if c not in verify.CHECKS]
    if bad:
        raise ConfigError(f"checks: unknown check(s) {bad}")
    tol = dict(raw.get("tolerances", {}))
    tol.update(parse_tolerances(getattr(args, "tol", None)))
    unknown = set(tol) - set(verify.DEFAULT_TOLERANCES)
    if unknown:
        raise ConfigError(f"tolerances: unknown check(s) {sorted(unknown)}")
    out = getattr(args, "out", None) or raw.get("output")
    slices = raw.get("slices")
    return RunConfig(dataset, A, grid, checks, tol, out, name, grid_default,
                     tuple(float(s) for s in slices) if slices else None, raw.get("reduction"))


# -- output helpers -----------------------------------------------------------

def atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


CSV_HEADER = "x,t,q_re,q_im,q_abs"


def field_csv(x: np.ndarray, t: np.ndarray, q: np.ndarray) -> str:
    """CSV text; ``q[i_x, i_t]``; rows ordered by t, then x."""
    lines = [CSV_HEADER]
    for j, tj in enumerate(t):
        ts = _fmt(tj)
        for i, xi in enumerate(x):
            v = q[i, j]
            lines.append(f"{_fmt(xi)},{ts},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(abs(v))}")
    return "\n".join(lines) + "\n"


def read_field_csv(path: str):
    """Inverse of :func:`field_csv`: returns ``(x, t, q)`` with ``q[i_x, i_t]``."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    t = np.unique(data[:, 1])
    x = data[data[:, 1] == t[0], 0]
    q = (data[:, 2] + 1j * data[:, 3]).reshape(len(t), len(x)).T
    return x, t, q


def sample_field(cfg: RunConfig, x=None, t=None):
    """``(q, errors)`` on ``x`` x ``t`` (the config grid by default); samples where
    the solution is degenerate are NaN and listed in ``errors`` as ``(x, t, message)``."""
    x = cfg.grid.x if x is None else np.asarray(x, dtype=float)
    t = cfg.grid.t if t is None else np.asarray(t, dtype=float)
    q = np.zeros((len(x), len(t)), dtype=complex)
    errors = []
    if cfg.dataset is None:
        return q, errors
    for j, tj in enumerate(t):
        try:
            q[:, j] = soliton.q_nsoliton(cfg.dataset, cfg.A, x, tj)
        except DegenerateConfigurationError:
            for i, xi in enumerate(x):
                try:
                    q[i, j] = soliton.q_nsoliton(cfg.dataset, cfg.A, xi, tj)
                except DegenerateConfigurationError as exc:
                    q[i, j] = complex(math.nan, math.nan)
                    errors.append((xi, tj, str(exc)))
    return q, errors


def _slice_times(cfg: RunConfig):
    if cfg.slices is not None:
        return cfg.slices
    g = cfg.grid
    times = [g.t0, g.t1]
    if g.t0 < 0 < g.t1:
        times.insert(1, 0.0)
    return tuple(dict.fromkeys(times))


# -- commands -----------------------------------------------------------------

def cmd_sample(cfg: RunConfig, stdout) -> int:
    out = cfg.out or "."
    g = cfg.grid
    q, errors = sample_field(cfg)
    atomic_write(os.path.join(out, "q.csv"), field_csv(g.x, g.t, q))
    written = ["q.csv"]
    for ts in _slice_times(cfg):
        qs, errs = sample_field(cfg, g.x, [ts])
        errors.extend(e for e in errs if e[1] not in g.t)
        fname = f"slice_t{_fmt(ts)}.csv"
        atomic_write(os.path.join(out, fname), field_csv(g.x, np.array([ts]), qs))
        written.append(fname)
    meta = {"name": cfg.name, "grid": {k: getattr(g, k) for k in ("x0", "x1", "nx", "t0", "t1", "nt")},
            "grid_source": "default extents" if cfg.grid_is_default else "user",
            "coefficients": cfg.A.as_dict(), "files": written, "degenerate_points": len(errors)}
    atomic_write(os.path.join(out, "meta.json"), json.dumps(meta, indent=2) + "\n")
    if errors:
        log = "x,t,message\n" + "".join(f"{_fmt(x)},{_fmt(t)},{m}\n" for x, t, m in errors)
        atomic_write(os.path.join(out, "q.errors.log"), log)
        print(f"{len(errors)} degenerate sample(s); see q.errors.log", file=stdout)
        return EXIT_FAIL
    print(f"wrote {', '.join(written)} to {out}", file=stdout)
    return EXIT_PASS


def _emit_report(report: verify.CampaignReport, cfg: RunConfig, stdout, filename: str):
    text = report.to_json()
    if cfg.out:
        atomic_write(os.path.join(cfg.out, filename), text + "\n")
    for e in report.entries:
        d = e.as_dict()
        sup = "error" if d["sup_norm"] is None else f"{d['sup_norm']:.3e}"
        print(f"{e.name:26s} {'PASS' if e.passed else 'FAIL'}  sup={sup}  tol={e.tolerance:.1e}"
              + (f"  ({e.error})" if e.error else ""), file=stdout)
    print(f"overall: {'PASS' if report.overall else 'FAIL'}", file=stdout)
    return EXIT_PASS if report.overall else EXIT_FAIL


def cmd_verify(cfg: RunConfig, stdout) -> int:
    return _emit_report(verify.run_campaign(cfg.campaign()), cfg, stdout, "report.json")


def cmd_params(cfg: RunConfig, stdout) -> int:
    if cfg.dataset is None or cfg.dataset.N != 1:
        raise ConfigError("params needs exactly one spectral point")
    e = cfg.dataset.entries[0]
    if e.beta == 0:
        raise ConfigError("params needs beta_1 != 0")
    shape = soliton.one_soliton_shape(e.point, e.alpha / e.beta, cfg.A)
    print(f"amplitude H   {shape.amplitude:.17g}", file=stdout)
    print(f"velocity V    {shape.velocity:.17g}", file=stdout)
    print(f"sech slope    {shape.sech_slope:.17g}", file=stdout)
    print(f"centre offset {shape.center_offset:.17g}", file=stdout)
    return EXIT_PASS


def cmd_laxcheck(cfg: RunConfig, stdout) -> int:
    s = verify.CampaignSettings()
    c = replace(cfg.campaign(), checks=("laxpair",))
    tol = c.tolerances["laxpair"]
    status = EXIT_PASS
    results = {}
    for variant in laxpair.VARIANTS:
        cv = replace(c, settings=replace(s, lax_variant=variant))
        entry = verify.run_campaign(cv).entry("laxpair")
        results[variant] = entry.as_dict()
        sup = entry.report.sup_norm if entry.report else float("nan")
        print(f"{variant:10s} zero-curvature sup={sup:.3e}"
              + ("" if variant == "reconciled" else "  (diagnostic)"), file=stdout)
        if variant == "reconciled" and not entry.passed:
            status = EXIT_FAIL
    if cfg.out:
        atomic_write(os.path.join(cfg.out, "laxcheck.json"),
                     json.dumps({"tolerance": tol, "variants": results}, indent=2) + "\n")
    print(f"reconciled within {tol:.1e}: {'PASS' if status == EXIT_PASS else 'FAIL'}", file=stdout)
    return status


def cmd_scatter(cfg: RunConfig, stdout) -> int:
    c = replace(cfg.campaign(), checks=("scattering",))
    return _emit_report(verify.run_campaign(c), cfg, stdout, "scatter.json")


def cmd_reduce(cfg: RunConfig, stdout, case: str | None) -> int:
    case = case or cfg.reduction
    if case is None:
        raise ConfigError("reduce needs --case or a case-* preset")
    return _emit_report(verify.reduction_suite(case), cfg, stdout, f"reduction-{case}.json")


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON configuration file")
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--grid", metavar="x0,x1,nx,t0,t1,nt")
    common.add_argument("--tol", metavar="CHECK=VALUE", action="append", default=[],
                        help="override a tolerance (repeatable)")
    parser = argparse.ArgumentParser(prog="nls8", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sample", parents=[common], help="sample q on a grid and write CSV")
    sub.add_parser("verify", parents=[common], help="run a verification campaign")
    sub.add_parser("params", parents=[common], help="amplitude and velocity of a one-soliton")
    sub.add_parser("laxcheck", parents=[common], help="zero-curvature residual of both table variants")
    sub.add_parser("scatter", parents=[common], help="numerical scattering data")
    r = sub.add_parser("reduce", parents=[common], help="checks for a reduced equation")
    r.add_argument("--case", choices=sorted(verify.REDUCTIONS))
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = make_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # grids usually start with a negative number, which argparse would take for a flag
    for k in range(len(argv) - 2, -1, -1):
        if argv[k] == "--grid":
            argv[k:k + 2] = [f"--grid={argv[k + 1]}"]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        cfg = build_config(args)
        if args.command == "sample":
            return cmd_sample(cfg, stdout)
        if args.command == "verify":
            return cmd_verify(cfg, stdout)
        if args.command == "params":
            return cmd_params(cfg, stdout)
        if args.command == "laxcheck":
            return cmd_laxcheck(cfg, stdout)
        if args.command == "scatter":
            return cmd_scatter(cfg, stdout)
        return cmd_reduce(cfg, stdout, args.case)
    except (ConfigError, ValidationError) as exc:
        print(f"nls8 {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except (Nls8Error, OSError) as exc:
        print(f"nls8 {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_FAIL
