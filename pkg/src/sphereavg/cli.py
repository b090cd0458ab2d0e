"""Command-line experiment harness.

Every subcommand writes one CSV table (``--out``, or stdout). Errors produce a
JSON record on stderr and a nonzero status: 2 for bad arguments or
configuration, 3 when a compute budget or capacity limit is hit, 4 for an
internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import averages, exponential, maximal_hl, sphere_counts
from .errors import (
    BudgetExceeded,
    CapacityError,
    InvalidArgument,
    InvariantViolation,
    NonConvergenceError,
    SphereAvgError,
)
from .io import format_value, read_grid_function

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidArgument(message)


def parse_range(text: str) -> tuple[int, int]:
    """Inclusive integer range ``a:b``; empty ranges are rejected."""
    try:
        a, b = (int(part) for part in text.split(":"))
    except ValueError:
        raise InvalidArgument(f"range must look like a:b, got {text!r}") from None
    if b < a:
        raise InvalidArgument(f"empty range {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    def global_flags(default):
        # subcommand copies use SUPPRESS so they do not overwrite flags given earlier
        group = argparse.ArgumentParser(add_help=False)
        group.add_argument("--mode", choices=("exact", "float"),
                           default="exact" if default else argparse.SUPPRESS)
        group.add_argument("--out", help="CSV output path (default: stdout)",
                           default=None if default else argparse.SUPPRESS)
        return group

    common = global_flags(default=False)
    parser = _Parser(prog="sphereavg", parents=[global_flags(default=True)],
                     description="Discrete multilinear spherical averages: experiments. "
                                 "Negative ranges need the '=' form, e.g. --window=-3:3.")
    parser.add_argument("--config", help="JSON file whose keys mirror the CLI flags")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    p = add("counts", "table of r_n(lam)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-lambda", type=int, required=True)
    p.add_argument("--cache", help="binary RNSQ cache file (read if valid, else written)")
    p.add_argument("--csv", help="CSV output path (alias of --out)")

    p = add("average", "A_lam[f_1..f_n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--fn", nargs="+", required=True)

    p = add("maximal", "A_*[f_1..f_n] on a window")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fn", nargs="+", required=True)
    p.add_argument("--window", type=parse_range)

    p = add("delta-maximal", "A_*[delta..delta](y) = 1/r_n(n y^2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--y-range", type=parse_range, required=True)

    p = add("scaling", "indicator scaling witness")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--window", type=parse_range)

    p = add("restriction", "restriction-estimate ratios")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, nargs="+", required=True)
    p.add_argument("--fn", nargs="+", required=True)
    p.add_argument("--method", choices=("exact", "quad"), default="exact")
    p.add_argument("--tol", type=float, default=1e-6)

    p = add("reconstruct", "circle-method reconstruction of A_lam")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--fn", nargs="+", required=True)
    p.add_argument("--y", type=parse_range, required=True)

    p = add("uniform-ratio", "sup of n_lambda^(n-2) / r_n(lam)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-lambda", type=int, required=True)

    p = add("hl", "Hardy-Littlewood maximal function")
    p.add_argument("--fn", required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--window", type=parse_range)

    p = add("majorize", "A_* against prod M(|f_i|^2)^(1/2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fn", nargs="+", required=True)
    p.add_argument("--window", type=parse_range)

    p = add("divergence-demo", "l^q mass of A_*[delta x4] on powers of two")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    return parser


def config_to_argv(config: dict) -> list[str]:
    """Translate a JSON config (keys mirror flags, ``subcommand`` names the command)."""
    config = dict(config)
    if "subcommand" not in config:
        raise InvalidArgument("config needs a 'subcommand' key")
    argv = [str(config.pop("subcommand"))]
    for key, value in config.items():
        flag = "--" + key.replace("_", "-")
        if key in ("M", "N", "K", "p", "q", "n"):
            flag = "--" + key
        if value is None or value is False:
            continue
        argv.append(flag)
        if value is True:
            continue
        if isinstance(value, list):
            argv.extend(str(v) for v in value)
        else:
            argv.append(str(value))
    return argv


@dataclass
class ExperimentConfig:
    subcommand: str
    params: dict
    mode: str = "exact"
    out: str | None = None

    @classmethod
    def from_argv(cls, argv) -> ExperimentConfig:
        argv = list(argv)
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, rest = pre.parse_known_args(argv)
        if known.config:
            try:
                data = json.loads(Path(known.config).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise InvalidArgument(f"cannot read config {known.config}: {exc}") from None
            rest = config_to_argv(data) + rest
        ns = build_parser().parse_args(rest)
        if ns.subcommand is None:
            raise InvalidArgument("no subcommand given")
        params = {k: v for k, v in vars(ns).items()
                  if k not in ("subcommand", "mode", "out", "config")}
        return cls(ns.subcommand, params, ns.mode, ns.out)


@dataclass
class ExperimentResult:
    header: list[str]
    rows: list[list] = field(default_factory=list)
    status: int = EXIT_OK
    error: dict | None = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()


def _functions(paths, n, mode):
    fs = [read_grid_function(p) for p in paths]
    if n is not None and len(fs) == 1:
        fs = fs * n
    if mode == "float":
        fs = [f.to_float() for f in fs]
    return fs


def _cmd_counts(prm, mode):
    n, lam_max, cache = prm["n"], prm["max_lambda"], prm.get("cache")
    table = None
    if cache and Path(cache).exists():
        try:
            loaded = sphere_counts.RepCountTable.load(cache)
        except InvalidArgument:
            loaded = None
        if loaded is not None and loaded.dimension == n and loaded.max_lambda >= lam_max:
            table = loaded.prefix(lam_max)
    if table is None:
        table = sphere_counts.rep_count_table(n, lam_max)
        if cache:
            table.save(cache)
    return ExperimentResult(["lambda", "count"], [[lam, int(c)] for lam, c in enumerate(table.counts)])


def _cmd_average(prm, mode):
    fs = _functions(prm["fn"], prm["n"], mode)
    g = averages.apply_average(prm["n"], prm["lam"], fs)
    return ExperimentResult(["y", "value"], [[y, v] for y, v in g.items()])


def _cmd_maximal(prm, mode):
    fs = _functions(prm["fn"], prm["n"], mode)
    g = averages.apply_maximal(prm["n"], fs, prm.get("window"))
    return ExperimentResult(["y", "value"], [[y, v] for y, v in g.items()])


def _cmd_delta_maximal(prm, mode):
    a, b = prm["y_range"]
    rows = [[y, averages.delta_maximal(prm["n"], y)] for y in range(a, b + 1)]
    if mode == "float":
        rows = [[y, float(v)] for y, v in rows]
    return ExperimentResult(["y", "value"], rows)


def _cmd_scaling(prm, mode):
    r = averages.scaling_witness(prm["n"], prm["M"], prm["p"], prm["q"], prm.get("window"))
    return ExperimentResult(
        ["n", "M", "p", "q", "max_plateau_dev", "lq_lower", "lp_input_power", "ratio"],
        [[r.n, r.M, r.p, r.q, r.max_plateau_dev, r.lq_lower, r.lp_input_power, r.ratio]])


def _cmd_restriction(prm, mode):
    rows = []
    for path in prm["fn"]:
        f = read_grid_function(path)
        if mode == "float":
            f = f.to_float()
        for N in prm["N"]:
            rep = exponential.restriction_ratio(f, N, prm["n"], prm["method"], prm["tol"],
                                                label=Path(path).stem)
            rows.append([rep.n, rep.N, rep.label, rep.method, rep.lhs, rep.rhs, rep.ratio])
    return ExperimentResult(["n", "N", "f_label", "method", "lhs", "rhs", "ratio"], rows)


def _cmd_reconstruct(prm, mode):
    n, lam = prm["n"], prm["lam"]
    fs = _functions(prm["fn"], n, mode)
    direct = averages.apply_average(n, lam, fs)
    a, b = prm["y"]
    rows = [[y, exponential.reconstruct_average(n, lam, fs, y), direct(y)] for y in range(a, b + 1)]
    return ExperimentResult(["y", "reconstructed", "direct"], rows)


def _cmd_uniform_ratio(prm, mode):
    ratio, arg = exponential.uniform_normalization_ratio(prm["n"], prm["max_lambda"])
    return ExperimentResult(["n", "max_lambda", "max_ratio", "argmax"],
                            [[prm["n"], prm["max_lambda"], ratio, arg]])


def _cmd_hl(prm, mode):
    f = read_grid_function(prm["fn"])
    if mode == "float":
        f = f.to_float()
    mf = maximal_hl.hl_maximal(f, window=prm.get("window"))
    rows = [[y, v] for y, v in mf.items()]
    p = prm["p"]
    ratio = (maximal_hl.lp_norm(mf, p).value / maximal_hl.lp_norm(f, p).value) if not f.is_zero else 0.0
    rows.append(["norm_ratio", ratio])
    return ExperimentResult(["y", "Mf"], rows)


def _cmd_majorize(prm, mode):
    n = prm["n"]
    fs = _functions(prm["fn"], n, mode)
    window = prm.get("window")
    if window is None:
        live = [f for f in fs if not f.is_zero]
        window = (min(f.lo for f in live), max(f.hi for f in live)) if live else (0, 0)
    rep = maximal_hl.majorization_check(n, fs, window)
    rows = [[y, a, m, rep.C_used * m, float(a) - rep.C_used * m]
            for y, a, m in zip(rep.ys, rep.a_star, rep.majorant)]
    return ExperimentResult(["y", "a_star", "majorant", "bound", "violation"], rows)


def _cmd_divergence(prm, mode):
    r = averages.divergence_demo(prm["K"], prm["q"])
    if r.lq_power != r.expected_power:
        raise InvariantViolation(f"l^q power {r.lq_power} != expected {r.expected_power}")
    return ExperimentResult(["K", "q", "lq_power", "lq_norm", "expected_power"],
                            [[r.K, r.q, r.lq_power, r.lq_norm, r.expected_power]])


COMMANDS = {
    "counts": _cmd_counts,
    "average": _cmd_average,
    "maximal": _cmd_maximal,
    "delta-maximal": _cmd_delta_maximal,
    "scaling": _cmd_scaling,
    "restriction": _cmd_restriction,
    "reconstruct": _cmd_reconstruct,
    "uniform-ratio": _cmd_uniform_ratio,
    "hl": _cmd_hl,
    "majorize": _cmd_majorize,
    "divergence-demo": _cmd_divergence,
}


def _status_for(exc: BaseException) -> int:
    if isinstance(exc, InvariantViolation):
        return EXIT_INTERNAL
    if isinstance(exc, (BudgetExceeded, CapacityError, NonConvergenceError)):
        return EXIT_BUDGET
    if isinstance(exc, (SphereAvgError, ValueError, OSError)):
        return EXIT_CONFIG
    return EXIT_INTERNAL


def _failure(exc: BaseException) -> ExperimentResult:
    status = _status_for(exc)
    return ExperimentResult([], status=status,
                            error={"status": status, "error": type(exc).__name__, "message": str(exc)})


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Dispatch one validated config; module errors become a status + error record."""
    try:
        return COMMANDS[config.subcommand](config.params, config.mode)
    except Exception as exc:  # noqa: BLE001 - every failure maps to an exit status
        return _failure(exc)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = ExperimentConfig.from_argv(argv)
    except Exception as exc:  # noqa: BLE001
        result = _failure(exc)
    else:
        result = run_experiment(config)
    if result.status != EXIT_OK:
        print(json.dumps(result.error), file=sys.stderr)
        return result.status
    text = result.to_csv()
    out = config.out or config.params.get("csv")
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
