"""Command-line front end.

    zetaxi eval   --s RE,IM --method em|integral|series
    zetaxi zeros  [--paper | --range LO:HI] [--step H] [--refine-tol T]
    zetaxi verify --suite theta|functional|dual|trivial|decomposition|all
    zetaxi table

Global flags (before or after the subcommand): --config PATH,
--format csv|json, --tol X (quadrature tolerance), --threads N.
Exit codes: 0 success, 1 verification failure, 2 usage/domain error.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import os
import random
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .numerics import QuadratureConfig
from .theta import psi_functional_residual
from .xi import (
    aleph_from_beth,
    decompose,
    evaluate_beth,
    functional_residual,
    kernel_I,
    kernel_R,
    phi_factor,
)
from .zeros import TABLE_SCAN, TABLE_ZEROS, ScanConfig, scan_zeros, trivial_zeros
from .zeta_em import EmParams, evaluate_em, zeta_dirichlet

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

CONFIG_ENV = "ZETA_CONFIG"
SERIES_TERMS = 1_000_000


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- rendering


def fmt_float(x: float) -> str:
    """15 significant digits, widened to 17 only when needed to round-trip."""
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return repr(x)
    text = "%.15g" % x
    if float(text) != x:
        text = "%.17g" % x
    return text


@dataclass
class OutputRecord:
    kind: str  # eval | zero | residual
    payload: Dict[str, object] = field(default_factory=dict)

    def rendered(self) -> Dict[str, str]:
        out = {}
        for key, val in self.payload.items():
            if isinstance(val, bool):
                out[key] = "true" if val else "false"
            elif isinstance(val, int):
                out[key] = str(val)
            elif isinstance(val, float):
                out[key] = fmt_float(val)
            else:
                out[key] = str(val)
        return out


def _json_value(val):
    if isinstance(val, float) and not math.isfinite(val):
        return fmt_float(val)
    if isinstance(val, (bool, int, float)):
        return val
    return str(val)


def render(records: Sequence[OutputRecord], fmt: str, columns: Optional[List[str]] = None) -> str:
    """CSV (header row, LF endings) or a JSON array of flat objects."""
    if columns is None:
        columns = list(records[0].payload) if records else []
    if fmt == "json":
        # json writes floats with repr, the shortest round-trip form
        objs = [{c: _json_value(r.payload[c]) for c in columns} for r in records]
        return json.dumps(objs) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        row = r.rendered()
        writer.writerow([row[c] for c in columns])
    return buf.getvalue()


# ------------------------------------------------------------------- config


@dataclass
class Settings:
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    em_auto: bool = True
    em_N: int = 20
    em_M: int = 12
    scan: ScanConfig = TABLE_SCAN
    threads: int = 1

    def em_params(self) -> Optional[EmParams]:
        return None if self.em_auto else EmParams(self.em_N, self.em_M)


_BOOL = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


def parse_config(text: str) -> Dict[str, str]:
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key=value")
        key, val = (p.strip() for p in line.split("=", 1))
        entries[key] = val
    return entries


def apply_config(settings: Settings, entries: Dict[str, str]) -> Settings:
    q = dict(order=settings.quad.order, max_iters=settings.quad.max_iters,
             cutoff=settings.quad.cutoff, tol=settings.quad.tol)
    sc = dict(b_min=settings.scan.b_min, b_max=settings.scan.b_max,
              step=settings.scan.step, refine_tol=settings.scan.refine_tol)
    try:
        for key, val in entries.items():
            if key in ("quadrature.order", "quadrature.max_iters"):
                q[key.split(".")[1]] = int(val)
            elif key in ("quadrature.cutoff", "quadrature.tol"):
                q[key.split(".")[1]] = float(val)
            elif key == "em.auto":
                settings.em_auto = _BOOL[val.lower()]
            elif key in ("em.N", "em.M"):
                setattr(settings, "em_" + key[3:], int(val))
            elif key in ("scan.b_min", "scan.b_max", "scan.step", "scan.refine_tol"):
                sc[key.split(".")[1]] = float(val)
            elif key == "threads":
                settings.threads = int(val)
            else:
                raise UsageError(f"unknown config key {key!r}")
        settings.quad = QuadratureConfig(**q)
        settings.scan = ScanConfig(**sc)
        settings.em_params()
    except (KeyError, ValueError) as exc:
        raise UsageError(f"invalid config: {exc}") from exc
    return settings


def load_settings(args: argparse.Namespace) -> Settings:
    settings = Settings()
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        apply_config(settings, parse_config(text))
    overrides = {}
    if getattr(args, "tol", None) is not None:
        overrides["quadrature.tol"] = repr(args.tol)
    if getattr(args, "threads", None) is not None:
        overrides["threads"] = str(args.threads)
    if overrides:
        apply_config(settings, overrides)
    if settings.threads < 1:
        raise UsageError("--threads must be >= 1")
    return settings


# ----------------------------------------------------------------- commands


def _parse_pair(text: str, sep: str, what: str):
    parts = text.split(sep)
    if len(parts) != 2:
        raise UsageError(f"{what} must look like X{sep}Y")
    try:
        x, y = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from exc
    if not (math.isfinite(x) and math.isfinite(y)):
        raise UsageError(f"{what} must be finite")
    return x, y


def cmd_eval(s_re: float, s_im: float, method: str, settings: Settings) -> OutputRecord:
    s = complex(s_re, s_im)
    payload: Dict[str, object] = {"method": method, "s_re": s.real, "s_im": s.imag}
    try:
        if method == "series":
            value = zeta_dirichlet(s, SERIES_TERMS)
            # magnitude of the omitted tail integral
            err = abs(SERIES_TERMS ** (1.0 - s)) / (s.real - 1.0)
        elif method == "em":
            res = evaluate_em(s, settings.em_params())
            value, err = res.value, res.remainder
        elif method == "integral":
            if s == 1.0:
                raise ValueError("pole of the continuation at s = 1")
            bres = evaluate_beth(s, settings.quad)
            value = aleph_from_beth(s, settings.quad)
            err = bres.err_est
            payload["beth_re"] = bres.value.real
            payload["beth_im"] = bres.value.imag
        else:
            raise UsageError(f"unknown method {method!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload["value_re"] = value.real
    payload["value_im"] = value.imag
    payload["err_est"] = float(err)
    return OutputRecord("eval", payload)


ZERO_COLUMNS = ["k", "b", "residual_beth", "residual_aleph", "bracket_lo", "bracket_hi"]


def cmd_zeros(scan: ScanConfig, settings: Settings) -> List[OutputRecord]:
    zeros = scan_zeros(scan, settings.quad, threads=settings.threads)
    return [
        OutputRecord("zero", {
            "k": k,
            "b": z.b,
            "residual_beth": z.residual_beth,
            "residual_aleph": z.residual_aleph,
            "bracket_lo": z.bracket[0],
            "bracket_hi": z.bracket[1],
        })
        for k, z in enumerate(zeros, 1)
    ]


# verification suites: name -> list of (check name, threshold, residual fn)
def _theta_checks(settings):
    grid = [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0]
    return [("theta_functional_eq", 1e-13,
             lambda: max(abs(psi_functional_residual(u)) for u in grid))]


_STRIP_GRID = [complex(sig, t) for sig in (-1.0, 0.0, 0.25, 0.5, 2.0) for t in (0.0, 5.0, 10.0, 20.0)]


def _functional_checks(settings):
    cfg = settings.quad
    return [
        ("beth_symmetry", 1e-9, lambda: max(functional_residual(s, cfg) for s in _STRIP_GRID)),
        ("beth_at_0_and_1", 1e-10,
         lambda: max(abs(evaluate_beth(0.0, cfg).value - 1.0), abs(evaluate_beth(1.0, cfg).value - 1.0))),
    ]


def _dual_checks(settings):
    cfg, em = settings.quad, settings.em_params()

    def worst():
        out = 0.0
        for s in _STRIP_GRID:
            b = evaluate_beth(s, cfg).value
            e = phi_factor(s) * evaluate_em(s, em).value
            out = max(out, abs(e - b) / max(1.0, abs(b)))
        return out

    return [("phi_times_aleph_vs_beth", 1e-8, worst)]


def _trivial_checks(settings):
    cfg, em = settings.quad, settings.em_params()

    def em_worst():
        return max(abs(evaluate_em(-2.0 * k, em).value) for k in range(1, 6))

    def beth_path():
        trivial_zeros(4, cfg)
        return max(abs(aleph_from_beth(-2.0 * k, cfg)) for k in range(1, 6))

    return [("aleph_em_trivial", 1e-8, em_worst), ("aleph_from_beth_exact_zero", 0.0, beth_path)]


def _decomposition_checks(settings):
    def product_err():
        rng = random.Random(20200826)
        worst = 0.0
        for _ in range(1000):
            a, b, u = rng.uniform(0, 1), rng.uniform(-50, 50), rng.uniform(1, 60)
            z = complex(a, b)
            direct = z * (z - 1) * cmath.cosh((z - 0.5) * math.log(u) / 2)
            got = complex(float(kernel_R(a, b, u)), float(kernel_I(a, b, u)))
            worst = max(worst, abs(got - direct) / max(abs(direct), 1e-300))
        return worst

    def critical_I():
        rng = random.Random(1859)
        return max(abs(decompose(0.5, rng.uniform(-200, 200), rng.uniform(1, 60)).I) for _ in range(1000))

    def critical_beth_im():
        return max(abs(evaluate_beth(complex(0.5, b), settings.quad).value.imag) for b in (0, 5, 14, 21, 30))

    return [
        ("kernel_vs_complex_product", 1e-12, product_err),
        ("critical_I_identically_zero", 0.0, critical_I),
        ("critical_beth_imag", 1e-10, critical_beth_im),
    ]


SUITES: Dict[str, Callable] = {
    "theta": _theta_checks,
    "functional": _functional_checks,
    "dual": _dual_checks,
    "trivial": _trivial_checks,
    "decomposition": _decomposition_checks,
}


def cmd_verify(suite: str, settings: Settings):
    names = list(SUITES) if suite == "all" else [suite]
    records = []
    ok = True
    for name in names:
        for check, threshold, fn in SUITES[name](settings):
            try:
                residual = float(fn())
                passed = residual <= threshold if threshold == 0.0 else residual < threshold
                note = ""
            except Exception as exc:  # a failing check is a result, not a crash
                residual, passed, note = math.inf, False, f"{type(exc).__name__}: {exc}"
            ok &= passed
            records.append(OutputRecord("residual", {
                "suite": name, "check": check, "max_residual": residual,
                "threshold": threshold, "status": "PASS" if passed else "FAIL", "note": note,
            }))
    return records, (EXIT_OK if ok else EXIT_FAIL)


def cmd_table(settings: Settings) -> List[OutputRecord]:
    zeros = scan_zeros(TABLE_SCAN, settings.quad, threads=settings.threads)
    out = []
    for k, z in enumerate(zeros, 1):
        published = TABLE_ZEROS[k - 1] if k <= len(TABLE_ZEROS) else math.nan
        out.append(OutputRecord("zero", {
            "k": k, "b_computed": z.b, "b_published": published, "abs_diff": abs(z.b - published),
            "residual_beth": z.residual_beth, "residual_aleph": z.residual_aleph,
        }))
    return out


# --------------------------------------------------------------------- main


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", default=d, help="key=value config file (fallback: $%s)" % CONFIG_ENV)
    parser.add_argument("--format", choices=("csv", "json"), default=d if suppress else "csv")
    parser.add_argument("--tol", type=float, default=d, help="quadrature absolute tolerance")
    parser.add_argument("--threads", type=int, default=d, help="worker threads for scanning")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zetaxi", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("eval", help="evaluate the continued zeta function")
    _global_options(p, suppress=True)
    p.add_argument("--s", required=True, metavar="RE,IM")
    p.add_argument("--method", choices=("em", "integral", "series"), default="em")

    p = sub.add_parser("zeros", help="scan the critical line for zeros")
    _global_options(p, suppress=True)
    p.add_argument("--paper", action="store_true", help="range 10:35, step 0.25, refine tol 1e-7")
    p.add_argument("--range", metavar="LO:HI")
    p.add_argument("--step", type=float)
    p.add_argument("--refine-tol", type=float, dest="refine_tol")

    p = sub.add_parser("verify", help="run identity checks")
    _global_options(p, suppress=True)
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")

    p = sub.add_parser("table", help="compare scanned zeros with the published table")
    _global_options(p, suppress=True)
    return parser


_VALUE_FLAGS = ("--s", "--range")


def _normalise_argv(argv: Sequence[str]) -> List[str]:
    # let "--s -1,0" through: argparse would read "-1,0" as an option
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_normalise_argv(argv))
        settings = load_settings(args)
        fmt = args.format
        if args.command == "eval":
            s_re, s_im = _parse_pair(args.s, ",", "--s")
            stdout.write(render([cmd_eval(s_re, s_im, args.method, settings)], fmt))
            return EXIT_OK
        if args.command == "zeros":
            scan = settings.scan
            if args.paper:
                scan = TABLE_SCAN
            lo, hi = (scan.b_min, scan.b_max) if args.range is None else _parse_pair(args.range, ":", "--range")
            try:
                scan = ScanConfig(lo, hi, args.step or scan.step, args.refine_tol or scan.refine_tol)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            stdout.write(render(cmd_zeros(scan, settings), fmt, ZERO_COLUMNS))
            return EXIT_OK
        if args.command == "verify":
            records, code = cmd_verify(args.suite, settings)
            stdout.write(render(records, fmt))
            return code
        if args.command == "table":
            stdout.write(render(cmd_table(settings), fmt))
            return EXIT_OK
    except UsageError as exc:
        stderr.write(f"zetaxi: error: {exc}\n")
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
