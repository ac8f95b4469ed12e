"""Command line: ``suqdirac verify | spectrum | limit``.

Exit codes: 0 success, 1 a verification or tolerance failure, 2 a
configuration error.  Output goes to stdout unless ``--out`` is given;
relative ``--out`` paths are placed under $SUQDIRAC_OUT_DIR when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .dirac import (
    DiracParams,
    classical_limit_sweep,
    dirac_matrix,
    parse_grid,
)
from .dirac import report
from .dirac.reduce import case_of
from .hodge import HodgeConfig, MetricParams, NonCKError, load_config
from .qscalar import ParseError, parse
from .uqsu2 import Weight

OUT_DIR_ENV = "SUQDIRAC_OUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    qs: list = field(default_factory=list)
    symbolic: bool = False
    weights: list = field(default_factory=list)
    gamma: str = "1"
    fmt: str = "table"
    out: str | None = None
    tol: float = 1e-9

    def __post_init__(self):
        if not self.tol > 0:
            raise ConfigError("tolerance must be positive")
        for q in self.qs:
            if not 0 < q <= 1:
                raise ConfigError(f"q = {q} is outside (0, 1]")


# argument helpers ------------------------------------------------------------


def _parse_J(text: str) -> list[Fraction]:
    try:
        if ":" in text:
            a, b = (Fraction(x) for x in text.split(":"))
            vals, x = [], a
            while x <= b:
                vals.append(x)
                x += Fraction(1, 2)
        else:
            vals = [Fraction(text)]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad J {text!r}") from exc
    for J in vals:
        if J < 0 or (2 * J).denominator != 1:
            raise ConfigError(f"J = {J} is not a non-negative half-integer")
    return vals


def _weights(J_text: str, N_text: str | None, case: str) -> list[Weight]:
    out = []
    for J in _parse_J(J_text):
        if N_text is None:
            Ns = range(-int(2 * J), int(2 * J) + 1, 2)
        else:
            try:
                Ns = [int(n) for n in N_text.split(",")]
            except ValueError as exc:
                raise ConfigError(f"bad N {N_text!r}") from exc
        for N in Ns:
            try:
                w = Weight(J, N)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            if not w.in_range():
                raise ConfigError(f"invalid weight: |N| = {abs(N)} exceeds 2J = {2 * J}")
            if case != "auto" and case_of(w) != case:
                if N_text is None:
                    continue
                raise ConfigError(f"weight (J={J}, N={N}) is not a {case} weight")
            out.append(w)
    if not out:
        raise ConfigError("no weights selected")
    return sorted(out)


def _parse_qs(text: str | None) -> list[float]:
    if text is None:
        return []
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad q list {text!r}") from exc


def _scalar(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise ConfigError(f"cannot parse {text!r}: {exc}") from exc


def _hodge(args) -> tuple[HodgeConfig, float | None]:
    try:
        if getattr(args, "config", None):
            cfg, q = load_config(args.config)
        elif getattr(args, "alpha", None) is not None:
            cfg, q = load_config({"alpha": args.alpha, "mode": "ck"})
        else:
            cfg, q = load_config({"gamma": args.gamma, "mode": "ck"})
    except (OSError, json.JSONDecodeError, ValueError, NonCKError) as exc:
        raise ConfigError(f"bad configuration: {exc}") from exc
    beta = getattr(args, "beta", None)
    if beta is not None:
        p = cfg.params
        cfg = HodgeConfig.star_normalized(MetricParams(p.alpha, _scalar(beta), p.gamma))
    return cfg, q


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    base = os.environ.get(OUT_DIR_ENV)
    path = out if os.path.isabs(out) or not base else os.path.join(base, out)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as fh:
        fh.write(text)


# commands -------------------------------------------------------------------


def cmd_verify(args) -> int:
    from .checks import run_suite

    cfg, q_cfg = _hodge(args)
    RunConfig("verify", _parse_qs(args.q), tol=args.tol)
    params = None
    if any(getattr(args, k) is not None for k in ("eps1", "eps2", "eps3")) or args.kappa_sign != -1:
        try:
            base = DiracParams.default(cfg, args.kappa_sign)
        except NonCKError:
            base = None
        if base is not None:
            params = DiracParams(
                _scalar(args.eps1) if args.eps1 else base.eps1,
                _scalar(args.eps2) if args.eps2 else base.eps2,
                _scalar(args.eps3) if args.eps3 else base.eps3,
                base.kappa,
            )
    results = run_suite(cfg, params)
    qs = _parse_qs(args.q) or ([q_cfg] if q_cfg else [])
    if qs:
        results.append(_spectrum_check(cfg, qs, args.tol))
    failed = next((r for r in results if not r.ok), None)
    if args.format == "json":
        text = json.dumps({"ok": failed is None, "checks": [r.to_json() for r in results]}, indent=2) + "\n"
    else:
        text = "".join(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {report.truncate(r.detail)}\n" for r in results)
    _emit(text, args.out)
    if failed is not None:
        sys.stderr.write(f"verification failed: {failed.name}\n")
        return EXIT_FAIL
    return EXIT_OK


def _spectrum_check(cfg, qs, tol):
    from .checks import CheckResult
    from .dirac import spectrum_numeric

    try:
        D = dirac_matrix(DiracParams.default(cfg), cfg)
    except (NonCKError, ArithmeticError) as exc:
        return CheckResult("spectrum", False, str(exc))
    worst = 0.0
    for tj in range(0, 5):
        J = Fraction(tj, 2)
        for N in range(-tj, tj + 1, 2):
            for q in qs:
                worst = max([worst] + [r.abs_err for r in spectrum_numeric(Weight(J, N), cfg, q, D)])
    return CheckResult("spectrum", worst <= tol, f"max |closed - numeric| = {worst:.2e} for J <= 2")


def cmd_spectrum(args) -> int:
    weights = _weights(args.J, args.N, args.case)
    if args.classical:
        reports = [report.classical_report(w) for w in weights]
        fail = False
    else:
        cfg, q_cfg = _hodge(args)
        run = RunConfig(
            "spectrum", _parse_qs(args.q) or [q_cfg or 0.5], args.symbolic, weights,
            args.gamma, args.format, args.out, args.tol,
        )
        qs = [None] if run.symbolic else run.qs
        try:
            D = dirac_matrix(DiracParams.default(cfg, args.kappa_sign), cfg)
        except (NonCKError, ArithmeticError) as exc:
            raise ConfigError(f"operator unavailable for this configuration: {exc}") from exc
        reports = [report.spectrum_report(w, cfg, q, D) for w in weights for q in qs]
        fail = any((r.get("abs_err") or 0.0) > args.tol for rep in reports for r in rep["records"])
    render = {"json": report.to_json, "csv": report.to_csv, "table": report.to_table}[args.format]
    _emit(render(reports), args.out)
    return EXIT_FAIL if fail else EXIT_OK


def cmd_limit(args) -> int:
    weights = _weights(args.J, args.N, args.case)
    try:
        grid = parse_grid(args.q_grid)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if any(q >= 1 for q in grid):
        raise ConfigError("grid must lie in (0, 1)")
    cfg, _ = _hodge(args)
    try:
        D = dirac_matrix(DiracParams.default(cfg, args.kappa_sign), cfg)
    except (NonCKError, ArithmeticError) as exc:
        raise ConfigError(f"operator unavailable for this configuration: {exc}") from exc
    RunConfig("limit", grid, False, weights, args.gamma, args.format, args.out, args.tol)
    reports = [report.limit_report(classical_limit_sweep(w, cfg, grid, D)) for w in weights]
    if args.format == "json":
        text = json.dumps(reports, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        text = report.limit_csv(reports)
    else:
        text = report.limit_table(reports)
    _emit(text, args.out)
    return EXIT_OK if all(r["ok"] for r in reports) else EXIT_FAIL


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="suqdirac", description="Dirac operator on the quantum 3-sphere")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--gamma", default="1", help="metric parameter gamma (expression in q)")
        p.add_argument("--alpha", help="fix the Cartan-Killing metric by alpha instead of gamma")
        p.add_argument("--config", help="JSON file with gamma, mode and q")
        p.add_argument("--format", choices=["json", "csv", "table"], default="table")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--kappa-sign", type=int, choices=[-1, 1], default=-1)

    v = sub.add_parser("verify", help="run the invariant suite")
    common(v)
    v.add_argument("--q", help="numeric q values for a spectrum spot check (comma separated)")
    v.add_argument("--beta", help="override beta (breaks alpha = beta)")
    v.add_argument("--eps1")
    v.add_argument("--eps2")
    v.add_argument("--eps3")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("spectrum", help="closed-form and numeric spectra")
    common(s)
    s.add_argument("--J", required=True, help="J, or a range a:b in steps of 1/2")
    s.add_argument("--N", help="N or a comma list (default: all valid)")
    s.add_argument("--q", help="numeric q values (comma separated)")
    s.add_argument("--symbolic", action="store_true", help="closed forms only")
    s.add_argument("--case", choices=["generic", "highest", "lowest", "auto"], default="auto")
    s.add_argument("--classical", action="store_true", help="the q = 1 spectrum")
    s.set_defaults(func=cmd_spectrum)

    lim = sub.add_parser("limit", help="convergence to the classical spectrum")
    common(lim)
    lim.add_argument("--J", required=True)
    lim.add_argument("--N")
    lim.add_argument("--q-grid", default="0.9:0.999:10", help="a:b:n")
    lim.add_argument("--case", choices=["generic", "highest", "lowest", "auto"], default="auto")
    lim.set_defaults(func=cmd_limit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol <= 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
