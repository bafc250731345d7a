"""Command-line front end.

Subcommands: ``eval``, ``sweep``, ``rmin``, ``check``, ``figures``.
Exit codes: 0 success, 1 argument/config error, 2 validity violation under
``--strict``, 3 numerical failure.

A flat ``key=value`` config file may be passed with ``--config``; keys are
flag names without the leading dashes. Flags override config values, which
override defaults.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .consistency import StructureConstant, commutator_coefficient, validity_margin
from .errors import DomainError, LFDecayError, NumericalError
from .green_average import CavityGeometry
from .permittivity import (
    DEFAULT_COUPLING,
    LorentzMedium,
    Medium,
    kk_residual,
    load_table,
    static_epsilon,
)
from .rmin import SpectrumGrid, rmin_curve
from .sweep import (
    FIGURE_GAMMAS,
    FIGURE_STEPS,
    PRESETS,
    RMIN_COLUMNS,
    RMIN_STEPS,
    SWEEP_COLUMNS,
    fig4_rows,
    figure_table,
    rmin_records,
    sweep,
    sweep_records,
    sweep_row,
    to_csv,
    to_json,
)

log = logging.getLogger("lfdecay")

EXIT_OK, EXIT_ARGS, EXIT_STRICT, EXIT_NUMERIC = 0, 1, 2, 3
DEFAULT_GAMMA = 0.1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 by default; 2 is reserved here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, rmin: bool = False) -> None:
    p.add_argument("--config", help="flat key=value file; flags take precedence")
    p.add_argument("--medium", choices=("lorentz", "table"), default="lorentz")
    p.add_argument("--table-file", help="omega eps_re eps_im records (table medium)")
    if rmin:
        p.add_argument("--gamma", type=float, nargs="+", help="damping values (units of omega_t)")
    else:
        p.add_argument("--gamma", type=float, default=DEFAULT_GAMMA, help="damping (units of omega_t)")
    p.add_argument("--coupling", type=float, default=DEFAULT_COUPLING)
    p.add_argument("--omega-t", type=float, default=1.0)
    p.add_argument("--structure-constant", type=float, default=0.0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="write here instead of stdout")
    p.add_argument("--strict", action="store_true", help="exit 2 if the commutator condition is violated")
    p.add_argument("--tol", type=float, default=1e-6, help="relative tolerance on r_min")
    p.add_argument("--jobs", type=int, default=1, help="worker threads; output does not depend on it")


def _geometry_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--r", type=float, help="cavity parameter lambda_T / r_bar")
    g.add_argument("--rbar", type=float, help="cavity radius (units of c / omega_t)")


def _grid_flags(p: argparse.ArgumentParser, steps: int) -> None:
    p.add_argument("--omega-min", type=float, default=0.5)
    p.add_argument("--omega-max", type=float, default=1.5)
    p.add_argument("--omega-steps", type=int, default=steps)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lfdecay", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="rates at one transition frequency")
    _common(p)
    _geometry_flags(p)
    p.add_argument("--omega", type=float, help="transition frequency (units of omega_t)")

    p = sub.add_parser("sweep", help="rates over a frequency grid")
    _common(p)
    _geometry_flags(p)
    _grid_flags(p, FIGURE_STEPS)
    p.add_argument("--preset", choices=PRESETS[:3], help="figure parameter set (ignores --gamma/--r)")

    p = sub.add_parser("rmin", help="lower bound r_min for each damping value")
    _common(p, rmin=True)
    _grid_flags(p, RMIN_STEPS)

    p = sub.add_parser("check", help="commutator condition and KK residual")
    _common(p)

    p = sub.add_parser("figures", help="write figure data files")
    _common(p)
    p.add_argument("preset", choices=PRESETS + ("all",))
    p.add_argument("--outdir", default=".")
    return parser


# -- config file ------------------------------------------------------------


def read_config(path: str) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    return values


def _subparser(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)


def _apply_config(sub: argparse.ArgumentParser, config: dict[str, str]) -> None:
    by_flag = {opt: a for a in sub._actions for opt in a.option_strings}
    defaults = {}
    for key, raw in config.items():
        action = by_flag.get("--" + key)
        if action is None or key == "config":
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(action, argparse._StoreTrueAction):
            value = raw.lower() in ("1", "true", "yes", "on")
        else:
            conv = action.type or str
            tokens = raw.replace(",", " ").split()
            try:
                value = [conv(t) for t in tokens] if action.nargs == "+" else conv(raw)
            except ValueError as exc:
                raise UsageError(f"config key {key!r}: {exc}") from None
            if action.choices is not None and value not in action.choices:
                raise UsageError(f"config key {key!r}: invalid choice {raw!r}")
        defaults[action.dest] = value
    sub.set_defaults(**defaults)


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            _apply_config(_subparser(parser, args.command), read_config(args.config))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        args = parser.parse_args(argv)
    return args


# -- helpers ----------------------------------------------------------------


def _medium(args, gamma: Optional[float] = None) -> Medium:
    if args.medium == "table":
        if not args.table_file:
            raise UsageError("--medium table needs --table-file")
        try:
            return load_table(args.table_file)
        except OSError as exc:
            raise UsageError(f"cannot read table: {exc}") from None
    if args.table_file:
        raise UsageError("--table-file given but --medium is lorentz")
    return LorentzMedium(args.gamma if gamma is None else gamma, args.coupling, args.omega_t)


def _geometry(args) -> CavityGeometry:
    if args.r is None and args.rbar is None:
        raise UsageError("one of --r or --rbar is required")
    if args.r is not None:
        return CavityGeometry(args.r, args.omega_t)
    return CavityGeometry.from_radius(args.rbar, args.omega_t)


def _grid(args) -> SpectrumGrid:
    return SpectrumGrid(args.omega_min, args.omega_max, args.omega_steps)


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _render(args, header, rows) -> str:
    return to_json(header, rows) if args.format == "json" else to_csv(header, rows)


def _consistency(args, medium: Medium) -> dict:
    eps_s = static_epsilon(medium, allow_lowest=True)
    s = StructureConstant(args.structure_constant)
    margin = validity_margin(eps_s, s)
    report = {
        "eps_static": eps_s,
        "structure_constant": s.s,
        "alpha": s.alpha,
        "commutator_coefficient": commutator_coefficient(eps_s, s),
        "rho": margin.rho,
        "classification": margin.classification,
    }
    if margin.classification != "strict":
        log.warning("commutator condition %s (rho = %.4g)", margin.classification, margin.rho)
    return report


def _strict_exit(args, report: dict) -> int:
    if args.strict and report["classification"] == "violated":
        return EXIT_STRICT
    return EXIT_OK


# -- commands ---------------------------------------------------------------


def cmd_eval(args) -> int:
    if args.omega is None:
        raise UsageError("--omega is required")
    medium = _medium(args)
    report = _consistency(args, medium)
    row = sweep_row(medium, args.omega, _geometry(args))
    _emit(args, _render(args, SWEEP_COLUMNS, sweep_records([row])))
    return _strict_exit(args, report)


def cmd_sweep(args) -> int:
    grid = _grid(args)
    if args.preset:
        gamma = FIGURE_GAMMAS[args.preset]
        medium = LorentzMedium(gamma, args.coupling, args.omega_t)
        report = _consistency(args, medium)
        header, rows = figure_table(gamma, args.coupling, args.omega_t, grid)
        _emit(args, _render(args, header, rows))
        return _strict_exit(args, report)
    medium = _medium(args)
    report = _consistency(args, medium)
    rows = sweep(medium, _geometry(args), grid, jobs=args.jobs)
    _emit(args, _render(args, SWEEP_COLUMNS, sweep_records(rows)))
    return _strict_exit(args, report)


def cmd_rmin(args) -> int:
    if not args.gamma:
        raise UsageError("--gamma needs at least one damping value")
    if args.medium != "lorentz":
        raise UsageError("rmin curves are defined for the Lorentz medium")
    report = _consistency(args, LorentzMedium(args.gamma[0], args.coupling, args.omega_t))
    rows = rmin_curve(args.gamma, _grid(args), args.tol, args.coupling, args.omega_t, args.jobs)
    _emit(args, _render(args, RMIN_COLUMNS, rmin_records(rows)))
    return _strict_exit(args, report)


def cmd_check(args) -> int:
    medium = _medium(args)
    report = _consistency(args, medium)
    if args.medium == "table":
        kk = kk_residual(medium)
        report["kk_max_residual"] = kk.max_abs
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = to_csv(("quantity", "value"), list(report.items()))
    _emit(args, text)
    return _strict_exit(args, report)


def cmd_figures(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    presets = PRESETS if args.preset == "all" else (args.preset,)
    report = _consistency(args, LorentzMedium(DEFAULT_GAMMA, args.coupling, args.omega_t))
    for name in presets:
        if name == "fig4":
            rows = fig4_rows(args.coupling, args.omega_t, args.tol, jobs=args.jobs)
            text = to_csv(RMIN_COLUMNS, rmin_records(rows))
        else:
            header, rows = figure_table(FIGURE_GAMMAS[name], args.coupling, args.omega_t)
            text = to_csv(header, rows)
        (outdir / f"{name}.csv").write_text(text, encoding="utf-8", newline="\n")
        log.info("wrote %s", outdir / f"{name}.csv")
    return _strict_exit(args, report)


COMMANDS = {
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "rmin": cmd_rmin,
    "check": cmd_check,
    "figures": cmd_figures,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as exc:
        print(f"lfdecay: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(levelname)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"lfdecay: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except NumericalError as exc:
        print(f"lfdecay: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, LFDecayError) as exc:
        print(f"lfdecay: error: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    raise SystemExit(main())
