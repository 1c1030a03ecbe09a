# cli.py
"""Command-line entry point: zeros, spectra, wavefunctions, angular modes, verification, figure data."""
import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd
from pydantic import ValidationError

import figures
from angular import classify_sectors, make_mode
from config import RunConfig, get_tolerances, load_run_config, set_tolerances
from dunkl_core import DunklParams
from errors import DunklError, InputError
from specfun import bessel_zeros
from spectrum import (ParityTriple, StateLabel, admissible, axial_energy_table, enumerate_levels, full_wavefunction,
                      levels_frame, radial_energy_table)
from states import CylinderGeometry, WellKind
from verify import SUITE_NAMES, VerifyConfig, VerificationHarness, summary_table, write_reports_jsonl

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

# flags that feed RunConfig; everything else is command-specific
RUN_CONFIG_KEYS = ("r_c", "h_half", "geometry", "parity", "max_order_n", "max_m", "max_n", "max_n_prime",
                   "k_grid", "orders", "dunkl_sum", "dunkl_m", "format", "output", "tolerances", "seed", "workers")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key=value file; flags override its values")
    common.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument("--r-c", dest="r_c", type=float, help="cylinder radius R_c")
    common.add_argument("--h-half", dest="h_half", type=float, help="half-height H")
    common.add_argument("--geometry", choices=["finite", "infinite"])
    common.add_argument("--k-grid", dest="k_grid", help="comma-separated wavenumbers for the infinite well")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--output", type=Path)
    common.add_argument("--tolerance", dest="tolerances", action="append", metavar="NAME=VALUE",
                        help="override one tolerance; repeatable")
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="dunkl-well", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    zeros = sub.add_parser("zeros", parents=[common], help="positive zeros of J_nu")
    zeros.add_argument("--nu", type=float, required=True)
    zeros.add_argument("--count", type=int, default=5)

    spectrum = sub.add_parser("spectrum", parents=[common], help="sorted energy levels")
    spectrum.add_argument("--parity", help="triples such as '1,-1,-1;1,1,1'")
    spectrum.add_argument("--max-order-n", dest="max_order_n", type=int)
    spectrum.add_argument("--max-m", dest="max_m", type=int)
    spectrum.add_argument("--max-n", dest="max_n", type=int)
    spectrum.add_argument("--max-n-prime", dest="max_n_prime", type=int)
    spectrum.add_argument("--dunkl-sum", dest="dunkl_sum", type=int, help="fix M = mu1 + mu2")
    spectrum.add_argument("--dunkl-m", dest="dunkl_m", type=int, help="fix m = mu3 - 1/2")
    spectrum.add_argument("--orders", help="comma-separated N (radial) or m (axial) for --table")
    spectrum.add_argument("--table", choices=["levels", "radial", "axial-even", "axial-odd"], default="levels")

    wave = sub.add_parser("wavefunction", parents=[common], help="sample one factor of a state")
    wave.add_argument("--kind", choices=["radial", "axial", "angular"], required=True)
    wave.add_argument("--parity", required=True, help="one triple such as '1,-1,-1'")
    wave.add_argument("--N", dest="N_cap", type=int, required=True)
    wave.add_argument("--M", dest="M_cap", type=int, required=True)
    wave.add_argument("--m", dest="m", type=int, default=0)
    wave.add_argument("--n", dest="n", type=int, default=1)
    wave.add_argument("--n-prime", dest="n_prime", type=int, default=1)
    wave.add_argument("--mu1", type=float, help="mu1 for the angular factor (default M/2)")
    wave.add_argument("--points", type=int, default=figures.DEFAULT_POINTS)
    wave.add_argument("--extent", type=float, help="sampling half-width for free axial states")

    angular = sub.add_parser("angular", parents=[common], help="sectors, s^2 and normalization per mode")
    angular.add_argument("--mu1", type=float, required=True)
    angular.add_argument("--mu2", type=float, required=True)
    angular.add_argument("--max-twoell", type=int, default=6)

    verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    verify.add_argument("--suite", choices=list(SUITE_NAMES) + ["all"], default="all")
    verify.add_argument("--points", type=int, default=20)
    verify.add_argument("--report", type=Path, help="JSON-lines report file")
    verify.add_argument("--max-order-n", dest="max_order_n", type=int)
    verify.add_argument("--max-m", dest="max_m", type=int)
    verify.add_argument("--max-n", dest="max_n", type=int)
    verify.add_argument("--max-n-prime", dest="max_n_prime", type=int)

    export = sub.add_parser("export-figures", parents=[common], help="write every figure dataset")
    export.add_argument("--out-dir", type=Path, required=True)
    export.add_argument("--points", type=int, default=figures.DEFAULT_POINTS)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    overrides: Dict[str, object] = {key: getattr(args, key, None) for key in RUN_CONFIG_KEYS}
    if overrides.get("tolerances"):
        overrides["tolerances"] = ",".join(overrides["tolerances"])
    if args.command == "wavefunction":
        overrides["parity"] = None
    return load_run_config(args.config, overrides)


def _geometry(config: RunConfig) -> CylinderGeometry:
    if config.geometry == "infinite":
        return CylinderGeometry(r_c=config.r_c, kind=WellKind.INFINITE)
    return CylinderGeometry(r_c=config.r_c, h_half=config.h_half)


def _emit(frame: pd.DataFrame, config: RunConfig, kind: str) -> None:
    text = figures.write_table(frame, config.output, config.format, kind)
    sys.stdout.write(text)


def cmd_zeros(args: argparse.Namespace, config: RunConfig) -> int:
    rows = [{"nu": zero.order.nu, "index": zero.index, "value": zero.value,
             "bracket_lo": zero.bracket[0], "bracket_hi": zero.bracket[1]}
            for zero in bessel_zeros(args.nu, args.count)]
    _emit(pd.DataFrame(rows, columns=["nu", "index", "value", "bracket_lo", "bracket_hi"]), config, "zeros")
    return 0


def cmd_spectrum(args: argparse.Namespace, config: RunConfig) -> int:
    if args.table == "radial":
        orders = config.orders or list(range(config.max_order_n + 1))
        frame = radial_energy_table(config.r_c, orders, config.max_n)
    elif args.table in ("axial-even", "axial-odd"):
        orders = config.orders or list(range(config.max_m + 1))
        frame = axial_energy_table(config.h_half, orders, config.max_n_prime,
                                   1 if args.table == "axial-even" else -1)
    else:
        parities = [ParityTriple(*triple) for triple in config.parity] if config.parity else None
        levels = enumerate_levels(_geometry(config), parities, config.max_order_n, config.max_m, config.max_n,
                                  config.max_n_prime, config.k_grid, config.dunkl_sum, config.dunkl_m,
                                  config.workers)
        frame = levels_frame(levels)
    logging.info("spectrum: %d rows", len(frame))
    _emit(frame, config, f"spectrum-{args.table}")
    return 0


def _parse_triple(text: str) -> ParityTriple:
    try:
        parts = [int(part) for part in text.replace(";", ",").split(",") if part.strip()]
    except ValueError as exc:
        raise InputError(f"parity values must be integers, got {text!r}") from exc
    if len(parts) != 3:
        raise InputError(f"expected three comma-separated values, got {text!r}")
    return ParityTriple(*parts)


def cmd_wavefunction(args: argparse.Namespace, config: RunConfig) -> int:
    geometry = _geometry(config)
    finite = geometry.finite
    label = StateLabel(_parse_triple(args.parity), args.N_cap - args.M_cap, args.N_cap, args.M_cap, args.m, args.n,
                       geometry, n_prime=args.n_prime if finite else None,
                       k=None if finite else config.k_grid[0])
    report = admissible(label)
    if not report:
        for violation in report.violations:
            logging.error("violation: %s", violation)
    wave = full_wavefunction(label, args.mu1)
    if args.kind == "radial":
        frame = figures.radial_curve(wave.radial, args.points)
    elif args.kind == "axial":
        frame = figures.axial_curve(wave.axial, args.points, args.extent)
    else:
        frame = figures.angular_curve(wave.params, wave.angular_mode(), args.points)
    _emit(frame, config, f"wavefunction-{args.kind}")
    return 0


def cmd_angular(args: argparse.Namespace, config: RunConfig) -> int:
    params = DunklParams(args.mu1, args.mu2, 0.5)
    rows: List[dict] = []
    for info in classify_sectors():
        sector = info.sector
        for twoell in range(sector.lowest_twoell, args.max_twoell + 1, 2):
            closed = make_mode(params, sector, twoell)
            printed = make_mode(params, sector, twoell, convention="printed")
            rows.append({"e1": sector.e1, "e2": sector.e2, "r1": info.r1, "r2": info.r2, "twoell": twoell,
                         "s_squared": closed.s_squared, "eta": closed.eta, "eta_printed": printed.eta,
                         "printed_source": printed.eta_source})
    columns = ["e1", "e2", "r1", "r2", "twoell", "s_squared", "eta", "eta_printed", "printed_source"]
    _emit(pd.DataFrame(rows, columns=columns), config, "angular")
    return 0


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    verify_config = VerifyConfig(r_c=config.r_c, h_half=config.h_half, seed=config.seed, points=args.points,
                                 workers=config.workers, max_N=config.max_order_n, max_m=config.max_m,
                                 max_n=config.max_n, max_n_prime=config.max_n_prime,
                                 tolerances=config.tolerance_table())
    reports = VerificationHarness(verify_config).run(args.suite)
    report_path = args.report or config.output
    if report_path is not None:
        write_reports_jsonl(reports, report_path)
        logging.info("Wrote %d reports to %s", len(reports), report_path)
    sys.stdout.write(summary_table(reports) + "\n")
    failed = [report.check_id for report in reports if not report.passed]
    if failed:
        logging.error("%d check(s) failed: %s", len(failed), ", ".join(failed))
        return 1
    return 0


def cmd_export_figures(args: argparse.Namespace, config: RunConfig) -> int:
    written = figures.export_figures(args.out_dir, args.points, config.format)
    for name, path in written.items():
        sys.stdout.write(f"{name}\t{path}\n")
    return 0


COMMANDS = {
    "zeros": cmd_zeros,
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "angular": cmd_angular,
    "verify": cmd_verify,
    "export-figures": cmd_export_figures,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT, stream=sys.stderr)
    previous = get_tolerances()
    try:
        config = _run_config(args)
        set_tolerances(config.tolerance_table())
        logging.info("Running %s", args.command)
        return COMMANDS[args.command](args, config)
    except (DunklError, ValidationError) as exc:
        logging.error("%s", str(exc).splitlines()[0] if isinstance(exc, DunklError) else exc)
        return 2
    except Exception as exc:
        logging.exception(f"Unexpected failure: {str(exc)}")
        return 1
    finally:
        set_tolerances(previous)


if __name__ == "__main__":
    sys.exit(main())
