"""``okun`` command line: fit, predict, diagnose, simulate, plot.

Exit codes: 0 ok, 1 usage, 2 bad input data, 3 fitting infeasible. Every
failure prints a single ``error: ...`` line on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

from .errors import DataError, InfeasibleError, OkunError, UnknownPresetError
from .fitting import fit_okun, model_residuals, residual_diagnostics
from .model import (
    OkunModel,
    available_presets,
    get_preset,
    load_model,
    model_to_dict,
    predict_dlng,
    predict_du,
    regime_for,
)
from .plotting import scatter_svg, series_csv
from .regress import DEFAULT_MIN_SEGMENT, regressor_response
from .report import (
    REPORT_FORMAT,
    build_report,
    diagnostics_section,
    dumps_report,
    fingerprint,
    fmt6,
    loads_report,
)
from .simulate import GrowthPath, simulate
from .timeseries import derive, parse_csv, smooth_pair, to_csv

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(OkunError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        raise UsageError(message)


def _break_arg(text: str) -> str | int | None:
    if text == "auto":
        return "auto"
    if text == "none":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--break must be auto, none or a year, got {text!r}"
        ) from None


def _years_arg(text: str) -> tuple[int, int]:
    try:
        a, b = (int(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--years must look like 1958:2010, got {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    common.add_argument("--quiet", action="store_true", help="suppress warnings on stderr")

    parser = _Parser(prog="okun", description="Okun's-law models with a structural break.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fit_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--orientation", choices=("direct", "reversed"), default="direct")
        p.add_argument("--break", dest="break_year", type=_break_arg, default="auto",
                       metavar="auto|none|YEAR")
        p.add_argument("--min-segment", type=int, default=DEFAULT_MIN_SEGMENT)
        p.add_argument("--smooth", choices=("none", "ma3"), default="none")
        p.add_argument("--country", help="label for the dataset (default: file stem)")

    def model_flags(p: argparse.ArgumentParser, required: bool) -> None:
        g = p.add_mutually_exclusive_group(required=required)
        g.add_argument("--model", metavar="FILE", help="okun_model_v1 JSON or run report")
        g.add_argument("--preset", metavar="NAME")

    p = sub.add_parser("fit", parents=[common], help="estimate a model from a CSV")
    p.add_argument("--input", required=True, metavar="CSV")
    fit_flags(p)
    p.add_argument("--max-lag", type=int)

    p = sub.add_parser("predict", parents=[common], help="predict du or dlng")
    model_flags(p, required=True)
    p.add_argument("--year", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--dlng", type=float, help="growth in percent per year")
    g.add_argument("--du", type=float, help="unemployment change in pp per year")
    p.add_argument("--input", metavar="CSV", help="columns year,dlng or year,du")

    p = sub.add_parser("diagnose", parents=[common], help="residual diagnostics")
    p.add_argument("--input", required=True, metavar="CSV")
    model_flags(p, required=False)
    fit_flags(p)
    p.add_argument("--max-lag", type=int)

    p = sub.add_parser("simulate", parents=[common], help="synthetic CSV from a model")
    model_flags(p, required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--years", type=_years_arg, metavar="A:B",
                   help="years of the differenced observations; levels start at A-1")
    p.add_argument("--center", type=float)
    p.add_argument("--swing", type=float, default=GrowthPath.swing)
    p.add_argument("--jitter", type=float, default=GrowthPath.jitter)
    p.add_argument("--u0", type=float)
    p.add_argument("--min-segment", type=int, default=DEFAULT_MIN_SEGMENT)

    p = sub.add_parser("plot", parents=[common], help="plot data from a run report")
    p.add_argument("--report", required=True, metavar="FILE")
    p.add_argument("--format", choices=("csv", "svg"))
    p.add_argument("--smooth", choices=("none", "ma3"), default="none")
    return parser


# --------------------------------------------------------------------------


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def _load_dataset(path: str, country: str | None):
    raw = _read_bytes(path)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise DataError(f"{path} is not valid UTF-8") from None
    return raw, parse_csv(text, Path(path).stem if country is None else country)


def _resolve_model(args: argparse.Namespace) -> OkunModel | None:
    if getattr(args, "preset", None):
        return get_preset(args.preset)
    if getattr(args, "model", None):
        _read_bytes(args.model)
        return load_model(args.model)
    return None


def _break_label(value: Any) -> str:
    return "none" if value is None else str(value)


def cmd_fit(args: argparse.Namespace, argv: Sequence[str]) -> tuple[str, list[str]]:
    raw, dataset = _load_dataset(args.input, args.country)
    fit = fit_okun(
        dataset, args.orientation, args.break_year, args.min_segment,
        smooth=args.smooth == "ma3", max_lag=args.max_lag,
    )
    doc = build_report(argv, raw, dataset, fit, _break_label(args.break_year), args.min_segment)
    return dumps_report(doc), doc["warnings"]


def _prediction_inputs(args: argparse.Namespace) -> tuple[str, list[tuple[int, float]]]:
    if args.input:
        if args.year is not None or args.dlng is not None or args.du is not None:
            raise UsageError("--input cannot be combined with --year/--dlng/--du")
        text = _read_bytes(args.input).decode("utf-8")
        header: list[str] | None = None
        out = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            cells = [c.strip() for c in line.split(",")]
            if header is None:
                if cells not in (["year", "dlng"], ["year", "du"]):
                    raise DataError("prediction input header must be year,dlng or year,du", lineno)
                header = cells
                continue
            try:
                year, value = cells
                out.append((int(year), float(value)))
            except ValueError:
                raise DataError(f"bad row {line.strip()!r}", lineno) from None
        if header is None:
            raise DataError("prediction input has no header")
        return header[1], out
    if args.year is None or (args.dlng is None and args.du is None):
        raise UsageError("give --year with --dlng or --du, or --input CSV")
    if args.dlng is not None:
        return "dlng", [(args.year, args.dlng)]
    return "du", [(args.year, args.du)]


def cmd_predict(args: argparse.Namespace, argv: Sequence[str]) -> tuple[str, list[str]]:
    model = _resolve_model(args)
    kind, inputs = _prediction_inputs(args)
    lines = ["year,dlng,du,regime,extrapolated"]
    warnings = []
    for year, value in inputs:
        choice = regime_for(model, year)
        if kind == "dlng":
            dlng, du = value, predict_du(model, year, value)
        else:
            du, dlng = value, predict_dlng(model, year, value)
        if choice.extrapolated:
            warnings.append(
                f"extrapolation: {year} outside sample {model.sample_start}..{model.sample_end}"
            )
        lines.append(
            f"{year},{fmt6(dlng)},{fmt6(du)},{choice.index},{str(choice.extrapolated).lower()}"
        )
    return "\n".join(lines) + "\n", warnings


def cmd_diagnose(args: argparse.Namespace, argv: Sequence[str]) -> tuple[str, list[str]]:
    raw, dataset = _load_dataset(args.input, args.country)
    model = _resolve_model(args)
    if model is None:
        fit = fit_okun(
            dataset, args.orientation, args.break_year, args.min_segment,
            smooth=args.smooth == "ma3", max_lag=args.max_lag,
        )
        model, pair, resid = fit.model, fit.pair, fit.residuals
        section = diagnostics_section(
            fit.diagnostics, fit.diagnostics_status, pair.years.tolist(), resid
        )
    else:
        pair = derive(dataset)
        if args.smooth == "ma3":
            pair = smooth_pair(pair)
        resid = model_residuals(model, pair)
        _, y = regressor_response(pair, model.orientation)
        dy = y - y.mean()
        report, status = residual_diagnostics(resid, float(dy @ dy), args.max_lag)
        section = diagnostics_section(report, status, pair.years.tolist(), resid)
    warnings = []
    if section.get("status") == "ok" and section["lags_outside_band"]:
        warnings.append(f"autocorrelation outside band at lags {section['lags_outside_band']}")
    if section.get("status") == "ok" and not section["unit_root_rejected"]:
        warnings.append("unit root not rejected at 5%")
    doc = {
        "format": REPORT_FORMAT,
        "command": list(argv),
        "input": fingerprint(raw, dataset),
        "model": model_to_dict(model),
        "diagnostics": section,
        "warnings": warnings,
    }
    return dumps_report(doc), warnings


def cmd_simulate(args: argparse.Namespace, argv: Sequence[str]) -> tuple[str, list[str]]:
    model = _resolve_model(args)
    if args.noise < 0:
        raise UsageError("--noise must be non-negative")
    sim = simulate(
        model, args.noise, seed=args.seed, years=args.years,
        growth=GrowthPath(args.center, args.swing, args.jitter),
        min_segment=args.min_segment, u0=args.u0,
    )
    warnings = []
    if sim.clipped:
        warnings.append(
            f"clipping: unemployment clipped to [0.5, 99] in {len(sim.clipped_years)} "
            f"years starting {sim.clipped_years[0]}"
        )
    return to_csv(sim.dataset), warnings


def cmd_plot(args: argparse.Namespace, argv: Sequence[str]) -> tuple[str, list[str]]:
    doc = loads_report(_read_bytes(args.report).decode("utf-8"))
    fmt = args.format
    if fmt is None:
        fmt = "svg" if args.output and args.output.lower().endswith(".svg") else "csv"
    if fmt == "svg":
        if args.smooth == "ma3":
            raise UsageError("--smooth applies to csv output only")
        return scatter_svg(doc), []
    return series_csv(doc, smooth=args.smooth == "ma3"), []


COMMANDS = {
    "fit": cmd_fit,
    "predict": cmd_predict,
    "diagnose": cmd_diagnose,
    "simulate": cmd_simulate,
    "plot": cmd_plot,
}


def _one_line(exc: BaseException) -> str:
    return " ".join(str(exc).split()) or type(exc).__name__


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        available_presets()  # surface OKUN_PRESET_DIR problems early
        text, warnings = COMMANDS[args.command](args, argv)
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        if not args.quiet:
            for w in warnings:
                print(f"warning: {w}", file=sys.stderr)
        return EXIT_OK
    except (UsageError, UnknownPresetError) as exc:
        return _fail(exc, EXIT_USAGE)
    except InfeasibleError as exc:
        return _fail(exc, EXIT_INFEASIBLE)
    except OkunError as exc:
        return _fail(exc, EXIT_DATA)
    except ValueError as exc:
        return _fail(exc, EXIT_USAGE)


def _fail(exc: BaseException, code: int) -> int:
    print(f"error: {_one_line(exc)}", file=sys.stderr)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
