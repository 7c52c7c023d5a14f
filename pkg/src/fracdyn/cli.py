"""Batch command-line front end.

Subcommands cover raster preparation (binarize, crop, synth), dimension
estimation (boxdim, radialdim, series), trend fitting (fit-diff,
fit-logistic, stability, orbit) and population comparison (fit-pop,
compare-pop). Reports are JSON with the effective configuration embedded;
series/point data are CSV; rasters are PGM. All outputs are byte-stable:
the same inputs, flags and seed always produce identical files.

Relative output paths are resolved against $FRACDYN_OUTPUT_DIR when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .boxdim import BoxSchedule, default_schedule, cell_counts, estimate_box_dimension
from .curvature import DEFAULT_PANELS, compare_similarity
from .population import Period, PiecewiseModel, PopulationSeries, Segment, fit_piecewise
from .radialdim import (
    RadialSchedule,
    counting_center,
    default_radial_schedule,
    estimate_radial_dimension,
    pixel_counts,
)
from .raster import Rect, binarize, crop, load_gray, to_gray, write_pgm
from .synth import (
    disk,
    filled_rect,
    line,
    random_density,
    sierpinski_carpet,
    sierpinski_triangle,
)
from .trend import (
    DimensionSeries,
    MultiStartConfig,
    classify_stability,
    fit_difference_model,
    fit_logistic,
    logistic_to_difference,
    simulate_difference,
)

OUTPUT_DIR_ENV = "FRACDYN_OUTPUT_DIR"


def _out_path(path: str) -> str:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(_out_path(path), "w", newline="") as fh:
            fh.write(text)


def _emit_json(doc: dict, path: str | None) -> None:
    _emit_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", path)


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _load_binary(path: str, threshold: int, polarity: str):
    return binarize(load_gray(path), threshold, polarity)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from None


def _read_table(path: str, expect_header: tuple[str, ...]) -> list[list[str]]:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    if not rows:
        raise ValueError(f"{path} is empty")
    header = tuple(tok.strip() for tok in rows[0])
    if header != expect_header:
        raise ValueError(
            f"{path}: expected header {','.join(expect_header)}, "
            f"got {','.join(header)}"
        )
    return [row for row in rows[1:] if row and any(tok.strip() for tok in row)]


def _read_series(path: str) -> DimensionSeries:
    rows = _read_table(path, ("t", "d"))
    try:
        pairs = [(float(r[0]), float(r[1])) for r in rows]
    except (ValueError, IndexError):
        raise ValueError(f"{path}: every row must be numeric t,d") from None
    return DimensionSeries.from_pairs(pairs)


def _read_population(path: str) -> PopulationSeries:
    rows = _read_table(path, ("year", "population"))
    try:
        pairs = [(float(r[0]), float(r[1])) for r in rows]
    except (ValueError, IndexError):
        raise ValueError(f"{path}: every row must be numeric year,population") from None
    arr = np.asarray(pairs, dtype=float)
    return PopulationSeries(arr[:, 0], arr[:, 1])


def _read_periods(path: str) -> list[Period]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, list):
        raise ValueError(f"{path}: expected a JSON list of periods")
    periods = []
    for item in doc:
        try:
            periods.append(
                Period(float(item["t_start"]), float(item["t_end"]), item["kind"])
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(
                f"{path}: each period needs t_start, t_end, kind ({exc})"
            ) from None
    return periods


def _read_model(path: str) -> PiecewiseModel:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON: {exc}") from None
    segs = doc["segments"] if isinstance(doc, dict) else doc
    if not isinstance(segs, list):
        raise ValueError(f"{path}: expected a segment list or a report with one")
    try:
        segments = tuple(
            Segment(
                kind=s["kind"],
                t_start=float(s["t_start"]),
                t_end=float(s["t_end"]),
                a=float(s["a"]),
                b=float(s["b"]),
            )
            for s in segs
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(
            f"{path}: each segment needs kind, t_start, t_end, a, b ({exc})"
        ) from None
    return PiecewiseModel(segments)


# ---------------------------------------------------------------- subcommands


def _cmd_binarize(args) -> int:
    gray = load_gray(args.input)
    binary = binarize(gray, args.threshold, args.polarity)
    write_pgm(_out_path(args.output), to_gray(binary))
    return 0


def _cmd_crop(args) -> int:
    x0, y0, w, h = (int(v) for v in _int_list(args.rect))
    binary = _load_binary(args.input, args.threshold, args.polarity)
    write_pgm(_out_path(args.output), to_gray(crop(binary, Rect(x0, y0, w, h))))
    return 0


def _cmd_synth(args) -> int:
    kind = args.kind
    if kind == "sierpinski-triangle":
        raster = sierpinski_triangle(args.n, centered=args.centered)
    elif kind == "sierpinski-carpet":
        raster = sierpinski_carpet(args.depth)
    elif kind == "filled-rect":
        raster = filled_rect(args.width, args.height)
    elif kind == "line":
        raster = line(args.length)
    elif kind == "disk":
        raster = disk(args.radius)
    else:  # random-density
        raster = random_density(args.width, args.height, args.p, args.seed)
    write_pgm(_out_path(args.output), to_gray(raster))
    return 0


def _cmd_boxdim(args) -> int:
    binary = _load_binary(args.input, args.threshold, args.polarity)
    schedule = (
        BoxSchedule(tuple(_int_list(args.sizes)))
        if args.sizes
        else default_schedule(binary)
    )
    est = estimate_box_dimension(binary, schedule)
    if args.csv:
        rows = [
            (s, n, repr(math.log(s)), repr(math.log(n)))
            for s, n in cell_counts(binary, schedule)
        ]
        _emit_text(_csv_text(["size", "count", "ln_size", "ln_count"], rows), args.csv)
    _emit_json(
        {
            "command": "boxdim",
            "config": {
                "input": args.input,
                "threshold": args.threshold,
                "polarity": args.polarity,
                "sizes": list(schedule.sizes),
            },
            "dimension": est.dimension,
            "r_squared": est.fit.r_squared,
            "stderr": est.fit.stderr_slope,
        },
        args.output,
    )
    return 0


def _cmd_radialdim(args) -> int:
    binary = _load_binary(args.input, args.threshold, args.polarity)
    center = counting_center(binary, args.center)
    schedule = (
        RadialSchedule(tuple(_float_list(args.radii)), center)
        if args.radii
        else default_radial_schedule(binary, center)
    )
    est = estimate_radial_dimension(binary, schedule)
    if args.csv:
        rows = [
            (repr(r), n, repr(math.log(r)), repr(math.log(n)))
            for r, n in pixel_counts(binary, schedule)
        ]
        _emit_text(
            _csv_text(["size", "count", "ln_size", "ln_count"], rows), args.csv
        )
    _emit_json(
        {
            "command": "radialdim",
            "config": {
                "input": args.input,
                "threshold": args.threshold,
                "polarity": args.polarity,
                "center_mode": args.center,
                "center": list(center),
                "radii": list(schedule.radii),
            },
            "dimension": est.dimension,
            "r_squared": est.fit.r_squared,
            "stderr": est.fit.stderr_slope,
        },
        args.output,
    )
    return 0


def _cmd_series(args) -> int:
    rows = _read_table(args.manifest, ("year", "path"))
    base = os.path.dirname(os.path.abspath(args.manifest))
    entries = []
    for row in rows:
        if len(row) < 2:
            raise ValueError(f"{args.manifest}: every row must be year,path")
        year, path = row[0].strip(), row[1].strip()
        if not os.path.isabs(path):
            path = os.path.join(base, path)
        entries.append((year, path))

    def estimate(entry):
        year, path = entry
        try:
            binary = _load_binary(path, args.threshold, args.polarity)
            if args.method == "box":
                est = estimate_box_dimension(binary, default_schedule(binary))
            else:
                center = counting_center(binary, args.center)
                est = estimate_radial_dimension(
                    binary, default_radial_schedule(binary, center)
                )
        except ValueError as exc:
            raise ValueError(f"{path} (year {year}): {exc}") from None
        return est.dimension

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        dims = list(pool.map(estimate, entries))
    out_rows = [(year, repr(d)) for (year, _), d in zip(entries, dims)]
    _emit_text(_csv_text(["t", "d"], out_rows), args.output)
    return 0


def _cmd_fit_diff(args) -> int:
    series = _read_series(args.input)
    config = MultiStartConfig(
        starts=args.starts, max_iterations=args.max_iter, seed=args.seed
    )
    result = fit_difference_model(series, config)
    p = result.params
    _emit_json(
        {
            "command": "fit-diff",
            "config": {
                "input": args.input,
                "starts": config.starts,
                "max_iterations": config.max_iterations,
                "seed": config.seed,
            },
            "params": {"c1": p.c1, "c2": p.c2, "c3": p.c3, "c4": p.c4, "c5": p.c5},
            "l1_error": result.l1_error,
        },
        args.output,
    )
    return 0


def _cmd_fit_logistic(args) -> int:
    series = _read_series(args.input)
    result = fit_logistic(series, args.offset)
    p = result.params
    _emit_json(
        {
            "command": "fit-logistic",
            "config": {"input": args.input, "offset": args.offset},
            "params": {"K": p.K, "A": p.A, "r": p.r, "offset": p.offset},
            "rmse": result.rmse,
            "b": logistic_to_difference(p).b,
        },
        args.output,
    )
    return 0


def _cmd_stability(args) -> int:
    _emit_json(
        {
            "command": "stability",
            "config": {"b": args.b},
            "class": classify_stability(args.b).value,
        },
        args.output,
    )
    return 0


def _cmd_orbit(args) -> int:
    orbit = simulate_difference(args.b, args.x0, args.n)
    rows = [(i, repr(float(x))) for i, x in enumerate(orbit)]
    _emit_text(_csv_text(["step", "x"], rows), args.output)
    return 0


def _cmd_fit_pop(args) -> int:
    series = _read_population(args.input)
    model = fit_piecewise(series, _read_periods(args.periods))
    _emit_json(
        {
            "command": "fit-pop",
            "config": {"input": args.input, "periods": args.periods},
            "segments": [
                {
                    "kind": s.kind,
                    "t_start": s.t_start,
                    "t_end": s.t_end,
                    "a": s.a,
                    "b": s.b,
                }
                for s in model.segments
            ],
        },
        args.output,
    )
    return 0


def _cmd_compare_pop(args) -> int:
    if args.model_a and args.model_b:
        model_a = _read_model(args.model_a)
        model_b = _read_model(args.model_b)
        inputs = {"model_a": args.model_a, "model_b": args.model_b}
    elif args.csv_a and args.periods_a and args.csv_b and args.periods_b:
        model_a = fit_piecewise(_read_population(args.csv_a), _read_periods(args.periods_a))
        model_b = fit_piecewise(_read_population(args.csv_b), _read_periods(args.periods_b))
        inputs = {
            "csv_a": args.csv_a,
            "periods_a": args.periods_a,
            "csv_b": args.csv_b,
            "periods_b": args.periods_b,
        }
    else:
        raise ValueError(
            "pass either --model-a/--model-b or all of "
            "--csv-a/--periods-a/--csv-b/--periods-b"
        )
    report = compare_similarity(model_a, model_b, args.tolerance, args.panels)
    _emit_json(
        {
            "command": "compare-pop",
            "config": {**inputs, "tolerance": args.tolerance, "panels": args.panels},
            "averages_a": report.averages_a,
            "averages_b": report.averages_b,
            "alphas_a": report.alphas_a,
            "alphas_b": report.alphas_b,
            "verdicts": report.verdicts,
            "overall": report.overall,
        },
        args.output,
    )
    return 0


# ---------------------------------------------------------------- parser


def _add_raster_opts(p, threshold_required=False):
    if threshold_required:
        p.add_argument("--threshold", type=int, required=True,
                       help="binarization threshold (0..255)")
    else:
        p.add_argument("--threshold", type=int, default=128,
                       help="binarization threshold (default 128)")
    p.add_argument("--polarity", choices=["light", "dark"], default="light",
                   help="which side of the threshold is occupied (default light)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracdyn",
        description="Fractal dimension estimation and dimension-trend modeling",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("binarize", help="threshold a grayscale image to binary PGM")
    p.add_argument("input")
    _add_raster_opts(p, threshold_required=True)
    p.add_argument("-o", "--output", required=True, help="output PGM path")
    p.set_defaults(func=_cmd_binarize)

    p = sub.add_parser("crop", help="crop a binary image")
    p.add_argument("input")
    p.add_argument("--rect", required=True, help="window as x0,y0,w,h")
    _add_raster_opts(p)
    p.add_argument("-o", "--output", required=True, help="output PGM path")
    p.set_defaults(func=_cmd_crop)

    p = sub.add_parser("synth", help="generate a raster of known dimension")
    p.add_argument(
        "--kind",
        required=True,
        choices=[
            "sierpinski-triangle",
            "sierpinski-carpet",
            "filled-rect",
            "line",
            "disk",
            "random-density",
        ],
    )
    p.add_argument("--n", type=int, help="triangle side (power of two)")
    p.add_argument("--centered", action="store_true",
                   help="triangle: mirror into a 2n raster centered on the apex")
    p.add_argument("--depth", type=int, help="carpet depth (side 3^depth)")
    p.add_argument("--width", type=int, help="rect / random-density width")
    p.add_argument("--height", type=int, help="rect / random-density height")
    p.add_argument("--length", type=int, help="line length")
    p.add_argument("--radius", type=int, help="disk radius")
    p.add_argument("--p", type=float, help="random-density occupancy probability")
    p.add_argument("--seed", type=int, default=12345, help="random-density seed")
    p.add_argument("-o", "--output", required=True, help="output PGM path")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("boxdim", help="box-counting dimension of an image")
    p.add_argument("input")
    _add_raster_opts(p)
    p.add_argument("--sizes", help="comma-separated box sizes, largest first")
    p.add_argument("--csv", help="also write size,count,ln_size,ln_count CSV here")
    p.add_argument("-o", "--output", help="JSON report path (default stdout)")
    p.set_defaults(func=_cmd_boxdim)

    p = sub.add_parser("radialdim", help="radial dimension of an image")
    p.add_argument("input")
    _add_raster_opts(p)
    p.add_argument("--center", choices=["geometric", "centroid"], default="geometric")
    p.add_argument("--radii", help="comma-separated radii, smallest first")
    p.add_argument("--csv", help="also write size,count,ln_size,ln_count CSV here")
    p.add_argument("-o", "--output", help="JSON report path (default stdout)")
    p.set_defaults(func=_cmd_radialdim)

    p = sub.add_parser("series", help="dimension time series from a year,path manifest")
    p.add_argument("--manifest", required=True, help="CSV with header year,path")
    p.add_argument("--method", choices=["box", "radial"], default="box")
    _add_raster_opts(p)
    p.add_argument("--center", choices=["geometric", "centroid"], default="geometric",
                   help="counting center for --method radial")
    p.add_argument("--workers", type=int, default=1,
                   help="concurrent estimators (output order is manifest order)")
    p.add_argument("-o", "--output", help="t,d CSV path (default stdout)")
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("fit-diff", help="fit the short-term difference model")
    p.add_argument("input", help="CSV with header t,d")
    p.add_argument("--starts", type=int, default=8)
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("-o", "--output", help="JSON report path (default stdout)")
    p.set_defaults(func=_cmd_fit_diff)

    p = sub.add_parser("fit-logistic", help="fit the long-term logistic model")
    p.add_argument("input", help="CSV with header t,d")
    p.add_argument("--offset", type=float, default=1.0,
                   help="fixed additive lower bound (default 1.0)")
    p.add_argument("-o", "--output", help="JSON report path (default stdout)")
    p.set_defaults(func=_cmd_fit_logistic)

    p = sub.add_parser("stability", help="classify a logistic-map coefficient")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("-o", "--output", help="JSON report path (default stdout)")
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("orbit", help="simulate the logistic map x <- b(1-x)x")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--x0", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output", help="step,x CSV path (default stdout)")
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("fit-pop", help="fit a piecewise population model")
    p.add_argument("input", help="CSV with header year,population")
    p.add_argument("--periods", required=True,
                   help="JSON list of {t_start, t_end, kind}")
    p.add_argument("-o", "--output", help="JSON report path (default stdout)")
    p.set_defaults(func=_cmd_fit_pop)

    p = sub.add_parser("compare-pop", help="compare two regions' growth shapes")
    p.add_argument("--model-a", help="segment-model JSON (fit-pop output)")
    p.add_argument("--model-b", help="segment-model JSON (fit-pop output)")
    p.add_argument("--csv-a", help="population CSV for region A")
    p.add_argument("--periods-a", help="period JSON for region A")
    p.add_argument("--csv-b", help="population CSV for region B")
    p.add_argument("--periods-b", help="period JSON for region B")
    p.add_argument("--tolerance", type=float, default=1.0,
                   help="similar iff |ln(alpha_a/alpha_b)| <= ln(1+tolerance)")
    p.add_argument("--panels", type=int, default=DEFAULT_PANELS)
    p.add_argument("-o", "--output", help="JSON report path (default stdout)")
    p.set_defaults(func=_cmd_compare_pop)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
