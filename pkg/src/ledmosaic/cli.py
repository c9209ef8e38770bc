"""Command-line front end: mosaic simulation, demosaicking, evaluation, sweeps.

Exit codes: 0 on success, 1 on runtime failure (bad file, too-small image),
2 on usage errors (argparse).  Every subcommand prints its effective
configuration, defaults resolved, before doing any work.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import _backend, baselines, harness, imgio, led, metrics
from ._version import __version__
from .cfa import BayerMosaic, BayerPhase, CfaLayout, RgbImage, mosaic

PHASE_NAMES = [p.name for p in BayerPhase]


def _positive_float(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not val > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return val


def _margin(text: str) -> int:
    val = int(text)
    if val < led.MIN_BOUNDARY_MARGIN:
        raise argparse.ArgumentTypeError(
            f"boundary margin must be >= {led.MIN_BOUNDARY_MARGIN}")
    return val


def _print_config(name: str, cfg: dict) -> None:
    print(f"{name} config: {json.dumps(cfg, sort_keys=True)}")


def _apply_threads(args) -> int:
    if getattr(args, "threads", None):
        return _backend.set_worker_threads(args.threads)
    return _backend.apply_thread_env()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ledmosaic",
        description="Bayer demosaicking by logistic edge sensing, with "
                    "baselines and an evaluation harness.")
    parser.add_argument("--version", action="version",
                        version=f"ledmosaic {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mosaic", help="sample an RGB image through the CFA")
    p.add_argument("input", type=Path)
    p.add_argument("--phase", choices=PHASE_NAMES, default="GBRG")
    p.add_argument("--out", type=Path, required=True,
                   help="output path (.ledm packed dump, or .pgm/.png plane)")

    p = sub.add_parser("demosaic", help="reconstruct RGB from a mosaic "
                                        "(RGB input runs the round trip)")
    p.add_argument("input", type=Path)
    p.add_argument("--method", choices=harness.METHOD_NAMES, default="led")
    p.add_argument("--k", type=_positive_float, default=0.05)
    p.add_argument("--boundary-margin", type=_margin, default=4)
    p.add_argument("--phase", choices=PHASE_NAMES, default="GBRG",
                   help="CFA phase for RGB round trips or raster mosaics")
    p.add_argument("--shave", type=int, default=4,
                   help="metric crop width in round-trip mode")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--threads", type=int)

    p = sub.add_parser("eval", help="evaluate methods over an image directory")
    p.add_argument("--dataset", type=Path, required=True)
    p.add_argument("--methods", default="ha,led",
                   help="comma-separated subset of bilinear,ha,led")
    p.add_argument("--k", type=_positive_float, default=0.05)
    p.add_argument("--boundary-margin", type=_margin, default=4)
    p.add_argument("--phase", choices=PHASE_NAMES, default="GBRG")
    p.add_argument("--shave", type=int, default=4)
    p.add_argument("--timing-repeats", type=int, default=1)
    p.add_argument("--out", type=Path,
                   help="report base path; writes <out>.csv and <out>.json")
    p.add_argument("--threads", type=int)

    p = sub.add_parser("sweep-k", help="mean cPSNR of the edge-sensing "
                                       "method over a grid of k values")
    p.add_argument("--dataset", type=Path, required=True)
    p.add_argument("--k-min", type=_positive_float, default=0.01)
    p.add_argument("--k-max", type=_positive_float, default=1.0)
    p.add_argument("--k-step", type=_positive_float, default=0.01)
    p.add_argument("--boundary-margin", type=_margin, default=4)
    p.add_argument("--phase", choices=PHASE_NAMES, default="GBRG")
    p.add_argument("--shave", type=int, default=4)
    p.add_argument("--out", type=Path, help="CSV output path")
    p.add_argument("--threads", type=int)
    return parser


def _cmd_mosaic(args) -> int:
    layout = CfaLayout(BayerPhase[args.phase])
    _print_config("mosaic", {"input": str(args.input), "phase": args.phase,
                             "out": str(args.out)})
    image = imgio.read_rgb(args.input)
    mos = mosaic(image, layout)
    imgio.write_mosaic(args.out, mos)
    print(f"wrote {mos.width}x{mos.height} mosaic to {args.out}")
    return 0


def _demosaic_fn(args):
    params = led.LedParams(k=args.k, boundary_margin=args.boundary_margin)
    if args.method == "bilinear":
        return lambda m: baselines.bilinear_demosaic(m)
    if args.method == "ha":
        return lambda m: baselines.ha_demosaic(m, params.boundary_margin)
    return lambda m: led.led_demosaic(m, params)


def _cmd_demosaic(args) -> int:
    threads = _apply_threads(args)
    layout = CfaLayout(BayerPhase[args.phase])
    _print_config("demosaic", {
        "input": str(args.input), "method": args.method, "k": args.k,
        "boundary_margin": args.boundary_margin, "phase": args.phase,
        "shave": args.shave, "out": str(args.out), "threads": threads,
        "backend": _backend.get_backend()})

    reference = None
    if args.input.suffix.lower() == ".ledm":
        mos = imgio.read_mosaic(args.input)
    else:
        arr, fs = imgio.read_raster(args.input)
        if arr.ndim == 2:
            mos = BayerMosaic(arr, layout, fs)
        else:
            reference = RgbImage(arr[:, :, 0], arr[:, :, 1], arr[:, :, 2], fs)
            mos = mosaic(reference, layout)
            print("round-trip mode: input mosaicked before reconstruction")

    fn = _demosaic_fn(args)
    t0 = time.perf_counter()
    out = fn(mos)
    elapsed = time.perf_counter() - t0
    imgio.write_rgb(args.out, out)
    print(f"demosaicked {mos.width}x{mos.height} with {args.method} "
          f"in {elapsed:.4f} s -> {args.out}")
    if reference is not None:
        rep = metrics.evaluate(reference, out, args.shave)
        print(f"round-trip metrics (shave {args.shave}): "
              f"cPSNR {rep.cpsnr:.4f} dB, SSIM {rep.ssim:.6f}")
    return 0


def _make_experiment_config(args) -> harness.ExperimentConfig:
    methods = tuple(s.strip() for s in args.methods.split(",") if s.strip()) \
        if hasattr(args, "methods") else ("led",)
    return harness.ExperimentConfig(
        dataset_dir=args.dataset,
        layout=CfaLayout(BayerPhase[args.phase]),
        methods=methods,
        led_params=led.LedParams(k=getattr(args, "k", 0.05),
                                 boundary_margin=args.boundary_margin),
        shave=args.shave,
        timing_repeats=getattr(args, "timing_repeats", 1),
        output=getattr(args, "out", None),
    )


def _cmd_eval(args) -> int:
    threads = _apply_threads(args)
    cfg = _make_experiment_config(args)
    _print_config("eval", {**cfg.to_dict(), "threads": threads,
                           "backend": _backend.get_backend()})
    report = harness.run_experiment(cfg)  # saves to cfg.output when set
    _print_report_table(report)
    if args.out:
        base = Path(args.out)
        print(f"reports written to {base.with_suffix('.csv')} "
              f"and {base.with_suffix('.json')}")
    failed = sum(1 for r in report.rows if r.error is not None)
    return 1 if failed else 0


def _print_report_table(report: harness.EvaluationReport) -> None:
    print(f"{'image':<24} {'method':<9} {'cPSNR':>9} {'SSIM':>8} {'time(s)':>9}")
    for r in report.rows:
        if r.error is not None:
            print(f"{r.image:<24} {r.method:<9} error: {r.error}")
            continue
        c = "inf" if r.metrics.cpsnr == float("inf") else f"{r.metrics.cpsnr:.4f}"
        print(f"{r.image:<24} {r.method:<9} {c:>9} {r.metrics.ssim:>8.4f} "
              f"{r.wall_time_s:>9.4f}")
    for method, agg in report.aggregates.items():
        parts = []
        if agg["mean_cpsnr"] is not None:
            parts.append(f"mean cPSNR: {agg['mean_cpsnr']:.4f} dB")
        if agg["mean_ssim"] is not None:
            parts.append(f"mean SSIM: {agg['mean_ssim']:.4f}")
        if agg["median_time_s"] is not None:
            parts.append(f"median time: {agg['median_time_s']:.4f} s")
        if agg["infinite_cpsnr_rows"]:
            parts.append(f"infinite-cPSNR rows: {agg['infinite_cpsnr_rows']}")
        print(f"[{method}] " + ", ".join(parts))
    for w in report.warnings:
        print(f"warning: {w}")


def _cmd_sweep_k(args) -> int:
    threads = _apply_threads(args)
    cfg = _make_experiment_config(args)
    _print_config("sweep-k", {**cfg.to_dict(), "k_min": args.k_min,
                              "k_max": args.k_max, "k_step": args.k_step,
                              "threads": threads,
                              "backend": _backend.get_backend()})
    result = harness.sweep_k(cfg, args.k_min, args.k_max, args.k_step)
    print(f"{'k':>8} {'mean cPSNR':>12}")
    for k, c in result["rows"]:
        print(f"{k:>8.4f} {c:>12.4f}")
    print(f"best k: {result['argmax_k']:.4f} "
          f"(mean cPSNR {result['best_cpsnr']:.4f} dB)")
    if args.out:
        lines = ["k,mean_cpsnr"]
        lines += [f"{k!r},{c!r}" for k, c in result["rows"]]
        lines.append(f"# argmax_k={result['argmax_k']!r}")
        Path(args.out).write_text("\n".join(lines) + "\n")
        print(f"sweep table written to {args.out}")
    return 0


_COMMANDS = {
    "mosaic": _cmd_mosaic,
    "demosaic": _cmd_demosaic,
    "eval": _cmd_eval,
    "sweep-k": _cmd_sweep_k,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
