"""Bayer demosaicking by logistic edge sensing, with baselines and a harness.

The package reconstructs full RGB images from single-sensor color filter
array mosaics.  The main method blends horizontal/vertical (and diagonal /
anti-diagonal) gradient-corrected estimates with a logistic weight on the
difference of directional variations; Hamilton-Adams directional selection
and per-channel bilinear interpolation are included as baselines, together
with PSNR/cPSNR/SSIM metrics and a dataset evaluation harness.
"""

from . import imgio
from ._version import __version__
from ._backend import (get_backend, set_backend, set_worker_threads,
                       current_worker_threads)
from .cfa import (MIN_MOSAIC_SIDE, BayerMosaic, BayerPhase, CANONICAL_LAYOUT,
                  CfaLayout, RgbImage, SiteKind, classify_site, mosaic)
from .baselines import (DirectionalStats, bilinear_demosaic, ha_chroma,
                        ha_demosaic, ha_green, hv_derivatives)
from .led import (ChromaPlane, LedParams, chroma_at_green_sites,
                  chroma_at_opposite_sites, diag_derivatives,
                  fallback_boundary, led_demosaic, led_green, logistic_weight)
from .metrics import MetricReport, cpsnr, evaluate, psnr, shave, ssim
from .harness import (EvaluationReport, ExperimentConfig, run_experiment,
                      sweep_k)

__all__ = [
    "__version__", "imgio",
    "get_backend", "set_backend", "set_worker_threads",
    "current_worker_threads",
    "MIN_MOSAIC_SIDE", "BayerMosaic", "BayerPhase", "CANONICAL_LAYOUT",
    "CfaLayout", "RgbImage", "SiteKind", "classify_site", "mosaic",
    "DirectionalStats", "bilinear_demosaic", "ha_chroma", "ha_demosaic",
    "ha_green", "hv_derivatives",
    "ChromaPlane", "LedParams", "chroma_at_green_sites",
    "chroma_at_opposite_sites", "diag_derivatives", "fallback_boundary",
    "led_demosaic", "led_green", "logistic_weight",
    "MetricReport", "cpsnr", "evaluate", "psnr", "shave", "ssim",
    "EvaluationReport", "ExperimentConfig", "run_experiment", "sweep_k",
]
