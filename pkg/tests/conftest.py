import os
import sys
from pathlib import Path

# Allow an 8-thread pool for the determinism tests even on smaller machines;
# must happen before numba is first imported.
os.environ.setdefault("NUMBA_NUM_THREADS", "8")

sys.path.insert(0, str(Path(__file__).parent))

import numpy as np
import pytest

import ledmosaic as lm


def random_rgb(rng, h, w, full_scale=255.0, integer=False):
    if integer:
        planes = [rng.integers(0, int(full_scale) + 1, (h, w)).astype(np.float64)
                  for _ in range(3)]
    else:
        planes = [rng.uniform(0.0, full_scale, (h, w)) for _ in range(3)]
    return lm.RgbImage(planes[0], planes[1], planes[2], full_scale)


def random_mosaic(rng, h, w, phase="GBRG", full_scale=255.0, integer=False):
    layout = lm.CfaLayout(lm.BayerPhase[phase])
    if integer:
        data = rng.integers(0, int(full_scale) + 1, (h, w)).astype(np.float64)
    else:
        data = rng.uniform(0.0, full_scale, (h, w))
    return lm.BayerMosaic(data, layout, full_scale)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def _dataset_dir(env_name, default_subdir):
    env = os.environ.get(env_name)
    candidates = [Path(env)] if env else []
    candidates.append(Path(__file__).resolve().parent.parent / "data" / default_subdir)
    for cand in candidates:
        if cand.is_dir():
            return cand
    return None


def kodak_dir():
    return _dataset_dir("LEDMOSAIC_KODAK_DIR", "kodak")


def mcm_dir():
    return _dataset_dir("LEDMOSAIC_MCM_DIR", "mcm")


def require_dataset(d, name, min_images):
    if d is None:
        pytest.skip(f"{name} dataset not available (set LEDMOSAIC_{name.upper()}_DIR "
                    f"or place it under data/{name.lower()})")
    from ledmosaic.harness import list_dataset_images
    files = list_dataset_images(d)
    if len(files) < min_images:
        pytest.skip(f"{name} dataset at {d} has {len(files)} images, "
                    f"need {min_images}")
    return d
