import subprocess
import sys

import numpy as np
import pytest

import ledmosaic as lm

from conftest import random_mosaic

numba = pytest.importorskip("numba")


@pytest.fixture
def both_backends():
    original = lm.get_backend()
    yield
    lm.set_backend(original)


def test_backends_agree_on_all_methods(rng, both_backends):
    for phase in ("GBRG", "RGGB"):
        m = random_mosaic(rng, 40, 32, phase=phase)
        results = {}
        for backend in ("numba", "numpy"):
            lm.set_backend(backend)
            results[backend] = (lm.led_demosaic(m), lm.ha_demosaic(m),
                                lm.bilinear_demosaic(m))
        led_nb, ha_nb, bl_nb = results["numba"]
        led_np, ha_np, bl_np = results["numpy"]
        for k in range(3):
            # only the library exponential separates the backends
            assert np.abs(led_nb.plane(k) - led_np.plane(k)).max() <= 1e-9
            assert np.array_equal(ha_nb.plane(k), ha_np.plane(k))
            assert np.array_equal(bl_nb.plane(k), bl_np.plane(k))


def test_backend_env_flag_selects_numpy():
    code = ("import os; os.environ['LEDMOSAIC_BACKEND']='numpy'; "
            "import ledmosaic; print(ledmosaic.get_backend())")
    out = subprocess.run([sys.executable, "-c", code],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_backend_env_flag_selects_numba():
    code = ("import os; os.environ['LEDMOSAIC_BACKEND']='numba'; "
            "import ledmosaic; print(ledmosaic.get_backend())")
    out = subprocess.run([sys.executable, "-c", code],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numba"


def test_set_backend_validation(both_backends):
    with pytest.raises(ValueError):
        lm.set_backend("cuda")
    lm.set_backend("numpy")
    assert lm.get_backend() == "numpy"
    assert lm.set_worker_threads(4) == 1  # numpy backend is single threaded


def test_thread_setting_clamps(both_backends):
    lm.set_backend("numba")
    eff = lm.set_worker_threads(10 ** 6)
    assert 1 <= eff <= int(numba.config.NUMBA_NUM_THREADS)
    with pytest.raises(ValueError):
        lm.set_worker_threads(0)
    lm.set_worker_threads(1)
