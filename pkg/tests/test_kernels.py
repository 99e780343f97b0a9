import math
import os
import subprocess
import sys

import numpy as np
import pytest

from sixj import _pykernels, kernels
from sixj.exact import SixJArguments
from sixj.errors import ConvergenceFailure
from sixj.tetra import j12_caustics, sphere_data

try:
    from sixj import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_switch():
    env = dict(os.environ, SIXJ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import sixj; print(sixj.BACKEND)"], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
def test_lune_integral_parity():
    a = SixJArguments(20, 30, 40, 50, 30, 45)
    sd = sphere_data(a)
    lo, hi = j12_caustics(a.J1, a.J2, a.J3, a.J4, a.J23)
    k_hi = hi - sd.j12_avg_shifted
    for mod in (kernels.MODE_ARCCOS,):
        p = _pykernels.lune_integral(kernels.KIND_6J, sd.params, sd.m, k_hi, 1, mod, 1e-11)[0]
        c = _ckernels.lune_integral(kernels.KIND_6J, sd.params, sd.m, k_hi, 1, mod, 1e-11)[0]
        assert c == pytest.approx(p, abs=1e-12)
    params = (10.5, -2.0, math.cos(1.2), math.sin(1.2))
    for sub in (0, 1, 2):
        p = _pykernels.lune_integral(kernels.KIND_D, params, 3.0, 9.0, sub, kernels.MODE_ARCCOS, 1e-11)[0]
        c = _ckernels.lune_integral(kernels.KIND_D, params, 3.0, 9.0, sub, kernels.MODE_ARCCOS, 1e-11)[0]
        assert c == pytest.approx(p, abs=1e-12)


@needs_ext
def test_wigner_d_parity():
    # d^100_{20,-30}(1.1) from Wigner's sum at 40 digits (mpmath)
    ref = -0.06874083532974859175570394390682521725211
    for mod in (_pykernels, _ckernels):
        assert mod.wigner_d(200, 40, -60, 1.1) == pytest.approx(ref, abs=1e-13)
    for args in [(31, 5, -7, 2.9), (1, 1, -1, 0.3)]:
        assert _ckernels.wigner_d(*args) == pytest.approx(_pykernels.wigner_d(*args), abs=1e-14)


@needs_ext
def test_tql2_parity():
    rng = np.random.default_rng(0)
    d, e = rng.normal(size=30), rng.normal(size=29)
    wp, zp = _pykernels.tql2(d, e)
    wc, zc = _ckernels.tql2(d, e)
    assert np.allclose(wp, wc, atol=1e-13)
    assert np.allclose(np.abs(zp), np.abs(zc), atol=1e-12)


@pytest.mark.parametrize("mod", [_pykernels] + ([_ckernels] if _ckernels else []))
def test_tql2_against_numpy(mod):
    rng = np.random.default_rng(1)
    d, e = rng.normal(size=25), rng.normal(size=24)
    w, z = mod.tql2(d, e)
    A = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    assert np.allclose(np.sort(w), np.linalg.eigvalsh(A), atol=1e-12)
    z = np.asarray(z)
    assert np.allclose(A @ z, z * np.asarray(w), atol=1e-11)


@pytest.mark.parametrize("mod", [_pykernels] + ([_ckernels] if _ckernels else []))
def test_tql2_iteration_cap(mod):
    rng = np.random.default_rng(2)
    with pytest.raises(ConvergenceFailure) as exc:
        mod.tql2(rng.normal(size=20), rng.normal(size=19), max_iter=0)
    assert exc.value.iterations is not None
