"""Hot-kernel dispatch: compiled extension when built, pure Python otherwise.

Set ``SIXJ_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

if os.environ.get("SIXJ_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND
KIND_6J = _pykernels.KIND_6J
KIND_D = _pykernels.KIND_D
MODE_ARCCOS = _pykernels.MODE_ARCCOS
MODE_ARCCOSH = _pykernels.MODE_ARCCOSH

lune_integral = _impl.lune_integral
lune_cos_argument = _impl.lune_cos_argument
wigner_d = _impl.wigner_d
tql2 = _impl.tql2
