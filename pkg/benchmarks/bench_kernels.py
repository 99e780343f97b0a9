"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported directly, so the comparison does not depend on
SIXJ_PURE_PYTHON. Each row also reports the largest difference between the
two results.
"""
import argparse
import math
import timeit

import numpy as np

from sixj import _pykernels
from sixj.exact import SixJArguments
from sixj.tetra import j12_caustics, sphere_data

try:
    from sixj import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _lune_case():
    args = SixJArguments(20, 30, 40, 50, 30, 45)
    sd = sphere_data(args)
    c = j12_caustics(args.J1, args.J2, args.J3, args.J4, args.J23)
    return sd.params, sd.m, c[1] - sd.j12_avg_shifted


def cases():
    params, a, b = _lune_case()
    rng = np.random.default_rng(1)
    diag = rng.normal(size=120)
    off = rng.normal(size=119)
    return {
        "lune_integral (20,30,40,50)": lambda k: k.lune_integral(k.KIND_6J, params, a, b, 1, k.MODE_ARCCOS, 1e-10)[0],
        "wigner_d j=100 row": lambda k: sum(k.wigner_d(200, 2 * m, 40, 1.1) for m in range(-100, 101)),
        "tql2 n=120": lambda k: float(k.tql2(diag, off)[0][0]),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ns = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return
    print(f"{'kernel':32s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speed-up':>9s} {'max diff':>10s}")
    for name, fn in cases().items():
        times = {}
        for label, mod in (("py", _pykernels), ("c", _ckernels)):
            n = 1 if label == "py" else 5
            t = min(timeit.repeat(lambda: fn(mod), number=n, repeat=ns.repeat)) / n
            times[label] = t * 1e3
        diff = abs(fn(_pykernels) - fn(_ckernels))
        print(f"{name:32s} {times['py']:12.3f} {times['c']:12.3f} {times['py'] / times['c']:8.1f}x {diff:10.2e}")


if __name__ == "__main__":
    main()
