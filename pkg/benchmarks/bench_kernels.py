"""Compiled vs pure-Python modular Gauss-Jordan, plus one end-to-end solve.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from gencore import kernels
from gencore.linsolve import primes

# sizes of the vectorized systems behind an n x n inverse: (3n^2 x 2n^2 roughly)
SHAPES = [(48, 33), (108, 73), (216, 145), (300, 201)]


def _random_system(rng, shape, p):
    return rng.integers(0, p, size=shape, dtype=np.int64)


def bench_kernel(repeat: int):
    p = primes(1)[0]
    rng = np.random.default_rng(0)
    rows = []
    for shape in SHAPES:
        M = _random_system(rng, shape, p)
        ncoef = shape[1] - 1
        res = {}
        for name, fn in (("python", kernels.rref_mod_python), ("cython", kernels.rref_mod_compiled)):
            if fn is None:
                continue
            best = min(timeit.repeat(lambda: fn(M.copy(), p, ncoef), number=1, repeat=repeat))
            res[name] = best
        # both backends must agree before their timings mean anything
        if kernels.rref_mod_compiled is not None:
            A, B = M.copy(), M.copy()
            assert kernels.rref_mod_python(A, p, ncoef) == kernels.rref_mod_compiled(B, p, ncoef)
            assert np.array_equal(A, B)
        rows.append((shape, res))
    return rows


def bench_end_to_end():
    code = (
        "import time\n"
        "from gencore.classical import equation_inverse\n"
        "from gencore.generators import random_instance\n"
        "from gencore.kernels import BACKEND\n"
        "ms = [random_instance(11, c, 'conjugate_transpose').matrix for c in range(20)]\n"
        "t = time.perf_counter()\n"
        "for m in ms:\n"
        "    equation_inverse(m, 'moore_penrose')\n"
        "print(BACKEND, time.perf_counter() - t)\n"
    )
    out = {}
    for pure in ("0", "1"):
        env = dict(os.environ, GENCORE_PURE_PYTHON=pure)
        r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, secs = r.stdout.split()
        out[backend] = float(secs)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'shape':>12} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>8}")
    for shape, res in bench_kernel(args.repeat):
        py, cy = res.get("python"), res.get("cython")
        speed = f"{py / cy:8.1f}" if py and cy else "       -"
        cy_s = f"{cy * 1e3:12.2f}" if cy else f"{'n/a':>12}"
        print(f"{str(shape):>12} {py * 1e3:12.2f} {cy_s} {speed}")
    e2e = bench_end_to_end()
    print("20 Moore-Penrose solves via the equation solver (n <= 6):")
    for backend, secs in sorted(e2e.items()):
        print(f"  {backend:>6}: {secs:.2f} s")


if __name__ == "__main__":
    main()
