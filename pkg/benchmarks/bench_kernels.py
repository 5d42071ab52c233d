#!/usr/bin/env python3
"""Time the hot kernels under numba and under the numpy fallback.

Each backend runs in its own interpreter because the switch
(CYLWELL_DISABLE_NUMBA) is read at import time.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def worker(repeat):
    import numpy as np

    from cylwell import backend, kernels
    from cylwell.bessel import ZeroCache
    from cylwell.spectrum import WellGeometry, enumerate_levels
    from cylwell.verify import fd_radial_eigenvalues

    x = np.linspace(0.0, 200.0, 200_000)

    # compile outside the timed region
    t0 = time.perf_counter()
    kernels.jn_array(3, x[:10])
    fd_radial_eigenvalues(0, 1.0, 100, 1)
    warmup = time.perf_counter() - t0

    def zeros():
        cache = ZeroCache()
        for n in range(20):
            cache.zero(n, 50)

    timings = {
        "warmup (jit compile)": warmup,
        "J_3 on 2e5 points": _best(lambda: kernels.jn_array(3, x), repeat),
        "J_40 on 2e5 points": _best(lambda: kernels.jn_array(40, x), repeat),
        "zeros n<20, k<=50": _best(zeros, repeat),
        "FD n=0, N=2000, 10 eigs": _best(lambda: fd_radial_eigenvalues(0, 1.0, 2000, 10), repeat),
        "levels E<=2000": _best(lambda: enumerate_levels(WellGeometry(), 2000.0), repeat),
    }
    print(json.dumps({"backend": backend(), "timings": timings}))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        worker(args.repeat)
        return

    results = {}
    for flag in ("0", "1"):
        env = dict(os.environ, CYLWELL_DISABLE_NUMBA=flag)
        out = subprocess.run(
            [sys.executable, __file__, "--worker", "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        ).stdout
        data = json.loads(out.strip().splitlines()[-1])
        results[data["backend"]] = data["timings"]

    names = list(results["numpy"])
    width = max(len(n) for n in names)
    print(f"{'kernel':<{width}}  {'numba [s]':>10}  {'numpy [s]':>10}  {'speedup':>8}")
    for name in names:
        nb = results.get("numba", {}).get(name, float("nan"))
        npy = results["numpy"][name]
        ratio = npy / nb if nb > 0 else float("nan")
        print(f"{name:<{width}}  {nb:10.4f}  {npy:10.4f}  {ratio:8.1f}")


if __name__ == "__main__":
    main()
