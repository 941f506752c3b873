"""Compare the numba and pure-numpy kernel backends.

    python benchmarks/bench_kernels.py [--n 200000] [--repeat 5]
"""
import argparse
import time

import numpy as np

from hp3flat import _kernels
from hp3flat.immersions import immersion_spec, specialize_isotropy2


def best_of(func, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    spec = immersion_spec(specialize_isotropy2("I", 1.2, 0.05, 1 + 1j))
    zs = 10 * (rng.uniform(-1, 1, args.n) + 1j * rng.uniform(-1, 1, args.n))
    x = rng.standard_normal((args.n, 8)) + 1j * rng.standard_normal((args.n, 8))
    y = rng.standard_normal((args.n, 8)) + 1j * rng.standard_normal((args.n, 8))
    th = rng.uniform(np.pi / 3, np.pi / 2, args.n)
    r = rng.uniform(0, 1, args.n)

    cases = {
        "lift_batch": ("lift_batch", (spec.freqs, spec.amps, zs, 1, 0)),
        "pairing_batch": ("pairing_batch", (x, y)),
        "hermitian_batch": ("hermitian_batch", (x, y)),
        "gamma3_mask": ("gamma3_mask", (th, r)),
    }
    print(f"n = {args.n}, best of {args.repeat}; numba available: {_kernels.HAVE_NUMBA}")
    print(f"{'kernel':<18}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}{'max diff':>12}")
    for name, (base, fargs) in cases.items():
        f_np = getattr(_kernels, base + "_numpy")
        f_nb = getattr(_kernels, base + "_numba")
        out_np = f_np(*fargs)
        out_nb = f_nb(*fargs)  # compiles on first call
        diff = float(np.max(np.abs(np.asarray(out_np, dtype=complex) - np.asarray(out_nb, dtype=complex))))
        t_np = best_of(f_np, fargs, args.repeat)
        t_nb = best_of(f_nb, fargs, args.repeat)
        print(f"{name:<18}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>10.2f}{diff:>12.2e}")


if __name__ == "__main__":
    main()
