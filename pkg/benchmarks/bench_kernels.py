"""Compare the numba kernels with the numpy fallback.

Kernel timings call both modules directly. The end-to-end timing runs a
``solve_joint`` workload in a subprocess per backend, toggled through
``OAMUCA_DISABLE_NUMBA``.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from oamuca import _kernels_numba as nb
from oamuca import _kernels_numpy as npk

WORKLOAD = """
import time
from oamuca.channel import LinkBudget, UcaLinkGeometry
from oamuca.optimizer import RadiusConstraint, solve_joint
g = UcaLinkGeometry(16, 0.5, 0.5, 10.0)
b = LinkBudget.from_snr_db(20.0, bandwidth_hz=2e7)
solve_joint(g, b, RadiusConstraint())
t0 = time.perf_counter()
for d in (5.0, 10.0, 20.0, 50.0):
    solve_joint(UcaLinkGeometry(16, 0.5, 0.5, d), b, RadiusConstraint())
print(time.perf_counter() - t0)
"""


def best_of(fn, repeat):
    fn()  # warm-up, also triggers JIT compilation
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_cases():
    rng = np.random.default_rng(0)
    xs = np.sort(rng.uniform(0.0, 40.0, 4000))
    v = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    return [
        ("bessel_table nmax=16, 4000 args", lambda k: k.bessel_table(16, xs)),
        ("bessel_table nmax=128, 4000 args", lambda k: k.bessel_table(128, xs)),
        ("dft n=256", lambda k: k.dft(v)),
    ]


def end_to_end(disable):
    env = dict(os.environ, OAMUCA_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    print(f"{'case':<36}{'numba [ms]':>12}{'numpy [ms]':>12}{'ratio':>8}")
    for name, call in kernel_cases():
        a = np.asarray(call(nb))
        b = np.asarray(call(npk))
        assert np.allclose(a, b, rtol=1e-10, atol=1e-11), name
        t_nb = best_of(lambda: call(nb), args.repeat)
        t_np = best_of(lambda: call(npk), args.repeat)
        print(f"{name:<36}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}{t_np / t_nb:>8.1f}")

    t_nb = end_to_end(False)
    t_np = end_to_end(True)
    name = "solve_joint N=16, 4 distances"
    print(f"{name:<36}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}{t_np / t_nb:>8.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
