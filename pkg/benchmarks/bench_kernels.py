"""Time each hot kernel under the compiled and the pure-Python backends.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from fgnproj._backend import available_backends
from fgnproj.gramians import build_gram


def cases(h=0.8):
    gram = np.ascontiguousarray(build_gram(h, "fgn", 400).entries)
    return {
        "rho_table(m=2000)": lambda k: k.rho_table(h, 2000),
        "gamma_ladder(n=400)": lambda k: k.gamma_ladder(k.rho_table(h, 400), 400, 1e-14),
        "bilateral_ladder(j=200)": lambda k: k.bilateral_ladder(
            k.rho_table(h, 401), k.gamma_ladder(k.rho_table(h, 401), 401, 1e-14)[0], 200, 1e-14),
        "cholesky_lower(n=400)": lambda k: k.cholesky_lower(gram),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the Python backend only")
    names = list(backends)
    print(f"{'kernel':28s}" + "".join(f"{n:>14s}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases().items():
        times = []
        for name in names:
            k = backends[name]
            number = 1
            best = min(timeit.repeat(lambda: fn(k), number=number, repeat=args.repeat)) / number
            times.append(best)
        row = f"{label:28s}" + "".join(f"{t * 1e3:12.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
