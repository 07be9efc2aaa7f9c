"""Compare the compiled and pure-Python elimination backends.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--seed 0]
"""

import argparse
import random
import statistics
import time

from frobtorsor import linalg
from frobtorsor.algebra import FieldSpec
from frobtorsor.descent import build_gl2_char2
from frobtorsor.homsolver import solve_hom
from frobtorsor.saturation import random_gl2

CASES = [
    ("GF(2) 400x400", FieldSpec(2), 400, 400),
    ("GF(2) 2000x200", FieldSpec(2), 2000, 200),
    ("GF(3) 200x200", FieldSpec(3), 200, 200),
    ("GF(65521) 150x150", FieldSpec(65521), 150, 150),
    ("GF(4) 150x150", FieldSpec(2, 2), 150, 150),
    ("GF(81) 120x120", FieldSpec(3, 4), 120, 120),
]


def random_rows(rng, field, nrows, ncols):
    return [[rng.randrange(field.q) for _ in range(ncols)] for _ in range(nrows)]


def timed(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    backends = linalg.AVAILABLE
    if "cython" not in backends:
        print("compiled kernels not built; only the python backend is available")
    print(f"{'case':<22}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")

    def row(label, make):
        times = {}
        results = set()
        for b in backends:
            with linalg.using_backend(b):
                times[b], res = timed(make, args.repeat)
            results.add(repr(res))
        assert len(results) == 1, f"backends disagree on {label}"
        speed = f"{times['python'] / times['cython']:>9.1f}x" if "cython" in times else ""
        print(f"{label:<22}" + "".join(f"{times[b] * 1e3:>10.1f}ms" for b in backends) + speed)

    for label, field, nrows, ncols in CASES:
        rows = random_rows(rng, field, nrows, ncols)
        row(label, lambda: linalg.rref([list(r) for r in rows], ncols, field))

    specs = [random_gl2(rng, FieldSpec(2), 4, rng.randint(0, 7), "a") for _ in range(20)]
    mats = [build_gl2_char2(s) for s in specs]
    row("20 GL2 hom solves", lambda: [solve_hom(A, check_invertible=False).dimension for A in mats])


if __name__ == "__main__":
    main()
