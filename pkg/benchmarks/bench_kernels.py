"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--size 256] [--repeat 5]

Each kernel runs on a ``size x size`` array; the table reports the best
of ``repeat`` runs and the speed-up of the compiled backend. Outputs of
both backends are checked for bitwise equality first.
"""

import argparse
import timeit

import numpy as np

from wavefuse import _pykernels
from wavefuse.dtcwt import dualtree_filters
from wavefuse.filterbank import builtin_bank

try:
    from wavefuse import _ckernels
except ImportError:
    _ckernels = None


def cases(size, rng):
    x = rng.normal(size=(size, size))
    c = rng.normal(size=(size, size // 2))
    ints = rng.integers(0, 256, size=(size, size))
    low, high = _pykernels.lift53_forward(ints)
    db4 = builtin_bank("db4").h0
    qshift = dualtree_filters("qshift").higher_a.h0
    near_sym = dualtree_filters("qshift").level1_a.h1
    return [
        ("analyze db4", "analyze", (x, db4)),
        ("analyze qshift-14", "analyze", (x, qshift)),
        ("analyze near_sym-19", "analyze", (x, near_sym)),
        ("synthesize db4", "synthesize", (c, db4)),
        ("atrous db4 d=8", "atrous", (x, db4, 8)),
        ("atrous adjoint db4 d=8", "atrous_adjoint", (x, db4, 8)),
        ("lift 5/3 forward", "lift53_forward", (ints,)),
        ("lift 5/3 inverse", "lift53_inverse", (low, high)),
    ]


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(u, v) for u, v in zip(a, b))
    return np.array_equal(a, b)


def best(func, args, repeat):
    return min(timeit.repeat(lambda: func(*args), number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=256)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(0)
    if _ckernels is None:
        print("compiled extension not built; timing the numpy backend only")
    print(f"{'kernel':<24}{'numpy ms':>10}{'cython ms':>11}{'speed-up':>10}  bitwise")
    for label, name, fargs in cases(args.size, rng):
        py = best(getattr(_pykernels, name), fargs, args.repeat) * 1e3
        if _ckernels is None:
            print(f"{label:<24}{py:>10.2f}{'-':>11}{'-':>10}  -")
            continue
        cy = best(getattr(_ckernels, name), fargs, args.repeat) * 1e3
        equal = same(getattr(_pykernels, name)(*fargs), getattr(_ckernels, name)(*fargs))
        print(f"{label:<24}{py:>10.2f}{cy:>11.2f}{py / cy:>9.1f}x  {'yes' if equal else 'NO'}")


if __name__ == "__main__":
    main()
