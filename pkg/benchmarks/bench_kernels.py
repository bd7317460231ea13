"""Compiled vs pure-Python float kernels.

    python benchmarks/bench_kernels.py [--simplices 400] [--dim 2] [--ambient 3] [--radii 64]

Prints best-of-N wall times per kernel and checks both backends agree.
"""
import argparse
import timeit

import numpy as np

from fillvol import _pykernels

try:
    from fillvol import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def workloads(args):
    rng = np.random.default_rng(args.seed)
    arr = rng.normal(size=(args.simplices, args.dim + 1, args.ambient))
    w = rng.integers(1, 3, size=args.simplices).astype(np.float64)
    center = np.zeros(args.ambient)
    radii = np.linspace(0.05, 3.0, args.radii)
    return {
        "simplex_volumes": lambda k: k.simplex_volumes(arr),
        "box_volumes": lambda k: k.box_volumes(arr, center - 0.7, center + 0.7),
        "growth_profile": lambda k: k.growth_profile(arr, w, center, radii),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--simplices", type=int, default=400)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--ambient", type=int, default=3)
    p.add_argument("--radii", type=int, default=64)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    print(f"{args.simplices} {args.dim}-simplices in R^{args.ambient}, {args.radii} radii")
    print(f"{'kernel':<18}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, fn in workloads(args).items():
        t_py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{name:<18}{t_py:>12.4f}{'n/a':>12}{'':>10}")
            continue
        t_c = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat))
        if not np.allclose(fn(_pykernels), fn(_ckernels), rtol=1e-12, atol=1e-14):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<18}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
