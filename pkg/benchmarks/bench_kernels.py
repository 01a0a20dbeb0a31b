"""Time the jitted kernels against their pure Python ``.py_func`` versions.

    python3 benchmarks/bench_kernels.py [--repeat N]

The ``.py_func`` column runs only the outer function in Python; helpers it
calls stay compiled.  Under ``CENTERKIT_DISABLE_NUMBA=1`` both columns run
the same plain Python code.
"""
import argparse
import math
import random
import timeit

from centerkit import _jit, kernels
from centerkit.arrangement import bounded_faces, center_critical_points
from centerkit.corpus import four_lines
from centerkit.melnikov import GAUSS_NODES, GAUSS_WEIGHTS, _poly_arrays, trace_oval
from centerkit.tangent import random_form


def cases():
    arr = four_lines((1, 2, 1, 3))
    face = bounded_faces(arr)[0]
    A, B, C, N = arr.float_arrays()
    c = center_critical_points(arr, [face]).centers[0]
    t = c.value / 2
    level = math.log(abs(t))
    oval = trace_oval(arr, face, t)
    ex, ey, pc, qc = _poly_arrays(random_form(random.Random(0), arr.d))
    x0, y0 = oval.xs[0], oval.ys[0]
    return {
        "center_newton": (kernels.center_newton, (A, B, C, N, c.x + 0.01, c.y, 1e-13, 200)),
        "trace_level_loop": (kernels.trace_level_loop, (A, B, C, N, c.x, c.y, level, x0, y0, oval.step, 200000)),
        "arc_integral": (
            kernels.arc_integral,
            (A, B, C, ex, ey, pc, qc, N, oval.xs, oval.ys, oval.n_points, level, GAUSS_NODES, GAUSS_WEIGHTS, 1),
        ),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"numba active: {_jit.HAS_NUMBA}")
    print(f"{'kernel':<18} {'jit [ms]':>10} {'py_func [ms]':>13} {'speedup':>8}")
    for name, (fn, fargs) in cases().items():
        fn(*fargs)  # compile outside the timing
        fast = min(timeit.repeat(lambda: fn(*fargs), number=1, repeat=args.repeat))
        slow = min(timeit.repeat(lambda: fn.py_func(*fargs), number=1, repeat=args.repeat))
        print(f"{name:<18} {fast * 1e3:>10.3f} {slow * 1e3:>13.3f} {slow / fast:>8.1f}")


if __name__ == "__main__":
    main()
