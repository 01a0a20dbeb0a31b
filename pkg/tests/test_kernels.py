import json
import os
import subprocess
import sys

import numpy as np

from centerkit import kernels
from centerkit.corpus import standard_triangle


def test_py_func_agrees_with_compiled():
    arr = standard_triangle((1, 2, 3))
    A, B, C, N = arr.float_arrays()
    fast = kernels.center_newton(A, B, C, N, 0.3, 0.3, 1e-13, 200)
    slow = kernels.center_newton.py_func(A, B, C, N, 0.3, 0.3, 1e-13, 200)
    assert np.allclose(fast[:2], slow[:2], rtol=0, atol=1e-14)
    lvl = np.log(0.5 * abs(arr.f(fast[0], fast[1])))
    s, st = kernels.project_to_level(A, B, C, N, fast[0] + 0.05, fast[1], 1.0, 0.0, lvl)
    assert st == 0
    x0 = fast[0] + 0.05 + s
    a = kernels.trace_level_loop(A, B, C, N, fast[0], fast[1], lvl, x0, fast[1], 0.01, 5000)
    b = kernels.trace_level_loop.py_func(A, B, C, N, fast[0], fast[1], lvl, x0, fast[1], 0.01, 5000)
    assert a[3] == b[3] == 0 and a[2] == b[2]
    assert np.allclose(a[0][: a[2]], b[0][: b[2]], rtol=0, atol=1e-12)


SCRIPT = """
import json
from centerkit import _jit
from centerkit.arrangement import center_critical_points
from centerkit.corpus import standard_triangle
c = center_critical_points(standard_triangle((1, 2, 3))).centers[0]
print(json.dumps({"numba": _jit.HAS_NUMBA, "x": c.x, "y": c.y}))
"""


def test_env_flag_selects_backend():
    outs = {}
    for flag in ("1", "0"):
        env = dict(os.environ, CENTERKIT_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", SCRIPT], capture_output=True, text=True, env=env, check=True)
        outs[flag] = json.loads(res.stdout)
    assert outs["1"]["numba"] is False and outs["0"]["numba"] is True
    assert abs(outs["1"]["x"] - outs["0"]["x"]) < 1e-14 and abs(outs["1"]["y"] - outs["0"]["y"]) < 1e-14
