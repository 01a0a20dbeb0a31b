"""First-order Melnikov integrals over real ovals ``f = t``.

For a perturbation ``omega_0 + eps omega_1`` of the logarithmic foliation the
displacement along the oval ``delta_t`` is, to first order,
``M_1(t) = int_{delta_t} omega_1 / (l_1 ... l_{d+1})``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import poly as P
from .arrangement import BoundedFace, LineArrangement, bounded_faces, center_critical_points
from .kernels import arc_integral, project_to_level, trace_level_loop
from .tangent import FoliationForm

ACCEPT = 1e-8
REJECT = 1e-4

_GX, _GW = np.polynomial.legendre.leggauss(8)
GAUSS_NODES = (_GX + 1.0) / 2.0
GAUSS_WEIGHTS = _GW / 2.0


class OvalError(ValueError):
    pass


@dataclass
class Oval:
    xs: np.ndarray
    ys: np.ndarray
    t: float
    center: tuple
    critical_value: float
    step: float

    @property
    def n_points(self) -> int:
        return len(self.xs)

    def diameter(self) -> float:
        return float(max(np.ptp(self.xs), np.ptp(self.ys)))

    def closure_gap(self) -> float:
        return float(math.hypot(self.xs[-1] - self.xs[0], self.ys[-1] - self.ys[0]))

    def residual(self, arr: LineArrangement) -> float:
        A, B, C, N = arr.float_arrays()
        vals = np.ones_like(self.xs)
        for a, b, c, n in zip(A, B, C, N):
            vals *= (a * self.xs + b * self.ys + c) ** n
        return float(np.max(np.abs(vals - self.t)))

    def signed_area(self) -> float:
        x, y = self.xs, self.ys
        return 0.5 * float(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))


def _face_center(arr, face: BoundedFace):
    rep = center_critical_points(arr, [face])
    c = rep.centers[0]
    return (c.x, c.y), c.value


def oval_window(arr: LineArrangement, face: BoundedFace) -> tuple[float, float]:
    """Open interval of ``t`` with a real oval in ``face``."""
    _, v = _face_center(arr, face)
    return (v, 0.0) if v < 0 else (0.0, v)


def trace_oval(arr: LineArrangement, face: BoundedFace, t: float, hmax: float | None = None, maxpts: int = 200000) -> Oval:
    (cx, cy), crit = _face_center(arr, face)
    lo, hi = oval_window(arr, face)
    if not (lo < t < hi):
        raise OvalError(f"t = {t} is outside the oval window ({lo}, {hi}) of face {face.index}")
    A, B, C, N = arr.float_arrays()
    level = math.log(abs(t))
    # start on the ray in the +x direction; log|f| decreases along it
    s, st = project_to_level(A, B, C, N, cx, cy, 1.0, 0.0, level)
    if st != 0 or not 0 < s < _ray_exit(A, B, C, cx, cy):
        # Newton from the flat center can land on the level set outside the face
        s = _bisect_ray(A, B, C, N, cx, cy, level)
    x0, y0 = cx + s, cy
    if hmax is None:
        hmax = s / 8.0
    xs, ys, npts, status = trace_level_loop(A, B, C, N, cx, cy, level, x0, y0, hmax, maxpts)
    if status != 0:
        raise OvalError(f"oval tracing failed with status {status}")
    oval = Oval(np.array(xs[:npts]), np.array(ys[:npts]), t, (cx, cy), crit, hmax)
    return oval


def _ray_exit(A, B, C, cx, cy) -> float:
    """Distance from ``(cx, cy)`` to the face boundary along ``+x``."""
    hit = math.inf
    for a, b, c in zip(A, B, C):
        if a != 0:
            r = -(a * cx + b * cy + c) / a
            if r > 0:
                hit = min(hit, r)
    return hit


def _bisect_ray(A, B, C, N, cx, cy, level) -> float:
    from .kernels import log_abs_f

    lo, hi = 0.0, _ray_exit(A, B, C, cx, cy)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if log_abs_f(A, B, C, N, cx + mid, cy) > level:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass
class MelnikovResult:
    value: float
    error_estimate: float
    scale: float
    t: float
    n_points: int

    @property
    def relative(self) -> float:
        return abs(self.value) / self.scale if self.scale > 0 else math.inf

    @property
    def verdict(self) -> str:
        return verdict(self.value, self.scale)

    def to_json(self) -> dict:
        return {
            "M1": self.value,
            "error_estimate": self.error_estimate,
            "scale": self.scale,
            "relative": self.relative,
            "t": self.t,
            "verdict": self.verdict,
        }


def verdict(value: float, scale: float, accept: float = ACCEPT, reject: float = REJECT) -> str:
    rel = abs(value) / scale if scale > 0 else math.inf
    if rel <= accept:
        return "vanishes"
    if rel >= reject:
        return "nonzero"
    return "inconclusive"


def _poly_arrays(form: FoliationForm):
    mons = P.monomials(form.degree)
    ex = np.array([m[0] for m in mons], dtype=np.int64)
    ey = np.array([m[1] for m in mons], dtype=np.int64)
    pc = np.array([float(c) for c in form.coeffs[: form.half]])
    qc = np.array([float(c) for c in form.coeffs[form.half :]])
    return ex, ey, pc, qc


def integrate(arr: LineArrangement, oval: Oval, omega1: FoliationForm, stride: int = 1):
    A, B, C, N = arr.float_arrays()
    ex, ey, pc, qc = _poly_arrays(omega1)
    return arc_integral(
        A, B, C, ex, ey, pc, qc, N, oval.xs, oval.ys, oval.n_points, math.log(abs(oval.t)), GAUSS_NODES, GAUSS_WEIGHTS, stride
    )


def melnikov1(arr: LineArrangement, face: BoundedFace, omega1: FoliationForm, t: float, oval: Oval | None = None) -> MelnikovResult:
    if omega1.degree != arr.d:
        raise ValueError(f"form of degree {omega1.degree} on a degree {arr.d} arrangement")
    if oval is None:
        oval = trace_oval(arr, face, t)
    value, scale = integrate(arr, oval, omega1)
    coarse, _ = integrate(arr, oval, omega1, stride=2)
    err = max(abs(value - coarse), 1e-14 * scale)
    return MelnikovResult(float(value), float(err), float(scale), t, oval.n_points)


def face_by_index(arr: LineArrangement, index: int) -> BoundedFace:
    faces = bounded_faces(arr)
    if not 0 <= index < len(faces):
        raise IndexError(f"face {index} does not exist; there are {len(faces)}")
    return faces[index]
