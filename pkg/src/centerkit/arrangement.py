"""Generic real line arrangements with multiplicities.

All incidence decisions (parallelism, concurrency, face structure, signs)
are made in exact rational arithmetic.  Floats appear only in
:func:`center_critical_points`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, reduce
from itertools import combinations
from math import gcd, prod

import numpy as np

from . import kernels

Point = tuple  # (Fraction, Fraction)


class ArrangementError(ValueError):
    """Raised when an operation needs a valid arrangement and gets another."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not accepted; use 'p/q' strings")
    raise TypeError(f"cannot read {value!r} as a rational")


@dataclass(frozen=True)
class Line:
    """The affine function ``l(x, y) = a x + b y + c``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise ArrangementError("a line needs (a, b) != (0, 0)")

    def __call__(self, x, y):
        return self.a * x + self.b * y + self.c

    def linear(self, x, y):
        return self.a * x + self.b * y

    @property
    def direction(self) -> Point:
        return (-self.b, self.a)

    def is_parallel(self, other: "Line") -> bool:
        return self.a * other.b - self.b * other.a == 0

    def meet(self, other: "Line") -> Point:
        det = self.a * other.b - self.b * other.a
        if det == 0:
            raise ArrangementError("parallel lines do not meet")
        x = (self.b * other.c - self.c * other.b) / det
        y = (self.c * other.a - self.a * other.c) / det
        return (x, y)

    def __str__(self):
        return f"{self.a}*x + {self.b}*y + {self.c}"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok

    def message(self) -> str:
        if self.ok:
            return "pass"
        return f"{self.violation}: {self.witness}"


@dataclass(frozen=True)
class IntersectionPoint:
    pair: tuple[int, int]
    point: Point
    e: int


@dataclass(frozen=True)
class Side:
    line: int
    start: tuple[int, int]
    end: tuple[int, int]


@dataclass(frozen=True)
class BoundedFace:
    """An anticlockwise bounded polygon of the real arrangement.

    ``vertices[r]`` is the intersection pair at the start of ``sides[r]``;
    ``signs[k]`` is the sign of ``l_k`` in the interior.
    """

    index: int
    vertices: tuple
    sides: tuple
    multiplicities: tuple
    signs: tuple
    points: tuple = field(repr=False)

    @property
    def centroid(self) -> Point:
        k = len(self.points)
        return (sum(p[0] for p in self.points) / k, sum(p[1] for p in self.points) / k)

    @property
    def lines(self) -> tuple:
        return tuple(s.line for s in self.sides)


@dataclass(frozen=True)
class LineArrangement:
    lines: tuple
    multiplicities: tuple

    def __post_init__(self):
        lines = tuple(l if isinstance(l, Line) else Line(*l) for l in self.lines)
        object.__setattr__(self, "lines", lines)
        object.__setattr__(self, "multiplicities", tuple(int(n) for n in self.multiplicities))

    @classmethod
    def from_coefficients(cls, lines, multiplicities) -> "LineArrangement":
        return cls(tuple(Line(*map(as_fraction, l)) for l in lines), tuple(multiplicities))

    @property
    def d(self) -> int:
        return len(self.lines) - 1

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    def e(self, i: int, j: int) -> int:
        return gcd(self.multiplicities[i], self.multiplicities[j])

    @property
    def pairwise_coprime(self) -> bool:
        return all(self.e(i, j) == 1 for i, j in combinations(range(len(self.lines)), 2))

    def f(self, x, y):
        return prod((l(x, y) ** k for l, k in zip(self.lines, self.multiplicities)), start=Fraction(1))

    def float_arrays(self):
        A = np.array([float(l.a) for l in self.lines])
        B = np.array([float(l.b) for l in self.lines])
        C = np.array([float(l.c) for l in self.lines])
        N = np.array([float(k) for k in self.multiplicities])
        return A, B, C, N

    def to_json(self) -> dict:
        return {
            "lines": [[str(l.a), str(l.b), str(l.c)] for l in self.lines],
            "multiplicities": list(self.multiplicities),
        }


def validate(arr: LineArrangement) -> ValidationReport:
    """Check count, multiplicities, the gcd condition, parallels and triple points."""
    m = len(arr.lines)
    if m < 3:
        return ValidationReport(False, "fewer than three lines", (m,))
    if len(arr.multiplicities) != m:
        return ValidationReport(False, "multiplicity count differs from line count", (len(arr.multiplicities), m))
    for i, k in enumerate(arr.multiplicities):
        if k < 1:
            return ValidationReport(False, "non-positive multiplicity", (i, k))
    g = reduce(gcd, arr.multiplicities)
    if g != 1:
        return ValidationReport(False, "multiplicities share a common divisor", (g,))
    for i, j in combinations(range(m), 2):
        if arr.lines[i].is_parallel(arr.lines[j]):
            return ValidationReport(False, "parallel lines", (i, j))
    seen: dict[Point, tuple[int, int]] = {}
    for i, j in combinations(range(m), 2):
        p = arr.lines[i].meet(arr.lines[j])
        if p in seen:
            k = sorted(set(seen[p]) | {i, j})
            return ValidationReport(False, "triple point", (tuple(k), p))
        seen[p] = (i, j)
    return ValidationReport(True)


def require_valid(arr: LineArrangement) -> None:
    report = validate(arr)
    if not report:
        raise ArrangementError(report.message())


def intersections(arr: LineArrangement) -> list[IntersectionPoint]:
    require_valid(arr)
    out = []
    for i, j in combinations(range(len(arr.lines)), 2):
        out.append(IntersectionPoint((i, j), arr.lines[i].meet(arr.lines[j]), arr.e(i, j)))
    return out


def points_along(arr: LineArrangement, i: int) -> list[tuple[tuple[int, int], Point]]:
    """Intersection points on line ``i`` in the order of its direction vector."""
    li = arr.lines[i]
    dx, dy = li.direction
    pts = []
    for j in range(len(arr.lines)):
        if j != i:
            pair = (min(i, j), max(i, j))
            p = li.meet(arr.lines[j])
            pts.append((p[0] * dx + p[1] * dy, pair, p))
    pts.sort(key=lambda t: t[0])
    return [(pair, p) for _, pair, p in pts]


def segments(arr: LineArrangement) -> list[tuple[int, tuple[int, int], tuple[int, int]]]:
    """Finite segments ``(line, start_pair, end_pair)`` in line order."""
    out = []
    for i in range(len(arr.lines)):
        pts = points_along(arr, i)
        for (p, _), (q, _) in zip(pts, pts[1:]):
            out.append((i, p, q))
    return out


def _angle_cmp(u, v) -> int:
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    cr = u[0] * v[1] - u[1] * v[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def _signed_area(pts) -> Fraction:
    s = Fraction(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        s += x0 * y1 - x1 * y0
    return s / 2


def bounded_faces(arr: LineArrangement) -> list[BoundedFace]:
    """Bounded faces of the real arrangement, each traversed anticlockwise.

    Faces are traced on the planar graph of finite segments: at each vertex
    the outgoing edges are sorted by exact angle and a half-edge ``u -> v``
    continues with the edge just clockwise of ``v -> u``.  Cycles of positive
    signed area are the bounded faces.
    """
    require_valid(arr)
    coords = {ip.pair: ip.point for ip in intersections(arr)}
    out_edges: dict[tuple, list] = {pair: [] for pair in coords}
    line_of: dict[tuple, int] = {}
    for i, p, q in segments(arr):
        out_edges[p].append(q)
        out_edges[q].append(p)
        line_of[(p, q)] = i
        line_of[(q, p)] = i

    def vec(a, b):
        return (coords[b][0] - coords[a][0], coords[b][1] - coords[a][1])

    order = {}
    for v, nbrs in out_edges.items():
        nbrs.sort(key=cmp_to_key(lambda a, b, v=v: _angle_cmp(vec(v, a), vec(v, b))))
        order[v] = {w: k for k, w in enumerate(nbrs)}

    visited = set()
    faces = []
    for start in sorted(line_of):
        if start in visited:
            continue
        cycle = []
        he = start
        while he not in visited:
            visited.add(he)
            cycle.append(he)
            u, v = he
            nbrs = out_edges[v]
            k = order[v][u]
            he = (v, nbrs[(k - 1) % len(nbrs)])
        pts = [coords[u] for u, _ in cycle]
        if _signed_area(pts) > 0:
            faces.append(cycle)

    # deterministic order: by lowest-left vertex of the face
    def key(cycle):
        return min((coords[u][0], coords[u][1]) for u, _ in cycle)

    faces.sort(key=key)
    result = []
    for idx, cycle in enumerate(faces):
        # rotate so the cycle starts at its smallest vertex pair
        r0 = min(range(len(cycle)), key=lambda r: cycle[r][0])
        cycle = cycle[r0:] + cycle[:r0]
        verts = tuple(u for u, _ in cycle)
        sides = tuple(Side(line_of[(u, v)], u, v) for u, v in cycle)
        pts = tuple(coords[u] for u in verts)
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        signs = tuple(1 if l(cx, cy) > 0 else -1 for l in arr.lines)
        mults = tuple(arr.multiplicities[s.line] for s in sides)
        result.append(BoundedFace(idx, verts, sides, mults, signs, pts))
    return result


def inside_face(arr: LineArrangement, face: BoundedFace, x, y) -> bool:
    for l, s in zip(arr.lines, face.signs):
        v = l(x, y)
        if v == 0 or (v > 0) != (s > 0):
            return False
    return True


@dataclass(frozen=True)
class CenterPoint:
    face: int
    x: float
    y: float
    value: float
    residual: float
    iterations: int


@dataclass(frozen=True)
class CenterReport:
    centers: tuple
    coincidences: tuple  # pairs of face indices with coincident critical values


class CenterSolveError(RuntimeError):
    pass


def critical_value_coincident(v1: float, v2: float) -> bool:
    return abs(v1 - v2) <= 1e-9 * max(1.0, abs(v1))


def center_critical_points(arr: LineArrangement, faces=None, tol: float = 1e-13) -> CenterReport:
    """Critical point of ``f`` inside each bounded face, with ``f`` there."""
    faces = bounded_faces(arr) if faces is None else faces
    A, B, C, N = arr.float_arrays()
    centers = []
    for face in faces:
        cx, cy = face.centroid
        # solve for the offset from the exact centroid: the line values are
        # then accurate to their own size even on very small faces
        Cl = np.array([float(l(cx, cy)) for l in arr.lines])
        u, v, res, it = kernels.center_newton(A, B, Cl, N, 0.0, 0.0, tol, 200)
        if not res < 1e-10:
            raise CenterSolveError(f"Newton did not converge in face {face.index} (residual {res:g})")
        vals = A * u + B * v + Cl
        if np.any(np.sign(vals) != np.array(face.signs)):
            raise CenterSolveError(f"critical point escaped face {face.index}")
        value = float(np.prod(vals**N))
        centers.append(CenterPoint(face.index, float(cx) + u, float(cy) + v, value, res, it))
    coincide = []
    for a, b in combinations(centers, 2):
        if critical_value_coincident(a.value, b.value):
            coincide.append((a.face, b.face))
    return CenterReport(tuple(centers), tuple(coincide))
