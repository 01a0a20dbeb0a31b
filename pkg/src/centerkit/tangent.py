"""The logarithmic parametrisation ``tau`` and its differential.

``tau(lambda, l) = l_1 ... l_{d+1} sum lambda_i dl_i / l_i`` is a polynomial
one-form ``P dy - Q dx`` of degree ``d``.  Forms are coefficient vectors of
length ``(d+1)(d+2)``: the coefficients of ``P`` then ``Q``, each in graded
lexicographic order ``1, x, y, x^2, xy, y^2, ...``.

Directions in parameter space are ``(lambda_dot, p_1, ..., p_{d+1})`` with
each ``p_i`` affine; as a vector they are the ``d+1`` values of
``lambda_dot`` followed by the ``(c, a, b)`` coefficients of
``p_i = c + a x + b y`` for each ``i`` in turn.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from . import poly as P
from .arrangement import Line, LineArrangement, as_fraction


@dataclass(frozen=True)
class FoliationForm:
    degree: int
    coeffs: tuple

    def __post_init__(self):
        n = (self.degree + 1) * (self.degree + 2)
        if len(self.coeffs) != n:
            raise ValueError(f"degree {self.degree} form needs {n} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))

    @classmethod
    def from_polys(cls, p: dict, q: dict, degree: int) -> "FoliationForm":
        return cls(degree, P.to_vector(p, degree) + P.to_vector(q, degree))

    @property
    def half(self) -> int:
        return len(self.coeffs) // 2

    @property
    def p(self) -> dict:
        return P.from_vector(self.coeffs[: self.half], self.degree)

    @property
    def q(self) -> dict:
        return P.from_vector(self.coeffs[self.half :], self.degree)

    def __add__(self, other):
        return FoliationForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "FoliationForm":
        return FoliationForm(self.degree, tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_json(self) -> dict:
        return {"degree": self.degree, "coefficients": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "FoliationForm":
        return cls(int(data["degree"]), tuple(as_fraction(c) for c in data["coefficients"]))


@dataclass(frozen=True)
class LogParams:
    residues: tuple
    lines: tuple

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(as_fraction(r) for r in self.residues))
        object.__setattr__(self, "lines", tuple(l if isinstance(l, Line) else Line(*map(as_fraction, l)) for l in self.lines))
        if len(self.residues) != len(self.lines):
            raise ValueError("one residue per line is required")
        if any(r == 0 for r in self.residues):
            raise ValueError("residues must be nonzero")

    @classmethod
    def from_arrangement(cls, arr: LineArrangement) -> "LogParams":
        return cls(tuple(Fraction(n) for n in arr.multiplicities), arr.lines)

    @property
    def d(self) -> int:
        return len(self.lines) - 1

    @cached_property
    def _polys(self):
        return [P.linear(l.a, l.b, l.c) for l in self.lines]

    def cofactor(self, *skip) -> dict:
        return P.product(p for k, p in enumerate(self._polys) if k not in skip)


def _one_form(terms, d: int) -> FoliationForm:
    """``sum g_k * (a_k dx + b_k dy)`` for terms ``(g_k, a_k, b_k)``."""
    p, q = {}, {}
    for g, a, b in terms:
        p = P.add(p, P.scale(g, b))
        q = P.add(q, P.scale(g, -a))
    return FoliationForm.from_polys(p, q, d)


def tau(params: LogParams) -> FoliationForm:
    d = params.d
    terms = [(params.cofactor(i), l.a * lam, l.b * lam) for i, (l, lam) in enumerate(zip(params.lines, params.residues))]
    return _one_form(terms, d)


def _affine_terms(g: dict, p: dict):
    """``g * dp`` for affine ``p`` as one-form terms."""
    return [(g, p.get((1, 0), 0), p.get((0, 1), 0))]


def dtau(base: LogParams, direction) -> FoliationForm:
    """``D tau`` at ``base`` applied to a direction vector of length ``4(d+1)``."""
    d = base.d
    m = d + 1
    direction = tuple(as_fraction(x) for x in direction)
    if len(direction) != 4 * m:
        raise ValueError(f"direction must have {4 * m} entries")
    lam_dot = direction[:m]
    ps = [P.linear(direction[m + 3 * i + 1], direction[m + 3 * i + 2], direction[m + 3 * i]) for i in range(m)]
    terms = []
    for i, l in enumerate(base.lines):
        lam = base.residues[i]
        terms.append((base.cofactor(i), lam_dot[i] * l.a, lam_dot[i] * l.b))
        for k in range(m):
            if k != i and ps[k]:
                terms.append((P.mul(base.cofactor(i, k), ps[k]), lam * l.a, lam * l.b))
        if ps[i]:
            for g, a, b in _affine_terms(base.cofactor(i), ps[i]):
                terms.append((g, lam * a, lam * b))
    return _one_form(terms, d)


def direction_vector(lam_dot, ps) -> tuple:
    """Pack ``lambda_dot`` and affine ``p_i = (c, a, b)`` into a direction."""
    out = [as_fraction(x) for x in lam_dot]
    for c, a, b in ps:
        out += [as_fraction(c), as_fraction(a), as_fraction(b)]
    return tuple(out)


def dtau_matrix(base: LogParams) -> list:
    """Columns are ``dtau`` of the unit directions; returned as rows."""
    n = 4 * (base.d + 1)
    cols = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        cols.append(dtau(base, e).coeffs)
    return linalg.transpose(cols)


@dataclass(frozen=True)
class KernelReport:
    dimension: int
    basis: tuple
    image_dimension: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.dimension == self.expected and self.image_dimension == 3 * self.expected


def kernel_dimension(base: LogParams) -> KernelReport:
    M = dtau_matrix(base)
    ncols = 4 * (base.d + 1)
    ker = linalg.nullspace(M, ncols)
    return KernelReport(len(ker), tuple(ker), ncols - len(ker), base.d + 1)


def colinear_kernel_direction(base: LogParams, c) -> tuple:
    """``p_i = c_i l_i`` with ``lambda_dot_i = -lambda_i sum c_j``: a kernel vector."""
    c = [as_fraction(x) for x in c]
    s = sum(c, Fraction(0))
    lam_dot = [-lam * s for lam in base.residues]
    ps = [(ci * l.c, ci * l.a, ci * l.b) for ci, l in zip(c, base.lines)]
    return direction_vector(lam_dot, ps)


@dataclass(frozen=True)
class Membership:
    member: bool
    certificate: tuple | None
    residual: tuple

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "certificate": None if self.certificate is None else [str(x) for x in self.certificate],
            "residual": [str(x) for x in self.residual],
        }


def tangent_membership(base: LogParams, omega1: FoliationForm) -> Membership:
    """Is ``omega1`` in the image of ``D tau`` at ``base``?  Decided exactly."""
    if omega1.degree != base.d:
        raise ValueError(f"form of degree {omega1.degree} against a degree {base.d} base point")
    M = dtau_matrix(base)
    x, bad = linalg.solve(M, omega1.coeffs)
    if x is None:
        return Membership(False, None, tuple(bad))
    if dtau(base, x).coeffs != omega1.coeffs:
        raise ArithmeticError("certificate does not reproduce the form")
    return Membership(True, x, ())


def image_dimension(base: LogParams) -> int:
    return linalg.rank(dtau_matrix(base))


def proportional(u, v) -> bool:
    return linalg.rank([u, v]) <= 1 and (any(u) == any(v))


def tau_collision_check(p1: LogParams, p2: LogParams) -> bool:
    return proportional(tau(p1).coeffs, tau(p2).coeffs)


def first_integral_defect(params: LogParams, multiplicities) -> dict:
    """``P f_x + Q f_y`` for ``f = prod l_i^{n_i}``; zero when ``f`` is a first integral."""
    form = tau(params)
    f = P.product(P.power(P.linear(l.a, l.b, l.c), n) for l, n in zip(params.lines, multiplicities))
    return P.add(P.mul(form.p, P.dx(f)), P.mul(form.q, P.dy(f)))


def random_base(rng, d: int, span: int = 9, residues=None) -> LogParams:
    """A random generic rational base point (no parallels, no triple points)."""
    from .corpus import random_lines

    lines = random_lines(rng, d + 1, span)
    if residues is None:
        residues = [rng.choice([k for k in range(-span, span + 1) if k]) for _ in range(d + 1)]
    return LogParams(tuple(residues), tuple(Line(*map(as_fraction, l)) for l in lines))


def random_direction(rng, d: int, span: int = 9) -> tuple:
    return tuple(Fraction(rng.randint(-span, span)) for _ in range(4 * (d + 1)))


def random_form(rng, d: int, span: int = 9) -> FoliationForm:
    return FoliationForm(d, tuple(Fraction(rng.randint(-span, span)) for _ in range((d + 1) * (d + 2))))
