"""Sparse bivariate polynomials with exact coefficients.

A polynomial is a dict ``{(i, j): c}`` for ``c x^i y^j`` with no zero values.
"""
from __future__ import annotations

from fractions import Fraction

Poly = dict


def clean(p: Poly) -> Poly:
    return {k: v for k, v in p.items() if v != 0}


def const(c) -> Poly:
    return clean({(0, 0): Fraction(c)})


def linear(a, b, c) -> Poly:
    return clean({(1, 0): Fraction(a), (0, 1): Fraction(b), (0, 0): Fraction(c)})


def add(*ps: Poly) -> Poly:
    out: Poly = {}
    for p in ps:
        for k, v in p.items():
            out[k] = out.get(k, 0) + v
    return clean(out)


def scale(p: Poly, c) -> Poly:
    return clean({k: c * v for k, v in p.items()})


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(q, -1))


def mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (i1, j1), a in p.items():
        for (i2, j2), b in q.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + a * b
    return clean(out)


def product(ps) -> Poly:
    out = const(1)
    for p in ps:
        out = mul(out, p)
    return out


def power(p: Poly, n: int) -> Poly:
    out = const(1)
    for _ in range(n):
        out = mul(out, p)
    return out


def dx(p: Poly) -> Poly:
    return clean({(i - 1, j): i * v for (i, j), v in p.items() if i > 0})


def dy(p: Poly) -> Poly:
    return clean({(i, j - 1): j * v for (i, j), v in p.items() if j > 0})


def degree(p: Poly) -> int:
    return max((i + j for i, j in p), default=-1)


def evaluate(p: Poly, x, y):
    return sum((v * x**i * y**j for (i, j), v in p.items()), 0)


def monomials(d: int) -> list[tuple[int, int]]:
    """Graded lexicographic: by degree, then falling power of ``x``."""
    return [(k - j, j) for k in range(d + 1) for j in range(k + 1)]


def to_vector(p: Poly, d: int) -> tuple:
    if degree(p) > d:
        raise ValueError(f"polynomial of degree {degree(p)} exceeds {d}")
    return tuple(Fraction(p.get(m, 0)) for m in monomials(d))


def from_vector(v, d: int) -> Poly:
    return clean({m: Fraction(c) for m, c in zip(monomials(d), v)})


def to_string(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for (i, j) in sorted(p, key=lambda m: (m[0] + m[1], -m[0])):
        mon = "*".join(s for s in ((f"x^{i}" if i > 1 else "x") if i else "", (f"y^{j}" if j > 1 else "y") if j else "") if s)
        terms.append(f"({p[(i, j)]})" + (f"*{mon}" if mon else ""))
    return " + ".join(terms)
