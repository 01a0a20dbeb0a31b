from fractions import Fraction

import sympy as sp
from hypothesis import given, settings, strategies as st

from centerkit import linalg
from centerkit import poly as P

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    )


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_and_nullspace_match_sympy(rows):
    M = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    assert linalg.rank(rows) == M.rank()
    ns = linalg.nullspace(rows, len(rows[0]))
    assert len(ns) == len(M.nullspace())
    for v in ns:
        assert all(x == 0 for x in linalg.matvec(rows, v))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_consistent_and_inconsistent(rows, data):
    ncols = len(rows[0])
    x = data.draw(st.lists(small, min_size=ncols, max_size=ncols))
    b = linalg.matvec(rows, x)
    sol, _ = linalg.solve(rows, b)
    assert sol is not None and linalg.matvec(rows, sol) == b
    # b outside the column space, when there is room for it
    if linalg.rank(rows) < len(rows):
        extra = linalg.nullspace(linalg.transpose(rows), len(rows))[0]
        sol, res = linalg.solve(rows, [bi + ei for bi, ei in zip(b, extra)])
        assert sol is None and any(res)


def test_subspace_ops():
    S = linalg.Subspace(3)
    assert S.add((1, 0, 0)) and not S.add((2, 0, 0)) and S.add((1, 1, 0))
    assert S.dim == 2 and (3, 5, 0) in S and (0, 0, 1) not in S
    T = linalg.Subspace(3, [(1, 1, 0)])
    assert S.contains_subspace(T) and not T.contains_subspace(S)
    assert S == linalg.Subspace(3, [(0, 1, 0), (1, 0, 0)])


def test_poly_ops_match_sympy():
    x, y = sp.symbols("x y")
    p = P.linear(Fraction(1, 2), -1, 3)
    q = P.add(P.mul(p, p), P.const(5))
    expr = sp.expand((sp.Rational(1, 2) * x - y + 3) ** 2 + 5)
    got = sum(sp.Rational(c.numerator, c.denominator) * x**i * y**j for (i, j), c in q.items())
    assert sp.expand(got - expr) == 0
    assert P.power(p, 3) == P.mul(p, P.mul(p, p))
    assert P.dx(q) == P.scale(p, 1) and P.degree(q) == 2
    assert P.from_vector(P.to_vector(q, 3), 3) == q
    assert P.evaluate(q, 0, 0) == 14
    assert P.monomials(2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
