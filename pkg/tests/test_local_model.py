from fractions import Fraction
from math import floor, gcd

import pytest

from centerkit.local_model import (
    StraightPathState,
    build,
    class_number,
    inverse_step,
    iterate,
    loop_log_weights,
    monodromy_step,
    relative_rank,
    step_table,
)


@pytest.mark.parametrize(
    "m,n,expect",
    [(1, 1, (1, 1, 1, 1, 0)), (6, 9, (3, 2, 3, 2, 1)), (2, 3, (1, 2, 3, 2, 1))],
)
def test_build_examples(m, n, expect):
    model = build(m, n)
    assert (model.e, model.p, model.q, model.a, model.b) == expect


def test_bezout_invariants_exhaustive():
    for m in range(1, 65):
        for n in range(1, 65):
            md = build(m, n)
            assert md.e == gcd(m, n) and md.p * md.e == m and md.q * md.e == n
            assert md.a * md.p - md.b * md.q == 1
            assert md.a * m - md.b * n == md.e
            if md.p == 1:
                assert (md.a, md.b) == (1, 0)
            elif md.q == 1:
                assert (md.a, md.b) == (1, md.p - 1)
            else:
                assert 0 <= md.a <= md.q - 1 and 0 <= md.b <= md.p - 1


def test_build_rejects_nonpositive():
    with pytest.raises(ValueError):
        build(0, 3)


@pytest.mark.parametrize("m,n,r", [(1, 1, 2), (6, 9, 15), (1, 5, 6)])
def test_relative_rank(m, n, r):
    assert relative_rank(m, n) == r


def test_step_inside_cylinder_block():
    assert monodromy_step(build(6, 9), StraightPathState(1, 0, 0, 0)) == StraightPathState(1, 0, 1, 0)


def test_step_wraps_sheet_index():
    # endpoints (k-a, l-b) mod (q, p); the winding is whatever keeps N + 1
    md = build(6, 9)
    start = StraightPathState(1, 0, 2, 0)
    nxt = monodromy_step(md, start)
    assert nxt.endpoints() == (2, 1, 0)
    assert class_number(md, nxt) == class_number(md, start) + 1
    assert nxt.s == 0


def test_bracket_formula_as_printed_breaks_iterate_law():
    # s + sigma*(floor((k-a)/q) + floor((l-b)/p)) for either sigma fails somewhere
    def printed(md, st, sigma):
        if st.h + 1 < md.e:
            return StraightPathState(st.k, st.l, st.h + 1, st.s)
        return StraightPathState(
            (st.k - md.a) % md.q,
            (st.l - md.b) % md.p,
            0,
            st.s + sigma * (floor((st.k - md.a) / md.q) + floor((st.l - md.b) / md.p)),
        )

    md = build(6, 9)
    for sigma in (1, -1):
        bad = 0
        for st in md.states():
            cur = st
            for _ in range(md.lcm):
                cur = printed(md, cur, sigma)
            bad += cur.s != st.s + 1
        assert bad > 0


def test_step_one_one():
    assert monodromy_step(build(1, 1), StraightPathState(0, 0, 0, 0)) == StraightPathState(0, 0, 0, 1)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (6, 9)])
def test_iterate_examples(m, n):
    md = build(m, n)
    for st in md.states():
        out = iterate(md, st, md.lcm)
        assert out.endpoints() == st.endpoints() and out.s == st.s + 1


def test_iterate_law_exhaustive():
    for m in range(1, 13):
        for n in range(1, 13):
            md = build(m, n)
            for st in md.states():
                out = iterate(md, st, md.lcm)
                assert out == StraightPathState(st.k, st.l, st.h, st.s + 1), (m, n, st)


def test_step_increments_class_number():
    for m in range(1, 9):
        for n in range(1, 9):
            md = build(m, n)
            for st in md.states():
                assert class_number(md, monodromy_step(md, st)) == class_number(md, st) + 1


def test_inverse_is_two_sided():
    for m in range(1, 13):
        for n in range(1, 13):
            md = build(m, n)
            images = set()
            for st in md.states():
                for s in (-2, 0, 3):
                    st2 = StraightPathState(st.k, st.l, st.h, s)
                    fwd = monodromy_step(md, st2)
                    assert inverse_step(md, fwd) == st2
                    assert monodromy_step(md, inverse_step(md, st2)) == st2
                images.add(monodromy_step(md, st).endpoints())
            assert len(images) == md.p * md.q * md.e


@pytest.mark.parametrize("m,n,w", [(1, 1, (1, -1)), (6, 9, (3, -2)), (2, 3, (3, -2))])
def test_loop_log_weights(m, n, w):
    md = build(m, n)
    got = loop_log_weights(md)
    assert got == (Fraction(w[0]), Fraction(w[1]))
    assert m * got[0] + n * got[1] == 0


def test_step_table_closes():
    md = build(6, 9)
    rows = step_table(md)
    assert len(rows) == md.lcm + 1
    assert rows[-1][1:4] == rows[0][1:4] and rows[-1][4] == rows[0][4] + 1
    assert [r[5] for r in rows] == list(range(rows[0][5], rows[0][5] + md.lcm + 1))


def test_invalid_state_rejected():
    with pytest.raises(ValueError):
        monodromy_step(build(2, 3), StraightPathState(5, 0, 0, 0))
