import random

import numpy as np
import pytest

from centerkit import poly as P
from centerkit.arrangement import bounded_faces, inside_face
from centerkit.corpus import four_lines, standard_triangle
from centerkit.melnikov import (
    OvalError,
    face_by_index,
    integrate,
    melnikov1,
    oval_window,
    trace_oval,
    verdict,
)
from centerkit.tangent import FoliationForm, LogParams, dtau, random_direction, random_form, tangent_membership


@pytest.fixture(scope="module")
def tri():
    return standard_triangle((1, 1, 1))


@pytest.fixture(scope="module")
def tri123():
    return standard_triangle((1, 2, 3))


def test_window_sign(tri):
    (face,) = bounded_faces(tri)
    lo, hi = oval_window(tri, face)
    assert hi == 0.0 and abs(lo + 1 / 27) < 1e-14


def test_oval_half_critical_value(tri):
    (face,) = bounded_faces(tri)
    oval = trace_oval(tri, face, -1 / 54)
    assert oval.residual(tri) <= 1e-10 / 54
    assert oval.closure_gap() <= 1e-9 * oval.diameter()
    assert oval.signed_area() > 0
    from fractions import Fraction

    assert all(inside_face(tri, face, Fraction(x), Fraction(y)) for x, y in zip(oval.xs, oval.ys))


def test_oval_shrinks_to_center(tri):
    (face,) = bounded_faces(tri)
    sizes = [trace_oval(tri, face, -t / 27).diameter() for t in (0.5, 0.9, 0.99)]
    assert sizes[0] > sizes[1] > sizes[2]
    near = trace_oval(tri, face, -0.9999 / 27)
    assert abs(np.mean(near.xs) - 1 / 3) < 1e-2 and abs(np.mean(near.ys) - 1 / 3) < 1e-2


@pytest.mark.parametrize("t", [1 / 54, -1 / 20, 0.0])
def test_outside_window_rejected(tri, t):
    (face,) = bounded_faces(tri)
    with pytest.raises(OvalError):
        trace_oval(tri, face, t)


def test_oval_quality_four_lines():
    arr = four_lines((1, 2, 1, 3))
    for face in bounded_faces(arr):
        lo, hi = oval_window(arr, face)
        t = (lo + hi) / 2
        oval = trace_oval(arr, face, t)
        assert oval.residual(arr) <= 1e-10 * abs(t)
        assert oval.closure_gap() <= 1e-9 * oval.diameter()
        assert oval.signed_area() > 0


def _member(arr, seed):
    base = LogParams.from_arrangement(arr)
    return dtau(base, random_direction(random.Random(seed), arr.d))


def test_member_forms_vanish_at_three_levels(tri123):
    (face,) = bounded_faces(tri123)
    lo, _ = oval_window(tri123, face)
    for seed in range(3):
        w = _member(tri123, seed)
        for frac in (0.25, 0.5, 0.9):
            res = melnikov1(tri123, face, w, lo * frac)
            assert res.relative <= 1e-8 and res.verdict == "vanishes"


def test_listed_witness_is_a_member(tri123):
    # l2 l3 dl1 = y (x+y-1) dx lies in the image for these lines,
    # so its integral must vanish; the numeric side agrees
    base = LogParams.from_arrangement(tri123)
    g = P.mul(P.linear(0, 1, 0), P.linear(1, 1, -1))
    form = FoliationForm.from_polys({}, P.scale(g, -1), 2)
    assert tangent_membership(base, form).member
    (face,) = bounded_faces(tri123)
    lo, _ = oval_window(tri123, face)
    assert melnikov1(tri123, face, form, lo / 2).relative <= 1e-8


def test_non_member_is_large_and_smooth_in_t(tri123):
    base = LogParams.from_arrangement(tri123)
    rng = random.Random(4)
    w = random_form(rng, 2)
    assert not tangent_membership(base, w).member
    (face,) = bounded_faces(tri123)
    lo, _ = oval_window(tri123, face)
    ts = [lo * f for f in (0.40, 0.45, 0.50, 0.55, 0.60)]
    vals = [melnikov1(tri123, face, w, t) for t in ts]
    assert all(v.relative >= 1e-3 for v in vals)
    m = np.array([v.value for v in vals])
    assert np.all(np.sign(m) == np.sign(m[0]))
    # second differences small compared to the values: no jumps
    assert np.max(np.abs(np.diff(m, 2))) < 0.1 * np.max(np.abs(m))


def test_linearity(tri123):
    (face,) = bounded_faces(tri123)
    lo, _ = oval_window(tri123, face)
    oval = trace_oval(tri123, face, lo / 2)
    rng = random.Random(7)
    u, v = random_form(rng, 2), random_form(rng, 2)
    a, b = 3, -2
    combo = u.scale(a) + v.scale(b)
    mu, su = integrate(tri123, oval, u)
    mv, sv = integrate(tri123, oval, v)
    mc, _ = integrate(tri123, oval, combo)
    assert abs(mc - (a * mu + b * mv)) <= 1e-10 * (abs(a) * su + abs(b) * sv)


def test_convergence_under_step_halving(tri123):
    (face,) = bounded_faces(tri123)
    lo, _ = oval_window(tri123, face)
    t = lo / 2
    w = random_form(random.Random(8), 2)
    coarse = trace_oval(tri123, face, t)
    fine = trace_oval(tri123, face, t, hmax=coarse.step / 2)
    r1 = melnikov1(tri123, face, w, t, coarse)
    r2 = melnikov1(tri123, face, w, t, fine)
    assert abs(r1.value - r2.value) < 4 * max(r1.error_estimate, r2.error_estimate)


def test_verdict_bands():
    assert verdict(1e-9, 1.0) == "vanishes"
    assert verdict(1e-3, 1.0) == "nonzero"
    assert verdict(1e-6, 1.0) == "inconclusive"
    assert verdict(1e-6, 1.0, accept=1e-5) == "vanishes"


def test_degree_mismatch(tri123):
    (face,) = bounded_faces(tri123)
    with pytest.raises(ValueError):
        melnikov1(tri123, face, random_form(random.Random(0), 3), -0.001)


def test_face_index_range(tri123):
    with pytest.raises(IndexError):
        face_by_index(tri123, 3)
