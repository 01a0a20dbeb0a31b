import random
from fractions import Fraction

import pytest
import sympy as sp

from centerkit import poly as P
from centerkit.arrangement import Line
from centerkit.corpus import standard_triangle
from centerkit.tangent import (
    FoliationForm,
    LogParams,
    colinear_kernel_direction,
    direction_vector,
    dtau,
    first_integral_defect,
    image_dimension,
    kernel_dimension,
    random_base,
    random_direction,
    random_form,
    tangent_membership,
    tau,
    tau_collision_check,
)

x, y = sp.symbols("x y")


def to_sympy(form: FoliationForm):
    mons = P.monomials(form.degree)
    h = form.half
    Pp = sum(sp.Rational(c.numerator, c.denominator) * x**i * y**j for (i, j), c in zip(mons, form.coeffs[:h]))
    Qq = sum(sp.Rational(c.numerator, c.denominator) * x**i * y**j for (i, j), c in zip(mons, form.coeffs[h:]))
    return sp.expand(Pp), sp.expand(Qq)


def sym_line(l):
    return sp.Rational(l.a) * x + sp.Rational(l.b) * y + sp.Rational(l.c)


def as_pq(dx_coeff, dy_coeff):
    """``a dx + b dy`` written as ``P dy - Q dx``."""
    return sp.expand(dy_coeff), sp.expand(-dx_coeff)


def test_tau_triangle_is_df(tri111):
    f = x * y * (x + y - 1)
    got = to_sympy(tau(LogParams.from_arrangement(tri111)))
    assert got == as_pq(sp.diff(f, x), sp.diff(f, y))


def test_tau_linear_in_residues(tri123):
    base = LogParams.from_arrangement(tri123)
    scaled = LogParams(tuple(3 * r for r in base.residues), base.lines)
    assert tau(scaled) == tau(base).scale(3)


def test_dtau_pure_residue_direction(tri123):
    base = LogParams.from_arrangement(tri123)
    lam_dot = (Fraction(2), Fraction(-1), Fraction(5))
    got = dtau(base, direction_vector(lam_dot, [(0, 0, 0)] * 3))
    assert got == tau(LogParams(lam_dot, base.lines))


def bracket_oracle(base, direction):
    """``prod l * (sum ld dl/l + (sum p/l)(sum n dl/l) + d(sum n p/l))`` in sympy."""
    m = base.d + 1
    ls = [sym_line(l) for l in base.lines]
    lam_dot = [sp.Rational(v) for v in direction[:m]]
    ps = [
        sp.Rational(direction[m + 3 * i]) + sp.Rational(direction[m + 3 * i + 1]) * x + sp.Rational(direction[m + 3 * i + 2]) * y
        for i in range(m)
    ]
    ns = [sp.Rational(r) for r in base.residues]
    prod = sp.Mul(*ls)

    def times_prod(terms):
        # prod^2 clears every denominator term by term; then divide once by prod
        total = sp.Poly(sum(sp.cancel(prod**2 * t) for t in terms), x, y)
        q, r = sp.div(total, sp.Poly(prod, x, y))
        assert r.is_zero
        return q.as_expr()

    out = []
    for var in (x, y):
        terms = [ld * sp.diff(l, var) / l for ld, l in zip(lam_dot, ls)]
        terms += [p / l * n * sp.diff(k, var) / k for p, l in zip(ps, ls) for n, k in zip(ns, ls)]
        terms += [n * sp.diff(p / l, var) for n, p, l in zip(ns, ps, ls)]
        out.append(times_prod(terms))
    return as_pq(*out)


@pytest.mark.parametrize("seed", range(4))
def test_dtau_matches_bracket_formula(seed):
    rng = random.Random(seed)
    d = 2 + seed % 3
    base = random_base(rng, d)
    direction = random_direction(rng, d)
    assert to_sympy(dtau(base, direction)) == bracket_oracle(base, direction)


def _shift(base, direction, h):
    m = base.d + 1
    lam = tuple(r + h * direction[i] for i, r in enumerate(base.residues))
    lines = tuple(
        Line(l.a + h * direction[m + 3 * i + 1], l.b + h * direction[m + 3 * i + 2], l.c + h * direction[m + 3 * i])
        for i, l in enumerate(base.lines)
    )
    return LogParams(lam, lines)


@pytest.mark.parametrize("seed", range(3))
def test_dtau_finite_difference(seed):
    rng = random.Random(50 + seed)
    d = 2 + seed
    base = random_base(rng, d)
    direction = random_direction(rng, d)
    exact = dtau(base, direction).coeffs
    t0 = tau(base).coeffs
    errs = []
    for h in (Fraction(1, 10**4), Fraction(1, 10**5)):
        fd = [(a - b) / h for a, b in zip(tau(_shift(base, direction, h)).coeffs, t0)]
        errs.append(max(abs(float(a - b)) for a, b in zip(fd, exact)))
    scale = max(abs(float(c)) for c in exact)
    assert errs[0] < 1e-2 * scale
    # first order: ten times smaller step, about ten times smaller error
    assert 5 < errs[0] / errs[1] < 20


def test_kernel_triangle(tri123):
    rep = kernel_dimension(LogParams.from_arrangement(tri123))
    assert rep.dimension == 3 and rep.image_dimension == 9 and rep.ok


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_kernel_and_image_dims(d):
    rng = random.Random(d)
    for _ in range(3):
        base = random_base(rng, d)
        rep = kernel_dimension(base)
        assert rep.dimension == d + 1 and rep.image_dimension == 3 * (d + 1)
        assert image_dimension(base) == 3 * (d + 1)


def test_colinear_directions_are_kernel(tri123):
    base = LogParams.from_arrangement(tri123)
    for c in [(1, 0, 0), (0, 2, -1), (3, 5, 7)]:
        assert dtau(base, colinear_kernel_direction(base, c)).is_zero()


def test_membership_round_trip():
    rng = random.Random(9)
    for d in (2, 3, 4):
        base = random_base(rng, d)
        for _ in range(4):
            v = random_direction(rng, d)
            w = dtau(base, v)
            mem = tangent_membership(base, w)
            assert mem.member and dtau(base, mem.certificate) == w
            # the certificate differs from v by a kernel vector
            diff = tuple(a - b for a, b in zip(mem.certificate, v))
            assert dtau(base, diff).is_zero()


def test_random_forms_are_not_members():
    rng = random.Random(10)
    for d in (2, 3, 4):
        base = random_base(rng, d)
        for _ in range(4):
            mem = tangent_membership(base, random_form(rng, d))
            assert not mem.member and mem.certificate is None and any(mem.residual)


def test_membership_degree_mismatch(tri123):
    with pytest.raises(ValueError):
        tangent_membership(LogParams.from_arrangement(tri123), random_form(random.Random(0), 3))


def test_collision_fixture():
    p1 = LogParams((1, -1, -1), ((-1, 1, -1), (1, 0, 0), (0, 1, 0)))
    p2 = LogParams((1, -1, -1), ((-1, 1, -1), (1, 0, 1), (0, 1, -1)))
    assert tau_collision_check(p1, p2)
    assert tau_collision_check(p1, p1)
    rng = random.Random(3)
    assert not tau_collision_check(random_base(rng, 2), random_base(rng, 2))


@pytest.mark.parametrize("ns", [(1, 1, 1), (1, 2, 3), (3, 1, 2)])
def test_first_integral(ns):
    arr = standard_triangle(ns)
    params = LogParams.from_arrangement(arr)
    assert not first_integral_defect(params, ns)
    # independent check: omega wedge df in sympy
    f = sp.Mul(*(sym_line(l) ** n for l, n in zip(arr.lines, ns)))
    Pp, Qq = to_sympy(tau(params))
    assert sp.expand(Pp * sp.diff(f, x) + Qq * sp.diff(f, y)) == 0


def test_form_json_round_trip():
    form = random_form(random.Random(1), 2)
    assert FoliationForm.from_json(form.to_json()) == form
    with pytest.raises(ValueError):
        FoliationForm(2, (1, 2, 3))
