"""Center conditions for quadratic vector fields.

Normal form ``x' = -i x + A x^2 + B x y + C y^2``,
``y' = i y + C' y^2 + B' x y + A' x^2``.  The Bautin generators are

    g2 = A B - A' B'
    g3 = (2A + B')(A - 2B') C B' - (2A' + B)(A' - 2B) C' B
    g4 = (B B' - C C')((2A + B') B'^2 C - (2A' + B) B^2 C')

and their zero set has four components.  Primed names are spelled ``Ap``,
``Bp``, ``Cp`` in code.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import as_fraction

COMPONENTS = ("LotkaVolterra", "Hamiltonian", "Reversible", "Exceptional")


@dataclass(frozen=True)
class QuadraticParams:
    A: Fraction
    B: Fraction
    C: Fraction
    Ap: Fraction
    Bp: Fraction
    Cp: Fraction

    def __post_init__(self):
        for name in ("A", "B", "C", "Ap", "Bp", "Cp"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def astuple(self) -> tuple:
        return (self.A, self.B, self.C, self.Ap, self.Bp, self.Cp)


def g2(A, B, C, Ap, Bp, Cp):
    return A * B - Ap * Bp


def g3(A, B, C, Ap, Bp, Cp):
    return (2 * A + Bp) * (A - 2 * Bp) * C * Bp - (2 * Ap + B) * (Ap - 2 * B) * Cp * B


def g4(A, B, C, Ap, Bp, Cp):
    return (B * Bp - C * Cp) * ((2 * A + Bp) * Bp**2 * C - (2 * Ap + B) * B**2 * Cp)


def bautin_generators(p: QuadraticParams) -> tuple:
    v = p.astuple()
    return g2(*v), g3(*v), g4(*v)


def equations(A, B, C, Ap, Bp, Cp) -> dict:
    """Defining expressions of each component (all must vanish)."""
    return {
        "LotkaVolterra": (B, Bp),
        "Hamiltonian": (2 * A + Bp, 2 * Ap + B),
        "Reversible": (
            A * B - Ap * Bp,
            Bp**3 * C - B**3 * Cp,
            A * Bp**2 * C - Ap * B**2 * Cp,
            A**2 * Bp * C - Ap**2 * B * Cp,
            A**3 * C - Ap**3 * Cp,
        ),
        "Exceptional": (A - 2 * Bp, Ap - 2 * B, C * Cp - B * Bp),
    }


def exceptional_literal(A, B, C, Ap, Bp, Cp) -> tuple:
    """The exceptional equations with ``A' - 2B'`` in the middle slot."""
    return (A - 2 * Bp, Ap - 2 * Bp, C * Cp - B * Bp)


def component_membership(p: QuadraticParams) -> frozenset:
    eqs = equations(*p.astuple())
    return frozenset(name for name in COMPONENTS if all(e == 0 for e in eqs[name]))


# ---------------------------------------------------------------- parametrisations


def _nonzero(rng, span):
    while True:
        v = Fraction(rng.randint(-span, span), rng.randint(1, span))
        if v != 0:
            return v


def _rat(rng, span):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def sample(component: str, rng: random.Random, span: int = 9) -> QuadraticParams:
    """An exact random point of a component's equation set."""
    r = lambda: _rat(rng, span)  # noqa: E731
    if component == "LotkaVolterra":
        return QuadraticParams(r(), 0, r(), r(), 0, r())
    if component == "Hamiltonian":
        A, Ap = r(), r()
        return QuadraticParams(A, -2 * Ap, r(), Ap, -2 * A, r())
    if component == "Reversible":
        A, B, C, s = r(), r(), r(), _nonzero(rng, span)
        return QuadraticParams(A, B, C, s * A, B / s, C / s**3)
    if component == "Exceptional":
        B, Bp, C = r(), r(), _nonzero(rng, span)
        return QuadraticParams(2 * Bp, B, C, 2 * B, Bp, B * Bp / C)
    raise KeyError(component)


def symbolic_parametrisation(component: str):
    """``(symbols, (A, B, C, A', B', C'))`` as sympy expressions."""
    import sympy as sp

    a, b, c, a2, b2, c2, s = sp.symbols("a b c a2 b2 c2 s")
    if component == "LotkaVolterra":
        return (a, c, a2, c2), (a, 0, c, a2, 0, c2)
    if component == "Hamiltonian":
        return (a, c, a2, c2), (a, -2 * a2, c, a2, -2 * a, c2)
    if component == "Reversible":
        return (a, b, c, s), (a, b, c, s * a, b / s, c / s**3)
    if component == "Exceptional":
        return (b, b2, c), (2 * b2, b, c, 2 * b, b2, b * b2 / c)
    raise KeyError(component)


def symbolic_generators_vanish(component: str) -> bool:
    import sympy as sp

    _, point = symbolic_parametrisation(component)
    return all(sp.simplify(sp.together(g(*point))) == 0 for g in (g2, g3, g4))


def generator_degrees() -> tuple:
    import sympy as sp

    syms = sp.symbols("A B C Ap Bp Cp")
    return tuple(sp.Poly(sp.expand(g(*syms)), *syms).total_degree() for g in (g2, g3, g4))


@dataclass
class ContainmentReport:
    samples: int
    sampled_zero: dict = field(default_factory=dict)
    symbolic_zero: dict = field(default_factory=dict)
    literal_exceptional_zero: bool = False
    literal_exceptional_witness: tuple | None = None
    witness: tuple | None = None
    witness_values: tuple | None = None
    degrees: tuple = ()

    @property
    def ok(self) -> bool:
        return (
            all(self.sampled_zero.values())
            and all(self.symbolic_zero.values())
            and self.witness_values is not None
            and any(v != 0 for v in self.witness_values)
            and self.degrees == (2, 4, 6)
        )

    def to_json(self) -> dict:
        return {
            "samples_per_component": self.samples,
            "sampled_zero": self.sampled_zero,
            "symbolic_zero": self.symbolic_zero,
            "literal_exceptional_reading_zero": self.literal_exceptional_zero,
            "literal_exceptional_counterexample": None
            if self.literal_exceptional_witness is None
            else [str(x) for x in self.literal_exceptional_witness],
            "witness": [str(x) for x in self.witness],
            "witness_generators": [str(x) for x in self.witness_values],
            "degrees": list(self.degrees),
            "ok": self.ok,
        }


def _literal_exceptional_sample(rng, span):
    # A = 2B', A' = 2B', C C' = B B'
    B, Bp, C = _rat(rng, span), _rat(rng, span), _nonzero(rng, span)
    return QuadraticParams(2 * Bp, B, C, 2 * Bp, Bp, B * Bp / C)


def verify_component_containments(samples: int = 100, seed: int = 0) -> ContainmentReport:
    rng = random.Random(seed)
    rep = ContainmentReport(samples)
    for comp in COMPONENTS:
        ok = True
        for _ in range(samples):
            p = sample(comp, rng)
            if comp not in component_membership(p) or any(bautin_generators(p)):
                ok = False
                break
        rep.sampled_zero[comp] = ok
        rep.symbolic_zero[comp] = symbolic_generators_vanish(comp)
    rep.literal_exceptional_zero = True
    for _ in range(samples):
        p = _literal_exceptional_sample(rng, 9)
        if any(bautin_generators(p)):
            rep.literal_exceptional_zero = False
            rep.literal_exceptional_witness = p.astuple()
            break
    rep.witness = (1, 1, 1, 0, 0, 0)
    rep.witness_values = bautin_generators(QuadraticParams(*rep.witness))
    rep.degrees = generator_degrees()
    return rep


# ---------------------------------------------------------------- singular locus


@dataclass
class SingularLocusReport:
    reversible_contains_locus: bool
    hamiltonian_contains_locus: bool
    lotka_volterra_contains_locus: bool
    collision_proportional: bool
    fixture_factors: bool
    fixture_tau_proportional: bool

    @property
    def ok(self) -> bool:
        return all(vars(self).values())

    def to_json(self) -> dict:
        return dict(vars(self), ok=self.ok)


def singular_locus_checks() -> SingularLocusReport:
    import sympy as sp

    from .tangent import LogParams, tau_collision_check

    c, c2 = sp.symbols("c c2")
    locus = (0, 0, c, 0, 0, c2)
    eqs = equations(*locus)
    zero = lambda exprs: all(sp.expand(e) == 0 for e in exprs)  # noqa: E731

    p1 = LogParams((1, -1, -1), ((-1, 1, -1), (1, 0, 0), (0, 1, 0)))
    p2 = LogParams((1, -1, -1), ((-1, 1, -1), (1, 0, 1), (0, 1, -1)))

    fac, prop = fixture_checks()
    return SingularLocusReport(
        reversible_contains_locus=zero(eqs["Reversible"]),
        hamiltonian_contains_locus=zero(eqs["Hamiltonian"]),
        lotka_volterra_contains_locus=zero(eqs["LotkaVolterra"]),
        collision_proportional=tau_collision_check(p1, p2),
        fixture_factors=fac,
        fixture_tau_proportional=prop,
    )


def fixture_checks() -> tuple[bool, bool]:
    """``(1/2 - x)(y^2 - (x+1)^2/3)`` splits into three lines over ``Q(sqrt 3)``
    and its differential is ``tau`` at residues ``(1, 1, 1)`` on those lines."""
    import sympy as sp

    x, y = sp.symbols("x y")
    r3 = sp.sqrt(3)
    f = (sp.Rational(1, 2) - x) * (y**2 - sp.Rational(1, 3) * (x + 1) ** 2)
    lines = (sp.Rational(1, 2) - x, y - (x + 1) / r3, y + (x + 1) / r3)
    factors = sp.expand(f - sp.Mul(*lines)) == 0
    # tau = prod(l) * sum(dl/l) as P dy - Q dx
    prod_l = sp.Mul(*lines)
    P = sum(prod_l / l * sp.diff(l, y) for l in lines)
    Q = -sum(prod_l / l * sp.diff(l, x) for l in lines)
    fx, fy = sp.diff(f, x), sp.diff(f, y)
    # tau is proportional to df = fx dx + fy dy when the 2x2 minor vanishes
    minor = sp.expand(sp.simplify(P * fx - (-Q) * fy))
    nonzero = sp.expand(P) != 0
    return bool(factors), bool(minor == 0 and nonzero)
