"""Monodromy of straight paths on the fibres of ``x^m y^n``.

A straight path runs from the marked point ``zeta_{k,h}`` on ``{x = 1}`` to
``xi_{l,h}`` on ``{y = 1}`` inside cylinder ``h`` and winds ``s`` times around
that cylinder.  Its homotopy class is fixed by the single integer

    N = n*l - m*k + h + lcm(m, n) * s,

the value of ``(1/2 pi i) * integral of m dx/x`` along the path up to the
constant ``log t``.  One turn of ``t`` around zero adds 1 to ``N``; the step
rule below is that statement written in canonical residues.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from fractions import Fraction


@dataclass(frozen=True)
class LocalFibrationModel:
    m: int
    n: int
    e: int
    p: int
    q: int
    a: int
    b: int

    @property
    def lcm(self) -> int:
        return self.m * self.n // self.e

    def states(self):
        for h in range(self.e):
            for k in range(self.q):
                for l in range(self.p):
                    yield StraightPathState(k, l, h, 0)


@dataclass(frozen=True)
class StraightPathState:
    k: int
    l: int
    h: int
    s: int

    def endpoints(self) -> tuple[int, int, int]:
        return (self.k, self.l, self.h)


def bezout_pair(p: int, q: int) -> tuple[int, int]:
    """The ``(a, b)`` with ``a p - b q = 1`` under the normalisation in use."""
    if p == 1:
        return 1, 0
    if q == 1:
        return 1, p - 1
    a = pow(p, -1, q)
    b = (a * p - 1) // q
    return a, b


def build(m: int, n: int) -> LocalFibrationModel:
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    e = gcd(m, n)
    p, q = m // e, n // e
    a, b = bezout_pair(p, q)
    return LocalFibrationModel(m, n, e, p, q, a, b)


def relative_rank(m: int, n: int) -> int:
    """Rank of ``H_1(L_t, L_t cap Sigma)``: one generator per marked point."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return m + n


def check_state(model: LocalFibrationModel, state: StraightPathState) -> None:
    if not (0 <= state.k < model.q and 0 <= state.l < model.p and 0 <= state.h < model.e):
        raise ValueError(f"{state} is not a state of {model}")


def class_number(model: LocalFibrationModel, state: StraightPathState) -> int:
    """The integer ``N`` identifying the homotopy class of the path."""
    return model.n * state.l - model.m * state.k + state.h + model.lcm * state.s


def monodromy_step(model: LocalFibrationModel, state: StraightPathState) -> StraightPathState:
    """Transport a straight path once anticlockwise around ``t = 0``."""
    check_state(model, state)
    k, l, h, s = state.k, state.l, state.h, state.s
    if h + 1 < model.e:
        return StraightPathState(k, l, h + 1, s)
    fk, k2 = divmod(k - model.a, model.q)
    fl, l2 = divmod(l - model.b, model.p)
    return StraightPathState(k2, l2, 0, s + fl - fk)


def iterate(model: LocalFibrationModel, state: StraightPathState, count: int) -> StraightPathState:
    if count < 0:
        raise ValueError("count must be non-negative")
    for _ in range(count):
        state = monodromy_step(model, state)
    return state


def inverse_step(model: LocalFibrationModel, state: StraightPathState) -> StraightPathState:
    check_state(model, state)
    k, l, h, s = state.k, state.l, state.h, state.s
    if h > 0:
        return StraightPathState(k, l, h - 1, s)
    fk, k0 = divmod(k + model.a, model.q)
    fl, l0 = divmod(l + model.b, model.p)
    prev = StraightPathState(k0, l0, model.e - 1, 0)
    # recover s from the forward rule
    fwd = monodromy_step(model, prev)
    return StraightPathState(k0, l0, model.e - 1, s - fwd.s)


def loop_log_weights(model: LocalFibrationModel) -> tuple[Fraction, Fraction]:
    """Turns of ``x`` and of ``y`` along one circuit of the cylinder loop."""
    return (Fraction(model.lcm, model.m), Fraction(-model.lcm, model.n))


def step_table(model: LocalFibrationModel, state: StraightPathState | None = None, count: int | None = None):
    """Rows ``(step, k, l, h, s, N)`` of the orbit of ``state``."""
    state = StraightPathState(0, 0, 0, 0) if state is None else state
    count = model.lcm if count is None else count
    rows = []
    for i in range(count + 1):
        rows.append((i, state.k, state.l, state.h, state.s, class_number(model, state)))
        if i < count:
            state = monodromy_step(model, state)
    return rows
