"""Seeded generation of generic arrangements."""
from __future__ import annotations

import random
from math import gcd
from functools import reduce

from .arrangement import LineArrangement, validate


def random_lines(rng: random.Random, count: int, span: int = 9) -> list:
    while True:
        lines = []
        for _ in range(count):
            while True:
                a, b = rng.randint(-span, span), rng.randint(-span, span)
                if a or b:
                    break
            lines.append((a, b, rng.randint(-span, span)))
        arr = LineArrangement.from_coefficients(lines, (1,) * count)
        if validate(arr).ok:
            return lines


def random_multiplicities(rng: random.Random, count: int, top: int, coprime: bool = False) -> tuple:
    while True:
        ns = tuple(rng.randint(1, top) for _ in range(count))
        if reduce(gcd, ns) != 1:
            continue
        if coprime and any(gcd(ns[i], ns[j]) != 1 for i in range(count) for j in range(i + 1, count)):
            continue
        return ns


def random_arrangement(rng: random.Random, d: int, top: int, coprime: bool = False) -> LineArrangement:
    lines = random_lines(rng, d + 1)
    return LineArrangement.from_coefficients(lines, random_multiplicities(rng, d + 1, top, coprime))


def corpus(seed: int, count: int, degrees=(2, 3, 4, 5), top: int = 6, coprime: bool = False) -> list:
    """``count`` arrangements cycling through ``degrees``."""
    rng = random.Random(seed)
    return [random_arrangement(rng, degrees[k % len(degrees)], top, coprime) for k in range(count)]


def standard_triangle(ns=(1, 1, 1)) -> LineArrangement:
    """``x``, ``y`` and ``x + y - 1`` with the given multiplicities."""
    return LineArrangement.from_coefficients([(1, 0, 0), (0, 1, 0), (1, 1, -1)], ns)


def four_lines(ns=(1, 1, 1, 1)) -> LineArrangement:
    return LineArrangement.from_coefficients([(1, 0, 0), (0, 1, 0), (1, 1, -1), (1, -2, 3)], ns)
