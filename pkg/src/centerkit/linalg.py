"""Exact linear algebra over the rationals.

Matrices are lists of rows; entries are anything closed under ``+ - * /``
with an exact zero test (``Fraction``, ``int``).  Nothing here touches
floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple


def _frac_rows(rows: Iterable[Sequence]) -> list[list]:
    return [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in rows]


def rref(rows: Iterable[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    m = _frac_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        if inv != 1:
            m[r] = [x * inv for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    m[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of ``{v : A v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence):
    """Solve ``A x = b`` exactly.

    Returns ``(x, residual)``.  ``x`` is the particular solution with all free
    variables zero, or ``None`` when the system is inconsistent; ``residual``
    lists the reduced right-hand-side entries of the inconsistent rows.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        bad = [row[ncols] for row, pc in zip(R, pivots) if pc == ncols]
        return None, bad
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return tuple(x), []


def matvec(rows: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in rows)


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


class Subspace:
    """A subspace of Q^n kept as an RREF basis, so equality is row equality."""

    def __init__(self, dim: int, vectors: Iterable[Sequence] = ()):
        self.ambient = dim
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []
        self.extend(vectors)

    def _reduce(self, v: Sequence) -> list[Fraction]:
        w = [x if isinstance(x, Fraction) else Fraction(x) for x in v]
        for row, pc in zip(self._rows, self._pivots):
            f = w[pc]
            if f != 0:
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        if len(v) != self.ambient:
            raise ValueError(f"vector of length {len(v)} in a {self.ambient}-dimensional space")
        w = self._reduce(v)
        pc = next((i for i, x in enumerate(w) if x != 0), None)
        if pc is None:
            return False
        inv = 1 / w[pc]
        w = [x * inv for x in w]
        for k, row in enumerate(self._rows):
            f = row[pc]
            if f != 0:
                self._rows[k] = [a - f * b for a, b in zip(row, w)]
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < pc:
            pos += 1
        self._rows.insert(pos, w)
        self._pivots.insert(pos, pc)
        return True

    def extend(self, vectors: Iterable[Sequence]) -> "Subspace":
        for v in vectors:
            self.add(v)
        return self

    def __contains__(self, v: Sequence) -> bool:
        return all(x == 0 for x in self._reduce(v))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> list[tuple]:
        return [tuple(r) for r in self._rows]

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(v in self for v in other.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, tuple(self.basis)))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
