"""Monodromy orbit of a center vanishing cycle.

The orbit is generated by every lift of every bounded face boundary and by
the polygon sums of saddle loops; it is compared with the common kernel of
the winding functionals.  Subspaces live in the coordinates of the cycle
basis of the real-picture graph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .arrangement import ArrangementError, BoundedFace, LineArrangement, bounded_faces, points_along, require_valid
from .fiber_graph import (
    CycleClass,
    GraphConsistencyError,
    build_real_graph,
    genus,
    polygon_saddle_sum,
    saddle_loop_class,
    spanning_lifts,
    winding_matrix,
)


class CoprimalityError(ArrangementError):
    pass


@dataclass
class OrbitSpan:
    space: linalg.Subspace
    generators: list = field(default_factory=list)  # (tag, CycleClass)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list:
        return self.space.basis


def _require_coprime(arr: LineArrangement) -> None:
    require_valid(arr)
    if not arr.pairwise_coprime:
        raise CoprimalityError(
            f"multiplicities {arr.multiplicities} are not pairwise coprime; "
            "the orbit characterisation assumes pairwise coprime n_i"
        )


def orbit_generators(arr: LineArrangement, tsign: int = 1) -> list:
    out = []
    for face in bounded_faces(arr):
        for c in spanning_lifts(arr, face, tsign):
            out.append(("lift", c))
        out.append(("polygon", polygon_saddle_sum(arr, face, tsign)))
    return out


def orbit_span(arr: LineArrangement, tsign: int = 1, check_coprime: bool = True) -> OrbitSpan:
    if check_coprime:
        _require_coprime(arr)
    g = build_real_graph(arr, tsign)
    gens = orbit_generators(arr, tsign)
    space = linalg.Subspace(len(g.basis_edges), (c.coeffs for _, c in gens))
    return OrbitSpan(space, gens)


def residue_annihilator(arr: LineArrangement, tsign: int = 1) -> linalg.Subspace:
    """Cycles on which every ``(1/2 pi i) int dl_i / l_i`` vanishes."""
    W = winding_matrix(arr, tsign)
    ncols = len(W.matrix[0])
    space = linalg.Subspace(ncols, linalg.nullspace(W.matrix, ncols))
    if space.dim != ncols - arr.d:
        raise GraphConsistencyError("annihilator has the wrong dimension")
    return space


@dataclass
class OrbitReport:
    b1: int
    d: int
    orbit_dim: int
    annihilator_dim: int
    contained: bool
    equal: bool
    genus: int
    delta_sum_zero: bool
    delta_rank: int
    direct_sum: bool
    counterexample: list = field(default_factory=list)

    @property
    def codimension(self) -> int:
        return self.b1 - self.orbit_dim

    @property
    def ok(self) -> bool:
        return (
            self.equal
            and self.codimension == self.d
            and self.delta_sum_zero
            and self.delta_rank == self.d
            and self.direct_sum
            and self.orbit_dim >= 2 * self.genus
        )

    def to_json(self) -> dict:
        out = {
            "b1": self.b1,
            "d": self.d,
            "orbit_dim": self.orbit_dim,
            "annihilator_dim": self.annihilator_dim,
            "codimension": self.codimension,
            "equal": self.equal,
            "genus": self.genus,
            "delta_sum_zero": self.delta_sum_zero,
            "delta_rank": self.delta_rank,
            "direct_sum": self.direct_sum,
        }
        if self.counterexample:
            out["counterexample"] = [[str(x) for x in v] for v in self.counterexample]
        return out


def complement_loops(arr: LineArrangement, tsign: int = 1) -> list:
    """``d`` saddle loops whose windings are independent."""
    W = winding_matrix(arr, tsign)
    g = build_real_graph(arr, tsign)
    picked, rows = [], linalg.Subspace(len(arr.lines))
    for pair, h in g.vertices:
        c = saddle_loop_class(arr, pair, h, tsign)
        if rows.add(W.apply(c)):
            picked.append(c)
        if len(picked) == arr.d:
            break
    return picked


def verify_orbit_theorem(arr: LineArrangement, tsign: int = 1) -> OrbitReport:
    _require_coprime(arr)
    g = build_real_graph(arr, tsign)
    b1 = len(g.basis_edges)
    orb = orbit_span(arr, tsign)
    ann = residue_annihilator(arr, tsign)
    contained = ann.contains_subspace(orb.space)
    equal = contained and orb.dim == ann.dim
    counter = [v for v in ann.basis if v not in orb.space] if not equal else []
    counter += [v for v in orb.basis if v not in ann]
    deltas = line_alternating_classes(arr, tsign)
    total = [sum(col, Fraction(0)) for col in zip(*(c.coeffs for c in deltas))]
    delta_rank = linalg.rank([c.coeffs for c in deltas])
    whole = linalg.Subspace(b1, orb.basis).extend(c.coeffs for c in complement_loops(arr, tsign))
    direct = whole.dim == b1 and orb.dim + arr.d == b1
    return OrbitReport(
        b1=b1,
        d=arr.d,
        orbit_dim=orb.dim,
        annihilator_dim=ann.dim,
        contained=contained,
        equal=equal,
        genus=genus(arr),
        delta_sum_zero=all(x == 0 for x in total),
        delta_rank=delta_rank,
        direct_sum=direct,
        counterexample=counter,
    )


# ---------------------------------------------------------------- saddle signs


def positive_orientations(arr: LineArrangement) -> tuple[dict, dict]:
    """Signs ``eps_P`` of the saddle loops and ``eta_i`` of the lines.

    ``delta^i = eta_i * sum_k (-1)^k eps_{P_k} delta_{P_k}`` over the points
    ``P_k`` met along ``l_i``.  The signs are fixed by requiring
    ``sum_i delta^i = 0``: at ``P = l_i cap l_j`` the two contributions must
    cancel, which is a two-colouring problem for ``eta``.  It is solvable for
    every generic arrangement; a failure is raised, not patched.
    """
    require_valid(arr)
    nl = len(arr.lines)
    pos = {}
    for i in range(nl):
        for k, (pair, _) in enumerate(points_along(arr, i)):
            pos[(i, pair)] = k
    # eta_i eta_j = -(-1)^{pos_i(P) + pos_j(P)}
    rel = {}
    for i, j in combinations(range(nl), 2):
        r = -((-1) ** (pos[(i, (i, j))] + pos[(j, (i, j))]))
        rel[(i, j)] = rel[(j, i)] = r
    eta = {0: 1}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(nl):
            if j != i and j not in eta:
                eta[j] = eta[i] * rel[(i, j)]
                queue.append(j)
    for i, j in combinations(range(nl), 2):
        if eta[i] * eta[j] != rel[(i, j)]:
            raise GraphConsistencyError(f"no sign choice makes the line sums cancel at lines {i}, {j}")
    eps = {}
    for i, j in combinations(range(nl), 2):
        eps[(i, j)] = eta[i] * (-1) ** pos[(i, (i, j))]
    return eps, eta


def line_alternating_classes(arr: LineArrangement, tsign: int = 1) -> list:
    """The classes ``delta^1 .. delta^{d+1}``."""
    _require_coprime(arr)
    eps, eta = positive_orientations(arr)
    out = []
    for i in range(len(arr.lines)):
        acc = None
        for k, (pair, _) in enumerate(points_along(arr, i)):
            c = saddle_loop_class(arr, pair, 0, tsign).scale(eta[i] * (-1) ** k * eps[pair])
            acc = c if acc is None else acc + c
        out.append(CycleClass(acc.coeffs, f"delta^{i + 1}"))
    return out


def saddle_span_basis_check(arr: LineArrangement, tsign: int = 1) -> bool:
    """``delta^1..delta^d`` with the polygon sums form a basis of the loop span."""
    g = build_real_graph(arr, tsign)
    loops = linalg.Subspace(len(g.basis_edges), (saddle_loop_class(arr, p, h, tsign).coeffs for p, h in g.vertices))
    deltas = line_alternating_classes(arr, tsign)[: arr.d]
    polys = [polygon_saddle_sum(arr, f, tsign) for f in bounded_faces(arr)]
    vecs = [c.coeffs for c in deltas + polys]
    expected = arr.d * (arr.d + 1) // 2
    return (
        loops.dim == expected
        and len(vecs) == expected
        and linalg.rank(vecs) == expected
        and loops.contains_subspace(linalg.Subspace(loops.ambient, vecs))
    )


# ---------------------------------------------------------------- adjacency


@dataclass(frozen=True)
class AdjacencySign:
    intersection: int
    epsilon: int
    exponent: int
    probe: tuple


def _shared_side(f1: BoundedFace, f2: BoundedFace, line: int):
    for s1 in f1.sides:
        if s1.line != line:
            continue
        for s2 in f2.sides:
            if s2.line == line and {s1.start, s1.end} == {s2.start, s2.end}:
                return s1
    return None


def adjacency_sign(arr: LineArrangement, face1: BoundedFace, face2: BoundedFace, line: int) -> AdjacencySign:
    """Intersection sign of the two ovals' joining cycle and the parity bit.

    With anticlockwise ovals and the joining cycle oriented from ``face1`` to
    ``face2`` the intersection number is ``+1``.  ``epsilon`` is 0 when ``f``
    is positive just inside ``face1`` next to the midpoint of the shared side.
    """
    side = _shared_side(face1, face2, line)
    if side is None:
        raise ArrangementError(f"faces {face1.index} and {face2.index} do not share a side on line {line}")
    coords = dict(points_along(arr, line))
    a, b = coords[side.start], coords[side.end]
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    cx, cy = face1.centroid
    # a point a short way from the midpoint toward face1's centroid stays in face1
    probe = None
    step = Fraction(1, 2)
    for _ in range(60):
        p = (mid[0] + step * (cx - mid[0]), mid[1] + step * (cy - mid[1]))
        if all(
            (arr.lines[k](*p) > 0) == (face1.signs[k] > 0) and arr.lines[k](*p) != 0 for k in range(len(arr.lines))
        ):
            probe = p
            break
        step /= 2
    if probe is None:
        raise ArrangementError("could not place a probe point inside the face")
    eps = 0 if arr.f(*probe) > 0 else 1
    return AdjacencySign(1, eps, arr.multiplicities[line] // 2 + eps, probe)


def adjacent_pairs(arr: LineArrangement):
    faces = bounded_faces(arr)
    for f1, f2 in combinations(faces, 2):
        for line in set(f1.lines) & set(f2.lines):
            if _shared_side(f1, f2, line) is not None:
                yield f1, f2, line
