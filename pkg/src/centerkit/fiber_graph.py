"""Graph models of a regular fibre ``L_t`` of ``f = prod l_i^{n_i}``.

Two models are built:

* ``G``: one *sigma* vertex per point of a generic vertical line meeting
  ``L_t`` (``n_i`` of them near ``l_i``), one *saddle* vertex per cylinder
  over each ``l_i cap l_j`` (``gcd(n_i, n_j)`` of them), legs joining a saddle
  cylinder ``h`` to the sigma sheets ``x = h (mod e)``, and one loop per
  saddle vertex.
* ``Gcheck`` (written ``real`` below): for a real arrangement, saddle vertices
  at the intersection points, ``n_i`` parallel edges per finite segment of
  ``l_i`` (one per sheet of ``L_t`` over the segment) and one loop per vertex.

``Gcheck`` also carries exact winding data.  Near ``P = l_lo cap l_hi`` we use
``(u, v) = (l_lo, l_hi)`` as coordinates; the fibre is
``u^m v^n = T`` with ``m = n_lo``, ``n = n_hi``, and cylinder ``h`` is the
circle ``theta -> (arg u, arg v) = (alpha_0 + q theta, -p theta)`` (in turns)
based at ``v`` real positive.  Every edge end is joined to its cylinder's
base point by the arc ``0 -> theta``; the change of ``arg l_k`` along the
pieces gives each oriented edge a rational winding vector whose sums over
closed cycles are the functionals ``(1/2 pi i) int dl_k / l_k``.
The fibre is taken at small ``t`` with sign ``tsign``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm, prod

from . import linalg
from .arrangement import (
    ArrangementError,
    BoundedFace,
    LineArrangement,
    bounded_faces,
    points_along,
    require_valid,
    segments,
)
from .local_model import build as build_local


class GraphConsistencyError(RuntimeError):
    """Two independent counts or constructions disagree."""


@dataclass(frozen=True)
class Edge:
    src: tuple
    dst: tuple
    label: tuple

    @property
    def is_loop(self) -> bool:
        return self.label[0] == "loop"


@dataclass(frozen=True)
class Attachment:
    """Where one end of a segment copy meets a cylinder."""

    pair: tuple
    h: int
    theta: Fraction
    line: int
    sheet: int
    on_low_side: bool  # the segment lies on l_lo (so u is small there)
    other_sign: int  # sign of the other line of ``pair`` along the segment


@dataclass(frozen=True)
class CycleClass:
    coeffs: tuple
    label: str = ""

    def __add__(self, other):
        return CycleClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), "")

    def __sub__(self, other):
        return CycleClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), "")

    def scale(self, c) -> "CycleClass":
        return CycleClass(tuple(c * a for a in self.coeffs), self.label)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)


@dataclass
class FiberGraph:
    model: str
    vertices: tuple
    edges: tuple
    nlines: int
    weights: dict = field(default_factory=dict, repr=False)
    attachments: dict = field(default_factory=dict, repr=False)
    tsign: int = 1

    def __post_init__(self):
        self._index = {v: k for k, v in enumerate(self.vertices)}
        self._tree = None

    # -- counts
    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_loops(self) -> int:
        return sum(1 for e in self.edges if e.is_loop)

    @property
    def betti(self) -> int:
        return self.n_edges - self.n_vertices + 1

    def degree(self, v, with_loops=False) -> int:
        k = 0
        for e in self.edges:
            if e.is_loop:
                k += 2 * (with_loops and e.src == v)
            else:
                k += (e.src == v) + (e.dst == v)
        return k

    # -- spanning tree and cycle basis
    def _build_tree(self):
        adj = {v: [] for v in self.vertices}
        for idx, e in enumerate(self.edges):
            if not e.is_loop:
                adj[e.src].append((idx, e.dst))
                adj[e.dst].append((idx, e.src))
        root = self.vertices[0]
        parent = {root: None}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for idx, w in adj[v]:
                if w not in parent:
                    parent[w] = (idx, v)
                    queue.append(w)
        tree_edges = {pe[0] for pe in parent.values() if pe is not None}
        basis = tuple(idx for idx in range(len(self.edges)) if idx not in tree_edges)
        self._tree = (parent, tree_edges, basis)

    def is_connected(self) -> bool:
        if self._tree is None:
            self._build_tree()
        return len(self._tree[0]) == len(self.vertices)

    @property
    def basis_edges(self) -> tuple:
        """Edge indices of the non-tree edges; basis cycle ``k`` contains edge ``basis_edges[k]``."""
        if self._tree is None:
            self._build_tree()
        if not self.is_connected():
            raise GraphConsistencyError(f"{self.model} graph is disconnected")
        return self._tree[2]

    def _up(self, v) -> dict:
        parent = self._tree[0]
        chain: dict[int, int] = {}
        while parent[v] is not None:
            idx, w = parent[v]
            e = self.edges[idx]
            chain[idx] = chain.get(idx, 0) + (1 if e.src == v else -1)
            v = w
        return chain

    def fundamental_cycle(self, idx: int) -> dict:
        """Edge chain of the basis cycle through non-tree edge ``idx``."""
        e = self.edges[idx]
        chain = {idx: 1}
        if e.is_loop:
            return chain
        for k, c in self._up(e.dst).items():
            chain[k] = chain.get(k, 0) + c
        for k, c in self._up(e.src).items():
            chain[k] = chain.get(k, 0) - c
        return {k: c for k, c in chain.items() if c != 0}

    def boundary(self, chain: dict) -> dict:
        out: dict = {}
        for idx, c in chain.items():
            e = self.edges[idx]
            if e.is_loop:
                continue
            out[e.dst] = out.get(e.dst, 0) + c
            out[e.src] = out.get(e.src, 0) - c
        return {v: c for v, c in out.items() if c != 0}

    def coords(self, chain: dict, label: str = "") -> CycleClass:
        if self.boundary(chain):
            raise GraphConsistencyError("chain is not closed")
        return CycleClass(tuple(Fraction(chain.get(idx, 0)) for idx in self.basis_edges), label)

    def chain_of(self, cycle: CycleClass) -> dict:
        out: dict = {}
        for c, idx in zip(cycle.coeffs, self.basis_edges):
            if c != 0:
                for k, v in self.fundamental_cycle(idx).items():
                    out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v != 0}

    # -- windings (real model only)
    def chain_winding(self, chain: dict) -> tuple:
        w = [Fraction(0)] * self.nlines
        for idx, c in chain.items():
            for k, x in enumerate(self.weights[idx]):
                w[k] += c * x
        return tuple(w)

    def loop_index(self, pair, h) -> int:
        return self._loops[(pair, h)]


# ---------------------------------------------------------------- model G


def build_graph(arr: LineArrangement) -> FiberGraph:
    """The deformation-retract graph ``G`` (no real structure needed)."""
    require_valid(arr)
    nl = len(arr.lines)
    ns = arr.multiplicities
    verts = [("sigma", i, x) for i in range(nl) for x in range(ns[i])]
    edges = []
    for i, j in combinations(range(nl), 2):
        e = gcd(ns[i], ns[j])
        for h in range(e):
            verts.append(("saddle", (i, j), h))
    for i, j in combinations(range(nl), 2):
        e = gcd(ns[i], ns[j])
        for h in range(e):
            sv = ("saddle", (i, j), h)
            for line in (i, j):
                for x in range(h, ns[line], e):
                    edges.append(Edge(sv, ("sigma", line, x), ("leg", (i, j), h, line, x)))
            edges.append(Edge(sv, sv, ("loop", (i, j), h)))
    g = FiberGraph("G", tuple(verts), tuple(edges), nl)
    _check_counts(arr, g)
    return g


def _check_counts(arr, g: FiberGraph) -> None:
    ns = arr.multiplicities
    pairs = list(combinations(range(len(ns)), 2))
    sum_e = sum(gcd(ns[i], ns[j]) for i, j in pairs)
    if g.model == "G":
        exp_v = arr.n + sum_e
        exp_e = sum(ns[i] + ns[j] for i, j in pairs) + sum_e
    else:
        exp_v = sum_e
        exp_e = sum(ns[i] for i, _, _ in segments(arr)) + sum_e
    if (g.n_vertices, g.n_edges, g.n_loops) != (exp_v, exp_e, sum_e):
        raise GraphConsistencyError(f"{g.model}: counts {(g.n_vertices, g.n_edges)} != {(exp_v, exp_e)}")
    if not g.is_connected():
        raise GraphConsistencyError(f"{g.model} graph is disconnected")


# ---------------------------------------------------------------- model Gcheck


def _sign(x) -> int:
    return 1 if x > 0 else -1


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _attach(arr: LineArrangement, tsign: int, line: int, pair, far_point, mid_point, sheet: int) -> Attachment:
    lo, hi = pair
    other = hi if line == lo else lo
    ns = arr.multiplicities
    other_sign = _sign(arr.lines[other](*far_point))
    g_sign = prod(
        (_sign(arr.lines[k](*mid_point)) ** ns[k] for k in range(len(ns)) if k != line),
        start=1,
    )
    phi_seg = 0 if tsign * g_sign > 0 else 1
    sheet_arg = Fraction(phi_seg + 2 * sheet, 2 * ns[line])
    other_arg = Fraction(0) if other_sign > 0 else Fraction(1, 2)
    A, B = (sheet_arg, other_arg) if line == lo else (other_arg, sheet_arg)

    P = arr.lines[lo].meet(arr.lines[hi])
    c_sign = prod((_sign(arr.lines[k](*P)) ** ns[k] for k in range(len(ns)) if k not in pair), start=1)
    phi_T = 0 if tsign * c_sign > 0 else 1
    loc = build_local(ns[lo], ns[hi])
    h_raw = loc.e * (loc.p * A + loc.q * B) - Fraction(phi_T, 2)
    if h_raw.denominator != 1:
        raise GraphConsistencyError(f"attachment at {pair} is not on a cylinder")
    h = int(h_raw) % loc.e
    alpha0 = Fraction(phi_T, 2 * loc.m) + Fraction(h, loc.m)
    dA, dB = A - alpha0, B
    theta = _frac_part(-(loc.a * dB + loc.b * dA))
    if _frac_part(loc.q * theta - dA) != 0 or _frac_part(-loc.p * theta - dB) != 0:
        raise GraphConsistencyError("cylinder angle does not reach the attachment")
    return Attachment(pair, h, theta, line, sheet, line == lo, other_sign)


def _half_weight(arr, att: Attachment) -> list:
    lo, hi = att.pair
    loc = build_local(arr.multiplicities[lo], arr.multiplicities[hi])
    w = [Fraction(0)] * len(arr.lines)
    w[lo] += loc.q * att.theta
    w[hi] -= loc.p * att.theta
    return w


def loop_weight(arr, pair) -> tuple:
    lo, hi = pair
    loc = build_local(arr.multiplicities[lo], arr.multiplicities[hi])
    w = [Fraction(0)] * len(arr.lines)
    w[lo] = Fraction(loc.q)
    w[hi] = Fraction(-loc.p)
    return tuple(w)


@lru_cache(maxsize=64)
def build_real_graph(arr: LineArrangement, tsign: int = 1) -> FiberGraph:
    """The real-picture graph ``Gcheck`` with exact winding weights."""
    require_valid(arr)
    if tsign not in (1, -1):
        raise ValueError("tsign must be +1 or -1")
    nl = len(arr.lines)
    ns = arr.multiplicities
    verts = []
    for i, j in combinations(range(nl), 2):
        for h in range(gcd(ns[i], ns[j])):
            verts.append(((i, j), h))
    coords = {}
    for i in range(nl):
        for pair, pt in points_along(arr, i):
            coords[pair] = pt
    edges, weights, atts = [], {}, {}
    for sidx, (i, P, Q) in enumerate(segments(arr)):
        mid = ((coords[P][0] + coords[Q][0]) / 2, (coords[P][1] + coords[Q][1]) / 2)
        for x in range(ns[i]):
            aP = _attach(arr, tsign, i, P, coords[Q], mid, x)
            aQ = _attach(arr, tsign, i, Q, coords[P], mid, x)
            idx = len(edges)
            edges.append(Edge((P, aP.h), (Q, aQ.h), ("seg", i, sidx, x)))
            wP, wQ = _half_weight(arr, aP), _half_weight(arr, aQ)
            weights[idx] = tuple(a - b for a, b in zip(wP, wQ))
            atts[(idx, 0)] = aP
            atts[(idx, 1)] = aQ
    loops = {}
    for pair, h in verts:
        loops[(pair, h)] = len(edges)
        weights[len(edges)] = loop_weight(arr, pair)
        edges.append(Edge((pair, h), (pair, h), ("loop", pair, h)))
    g = FiberGraph("Gcheck", tuple(verts), tuple(edges), nl, weights, atts, tsign)
    g._loops = loops
    g.segment_list = tuple(segments(arr))
    g.coordinates = coords
    _check_counts(arr, g)
    return g


# ---------------------------------------------------------------- counts


def h1_rank(arr: LineArrangement) -> int:
    """``(d-1) n + 1``, checked against the Betti numbers of both graphs."""
    require_valid(arr)
    r = (arr.d - 1) * arr.n + 1
    for g in (build_graph(arr), build_real_graph(arr)):
        if g.betti != r:
            raise GraphConsistencyError(f"b1({g.model}) = {g.betti} but the rank formula gives {r}")
    return r


def genus_numerator(arr: LineArrangement) -> int:
    n = arr.n
    return (arr.d - 1) * n + 2 - sum(gcd(k, n) for k in arr.multiplicities)


def genus(arr: LineArrangement) -> int:
    """Genus of the compactified, desingularised fibre."""
    require_valid(arr)
    num = genus_numerator(arr)
    if num % 2 or num < 0:
        raise GraphConsistencyError(f"genus numerator {num} is odd or negative")
    return num // 2


# ---------------------------------------------------------------- cycles


def saddle_loop_class(arr: LineArrangement, pair, h: int = 0, tsign: int = 1) -> CycleClass:
    g = build_real_graph(arr, tsign)
    pair = tuple(sorted(pair))
    try:
        idx = g.loop_index(pair, h)
    except KeyError:
        raise ArrangementError(f"no saddle cylinder {h} at {pair}") from None
    return g.coords({idx: 1}, f"delta_{pair[0] + 1}{pair[1] + 1}" + (f"[{h}]" if h else ""))


def _face_sides(g: FiberGraph, face: BoundedFace):
    """Per side: list of ``(edge_index, orientation, cyl_at_start, cyl_at_end)``."""
    seg_index = {}
    for sidx, (i, P, Q) in enumerate(g.segment_list):
        seg_index[(i, P, Q)] = (sidx, 1)
        seg_index[(i, Q, P)] = (sidx, -1)
    by_seg: dict = {}
    for idx, e in enumerate(g.edges):
        if e.label[0] == "seg":
            by_seg.setdefault(e.label[2], []).append(idx)
    out = []
    for side in face.sides:
        sidx, o = seg_index[(side.line, side.start, side.end)]
        copies = []
        for idx in by_seg[sidx]:
            e = g.edges[idx]
            hs, he = (e.src[1], e.dst[1]) if o == 1 else (e.dst[1], e.src[1])
            copies.append((idx, o, hs, he))
        out.append(copies)
    return out


def lift_choices(g: FiberGraph, face: BoundedFace):
    """All compatible tuples of copies, one per side."""
    sides = _face_sides(g, face)
    s = len(sides)
    out = []

    def rec(r, acc):
        if r == s:
            if acc[-1][3] == acc[0][2]:
                out.append(tuple(acc))
            return
        for c in sides[r]:
            if r == 0 or acc[-1][3] == c[2]:
                rec(r + 1, acc + [c])

    rec(0, [])
    return out


def _corner_loops(g: FiberGraph, face: BoundedFace, choice) -> list:
    """Loop edge index at the start vertex of each side for a given lift."""
    return [g.loop_index(face.sides[r].start, choice[r][2]) for r in range(len(face.sides))]


def _zero_winding(g: FiberGraph, chain: dict, loops: list) -> dict:
    """Add loops at the given corners so that every winding vanishes.

    The correction is the particular solution with free variables zero, so
    it depends linearly on the chain.
    """
    w = g.chain_winding(chain)
    cols = [g.weights[idx] for idx in loops]
    rows = [[col[k] for col in cols] for k in range(g.nlines)]
    sol, bad = linalg.solve(rows, [-x for x in w])
    if sol is None:
        raise GraphConsistencyError("corner loops cannot cancel the winding of a face lift")
    out = dict(chain)
    for idx, c in zip(loops, sol):
        if c != 0:
            out[idx] = out.get(idx, 0) + c
    return out


def _lift_chain(choice) -> dict:
    chain: dict = {}
    for idx, o, _, _ in choice:
        chain[idx] = chain.get(idx, 0) + o
    return chain


def center_cycle_lifts(arr: LineArrangement, face: BoundedFace, tsign: int = 1, corrected: bool = True) -> list:
    """Every lift of the boundary of ``face`` to ``Gcheck``.

    A lift picks one copy of each side such that consecutive copies meet in
    the same cylinder.  With ``corrected`` the corner loops that make all
    windings vanish are added, as they must be for a cycle obtained from a
    vanishing oval by monodromy.
    """
    g = build_real_graph(arr, tsign)
    out = []
    for choice in lift_choices(g, face):
        chain = _lift_chain(choice)
        if corrected:
            chain = _zero_winding(g, chain, _corner_loops(g, face, choice))
        label = f"face{face.index}:" + ",".join(str(g.edges[c[0]].label[3]) for c in choice)
        out.append(g.coords(chain, label))
    return out


def spanning_lifts(arr: LineArrangement, face: BoundedFace, tsign: int = 1) -> list:
    """A subfamily of the lifts with the same span.

    When every tuple of copies is compatible the chain of a lift is a sum of
    per-side terms, so the first lift together with the lifts differing from
    it on a single side already span everything.  Otherwise all lifts are
    returned.
    """
    g = build_real_graph(arr, tsign)
    choices = lift_choices(g, face)
    sides = _face_sides(g, face)
    if len(choices) != prod(len(s) for s in sides):
        return center_cycle_lifts(arr, face, tsign)
    base = choices[0]
    picked = [base]
    for r, copies in enumerate(sides):
        for c in copies:
            if c != base[r]:
                picked.append(base[:r] + (c,) + base[r + 1 :])
    out = []
    for choice in picked:
        chain = _zero_winding(g, _lift_chain(choice), _corner_loops(g, face, choice))
        out.append(g.coords(chain, f"face{face.index}"))
    return out


def real_lift(arr: LineArrangement, face: BoundedFace, tsign: int = 1):
    """The lift through the real sheets (the real oval), or None when ``f``
    has the opposite sign to ``t`` inside the face."""
    sgn_f = prod((face.signs[k] ** arr.multiplicities[k] for k in range(len(arr.lines))), start=1)
    if sgn_f != tsign:
        return None
    g = build_real_graph(arr, tsign)
    sides = _face_sides(g, face)
    choice = []
    for side, copies in zip(face.sides, sides):
        want = Fraction(0) if face.signs[side.line] > 0 else Fraction(1, 2)
        for c in copies:
            if _frac_part(_sheet_arg(arr, g, c[0]) - want) == 0:
                choice.append(c)
                break
        else:
            raise GraphConsistencyError(f"no real sheet on side {side}")
    return tuple(choice)


def _sheet_arg(arr, g: FiberGraph, idx: int) -> Fraction:
    """Argument (in turns) of ``l_line`` on segment copy ``idx``."""
    e = g.edges[idx]
    line, sidx, x = e.label[1], e.label[2], e.label[3]
    i, P, Q = g.segment_list[sidx]
    cP, cQ = g.coordinates[P], g.coordinates[Q]
    mid = ((cP[0] + cQ[0]) / 2, (cP[1] + cQ[1]) / 2)
    ns = arr.multiplicities
    g_sign = prod((_sign(arr.lines[k](*mid)) ** ns[k] for k in range(len(ns)) if k != line), start=1)
    phi = 0 if g.tsign * g_sign > 0 else 1
    return Fraction(phi + 2 * x, 2 * ns[line])


def polygon_saddle_sum(arr: LineArrangement, face: BoundedFace, tsign: int = 1, choice=None) -> CycleClass:
    """``sum_r a / lcm(a_r, a_{r+1}) * delta_{r, r+1}`` with ``a = prod a_r``.

    ``delta`` at a corner is the loop of the cylinder the lift ``choice``
    passes through (default: the first compatible lift), oriented so that
    the sum carries no winding.  Under pairwise coprime multiplicities the
    coefficient is ``a / (a_r a_{r+1})``.
    """
    g = build_real_graph(arr, tsign)
    if choice is None:
        choice = lift_choices(g, face)[0]
    mults = face.multiplicities
    a = prod(mults)
    s = len(face.sides)
    chain: dict = {}
    for r in range(s):
        incoming, outgoing = face.sides[r - 1], face.sides[r]
        coeff = Fraction(a, lcm(mults[r - 1], mults[r]))
        sign = 1 if incoming.line < outgoing.line else -1
        idx = g.loop_index(outgoing.start, choice[r][2])
        chain[idx] = chain.get(idx, 0) + sign * coeff
    return g.coords(chain, f"polygon{face.index}")


# ---------------------------------------------------------------- windings


@dataclass(frozen=True)
class WindingFunctionals:
    matrix: tuple  # (d+1) rows, one column per basis cycle
    multiplicities: tuple

    @property
    def rank(self) -> int:
        return linalg.rank(self.matrix)

    def apply(self, cycle: CycleClass) -> tuple:
        return linalg.matvec(self.matrix, cycle.coeffs)

    def relation_holds(self) -> bool:
        cols = len(self.matrix[0])
        return all(
            sum((n * row[c] for n, row in zip(self.multiplicities, self.matrix)), Fraction(0)) == 0
            for c in range(cols)
        )


def winding_matrix(arr: LineArrangement, tsign: int = 1) -> WindingFunctionals:
    g = build_real_graph(arr, tsign)
    cols = [g.chain_winding(g.fundamental_cycle(idx)) for idx in g.basis_edges]
    matrix = tuple(tuple(col[k] for col in cols) for k in range(len(arr.lines)))
    W = WindingFunctionals(matrix, arr.multiplicities)
    if not W.relation_holds():
        raise GraphConsistencyError("sum n_i W_i does not vanish")
    if W.rank != arr.d:
        raise GraphConsistencyError(f"winding matrix has rank {W.rank}, expected {arr.d}")
    return W


def all_faces(arr):
    return bounded_faces(arr)
