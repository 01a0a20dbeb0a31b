"""Numerical windings of the cycles of ``Gcheck`` on an actual fibre.

Every edge of the graph is realised as a path on ``f = t`` in ``C^2``:

* from the base point of its starting cylinder, turn ``v`` at constant
  modulus until the edge's attachment angle is reached (and, for segments on
  the ``v = 0`` line, move radially and then along a straight ``u`` line);
* follow the chosen sheet along the real segment;
* return to the base point of the end cylinder the same way.

Consecutive edges of a cycle share base points, so a cycle becomes a closed
path and ``(1/2 pi) sum d arg l_k`` along it is its winding.  Nothing here
reads the exact weights of the graph; only the combinatorial data (cylinder,
attachment angle, sheet) is reused to decide where each path goes, and the
endpoints of independently traced pieces must agree.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .arrangement import LineArrangement, points_along, require_valid
from .fiber_graph import build_real_graph
from .kernels import fibre_newton, trace_piece
from .local_model import build as build_local

TWO_PI = 2.0 * math.pi


class OracleError(RuntimeError):
    pass


@dataclass
class _Vertex:
    LP: np.ndarray  # values of all lines at P
    LE: dict  # line -> values of the linear parts on its dual vector
    rho: float
    c: float
    lo: int
    hi: int


def _c(v) -> np.ndarray:
    return np.asarray(v, dtype=np.complex128)


class FibreTracer:
    """Realises the edges of ``Gcheck`` as paths on ``f = t``."""

    def __init__(self, arr: LineArrangement, tsign: int = 1, neck: float = 0.02, margin: float = 0.05, nmin: int = 40):
        require_valid(arr)
        self.arr = arr
        self.graph = build_real_graph(arr, tsign)
        self.N = np.array([float(k) for k in arr.multiplicities])
        self.nmin = nmin
        ns = arr.multiplicities
        lines = arr.lines
        nl = len(lines)
        along = {i: dict(points_along(arr, i)) for i in range(nl)}
        self.vertices = {}
        for lo, hi in combinations(range(nl), 2):
            L1, L2 = lines[lo], lines[hi]
            P = L1.meet(L2)
            det = L1.a * L2.b - L1.b * L2.a
            # columns of the inverse of [[a_lo, b_lo], [a_hi, b_hi]]
            E = {lo: (L2.b / det, -L2.a / det), hi: (-L1.b / det, L1.a / det)}
            LE = {j: np.array([float(l.a * E[j][0] + l.b * E[j][1]) for l in lines]) for j in (lo, hi)}
            LP = np.array([float(l(*P)) for l in lines])
            room = []
            for line, other in ((lo, hi), (hi, lo)):
                for pair, Q in along[line].items():
                    if pair != (lo, hi):
                        room.append(abs(float(lines[other](*Q))))
            # keep the other lines within a few percent of their value at P
            for k in range(nl):
                if k not in (lo, hi):
                    room.append(abs(LP[k]) / (abs(LE[lo][k]) + abs(LE[hi][k])))
            rho = margin * min(room)
            c = math.prod(LP[k] ** ns[k] for k in range(nl) if k not in (lo, hi))
            self.vertices[(lo, hi)] = _Vertex(LP, LE, rho, c, lo, hi)
        tmag = min(abs(V.c) * (neck * V.rho) ** ns[V.lo] * V.rho ** ns[V.hi] for V in self.vertices.values())
        self.t = tsign * tmag
        self.logt = complex(math.log(tmag), 0.0 if tsign > 0 else math.pi)
        self._base = {}
        self._arc = {}

    def _trace(self, L0, Ll, Le, c0, c1, D0, D1, s0, s1, w0):
        w, darg, status, _ = trace_piece(
            self.N, _c(L0), _c(Ll), _c(Le), complex(c0), complex(c1), _c(D0), _c(D1),
            float(s0), float(s1), complex(w0), self.logt, self.nmin,
        )
        if status != 0:
            raise OracleError("continuation step size collapsed")
        return complex(w), np.asarray(darg)

    def _local(self, pair):
        V = self.vertices[pair]
        ns = self.arr.multiplicities
        return V, build_local(ns[V.lo], ns[V.hi])

    def base(self, pair, h):
        """``u`` at the base point of cylinder ``h`` (where ``v = rho``)."""
        key = (pair, h)
        if key not in self._base:
            V, loc = self._local(pair)
            T = self.t / V.c
            phi_T = 0 if T > 0 else 1
            alpha0 = (phi_T / 2 + h) / loc.m
            u0 = (abs(T) / V.rho**loc.n) ** (1.0 / loc.m) * cmath.exp(1j * TWO_PI * alpha0)
            Lb = _c(V.LP + V.rho * V.LE[V.hi])
            self._base[key] = complex(fibre_newton(self.N, Lb, _c(V.LE[V.lo]), u0, self.logt))
        return self._base[key]

    def _rotation(self, pair, u_start, angle_to):
        V = self.vertices[pair]
        zero = np.zeros_like(V.LP)
        return self._trace(V.LP, zero, V.LE[V.hi], math.log(V.rho), 1j, V.LE[V.lo], zero, 0.0, angle_to, u_start)

    def arc(self, att):
        """Base point to attachment: ``((u, v), darg)`` at the end."""
        key = (att.pair, att.h, att.theta, att.on_low_side, att.other_sign)
        if key in self._arc:
            return self._arc[key]
        V, loc = self._local(att.pair)
        zero = np.zeros_like(V.LP)
        angle = -TWO_PI * loc.p * float(att.theta)
        u, darg = self._rotation(att.pair, self.base(att.pair, att.h), angle)
        if att.on_low_side:
            end = (u, complex(att.other_sign * V.rho))
        else:
            # shrink |v| until |u| reaches rho, then walk u to the real axis
            T = abs(self.t / V.c)
            r_end = (T / V.rho**loc.m) ** (1.0 / loc.n)
            u, d2 = self._trace(
                V.LP, zero, V.LE[V.hi], complex(math.log(V.rho), angle), -1.0, V.LE[V.lo], zero,
                0.0, math.log(V.rho / r_end), u,
            )
            target = att.other_sign * V.rho
            v, d3 = self._trace(
                V.LP + u * V.LE[V.lo], (target - u) * V.LE[V.lo], zero, 0.0, 0.0, V.LE[V.hi], zero,
                0.0, 1.0, r_end * cmath.exp(1j * angle),
            )
            darg = darg + d2 + d3
            end = (complex(target), v)
        self._arc[key] = (end, darg)
        return end, darg

    def loop(self, pair, h):
        V, loc = self._local(pair)
        u0 = self.base(pair, h)
        u, darg = self._rotation(pair, u0, -TWO_PI * loc.p)
        if abs(u - u0) > 1e-8 * abs(u0):
            raise OracleError(f"loop at {pair}[{h}] does not close")
        return darg

    def _segment_end(self, att, end):
        """Real base point on the segment and the sheet value there."""
        V = self.vertices[att.pair]
        u, v = end
        if att.on_low_side:
            return V.LP + v.real * V.LE[V.hi], u, V.LE[V.lo]
        return V.LP + u.real * V.LE[V.lo], v, V.LE[V.hi]

    def edge(self, idx):
        """Winding (in turns) of one oriented edge traced base to base."""
        e = self.graph.edges[idx]
        if e.is_loop:
            return self.loop(e.label[1], e.label[2]) / TWO_PI
        aP = self.graph.attachments[(idx, 0)]
        aQ = self.graph.attachments[(idx, 1)]
        endP, dP = self.arc(aP)
        endQ, dQ = self.arc(aQ)
        bP, wP, DP = self._segment_end(aP, endP)
        bQ, wQ, DQ = self._segment_end(aQ, endQ)
        zero = np.zeros_like(bP)
        w, dS = self._trace(bP, bQ - bP, zero, 0.0, 0.0, DP, DQ - DP, 0.0, 1.0, wP)
        if abs(w - wQ) > 1e-7 * abs(wQ):
            raise OracleError(f"segment copy {e.label} lands on the wrong sheet")
        return (dP + dS - dQ) / TWO_PI


def numeric_winding_matrix(arr: LineArrangement, tsign: int = 1, **kw) -> np.ndarray:
    """Windings of the basis cycles, one column per cycle, traced numerically."""
    tr = FibreTracer(arr, tsign, **kw)
    g = tr.graph
    edge_w = {}
    cols = []
    for idx in g.basis_edges:
        total = np.zeros(len(arr.lines))
        for k, c in g.fundamental_cycle(idx).items():
            if k not in edge_w:
                edge_w[k] = tr.edge(k)
            total += c * edge_w[k]
        cols.append(total)
    return np.array(cols).T


def compare_windings(arr: LineArrangement, tsign: int = 1, **kw) -> float:
    """Largest deviation between numeric and exact windings of basis cycles."""
    from .fiber_graph import winding_matrix

    W = winding_matrix(arr, tsign)
    exact = np.array([[float(x) for x in row] for row in W.matrix])
    num = numeric_winding_matrix(arr, tsign, **kw)
    return float(np.max(np.abs(exact - num)))
