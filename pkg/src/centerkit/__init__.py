"""Logarithmic foliations defined by real line arrangements.

Exact topology of the fibres of ``f = prod l_i^{n_i}`` (graph models,
monodromy orbits, winding functionals), the tangent space of the
logarithmic stratum, numerical Melnikov integrals and the quadratic center
conditions.
"""
from .arrangement import LineArrangement, bounded_faces, validate
from .fiber_graph import genus, h1_rank

__all__ = ["LineArrangement", "bounded_faces", "validate", "genus", "h1_rank"]
