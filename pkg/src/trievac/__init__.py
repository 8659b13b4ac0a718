"""Evacuating two wireless agents from a non-obtuse triangle."""

from .bounds import BoundsReport, Interval, theorem_bounds
from .closed_form import closed_form_cost, l_edge, t_of_x, u_edge
from .geometry import DegenerateTriangle, ObtuseTriangle, Triangle, make_triangle
from .search_sim import StartSpec, worst_case_oracle

__all__ = [
    "BoundsReport",
    "DegenerateTriangle",
    "Interval",
    "ObtuseTriangle",
    "StartSpec",
    "Triangle",
    "closed_form_cost",
    "l_edge",
    "make_triangle",
    "t_of_x",
    "theorem_bounds",
    "u_edge",
    "worst_case_oracle",
]
