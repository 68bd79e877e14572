"""Bracket and Jones invariants of multi-knotoids on the plane, annulus and torus."""

from .bracket import Flavor, bracket, collapse_universal, jones, reduce_toroidal, specialize_turaev, state_weight
from .diagram import (
    Crossing,
    CrossingKey,
    Diagram,
    Strand,
    crossing_sign,
    detect_crossings,
    insert_r1_kink,
    mirror,
    translate_diagram,
    validate,
    writhe,
)
from .errors import KnotoidError
from .geometry import Point, Surface, pt
from .io import parse_diagram, serialize_diagram
from .laurent import LaurentPoly, canonical_string, d_poly, parse_poly
from .library import example
from .mixed import h_template, linking_number, o_template, to_h_mixed, to_o_mixed
from .states import StateSummary, classify_state, enumerate_states, smooth_all, trace_components
from .svg import render_svg

__all__ = [
    "Crossing", "CrossingKey", "Diagram", "Flavor", "KnotoidError", "LaurentPoly", "Point", "StateSummary",
    "Strand", "Surface", "bracket", "canonical_string", "classify_state", "collapse_universal", "crossing_sign",
    "d_poly", "detect_crossings", "enumerate_states", "example", "h_template", "insert_r1_kink", "jones",
    "linking_number", "mirror", "o_template", "parse_diagram", "parse_poly", "pt", "reduce_toroidal",
    "render_svg", "serialize_diagram", "smooth_all", "specialize_turaev", "state_weight", "to_h_mixed",
    "to_o_mixed", "trace_components", "translate_diagram", "validate", "writhe",
]
