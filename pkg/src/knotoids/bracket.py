"""Bracket and Jones invariants in every flavor."""

from __future__ import annotations

import enum
from collections import Counter

from .diagram import ALL_MOVING, EXCLUDE_MIXED, Diagram, writhe
from .errors import FlavorMismatch
from .laurent import (
    ONE,
    RX,
    RY,
    T,
    V,
    X,
    LaurentPoly,
    Symbol,
    a_pow,
    d_poly,
    int_pow,
    spq_sym,
    spql_sym,
    substitute_where,
    tl_sym,
    vm_sym,
    xn_sym,
)
from .states import StateSummary, census


class Flavor(enum.Enum):
    PLANAR = "planar"
    UNIVERSAL_PLANAR = "universal-planar"
    ANNULAR = "annular"
    UNIVERSAL_ANNULAR = "universal-annular"
    TOROIDAL = "toroidal"
    UNIVERSAL_TOROIDAL = "universal-toroidal"
    REDUCED_TOROIDAL = "reduced-toroidal"
    O_MIXED = "o-mixed"
    UNIVERSAL_O_MIXED = "universal-o-mixed"
    H_MIXED = "h-mixed"
    UNIVERSAL_H_MIXED = "universal-h-mixed"
    REDUCED_H_MIXED = "reduced-h-mixed"
    TURAEV = "turaev-specialized"

    @classmethod
    def parse(cls, name: str) -> Flavor:
        try:
            return cls(name.lower().replace("_", "-"))
        except ValueError:
            raise FlavorMismatch(f"unknown flavor {name!r}") from None

    @property
    def kind(self) -> str | None:
        """Diagram kind the flavor applies to; None for any."""
        return _KIND[self]

    @property
    def universal(self) -> bool:
        return self.value.startswith("universal")

    @property
    def reduced(self) -> bool:
        return self.value.startswith("reduced")


_KIND = {
    Flavor.PLANAR: "plane", Flavor.UNIVERSAL_PLANAR: "plane",
    Flavor.ANNULAR: "annulus", Flavor.UNIVERSAL_ANNULAR: "annulus",
    Flavor.TOROIDAL: "torus", Flavor.UNIVERSAL_TOROIDAL: "torus", Flavor.REDUCED_TOROIDAL: "torus",
    Flavor.O_MIXED: "o-mixed", Flavor.UNIVERSAL_O_MIXED: "o-mixed",
    Flavor.H_MIXED: "h-mixed", Flavor.UNIVERSAL_H_MIXED: "h-mixed", Flavor.REDUCED_H_MIXED: "h-mixed",
    Flavor.TURAEV: None,
}

# flavors offered for each diagram kind
FLAVORS_FOR = {
    "plane": (Flavor.PLANAR, Flavor.UNIVERSAL_PLANAR),
    "annulus": (Flavor.ANNULAR, Flavor.UNIVERSAL_ANNULAR),
    "torus": (Flavor.TOROIDAL, Flavor.UNIVERSAL_TOROIDAL, Flavor.REDUCED_TOROIDAL),
    "o-mixed": (Flavor.O_MIXED, Flavor.UNIVERSAL_O_MIXED),
    "h-mixed": (Flavor.H_MIXED, Flavor.UNIVERSAL_H_MIXED, Flavor.REDUCED_H_MIXED),
}


def _flavor(f) -> Flavor:
    return f if isinstance(f, Flavor) else Flavor.parse(f)


def _sym_pow(s: Symbol, e: int) -> LaurentPoly:
    return LaurentPoly.symbol(s, e) if e else ONE


def state_weight(summary: StateSummary, flavor, kind: str | None = None) -> LaurentPoly:
    """The monomial ``A^sigma d^k (loop symbols)`` of one state."""
    flavor = _flavor(flavor)
    s = summary
    if kind is not None and flavor.kind is not None and flavor.kind != kind:
        raise FlavorMismatch(f"flavor {flavor.value} does not apply to {kind} diagrams")
    fk = flavor.kind
    if fk in ("plane",) and (s.n or s.l):
        raise FlavorMismatch("planar flavors cannot weigh essential loops")
    if fk in ("annulus", "o-mixed") and s.torus_class is not None:
        raise FlavorMismatch("annular flavors cannot weigh torus classes")
    if fk in ("torus", "h-mixed") and s.n:
        raise FlavorMismatch("toroidal flavors have no inner essential loops")
    w = a_pow(s.sigma)
    if flavor is Flavor.TURAEV:
        return w * int_pow(d_poly(), s.loops)
    if s.k:
        w = w * int_pow(d_poly(), s.k)
    if flavor.universal:
        if s.m:
            w = w * _sym_pow(vm_sym(s.m), 1)
        if fk in ("annulus", "o-mixed"):
            if s.n:
                w = w * _sym_pow(xn_sym(s.n), 1)
            if s.l:
                w = w * _sym_pow(tl_sym(s.l), 1)
        elif s.l:
            w = w * _sym_pow(spql_sym(*s.torus_class, s.l), 1)
        return w
    w = w * _sym_pow(V, s.m)
    if fk in ("annulus", "o-mixed"):
        w = w * _sym_pow(X, s.n) * _sym_pow(T, s.l)
    elif s.l:
        if flavor.reduced:
            p, q = s.torus_class
            w = w * LaurentPoly.monomial(0, {RX: p * s.l, RY: q * s.l})
        else:
            w = w * _sym_pow(spq_sym(*s.torus_class), s.l)
    return w


def check_flavor(diagram: Diagram, flavor) -> Flavor:
    flavor = _flavor(flavor)
    if flavor.kind is not None and flavor.kind != diagram.kind:
        raise FlavorMismatch(f"flavor {flavor.value} does not apply to {diagram.kind} diagrams")
    return flavor


def bracket_from_census(cens: Counter, flavor, kind: str | None = None) -> LaurentPoly:
    total = LaurentPoly()
    for summary, count in cens.items():
        total = total + state_weight(summary, flavor, kind) * count
    return total


def bracket(diagram: Diagram, flavor, jobs: int = 1, seed: int = 0) -> LaurentPoly:
    """Sum of state weights over all Kauffman states."""
    flavor = check_flavor(diagram, flavor)
    return bracket_from_census(census(diagram, jobs=jobs, seed=seed), flavor, diagram.kind)


def writhe_scope(diagram: Diagram) -> str:
    return EXCLUDE_MIXED if diagram.fixed_labels else ALL_MOVING


def normalize_jones(diagram: Diagram, value: LaurentPoly) -> LaurentPoly:
    w = writhe(diagram, writhe_scope(diagram))
    return int_pow(-a_pow(3), -w) * value


def jones(diagram: Diagram, flavor, jobs: int = 1, seed: int = 0) -> LaurentPoly:
    """``(-A^3)^(-w) <D>`` with the writhe scope matching the flavor."""
    return normalize_jones(diagram, bracket(diagram, flavor, jobs=jobs, seed=seed))


def _turaev_rule(s: Symbol):
    d = d_poly()
    if s.kind in ("v", "x", "t", "s"):
        return d
    if s.kind in ("v_m", "x_n", "t_l"):
        return int_pow(d, s.idx[0])
    if s.kind == "s_l":
        return int_pow(d, s.idx[2])
    return None


def specialize_turaev(p: LaurentPoly) -> LaurentPoly:
    """Send every loop symbol to ``d`` (indexed ones to the matching power)."""
    if p.symbols() & {RX, RY}:
        raise FlavorMismatch("reduced variables have no Turaev specialization")
    return substitute_where(p, _turaev_rule)


def collapse_universal(p: LaurentPoly) -> LaurentPoly:
    """v_m -> v^m, x_n -> x^n, t_l -> t^l, s_{p,q,l} -> s_{p,q}^l."""

    def rule(s: Symbol):
        if s.kind == "v_m":
            return LaurentPoly.symbol(V, s.idx[0])
        if s.kind == "x_n":
            return LaurentPoly.symbol(X, s.idx[0])
        if s.kind == "t_l":
            return LaurentPoly.symbol(T, s.idx[0])
        if s.kind == "s_l":
            return LaurentPoly.symbol(spq_sym(s.idx[0], s.idx[1]), s.idx[2])
        return None

    return substitute_where(p, rule)


def reduce_toroidal(p: LaurentPoly) -> LaurentPoly:
    """s_{p,q} -> X^p Y^q."""

    def rule(s: Symbol):
        if s.kind == "s":
            return LaurentPoly.monomial(0, {RX: s.idx[0], RY: s.idx[1]})
        return None

    return substitute_where(p, rule)
