"""Exact multivariate Laurent polynomials in ``A`` and loop-value symbols.

A polynomial is a mapping from monomials to nonzero integer coefficients.
A monomial is an exponent of ``A`` together with a sorted tuple of
``(Symbol, exponent)`` pairs. ``d = -A^2 - A^-2`` is never stored as a
symbol; it is expanded on construction.

The symbol families and their printed forms are::

    v  x  t                 finite loop values
    v_{m} x_{n} t_{l}       universal (indexed) loop values
    s_{p,q}                 toroidal essential class
    s_{p,q,l}               universal toroidal
    X  Y                    reduced toroidal variables
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Mapping, NamedTuple

from .errors import NonInvertible, ParseError

_KIND_RANK = {"v": 0, "x": 1, "t": 2, "v_m": 3, "x_n": 4, "t_l": 5, "s": 6, "s_l": 7, "X": 8, "Y": 9}


class Symbol(NamedTuple):
    kind: str
    idx: tuple[int, ...] = ()

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.idx)

    def __str__(self) -> str:
        if self.kind in ("v_m", "x_n", "t_l"):
            return f"{self.kind[0]}_{{{self.idx[0]}}}"
        if self.kind in ("s", "s_l"):
            return "s_{" + ",".join(str(i) for i in self.idx) + "}"
        return self.kind


def normalize_class(p: int, q: int) -> tuple[int, int]:
    """Normalize a torus class: primitive, and q > 0 or (q == 0 and p > 0)."""
    if p == 0 and q == 0:
        raise ValueError("the zero class has no normalization")
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


V = Symbol("v")
X = Symbol("x")
T = Symbol("t")
RX = Symbol("X")
RY = Symbol("Y")


def vm_sym(m: int) -> Symbol:
    return Symbol("v_m", (m,))


def xn_sym(n: int) -> Symbol:
    return Symbol("x_n", (n,))


def tl_sym(l: int) -> Symbol:
    return Symbol("t_l", (l,))


def spq_sym(p: int, q: int) -> Symbol:
    return Symbol("s", normalize_class(p, q))


def spql_sym(p: int, q: int, l: int) -> Symbol:
    return Symbol("s_l", normalize_class(p, q) + (l,))


Monomial = tuple[int, tuple[tuple[Symbol, int], ...]]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a[1]:
        return (a[0] + b[0], b[1])
    if not b[1]:
        return (a[0] + b[0], a[1])
    syms = dict(a[1])
    for s, e in b[1]:
        e2 = syms.get(s, 0) + e
        if e2:
            syms[s] = e2
        else:
            del syms[s]
    return (a[0] + b[0], tuple(sorted(syms.items(), key=lambda it: it[0].sort_key())))


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}
        self._hash: int | None = None

    # constructors
    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({(0, ()): c})

    @classmethod
    def monomial(cls, aexp: int = 0, syms: Mapping[Symbol, int] | Iterable[tuple[Symbol, int]] = (), coeff: int = 1) -> LaurentPoly:
        merged: dict[Symbol, int] = {}
        for s, e in (syms.items() if isinstance(syms, Mapping) else syms):
            merged[s] = merged.get(s, 0) + e
        key = tuple(sorted(((s, e) for s, e in merged.items() if e), key=lambda it: it[0].sort_key()))
        return cls({(aexp, key): coeff})

    @classmethod
    def symbol(cls, s: Symbol, e: int = 1) -> LaurentPoly:
        return cls.monomial(0, {s: e})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def symbols(self) -> set[Symbol]:
        return {s for (_, syms) in self._terms for s, _ in syms}

    # arithmetic
    def __add__(self, other) -> LaurentPoly:
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return _coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = _coerce(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentPoly:
        return int_pow(self, e)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({canonical_string(self)!r})"

    def __str__(self) -> str:
        return canonical_string(self)


def _coerce(p) -> LaurentPoly:
    if isinstance(p, LaurentPoly):
        return p
    if isinstance(p, int):
        return LaurentPoly.const(p)
    raise TypeError(f"cannot use {type(p).__name__} as a Laurent polynomial")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
A = LaurentPoly.monomial(1)


def a_pow(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(k)


def d_poly() -> LaurentPoly:
    """The loop value ``-A^2 - A^-2``."""
    return LaurentPoly({(2, ()): -1, (-2, ()): -1})


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def neg(p: LaurentPoly) -> LaurentPoly:
    return -p


def int_pow(p: LaurentPoly, e: int) -> LaurentPoly:
    """Raise to an integer power; negative powers only for monomials."""
    p = _coerce(p)
    if e < 0:
        if not p.is_monomial():
            raise NonInvertible(f"cannot invert {canonical_string(p)}")
        ((aexp, syms), c), = p._terms.items()
        if c not in (1, -1):
            raise NonInvertible(f"coefficient {c} is not a unit")
        inv = LaurentPoly({(-aexp, tuple((s, -x) for s, x in syms)): c})
        return int_pow(inv, -e)
    result = ONE
    base = p
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def substitute(p: LaurentPoly, rules: Mapping[Symbol, LaurentPoly]) -> LaurentPoly:
    """Simultaneously replace symbols by polynomials; others stay."""
    out = ZERO
    cache: dict[tuple[Symbol, int], LaurentPoly] = {}
    for (aexp, syms), c in p._terms.items():
        term = LaurentPoly({(aexp, ()): c})
        keep = []
        for s, e in syms:
            if s in rules:
                key = (s, e)
                if key not in cache:
                    cache[key] = int_pow(_coerce(rules[s]), e)
                term = term * cache[key]
            else:
                keep.append((s, e))
        if keep:
            term = term * LaurentPoly.monomial(0, keep)
        out = out + term
    return out


def substitute_where(p: LaurentPoly, fn) -> LaurentPoly:
    """Substitute every symbol ``s`` for which ``fn(s)`` returns a polynomial."""
    rules = {}
    for s in p.symbols():
        r = fn(s)
        if r is not None:
            rules[s] = r
    return substitute(p, rules)


def eval_a(p: LaurentPoly, value: int) -> LaurentPoly:
    """Substitute an integer unit (1 or -1) for ``A``."""
    if value not in (1, -1):
        raise NonInvertible("only A = 1 or A = -1 keep integer coefficients")
    out: dict[Monomial, int] = {}
    for (aexp, syms), c in p._terms.items():
        k = (0, syms)
        out[k] = out.get(k, 0) + c * (value ** (aexp % 2))
    return LaurentPoly(out)


def mirror_a(p: LaurentPoly) -> LaurentPoly:
    """Replace ``A`` by ``A^-1``."""
    return LaurentPoly({(-aexp, syms): c for (aexp, syms), c in p._terms.items()})


def _fmt_factor(base: str, e: int) -> str:
    return base if e == 1 else f"{base}^{e}"


def canonical_string(p: LaurentPoly) -> str:
    """Deterministic rendering, e.g. ``"-A^5*t - A^3 - A^-3*t - A^-5"``."""
    if not p._terms:
        return "0"

    def key(item):
        (aexp, syms), _ = item
        return (-aexp, tuple((s.sort_key(), e) for s, e in syms))

    parts = []
    for (aexp, syms), c in sorted(p._terms.items(), key=key):
        factors = []
        if aexp:
            factors.append(_fmt_factor("A", aexp))
        factors.extend(_fmt_factor(str(s), e) for s, e in syms)
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_FACTOR = re.compile(
    r"(?P<base>A|v_\{-?\d+\}|x_\{-?\d+\}|t_\{-?\d+\}|s_\{-?\d+,-?\d+(?:,-?\d+)?\}|v|x|t|X|Y|\d+)(?:\^(?P<exp>-?\d+))?$"
)


def _parse_term(text: str) -> LaurentPoly:
    coeff = 1
    aexp = 0
    syms: dict[Symbol, int] = {}
    for factor in text.split("*"):
        m = _FACTOR.match(factor.strip())
        if not m:
            raise ParseError(f"bad factor {factor!r}")
        base, e = m.group("base"), int(m.group("exp") or 1)
        if base.isdigit():
            coeff *= int(base) ** e
        elif base == "A":
            aexp += e
        else:
            if base in ("v", "x", "t", "X", "Y"):
                s = Symbol(base)
            else:
                nums = tuple(int(n) for n in re.findall(r"-?\d+", base[1:]))
                if base[0] == "s":
                    s = Symbol("s" if len(nums) == 2 else "s_l", nums)
                else:
                    s = Symbol({"v": "v_m", "x": "x_n", "t": "t_l"}[base[0]], nums)
            syms[s] = syms.get(s, 0) + e
    return LaurentPoly.monomial(aexp, syms, coeff)


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :func:`canonical_string` (accepts any term order)."""
    text = text.strip()
    if text == "0":
        return ZERO
    if not text:
        raise ParseError("empty polynomial")
    # split on binary +/- surrounded by spaces
    tokens = re.split(r"\s+([+-])\s+", text)
    sign = 1
    first = tokens[0]
    if first.startswith("-"):
        sign, first = -1, first[1:]
    out = _parse_term(first) * sign
    for op, term in zip(tokens[1::2], tokens[2::2]):
        out = out + _parse_term(term) * (1 if op == "+" else -1)
    return out
