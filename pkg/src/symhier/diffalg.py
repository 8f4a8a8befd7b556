"""Differential polynomials in u, u1, u2, ... with exact rational coefficients.

A monomial u^a0 * u1^a1 * ... * um^am is stored as a sorted tuple of
``(jet_index, exponent)`` pairs with positive exponents, and a ``DiffPoly``
maps monomials to ``Fraction`` coefficients.  Everything here is immutable:
arithmetic always returns new objects.

Besides the ring operations the module provides the total derivative
``D = sum u_{i+1} d/du_i``, the evolutionary prolongation
``v_F G = sum (D^i F) dG/du_i`` and the bracket ``{F, G} = v_F G - v_G F``,
both on plain polynomials and on degree-capped graded series.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "NEG_INFINITY",
    "DiffPoly",
    "GradedSeries",
    "u",
    "order",
    "homogeneous_component",
    "total_derivative",
    "partial",
    "prolong",
    "bracket",
]

Monomial = tuple  # tuple[tuple[int, int], ...], sorted by jet index
Coefficient = Union[int, Fraction]


@functools.total_ordering
class _NegativeInfinity:
    """Order of the zero polynomial; absorbs addition, below every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INFINITY"

    __str__ = lambda self: "-inf"  # noqa: E731

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INFINITY")

    def __lt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("NEG_INFINITY - NEG_INFINITY is undefined")
        return self


NEG_INFINITY = _NegativeInfinity()


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _normalize_monomial(mono) -> Monomial:
    if isinstance(mono, Mapping):
        items = mono.items()
    else:
        items = mono
    merged: dict[int, int] = {}
    for idx, exp in items:
        if idx < 0 or exp < 0:
            raise ValueError(f"bad monomial factor u_{idx}^{exp}")
        if exp:
            merged[idx] = merged.get(idx, 0) + exp
    return tuple(sorted(merged.items()))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for idx, exp in b:
        merged[idx] = merged.get(idx, 0) + exp
    return tuple(sorted(merged.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_order(m: Monomial) -> int:
    return m[-1][0] if m else 0


class DiffPoly:
    """A differential polynomial: finite map monomial -> nonzero Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict[Monomial, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for mono, coef in items:
                key = _normalize_monomial(mono)
                acc[key] = acc.get(key, Fraction(0)) + _as_fraction(coef)
        self._terms = {m: c for m, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "DiffPoly":
        # trusted constructor: keys normalized, values nonzero Fractions
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Coefficient) -> "DiffPoly":
        return cls({(): c})

    @classmethod
    def var(cls, i: int) -> "DiffPoly":
        return cls({((i, 1),): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[int, int], coef: Coefficient = 1) -> "DiffPoly":
        return cls({_normalize_monomial(exponents): coef})

    # -- basic queries -------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exponents) -> Fraction:
        return self._terms.get(_normalize_monomial(exponents), Fraction(0))

    def degree(self):
        """Largest total degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return max(_mono_degree(m) for m in self._terms)

    def degrees(self) -> list[int]:
        return sorted({_mono_degree(m) for m in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def order(self):
        if not self._terms:
            return NEG_INFINITY
        return max(_mono_order(m) for m in self._terms)

    def component(self, k: int) -> "DiffPoly":
        return DiffPoly._raw({m: c for m, c in self._terms.items() if _mono_degree(m) == k})

    def components(self) -> dict[int, "DiffPoly"]:
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            out.setdefault(_mono_degree(m), {})[m] = c
        return {k: DiffPoly._raw(t) for k, t in sorted(out.items())}

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(other) -> "DiffPoly":
        if isinstance(other, DiffPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return DiffPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return DiffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return DiffPoly()
            return DiffPoly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, DiffPoly):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return DiffPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = DiffPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.constant(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus ------------------------------------------------------
    def diff(self, i: int) -> "DiffPoly":
        """Partial derivative with respect to the jet variable u_i."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            for pos, (idx, exp) in enumerate(m):
                if idx != i:
                    continue
                if exp == 1:
                    nm = m[:pos] + m[pos + 1:]
                else:
                    nm = m[:pos] + ((idx, exp - 1),) + m[pos + 1:]
                out[nm] = out.get(nm, 0) + c * exp
        return DiffPoly._raw({m: c for m, c in out.items() if c})

    def total_derivative(self) -> "DiffPoly":
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            for idx, exp in m:
                f = dict(m)
                if exp == 1:
                    del f[idx]
                else:
                    f[idx] = exp - 1
                f[idx + 1] = f.get(idx + 1, 0) + 1
                nm = tuple(sorted(f.items()))
                out[nm] = out.get(nm, 0) + c * exp
        return DiffPoly._raw({m: c for m, c in out.items() if c})

    # -- printing ------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order: degree ascending, then graded-lex
        descending on the exponent vector read from the highest jet down."""
        if not self._terms:
            return []
        top = max(_mono_order(m) for m in self._terms)

        def key(item):
            m = item[0]
            ex = dict(m)
            vec = tuple(-ex.get(i, 0) for i in range(top, -1, -1))
            return (_mono_degree(m), vec)

        return sorted(self._terms.items(), key=key)

    def __str__(self):
        return format_terms(self.sorted_terms(), _format_diff_monomial)

    def __repr__(self):
        return f"DiffPoly({str(self)!r})"


def _format_diff_monomial(m: Monomial) -> str:
    parts = []
    for idx, exp in m:
        name = "u" if idx == 0 else f"u{idx}"
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)


def format_terms(terms, format_monomial) -> str:
    """Join ``(monomial, coefficient)`` pairs as ``c*m + c*m - ...``."""
    if not terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(terms):
        mono = format_monomial(m)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(out)


def u(i: int = 0) -> DiffPoly:
    """The jet variable u_i (``u(0)`` is u itself)."""
    return DiffPoly.var(i)


def order(p):
    """Order of a polynomial or graded series; NEG_INFINITY for zero."""
    return p.order()


def homogeneous_component(p, k: int) -> DiffPoly:
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return p.component(k)


def total_derivative(p: DiffPoly, times: int = 1) -> DiffPoly:
    for _ in range(times):
        p = p.total_derivative()
    return p


def partial(p: DiffPoly, i: int) -> DiffPoly:
    return p.diff(i)


def prolong(F: DiffPoly, G: DiffPoly) -> DiffPoly:
    """``v_F G = sum_i (D^i F) * dG/du_i`` over the finitely many u_i in G."""
    top = G.order()
    if top is NEG_INFINITY:
        return DiffPoly()
    result = DiffPoly()
    DiF = F
    for i in range(top + 1):
        if i:
            DiF = DiF.total_derivative()
        dG = G.diff(i)
        if dG:
            result = result + DiF * dG
    return result


def _poly_bracket(F: DiffPoly, G: DiffPoly) -> DiffPoly:
    return prolong(F, G) - prolong(G, F)


class GradedSeries:
    """Degree-indexed homogeneous components, tracked up to degree ``cap``.

    Stores only nonzero components.  Arithmetic and brackets drop anything
    above the cap.
    """

    __slots__ = ("_components", "cap")

    def __init__(self, components: Mapping[int, DiffPoly] | None = None, cap: int = 0):
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        comps = {}
        for k, p in (components or {}).items():
            if not p or k > cap:
                continue
            if any(d != k for d in p.degrees()):
                raise ValueError(f"component at degree {k} is not homogeneous of degree {k}")
            comps[k] = p
        self._components = dict(sorted(comps.items()))
        self.cap = cap

    @classmethod
    def from_poly(cls, p: DiffPoly, cap: int) -> "GradedSeries":
        return cls(p.components(), cap)

    @property
    def components(self) -> Mapping[int, DiffPoly]:
        return MappingProxyType(self._components)

    def component(self, k: int) -> DiffPoly:
        return self._components.get(k, DiffPoly())

    def degrees(self) -> list[int]:
        return list(self._components)

    def is_zero(self) -> bool:
        return not self._components

    def in_M(self, j: int) -> bool:
        """True when every component of degree < j vanishes."""
        return all(k >= j for k in self._components)

    def order(self):
        if not self._components:
            return NEG_INFINITY
        return max(p.order() for p in self._components.values())

    def to_poly(self) -> DiffPoly:
        result = DiffPoly()
        for p in self._components.values():
            result = result + p
        return result

    def recap(self, cap: int) -> "GradedSeries":
        return GradedSeries(self._components, cap)

    def _check(self, other: "GradedSeries"):
        if not isinstance(other, GradedSeries):
            raise TypeError("expected a GradedSeries")
        if other.cap != self.cap:
            raise ValueError(f"mismatched caps {self.cap} and {other.cap}; re-cap one side first")

    def __add__(self, other):
        self._check(other)
        degs = set(self._components) | set(other._components)
        return GradedSeries({k: self.component(k) + other.component(k) for k in degs}, self.cap)

    def __neg__(self):
        return GradedSeries({k: -p for k, p in self._components.items()}, self.cap)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.cap == other.cap and self._components == other._components

    def __str__(self):
        return str(self.to_poly())

    def __repr__(self):
        return f"GradedSeries({str(self)!r}, cap={self.cap})"


def bracket(F, G):
    """``{F, G} = v_F G - v_G F``.

    On two ``DiffPoly`` values the result is exact.  On two ``GradedSeries``
    of equal cap, the degree-s component is ``sum_{k+l-1=s} {F^k, G^l}``,
    kept for ``s <= cap``.
    """
    if isinstance(F, DiffPoly) and isinstance(G, DiffPoly):
        return _poly_bracket(F, G)
    if isinstance(F, GradedSeries) and isinstance(G, GradedSeries):
        F._check(G)
        cap = F.cap
        out: dict[int, DiffPoly] = {}
        for k, Fk in F.components.items():
            for l, Gl in G.components.items():
                s = k + l - 1
                if s > cap:
                    continue
                out[s] = out.get(s, DiffPoly()) + _poly_bracket(Fk, Gl)
        return GradedSeries(out, cap)
    raise TypeError("bracket needs two DiffPoly or two GradedSeries values")
