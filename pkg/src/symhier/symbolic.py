"""Symbol calculus for homogeneous differential polynomials.

A homogeneous differential polynomial of degree k corresponds to a symmetric
polynomial in x1..xk (its symbol).  Under this correspondence D becomes
multiplication by x1 + ... + xk and the bracket with u_m becomes
multiplication by ``P(k, m) = (x1 + ... + xk)^m - (x1^m + ... + xk^m)``, so
questions about brackets turn into divisibility questions for symmetric
polynomials.  ``SymPoly`` is a plain sparse multivariate polynomial over the
rationals; symmetry is a property checked on demand, not a type.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .diffalg import DiffPoly, format_terms
from .errors import InternalInconsistency

__all__ = [
    "SymPoly",
    "symmetrize",
    "gd_transform",
    "gd_inverse",
    "P",
    "t_factor",
    "p_cofactor",
    "exact_divide",
    "divide_with_remainder",
    "sym_bracket",
    "u_symbol",
]

# symmetrize by explicit enumeration of S_k up to this many variables
_ENUMERATE_MAX_VARS = 6


class SymPoly:
    """Sparse polynomial in ``nvars`` variables with Fraction coefficients.

    Terms are keyed by exponent tuples of length ``nvars``.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        acc: dict[tuple, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exps, coef in items:
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"exponent vector {exps} does not fit {nvars} variables")
                acc[exps] = acc.get(exps, Fraction(0)) + Fraction(coef)
        self.nvars = nvars
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "SymPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "SymPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "SymPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "SymPoly":
        """The variable x_{i+1} (0-based index)."""
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def gens(cls, nvars: int) -> list["SymPoly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self):
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "SymPoly":
        if isinstance(other, SymPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable counts differ: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return SymPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SymPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

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
                return SymPoly.zero(self.nvars)
            return SymPoly._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SymPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = SymPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymPoly.constant(self.nvars, other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- structural operations ----------------------------------------
    def permute(self, perm: Sequence[int]) -> "SymPoly":
        """Substitute x_i -> x_{perm[i]} (0-based)."""
        out = {}
        for e, c in self._terms.items():
            ne = [0] * self.nvars
            for i, ei in enumerate(e):
                ne[perm[i]] = ei
            out[tuple(ne)] = c
        return SymPoly._raw(self.nvars, out)

    def is_symmetric(self) -> bool:
        k = self.nvars
        if k <= 1:
            return True
        if k <= 4:
            perms = itertools.permutations(range(k))
        else:
            # adjacent transpositions generate S_k
            perms = []
            for i in range(k - 1):
                p = list(range(k))
                p[i], p[i + 1] = p[i + 1], p[i]
                perms.append(p)
        return all(self.permute(p) == self for p in perms)

    def embed(self, nvars: int, offset: int = 0) -> "SymPoly":
        """View as a polynomial in ``nvars`` variables, shifted by ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("target has too few variables")
        pad_l = (0,) * offset
        pad_r = (0,) * (nvars - offset - self.nvars)
        return SymPoly._raw(nvars, {pad_l + e + pad_r: c for e, c in self._terms.items()})

    def compose(self, images: Sequence["SymPoly"]) -> "SymPoly":
        """Substitute x_i -> images[i]; all images share one variable count."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            target = 0
        else:
            target = images[0].nvars
        powers: list[dict[int, SymPoly]] = [{} for _ in images]

        def power(i, n):
            cache = powers[i]
            if n not in cache:
                cache[n] = images[i] ** n
            return cache[n]

        result = SymPoly.zero(target)
        for e, c in self._terms.items():
            term = SymPoly.constant(target, c)
            for i, ei in enumerate(e):
                if ei:
                    term = term * power(i, ei)
            result = result + term
        return result

    def derivative(self, i: int, times: int = 1) -> "SymPoly":
        out: dict[tuple, Fraction] = {}
        for e, c in self._terms.items():
            if e[i] < times:
                continue
            factor = math.perm(e[i], times)
            ne = e[:i] + (e[i] - times,) + e[i + 1:]
            out[ne] = out.get(ne, 0) + c * factor
        return SymPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def at_zero(self, i: int) -> "SymPoly":
        """Set x_i = 0 and drop that variable."""
        out = {}
        for e, c in self._terms.items():
            if e[i] == 0:
                out[e[:i] + e[i + 1:]] = c
        return SymPoly._raw(self.nvars - 1, out)

    # -- printing ------------------------------------------------------
    def sorted_terms(self):
        """Graded lexicographic, largest first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        def fmt(e):
            return "*".join(
                f"x{i + 1}" if ei == 1 else f"x{i + 1}^{ei}" for i, ei in enumerate(e) if ei
            )

        return format_terms(self.sorted_terms(), fmt)

    def __repr__(self):
        return f"SymPoly({self.nvars}, {str(self)!r})"


# -- orbits --------------------------------------------------------------

def _distinct_permutations(values: tuple) -> Iterable[tuple]:
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts)
    n = len(values)
    current: list[int] = []

    def rec():
        if len(current) == n:
            yield tuple(current)
            return
        for key in keys:
            if counts[key]:
                counts[key] -= 1
                current.append(key)
                yield from rec()
                current.pop()
                counts[key] += 1

    return rec()


def _orbit_size(values: tuple) -> int:
    size = math.factorial(len(values))
    for v in set(values):
        size //= math.factorial(values.count(v))
    return size


def _orbit_average(nvars: int, exps: tuple, coef: Fraction, out: dict):
    share = coef / _orbit_size(exps)
    for p in _distinct_permutations(exps):
        s = out.get(p, 0) + share
        if s:
            out[p] = s
        else:
            out.pop(p, None)


def symmetrize(q: SymPoly) -> SymPoly:
    """``<q> = (1/k!) sum over sigma in S_k of q(x_sigma(1), ..., x_sigma(k))``."""
    k = q.nvars
    if k <= _ENUMERATE_MAX_VARS:
        perms = list(itertools.permutations(range(k)))
        out: dict[tuple, Fraction] = {}
        for e, c in q:
            share = c / len(perms)
            for p in perms:
                ne = tuple(e[p[i]] for i in range(k))
                out[ne] = out.get(ne, 0) + share
        return SymPoly._raw(k, {e: c for e, c in out.items() if c})
    out = {}
    for e, c in q:
        _orbit_average(k, e, c, out)
    return SymPoly._raw(k, out)


# -- the transform ---------------------------------------------------------

def gd_transform(p: DiffPoly, k: int | None = None) -> SymPoly:
    """Symbol of a homogeneous differential polynomial of degree k >= 1.

    ``u^a0 u1^a1 ... um^am`` goes to the symmetrization of the monomial that
    gives exponent j to a_j consecutive variables.  ``k`` must be passed for
    the zero polynomial.
    """
    degs = p.degrees()
    if len(degs) > 1:
        raise ValueError(f"not homogeneous: degrees {degs}")
    if degs:
        if k is not None and k != degs[0]:
            raise ValueError(f"polynomial has degree {degs[0]}, not {k}")
        k = degs[0]
    elif k is None:
        raise ValueError("degree must be given for the zero polynomial")
    if k < 1:
        raise ValueError("the transform needs degree >= 1")
    out: dict[tuple, Fraction] = {}
    for mono, c in p:
        exps = []
        for idx, mult in mono:
            exps.extend([idx] * mult)
        _orbit_average(k, tuple(exps), c, out)
    return SymPoly._raw(k, out)


def gd_inverse(s: SymPoly) -> DiffPoly:
    """Inverse of ``gd_transform``; the input must be symmetric."""
    if s.nvars < 1:
        raise ValueError("symbols live in at least one variable")
    if not s.is_symmetric():
        raise ValueError("gd_inverse needs a symmetric polynomial")
    terms = {}
    for e, c in s:
        if list(e) != sorted(e):
            continue
        mono: dict[int, int] = {}
        for idx in e:
            mono[idx] = mono.get(idx, 0) + 1
        terms[tuple(sorted(mono.items()))] = c * _orbit_size(e)
    return DiffPoly(terms)


def u_symbol(m: int) -> SymPoly:
    """Symbol of the linear term u_m: x1^m in one variable."""
    return SymPoly(1, {(m,): 1})


# -- P, t, p ---------------------------------------------------------------

def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def P(k: int, m: int) -> SymPoly:
    """``(x1 + ... + xk)^m - (x1^m + ... + xk^m)``."""
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    fm = math.factorial(m)
    out = {}
    for e in _compositions(m, k):
        if m and max(e) == m:
            continue  # the pure powers cancel against the subtracted sum
        coef = fm
        for ei in e:
            coef //= math.factorial(ei)
        out[e] = Fraction(coef)
    if m == 0:
        # (sum)^0 - sum of x^0 = 1 - k
        out = {(0,) * k: Fraction(1 - k)} if k != 1 else {}
    return SymPoly._raw(k, out)


@lru_cache(maxsize=None)
def t_factor(k: int, m: int) -> SymPoly:
    """The explicit factor t of P(k, m) = t * p from Beukers' factorization."""
    if k < 2:
        raise ValueError("t_factor needs k >= 2")
    if m < 2:
        raise ValueError("t_factor needs m >= 2")
    if k == 2:
        x1, x2 = SymPoly.gens(2)
        base = x1 * x2
        if m % 2 == 0:
            return base
        base = base * (x1 + x2)
        quad = x1 * x1 + x1 * x2 + x2 * x2
        r = m % 6
        if r == 3:
            return base
        if r == 5:
            return base * quad
        return base * quad * quad  # m = 1 mod 6
    if k == 3:
        if m % 2 == 0:
            return SymPoly.constant(3, 1)
        x1, x2, x3 = SymPoly.gens(3)
        return (x1 + x2) * (x2 + x3) * (x3 + x1)
    return SymPoly.constant(k, 1)


@lru_cache(maxsize=None)
def p_cofactor(k: int, m: int) -> SymPoly:
    """The exact quotient P(k, m) / t_factor(k, m)."""
    if k < 2 or m < 2:
        raise ValueError("p_cofactor needs k, m >= 2")
    q = exact_divide(P(k, m), t_factor(k, m))
    if q is None:
        raise InternalInconsistency(f"t_factor({k}, {m}) does not divide P({k}, {m})")
    return q


# -- division --------------------------------------------------------------

def _grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


def _heap_key(e: tuple) -> tuple:
    # heapq is a min-heap; negate so the grlex-largest term pops first
    return (-sum(e),) + tuple(-x for x in e) + (e,)


def _divide(a: SymPoly, b: SymPoly, stop_on_remainder: bool):
    if not isinstance(a, SymPoly) or not isinstance(b, SymPoly):
        raise TypeError("expected SymPoly operands")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.nvars != b.nvars:
        raise ValueError(f"variable counts differ: {a.nvars} vs {b.nvars}")
    n = a.nvars
    lead_b = max(b._terms, key=_grlex_key)
    lead_c = b._terms[lead_b]
    rest_b = [(e, c) for e, c in b._terms.items() if e != lead_b]

    work = dict(a._terms)
    heap = [_heap_key(e) for e in work]
    heapq.heapify(heap)
    quotient: dict[tuple, Fraction] = {}
    remainder: dict[tuple, Fraction] = {}
    while heap:
        item = heapq.heappop(heap)
        e = item[-1]
        c = work.pop(e, None)
        if c is None:
            continue  # stale heap entry
        shift = tuple(x - y for x, y in zip(e, lead_b))
        if min(shift, default=0) < 0:
            if stop_on_remainder:
                return None, SymPoly._raw(n, {e: c})
            remainder[e] = c
            continue
        qc = c / lead_c
        quotient[shift] = qc
        for eb, cb in rest_b:
            ne = tuple(x + y for x, y in zip(eb, shift))
            new = work.get(ne, 0) - qc * cb
            if new:
                if ne not in work:
                    heapq.heappush(heap, _heap_key(ne))
                work[ne] = new
            else:
                work.pop(ne, None)
    return SymPoly._raw(n, quotient), SymPoly._raw(n, remainder)


def divide_with_remainder(a: SymPoly, b: SymPoly) -> tuple[SymPoly, SymPoly]:
    """Multivariate division by a single divisor under graded-lex order.

    Returns ``(q, r)`` with ``a = b*q + r`` and no term of r divisible by
    the leading term of b.  For a single divisor, r == 0 exactly when b
    divides a.
    """
    return _divide(a, b, stop_on_remainder=False)


def exact_divide(a: SymPoly, b: SymPoly) -> SymPoly | None:
    """The polynomial q with a = b*q, or None when b does not divide a."""
    q, r = _divide(a, b, stop_on_remainder=True)
    return q


# -- brackets of symbols ---------------------------------------------------

def _bracket_half(Fs: SymPoly, Gs: SymPoly) -> SymPoly:
    # <F(x1..xk) G(x1+..+xk, x_{k+1}, ..., x_{k+l-1})>, before the factor l
    k, l = Fs.nvars, Gs.nvars
    n = k + l - 1
    gens = SymPoly.gens(n)
    head = SymPoly.zero(n)
    for g in gens[:k]:
        head = head + g
    shifted = Gs.compose([head] + gens[k:])
    return symmetrize(Fs.embed(n) * shifted)


def prolong_symbol(Fs: SymPoly, Gs: SymPoly) -> SymPoly:
    """Symbol of ``v_F G``: ``l <F(x1..xk) G(x1+..+xk, x_{k+1}, ...)>``."""
    return _bracket_half(Fs, Gs) * Gs.nvars


def sym_bracket(Fs: SymPoly, Gs: SymPoly) -> SymPoly:
    """Symbol of {F, G} computed from the symbols of F and G alone."""
    if not Fs.is_symmetric() or not Gs.is_symmetric():
        raise ValueError("sym_bracket needs symmetric inputs")
    k, l = Fs.nvars, Gs.nvars
    if k < 1 or l < 1:
        raise ValueError("symbols live in at least one variable")
    return _bracket_half(Fs, Gs) * l - _bracket_half(Gs, Fs) * k
