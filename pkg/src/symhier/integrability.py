"""Generalized symmetries of scalar evolution equations u_t = u_m + f.

The solver builds a symmetry E = u_l + E^2 + E^3 + ... one homogeneous
degree at a time.  At degree k the unknown enters the bracket only through
{E^k, u_m}, whose symbol is E~^k * P(k, m), so each step is a single exact
division of symmetric polynomials.  A division that leaves a remainder stops
the construction and the remainder is returned as a certificate.

Also here: the order-bound propagation used to bound symmetry degrees in
advance, the polynomiality/degree bound for equations without a
submaximal-order nonlinearity, the classification of hierarchy orders by
m modulo 6, the pull-back of a compatible pair of symbols, and the
quadratic-symbol divisibility test used in the odd case.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .diffalg import NEG_INFINITY, DiffPoly, GradedSeries, bracket, u
from .errors import EquationError, HypothesisViolated, InternalInconsistency
from .symbolic import (
    P,
    SymPoly,
    divide_with_remainder,
    exact_divide,
    gd_inverse,
    gd_transform,
    p_cofactor,
    sym_bracket,
    t_factor,
)

__all__ = [
    "EvolutionEquation",
    "OrderSet",
    "OrderEstimate",
    "SymmetryResult",
    "Status",
    "classify",
    "t2_divides",
    "propagate_order_bounds",
    "linear_profile",
    "theorem3_bound",
    "default_degree_cap",
    "solve_symmetry",
    "quadratic_symbol_quotient",
    "pull_back",
    "verify_symmetry",
    "lemma8_equivalence",
]


# -- equations -------------------------------------------------------------

@dataclass(frozen=True)
class EvolutionEquation:
    """``u_t = u_m + f`` with f at least quadratic and of order <= m - 1."""

    m: int
    f: DiffPoly = field(default_factory=DiffPoly)

    def __post_init__(self):
        if isinstance(self.f, GradedSeries):
            object.__setattr__(self, "f", self.f.to_poly())
        if self.m < 2:
            raise EquationError(f"linear order must be >= 2, got {self.m}")
        for mono, coef in self.f.sorted_terms():
            term = DiffPoly({mono: coef})
            deg = sum(e for _, e in mono)
            if deg < 2:
                kind = "constant" if deg == 0 else "linear"
                raise EquationError(f"nonlinear part has a {kind} term {term}")
            if term.order() > self.m - 1:
                raise EquationError(
                    f"term {term} has order {term.order()} > m - 1 = {self.m - 1}"
                )

    @classmethod
    def from_poly(cls, rhs: DiffPoly) -> "EvolutionEquation":
        """Split a right-hand side into u_m (its highest linear term) and f."""
        linear = rhs.component(1)
        if not linear:
            raise EquationError("right-hand side has no linear term u_m")
        mono = max(linear.terms, key=lambda mono: mono[0][0])
        coef = linear.terms[mono]
        if coef != 1:
            raise EquationError(f"leading linear term must have coefficient 1, got {coef}")
        m = mono[0][0]
        return cls(m, rhs - u(m))

    @property
    def rhs(self) -> DiffPoly:
        return u(self.m) + self.f

    def series(self, cap: int) -> GradedSeries:
        return GradedSeries.from_poly(self.rhs, cap)

    def __str__(self):
        return f"u_t = {self.rhs}"


# -- classification --------------------------------------------------------

class OrderSet(enum.Enum):
    """The four possible sets of hierarchy orders."""

    ALL = "Z+1"
    ODD = "2Z+1"
    SIX_PM_ONE = "6Z+-1"
    SIX_PLUS_ONE = "6Z+1"

    @property
    def label(self) -> str:
        return self.value

    def __contains__(self, l: int) -> bool:
        if l < 2:
            return False
        if self is OrderSet.ALL:
            return True
        if self is OrderSet.ODD:
            return l % 2 == 1
        if self is OrderSet.SIX_PM_ONE:
            return l % 6 in (1, 5) and l >= 5
        return l % 6 == 1 and l >= 7

    def first(self, count: int = 4) -> list[int]:
        out, l = [], 2
        while len(out) < count:
            if l in self:
                out.append(l)
            l += 1
        return out


def _t2_level(m: int) -> int:
    # position of t_2^(m) in the divisibility chain of the k = 2 table
    if m % 2 == 0:
        return 0
    return {3: 1, 5: 2, 1: 3}[m % 6]


def classify(m: int) -> OrderSet:
    """The set {l : t_2^(m) divides t_2^(l)}, by m mod 6."""
    if m < 2:
        raise ValueError("m must be >= 2")
    return [OrderSet.ALL, OrderSet.ODD, OrderSet.SIX_PM_ONE, OrderSet.SIX_PLUS_ONE][_t2_level(m)]


def t2_divides(m: int, l: int) -> bool:
    """Whether t_2^(m) divides t_2^(l); table lookup checked by division."""
    if m < 2 or l < 2:
        raise ValueError("orders must be >= 2")
    by_table = _t2_level(m) <= _t2_level(l)
    by_division = exact_divide(t_factor(2, l), t_factor(2, m)) is not None
    if by_table != by_division:
        raise InternalInconsistency(f"t_2 divisibility disagrees for m={m}, l={l}")
    return by_table


# -- order estimates -------------------------------------------------------

def _bound(value):
    if value is NEG_INFINITY or value is None:
        return NEG_INFINITY
    value = Fraction(value)
    # O(l) is {0} for negative l
    return NEG_INFINITY if value < 0 else value


@dataclass(frozen=True)
class OrderEstimate:
    """Per-degree order bounds for a symmetry G = u_n + g.

    ``bounds[l]`` bounds the order of G^l; NEG_INFINITY certifies G^l = 0.
    """

    n: int
    d: Fraction | None
    bounds: Mapping[int, object]

    def bound(self, l: int):
        return self.bounds.get(l, NEG_INFINITY)

    def max_nonzero_degree(self) -> int:
        return max(l for l, b in self.bounds.items() if b is not NEG_INFINITY)


def linear_profile(m: int, d, cap: int) -> dict[int, object]:
    """Bounds ``m - 1 - (k - 1) d`` for 2 <= k <= cap, with ``1 -> m``."""
    d = Fraction(d)
    prof = {1: Fraction(m)}
    for k in range(2, cap + 1):
        prof[k] = _bound(m - 1 - (k - 1) * d)
    return prof


def actual_profile(eq: EvolutionEquation, cap: int) -> dict[int, object]:
    """Exact component orders of u_m + f, degrees 1..cap."""
    prof = {1: Fraction(eq.m)}
    for k in range(2, cap + 1):
        prof[k] = _bound(eq.f.component(k).order())
    return prof


def propagate_order_bounds(beta_F: Mapping[int, object], n: int, cap: int, d=None) -> OrderEstimate:
    """Bound the orders of the components of a symmetry G = u_n + g of F.

    ``beta_F[k]`` bounds the order of F^k and ``beta_F[1]`` is m.  Degree by
    degree, {G^s, u_m} equals a sum of brackets of already bounded pieces;
    brackets add orders, {F^s, u_n} has order exactly order(F^s) + n - 1,
    and {G^s, u_m} has order exactly order(G^s) + m - 1.
    """
    m = int(beta_F[1])
    if m < 2 or n < 2:
        raise ValueError("need m, n >= 2")
    bF = {k: _bound(v) for k, v in beta_F.items()}
    bG: dict[int, object] = {1: Fraction(n)}
    for s in range(2, cap + 1):
        cands = [bF.get(k, NEG_INFINITY) + bG[s - k + 1] for k in range(2, s)]
        cands.append(bF.get(s, NEG_INFINITY) + (n - 1))
        best = max(cands)
        bG[s] = NEG_INFINITY if best is NEG_INFINITY else _bound(best - (m - 1))
    return OrderEstimate(n, None if d is None else Fraction(d), bG)


def theorem3_bound(eq: EvolutionEquation, n: int):
    """``(d, degree_bound)`` for equations whose f has order <= m - 2.

    d is the largest shift with order(f^k) <= m - 1 - (k - 1) d for all k;
    any symmetry u_n + g then has g polynomial of order < n - 1 and degree at
    most floor((n - 1) / d) + 1.  For f = 0, d is infinite and the bound is 1.
    """
    m = eq.m
    comps = {k: p for k, p in eq.f.components().items() if p}
    if not comps:
        return math.inf, 1
    worst = max(p.order() for p in comps.values())
    if worst > m - 2:
        raise HypothesisViolated(
            f"nonlinear part has order {worst}; the bound needs order <= m - 2 = {m - 2}"
        )
    d = min(Fraction(m - 1 - p.order(), k - 1) for k, p in comps.items())
    return d, math.floor(Fraction(n - 1) / d) + 1


def default_degree_cap(eq: EvolutionEquation, l: int) -> int:
    """Degree cap from ``theorem3_bound``; raises when it does not apply."""
    _, bound = theorem3_bound(eq, l)
    return max(bound, 2)


# -- the solver ------------------------------------------------------------

class Status(enum.Enum):
    FOUND = "FOUND"
    FAILED = "FAILED"


@dataclass(frozen=True)
class SymmetryResult:
    status: Status
    order: int
    cap: int
    E: GradedSeries | None = None
    failure_degree: int | None = None
    remainder: SymPoly | None = None

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


def quadratic_symbol_quotient(F2s: SymPoly, m: int, l: int) -> SymPoly | None:
    """``(F2~ / p_2^(m)) * (t_2^(l) / t_2^(m)) * p_2^(l)``, or None if a
    division is not exact."""
    a = exact_divide(F2s, p_cofactor(2, m))
    b = exact_divide(t_factor(2, l), t_factor(2, m))
    if a is None or b is None:
        return None
    return a * b * p_cofactor(2, l)


def solve_symmetry(
    eq: EvolutionEquation, l: int, cap: int | None = None, truncated: bool = False
) -> SymmetryResult:
    """Construct the symmetry u_l + E^2 + ... of ``eq`` through degree ``cap``.

    Without ``cap`` the degree bound of ``theorem3_bound`` is used, which
    requires order(f) <= m - 2.

    By default FOUND means E is an exact polynomial symmetry of degree at
    most ``cap``: the full bracket {u_m + f, E} must vanish, including the
    degrees above the cap.  If it does not, the result is FAILED at the
    lowest such degree and ``remainder`` holds the symbol of that bracket
    component.  With ``truncated=True``, E is a formal series and only
    degrees up to the cap are checked.
    """
    m = eq.m
    if l == m:
        raise ValueError("l = m gives the equation itself, not a new symmetry")
    if l < 2:
        raise ValueError("symmetry order must be >= 2")
    if cap is None:
        try:
            cap = default_degree_cap(eq, l)
        except HypothesisViolated as exc:
            raise ValueError(f"pass an explicit degree cap: {exc}") from None
    if cap < 2:
        raise ValueError("degree cap must be >= 2")

    F = eq.series(cap)
    comps: dict[int, DiffPoly] = {1: u(l)}
    for k in range(2, cap + 1):
        rhs = DiffPoly()
        for a in range(1, k):
            Ea, Fb = comps.get(a), F.component(k - a + 1)
            if Ea and Fb:
                rhs = rhs - bracket(Ea, Fb)
        if not rhs:
            continue
        target = gd_transform(rhs, k)
        q = exact_divide(target, P(k, m))
        if q is None:
            _, r = divide_with_remainder(target, P(k, m))
            return SymmetryResult(Status.FAILED, l, cap, failure_degree=k, remainder=r)
        if k == 2:
            alt = quadratic_symbol_quotient(gd_transform(F.component(2), 2), m, l)
            if alt is not None and alt != q:
                raise InternalInconsistency("degree-2 quotient disagrees with the factored formula")
        comps[k] = gd_inverse(q)

    E = GradedSeries(comps, cap)
    if not bracket(F, E).is_zero():
        raise InternalInconsistency("constructed E does not commute with F through the cap")
    for k, Ek in E.components.items():
        if k >= 2 and Ek.order() > l - 1:
            raise InternalInconsistency(f"E^{k} has order {Ek.order()} > l - 1")
    if not truncated:
        excess = bracket(eq.rhs, E.to_poly())
        if excess:
            k = excess.degrees()[0]
            return SymmetryResult(
                Status.FAILED, l, cap, failure_degree=k,
                remainder=gd_transform(excess.component(k), k),
            )
    return SymmetryResult(Status.FOUND, l, cap, E=E)


def verify_symmetry(eq: EvolutionEquation, G, cap: int) -> bool:
    """True iff {u_m + f, G} vanishes in every degree up to ``cap``."""
    if isinstance(G, DiffPoly):
        G = GradedSeries.from_poly(G, cap)
    elif G.cap != cap:
        G = G.recap(cap)
    return bracket(eq.series(cap), G).is_zero()


def pull_back(Fs: SymPoly, Gs: SymPoly, m: int, n: int) -> SymPoly:
    """The unique H~ with Fs = H~ P(k, m) and Gs = H~ P(k, n)."""
    if m < 2 or n < 2:
        raise ValueError("need m, n >= 2")
    k = Fs.nvars
    if Gs.nvars != k:
        raise ValueError("symbols must live in the same number of variables")
    k0 = 3 if (m * n) % 2 == 0 else 4
    if k < k0:
        raise ValueError(f"pull-back needs k >= {k0} for m={m}, n={n}; got k={k}")
    if Fs * P(k, n) != Gs * P(k, m):
        raise ValueError("symbols are not compatible: Fs*P(k,n) != Gs*P(k,m)")
    H = exact_divide(Fs, P(k, m))
    if H is None or H * P(k, n) != Gs:
        raise InternalInconsistency(f"P({k},{m}) and P({k},{n}) failed to be coprime")
    return H


def lemma8_equivalence(Fs2: SymPoly, m: int, l: int) -> tuple[bool, bool]:
    """Both sides of the odd-order divisibility criterion for a quadratic symbol.

    lhs: (x1+x2)(x2+x3)(x3+x1) divides the symbol of {E^2, F^2}, where
    E~^2 is the degree-2 quotient built from F~^2.
    rhs: x1 + x2 or x1 x2 divides F~^2.
    """
    if m % 2 == 0 or l % 2 == 0:
        raise ValueError("orders must be odd")
    if m < 3 or l < 3 or m == l:
        raise ValueError("need distinct odd orders >= 3")
    if Fs2.nvars != 2 or not Fs2.is_symmetric():
        raise ValueError("need a symmetric polynomial in two variables")
    E2s = quadratic_symbol_quotient(Fs2, m, l)
    if E2s is None:
        raise ValueError(f"no degree-2 quotient for m={m}, l={l} from this symbol")
    lhs = exact_divide(sym_bracket(E2s, Fs2), t_factor(3, m)) is not None
    x1, x2 = SymPoly.gens(2)
    rhs = exact_divide(Fs2, x1 + x2) is not None or exact_divide(Fs2, x1 * x2) is not None
    return lhs, rhs
