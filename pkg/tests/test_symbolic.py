import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy as sp

from conftest import random_homogeneous, random_symmetric
from symhier import DiffPoly, bracket, prolong, u
from symhier.diffalg import partial, total_derivative
from symhier.symbolic import (
    P,
    SymPoly,
    divide_with_remainder,
    exact_divide,
    gd_inverse,
    gd_transform,
    p_cofactor,
    prolong_symbol,
    sym_bracket,
    symmetrize,
    t_factor,
    u_symbol,
)

X = sp.symbols("x1:16")


def to_sympy(s: SymPoly):
    return sp.expand(sum(
        sp.Rational(c.numerator, c.denominator) * sp.Mul(*[X[i] ** e for i, e in enumerate(exps)])
        for exps, c in s
    ))


def from_sympy(expr, nvars):
    poly = sp.Poly(sp.expand(expr), *X[:nvars])
    return SymPoly(nvars, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def xs(n):
    return SymPoly.gens(n)


# -- symmetrize ------------------------------------------------------------

def test_symmetrize_examples():
    x1, x2 = xs(2)
    assert symmetrize(x2) == (x1 + x2) / 2
    assert symmetrize(x1 * x2) == x1 * x2
    assert symmetrize(x1 * x2 * x2) == (x1 * x2 * x2 + x1 * x1 * x2) / 2


@pytest.mark.parametrize("k", [2, 3, 5, 7])
def test_symmetrize_matches_brute_force_average(k):
    rng = random.Random(k)
    q = SymPoly(k, {tuple(rng.randint(0, 3) for _ in range(k)): rng.randint(-5, 5) or 1
                    for _ in range(4)})
    total = SymPoly.zero(k)
    perms = list(itertools.permutations(range(k)))
    for p in perms:
        total = total + SymPoly(k, {tuple(e[p[i]] for i in range(k)): c for e, c in q})
    expected = total / len(perms)
    got = symmetrize(q)
    assert got == expected
    assert got.is_symmetric()
    assert symmetrize(got) == got


# -- the transform -----------------------------------------------------------

def test_gd_transform_examples():
    x1, x2 = xs(2)
    assert gd_transform(u(0) * u(1)) == (x1 + x2) / 2
    assert gd_transform(u(1) * u(2)) == x1 * x2 * (x1 + x2) / 2
    for k in range(1, 5):
        assert gd_transform(u(0) ** k) == SymPoly.constant(k, 1)


def test_gd_inverse_examples():
    x1, x2 = xs(2)
    assert gd_inverse((x1 + x2) / 2) == u(0) * u(1)
    assert gd_inverse(SymPoly.constant(3, 1)) == u(0) ** 3
    assert gd_inverse(x1 * x2) == u(1) ** 2


def test_transform_rejects_bad_input():
    with pytest.raises(ValueError):
        gd_transform(u(0) + u(0) * u(1))
    with pytest.raises(ValueError):
        gd_transform(DiffPoly.constant(2))
    x1, x2 = xs(2)
    with pytest.raises(ValueError):
        gd_inverse(x1)


def test_transform_round_trip(rng):
    for _ in range(150):
        p = random_homogeneous(rng, rng.randint(1, 4), 5)
        if p.is_zero():
            continue
        s = gd_transform(p)
        assert s.is_symmetric()
        assert gd_inverse(s) == p


def test_inverse_round_trip(rng):
    for _ in range(100):
        k = rng.randint(1, 4)
        s = random_symmetric(rng, k, 5)
        assert gd_transform(gd_inverse(s), k) == s


# -- transform rules -----------------------------------------------------------

def test_rule_total_derivative(rng):
    x1, x2 = xs(2)
    assert gd_transform(total_derivative(u(0) * u(1))) == (x1 + x2) ** 2 / 2
    for _ in range(120):
        k = rng.randint(1, 4)
        F = random_homogeneous(rng, k, 4)
        if F.is_zero():
            continue
        assert gd_transform(total_derivative(F), k) == gd_transform(F) * sum(xs(k), SymPoly.zero(k))


def test_rule_partial_derivative(rng):
    checked = 0
    while checked < 120:
        k = rng.randint(2, 4)
        F = random_homogeneous(rng, k, 4)
        if F.is_zero():
            continue
        m = rng.randint(0, 4)
        lhs = gd_transform(partial(F, m), k - 1)
        rhs = gd_transform(F).derivative(k - 1, m).at_zero(k - 1) * Fraction(k, math.factorial(m))
        assert lhs == rhs
        checked += 1


def test_rule_prolongation_and_bracket(rng):
    checked = 0
    while checked < 120:
        k, l = rng.randint(1, 3), rng.randint(1, 3)
        F = random_homogeneous(rng, k, 3)
        G = random_homogeneous(rng, l, 3)
        if F.is_zero() or G.is_zero():
            continue
        Fs, Gs = gd_transform(F), gd_transform(G)
        assert prolong_symbol(Fs, Gs) == gd_transform(prolong(F, G), k + l - 1)
        assert sym_bracket(Fs, Gs) == gd_transform(bracket(F, G), k + l - 1)
        checked += 1


def test_rule_bracket_with_linear_term(rng):
    for _ in range(120):
        k = rng.randint(1, 4)
        m = rng.randint(0, 6)
        F = random_homogeneous(rng, k, 4)
        if F.is_zero():
            continue
        Fs = gd_transform(F)
        assert sym_bracket(Fs, u_symbol(m)) == Fs * P(k, m)
        assert gd_transform(bracket(F, u(m)), k) == Fs * P(k, m)


def test_zero_bracket_with_linear_term_forces_zero(rng):
    # in M^2 and m >= 2, {F, u_m} = 0 only for F = 0
    for _ in range(100):
        k, m = rng.randint(2, 4), rng.randint(2, 6)
        F = random_homogeneous(rng, k, 4)
        assert bracket(F, u(m)).is_zero() == F.is_zero()


def test_sym_bracket_examples():
    x1, x2 = xs(2)
    F = (x1 + x2) / 2
    assert sym_bracket(F, u_symbol(2)) == x1 * x2 * (x1 + x2)
    assert sym_bracket(F, u_symbol(2)) == gd_transform(2 * u(1) * u(2))
    assert sym_bracket(F, F).is_zero()
    with pytest.raises(ValueError):
        sym_bracket(x1, F)


# -- P, t, p ----------------------------------------------------------------

def test_P_examples():
    x1, x2 = xs(2)
    y1, y2, y3 = xs(3)
    assert P(2, 2) == 2 * x1 * x2
    assert P(2, 3) == 3 * x1 * x2 * (x1 + x2)
    assert P(3, 3) == 3 * (y1 + y2) * (y2 + y3) * (y3 + y1)


@pytest.mark.parametrize("k,m", [(2, 7), (3, 6), (4, 5), (5, 4), (6, 3)])
def test_P_against_sympy_expansion(k, m):
    s = sum(X[:k])
    expected = sp.expand(s ** m - sum(x ** m for x in X[:k]))
    assert P(k, m) == from_sympy(expected, k)
    if m >= 2:
        assert P(k, m).is_symmetric() and P(k, m).degree() == m


def test_t_factor_examples():
    x1, x2 = xs(2)
    assert t_factor(2, 3) == x1 * x2 * (x1 + x2)
    assert t_factor(2, 5) == x1 * x2 * (x1 + x2) * (x1 * x1 + x1 * x2 + x2 * x2)
    assert t_factor(2, 7) == x1 * x2 * (x1 + x2) * (x1 * x1 + x1 * x2 + x2 * x2) ** 2
    assert t_factor(2, 8) == x1 * x2
    assert t_factor(4, 9) == SymPoly.constant(4, 1)
    assert t_factor(3, 4) == SymPoly.constant(3, 1)
    with pytest.raises(ValueError):
        t_factor(1, 3)


def test_p_cofactor_examples():
    assert p_cofactor(2, 2) == SymPoly.constant(2, 2)
    assert p_cofactor(2, 3) == SymPoly.constant(2, 3)
    assert p_cofactor(3, 3) == SymPoly.constant(3, 3)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_factorization_reassembles(k):
    for m in range(2, 14):
        assert t_factor(k, m) * p_cofactor(k, m) == P(k, m)


def test_t_and_p_coprime_by_sympy():
    # gcd(t_2^(m), p_2^(n)) = gcd(p_2^(m), p_2^(n)) = 1, checked with sympy's gcd
    for m in range(2, 12):
        for n in range(2, 12):
            t = to_sympy(t_factor(2, m))
            pm, pn = to_sympy(p_cofactor(2, m)), to_sympy(p_cofactor(2, n))
            assert sp.gcd(t, pn).is_number
            if m != n:
                assert sp.gcd(pm, pn).is_number


# -- division ----------------------------------------------------------------

def test_exact_divide_examples():
    x1, x2 = xs(2)
    assert exact_divide(2 * x1 * x2, x1 * x2) == SymPoly.constant(2, 2)
    assert exact_divide(x1 * x1 + x1 * x2, x1 + x2) == x1
    assert exact_divide(x1 * x1 + x2 * x2, x1 + x2) is None
    with pytest.raises(ZeroDivisionError):
        exact_divide(x1, SymPoly.zero(2))
    with pytest.raises(ValueError):
        exact_divide(x1, SymPoly.constant(3, 1))


def test_division_identity_and_sympy_agreement(rng):
    for _ in range(100):
        n = rng.randint(1, 3)
        a = random_symmetric(rng, n, 5, max_terms=4)
        b = random_symmetric(rng, n, 2, max_terms=2)
        if b.is_zero():
            continue
        q, r = divide_with_remainder(a, b)
        assert b * q + r == a
        divisible = sp.div(to_sympy(a), to_sympy(b), *X[:n])[1] == 0
        assert (exact_divide(a, b) is not None) == divisible
        assert (exact_divide(a * b, b)) == a


def test_divisibility_transfer(rng):
    for _ in range(100):
        k = rng.randint(2, 4)
        m, n = rng.sample(range(2, 8), 2)
        H = random_symmetric(rng, k, 3)
        assert exact_divide(H * P(k, m), P(k, m)) == H
    # with coprime t/p parts, P(k,m) | P(k,n) exactly when p_k^(m) is a unit
    # and t_k^(m) | t_k^(n); for k >= 4 that never happens
    for k in (2, 3, 4, 5):
        for m in range(2, 10):
            for n in range(2, 10):
                if m == n:
                    continue
                expected = (
                    p_cofactor(k, m).degree() == 0
                    and exact_divide(t_factor(k, n), t_factor(k, m)) is not None
                )
                assert (exact_divide(P(k, n), P(k, m)) is not None) == expected
                if k >= 4:
                    assert not expected


# -- identities used in the odd-order argument ------------------------------

def _p2_at(m, a, b):
    return P(2, m).compose([a, b])


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11, 13])
def test_reflection_identity(m):
    x1, x2 = xs(2)
    assert P(2, m) == -_p2_at(m, x1 + x2, -x2)


@pytest.mark.parametrize("m,l", [(m, l) for m in (3, 5, 7, 9) for l in (3, 5, 7, 9) if m != l])
def test_Q_not_divisible_by_cube(m, l):
    x1, x2, x3 = xs(3)
    Q = _p2_at(m, x2, x3) * _p2_at(l, x2 + x3, x1) - _p2_at(l, x2, x3) * _p2_at(m, x2 + x3, x1)
    s = x2 + x3
    assert exact_divide(Q, s * s) is not None
    assert exact_divide(Q, s * s * s) is None
    # second x3-derivative at x3 = -x2
    second = Q.derivative(2, 2).compose([x1, x2, -x2])
    expected = (-(x2 ** (m - 1)) * x1 ** (l - 1) + x2 ** (l - 1) * x1 ** (m - 1)) * (2 * l * m)
    assert second == expected and not second.is_zero()
