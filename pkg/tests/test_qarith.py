"""q-arithmetic: frozen values, independent oracles, ring properties."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from qproj.qarith import (
    ExactnessError,
    QLaurent,
    parse_q,
    q_binomial,
    q_factorial,
    q_int,
    q_multinomial,
)

Q = Fraction(1, 2)
PREC = 60


def qint_value(z, qv):
    """Independent numeric q-integer: direct power sum at a float q."""
    if z == 0:
        return mp.mpf(0)
    sign = 1 if z > 0 else -1
    z = abs(z)
    return sign * sum(qv**e for e in range(1 - z, z, 2))


# -- q_int ------------------------------------------------------------------

def test_q_int_zero_and_one():
    assert q_int(0) == QLaurent.zero()
    assert q_int(1) == QLaurent.one()


def test_q_int_two():
    assert q_int(2) == QLaurent({1: 1, -1: 1})


def test_q_int_support():
    assert q_int(5).support() == (-4, -2, 0, 2, 4)
    assert q_int(4).support() == (-3, -1, 1, 3)


def test_q_int_antisymmetry():
    for z in range(1, 8):
        assert q_int(-z) == -q_int(z)


def test_q_int_classical_limit():
    # q -> 1^- recovers the plain integer within 1e-4 up to |z| = 50.
    q_near_one = Fraction(999999, 1000000)
    with mp.workdps(PREC):
        for z in (-50, -17, -2, 1, 3, 25, 50):
            val = q_int(z).eval(q_near_one, PREC)
            assert abs(val - z) < mp.mpf("1e-4")


# -- q_factorial --------------------------------------------------------------

def test_q_factorial_base_cases():
    assert q_factorial(0) == QLaurent.one()
    assert q_factorial(1) == QLaurent.one()
    assert q_factorial(2) == q_int(2)


def naive_product(dicts):
    """Independent term-by-term convolution of coefficient dicts."""
    acc = {0: 1}
    for d in dicts:
        nxt = {}
        for e1, c1 in acc.items():
            for e2, c2 in d.items():
                nxt[e1 + e2] = nxt.get(e1 + e2, 0) + c1 * c2
        acc = {e: c for e, c in nxt.items() if c}
    return acc


def test_q_factorial_three_vs_expansion_oracle():
    # [3][2][1] expanded by hand-rolled convolution of explicit dicts.
    oracle = naive_product([{2: 1, 0: 1, -2: 1}, {1: 1, -1: 1}])
    assert q_factorial(3).coeffs() == oracle
    assert oracle == {3: 1, 1: 2, -1: 2, -3: 1}


def test_q_factorial_negative_rejected():
    with pytest.raises(ValueError):
        q_factorial(-1)


# -- q_binomial ---------------------------------------------------------------

def test_q_binomial_trivial():
    assert q_binomial(2, 1) == q_int(2)
    for n in range(6):
        assert q_binomial(n, 0) == QLaurent.one()
        assert q_binomial(n, n) == QLaurent.one()


def test_q_binomial_4_2_numeric_cross_evaluation():
    # Brute-force product/quotient of numeric q-integers at 5 rational q's.
    poly = q_binomial(4, 2)
    for q in (Fraction(1, 3), Fraction(2, 5), Fraction(7, 11),
              Fraction(1, 7), Fraction(9, 13)):
        with mp.workdps(PREC):
            qv = mp.mpf(q.numerator) / mp.mpf(q.denominator)
            num = qint_value(4, qv) * qint_value(3, qv) * qint_value(2, qv) * qint_value(1, qv)
            den = (qint_value(2, qv) * qint_value(1, qv)) ** 2
            assert abs(poly.eval(q, PREC) - num / den) < mp.mpf(10) ** (5 - PREC)


def test_q_binomial_precondition():
    with pytest.raises(ValueError):
        q_binomial(3, 4)
    with pytest.raises(ValueError):
        q_binomial(3, -1)


@given(n=st.integers(0, 12), m=st.integers(0, 12))
def test_q_binomial_symmetry(n, m):
    if m > n:
        n, m = m, n
    assert q_binomial(n, m) == q_binomial(n, n - m)


# -- q_multinomial -------------------------------------------------------------

def test_q_multinomial_single_part():
    for n in range(5):
        assert q_multinomial((n,)) == QLaurent.one()


def test_q_multinomial_1_1_hand_expansion():
    # Prefactor q^-1 times [2]! = q^-1 (q + q^-1) = 1 + q^-2.
    assert q_multinomial((1, 1)) == QLaurent({0: 1, -2: 1})


def pascal_multinomial(parts):
    """Recursion oracle: peel off the first letter of a shuffle word.

    Placing letter i first contributes one inverse-square factor per smaller
    letter still to come: M(j) = sum_i q^(-2 sum_{i'<i} j_{i'}) M(j - e_i).
    """
    parts = tuple(parts)
    if sum(parts) == 0:
        return QLaurent.one()
    acc = QLaurent.zero()
    for i, j in enumerate(parts):
        if j == 0:
            continue
        smaller = sum(parts[:i])
        rest = parts[:i] + (j - 1,) + parts[i + 1:]
        acc = acc + QLaurent.q_power(-2 * smaller) * pascal_multinomial(rest)
    return acc


@pytest.mark.parametrize("parts", [(1, 1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 2)])
def test_q_multinomial_vs_pascal_recursion(parts):
    expected = pascal_multinomial(parts)
    got = q_multinomial(parts)
    assert got == expected
    # and numerically at q = 1/2 to working precision, as an extra guard
    with mp.workdps(PREC):
        assert abs(got.eval(Q, PREC) - expected.eval(Q, PREC)) < mp.mpf(10) ** (5 - PREC)


def test_q_multinomial_word_enumeration_oracle():
    # The multinomial is the inversion generating function sum_w q^(-2 inv(w))
    # over distinct arrangements; enumerate them outright.
    for parts in [(1, 1), (2, 1), (1, 1, 1), (2, 2)]:
        letters = []
        for i, j in enumerate(parts):
            letters.extend([i] * j)
        acc = QLaurent.zero()
        for w in set(itertools.permutations(letters)):
            inv = sum(1 for a in range(len(w)) for b in range(a + 1, len(w))
                      if w[a] > w[b])
            acc = acc + QLaurent.q_power(-2 * inv)
        assert q_multinomial(parts) == acc


def test_q_multinomial_negative_part_rejected():
    with pytest.raises(ValueError):
        q_multinomial((1, -1))


# -- palindromicity ------------------------------------------------------------

@given(z=st.integers(-20, 20))
def test_q_int_palindromic(z):
    assert q_int(z).is_palindromic()


@given(n=st.integers(0, 10))
def test_q_factorial_palindromic(n):
    assert q_factorial(n).is_palindromic()


@given(n=st.integers(0, 10), m=st.integers(0, 10))
def test_q_binomial_palindromic(n, m):
    if m > n:
        n, m = m, n
    assert q_binomial(n, m).is_palindromic()


def test_q_multinomial_not_palindromic():
    # The q^(-sum j_r j_s) prefactor shifts the support whenever two parts
    # are simultaneously nonzero.
    assert not q_multinomial((1, 1)).is_palindromic()
    assert not q_multinomial((2, 1)).is_palindromic()
    assert not q_multinomial((1, 1, 1)).is_palindromic()


# -- evaluation ----------------------------------------------------------------

def test_eval_frozen_values():
    with mp.workdps(PREC):
        assert q_int(2).eval(Q, PREC) == mp.mpf("2.5")
        assert QLaurent.one().eval(Fraction(3, 7), PREC) == 1
        assert q_int(5).eval(Q, PREC) == mp.mpf("21.3125")


def test_eval_rejects_bad_q():
    with pytest.raises(ValueError):
        q_int(2).eval(Fraction(3, 2), PREC)
    with pytest.raises(ValueError):
        q_int(2).eval(Fraction(0, 1), PREC)
    with pytest.raises(ValueError):
        parse_q(Fraction(3, 2))
    with pytest.raises(TypeError):
        parse_q(0.5)  # floats are not exact


def test_eval_precision_floor():
    with pytest.raises(ValueError):
        q_int(2).eval(Q, 10)


small_laurents = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=5).map(QLaurent)


@settings(max_examples=40, deadline=None)
@given(p1=small_laurents, p2=small_laurents)
def test_eval_is_a_homomorphism(p1, p2):
    with mp.workdps(PREC):
        lhs = (p1 * p2).eval(Q, PREC)
        rhs = p1.eval(Q, PREC) * p2.eval(Q, PREC)
        scale = 1 + abs(lhs)
        assert abs(lhs - rhs) <= scale * mp.mpf(10) ** (5 - PREC)


# -- exact division ----------------------------------------------------------

def test_exact_division_roundtrip():
    a, b = q_factorial(5), q_factorial(3)
    assert a.exact_div(b) * b == a


def test_inexact_division_raises():
    with pytest.raises(ExactnessError):
        q_int(3).exact_div(q_int(2))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        q_int(3).exact_div(QLaurent.zero())


def test_coefficients_must_be_integers():
    with pytest.raises(TypeError):
        QLaurent({0: 0.5})


# -- guarded square root -------------------------------------------------------

def test_guarded_sqrt_clamps_roundoff_and_rejects_real_negatives():
    from qproj.qarith import NegativeRadicandError, guarded_sqrt
    with mp.workdps(PREC):
        assert guarded_sqrt(mp.mpf("-1e-45"), PREC) == 0   # below round-off scale
        assert guarded_sqrt(mp.mpf(4), PREC) == 2
    with pytest.raises(NegativeRadicandError):
        guarded_sqrt(-1, PREC)
