"""Tests for exact cyclotomic arithmetic."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qforms.cyclotomic import CycField, cyclotomic_poly
from qforms.errors import DomainError, ParameterError


def test_cyclotomic_poly_small_values():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    # Phi_10 = x^4 - x^3 + x^2 - x + 1
    assert cyclotomic_poly(10) == (1, -1, 1, -1, 1)
    # Phi_20 = x^8 - x^6 + x^4 - x^2 + 1, degree phi(20) = 8
    assert cyclotomic_poly(20) == (1, 0, -1, 0, 1, 0, -1, 0, 1)


def test_field_dimensions():
    F = CycField(l=5, k=1, varpi=2)
    assert F.N == 20
    assert F.degree == 8


def test_field_init_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        CycField(l=6, k=2)  # gcd(k, l) != 1
    with pytest.raises(ParameterError):
        CycField(l=1)
    with pytest.raises(ParameterError):
        CycField(l=5, varpi=0)


def test_xi_has_order_N():
    F = CycField(l=3, varpi=2)  # N = 12
    xi = F.xi_pow(1)
    powers = [xi**m for m in range(1, F.N + 1)]
    assert powers[-1] == F.one
    assert all(p != F.one for p in powers[:-1])


def test_zeta_pow_fractional_grid():
    F = CycField(l=5, k=1, varpi=2)
    # 2*varpi*q = 4q must be an integer: q = 3/4 is fine, q = 1/3 is not.
    assert F.zeta_pow(Fraction(3, 4)) == F.xi_pow(3)
    with pytest.raises(DomainError):
        F.zeta_pow(Fraction(1, 3))


def test_zeta_pow_respects_k():
    F = CycField(l=5, k=3, varpi=1)  # N = 10, zeta = xi^3
    assert F.zeta_pow(1) == F.xi_pow(3 * 2 % 10)
    assert F.zeta_pow(Fraction(1, 2)) == F.xi_pow(3)


def test_known_inverse_identity():
    # In the l = 5 field (varpi = 1): 1/(1 - zeta^2) * (1 - zeta^4) = 1 + zeta^2.
    F = CycField(l=5)
    z = F.zeta_pow(1)
    lhs = (F.one - z**2).inverse() * (F.one - z**4)
    assert lhs == F.one + z**2


def test_q_bracket_vanishing_pattern():
    # For odd l and varpi = 1: [a] = 1 - zeta^(-2a) = 0 exactly when l | a.
    for l in (3, 5, 7):
        F = CycField(l=l)
        for a in range(-3 * l, 3 * l + 1):
            assert F.q_bracket(a).is_zero() == (a % l == 0), (l, a)


def test_q_bracket_with_colour_multiplier():
    F = CycField(l=5, varpi=2)
    assert F.q_bracket(3, d=2) == F.one - F.zeta_pow(-12)


def test_inverse_of_zero_raises():
    F = CycField(l=3)
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero


def test_multiplicativity_window():
    # zeta^a * zeta^b = zeta^(a+b) across the whole allowed exponent window.
    F = CycField(l=5, k=3, varpi=2)
    grid = [Fraction(m, 2 * F.varpi) for m in range(-4 * F.N, 4 * F.N + 1)]
    for a in grid[:: 7]:
        for b in grid[:: 11]:
            assert F.zeta_pow(a) * F.zeta_pow(b) == F.zeta_pow(a + b)


def test_hundred_random_inverses():
    rng = random.Random(20260813)
    fields = [CycField(l=5), CycField(l=7, k=2), CycField(l=3, varpi=2, k=5)]
    count = 0
    while count < 100:
        F = rng.choice(fields)
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(F.degree)]
        x = F.num(coeffs)
        if x.is_zero():
            continue
        count += 1
        assert x * x.inverse() == F.one


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_xi_pow_is_a_homomorphism(a, b):
    F = CycField(l=7)
    assert F.xi_pow(a) * F.xi_pow(b) == F.xi_pow(a + b)


@settings(max_examples=60)
@given(
    st.lists(st.integers(-6, 6), min_size=4, max_size=4),
    st.lists(st.integers(-6, 6), min_size=4, max_size=4),
    st.lists(st.integers(-6, 6), min_size=4, max_size=4),
)
def test_ring_axioms_sampled(u, v, w):
    F = CycField(l=5)  # degree 4
    x, y, z = F.num(u), F.num(v), F.num(w)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


def test_arithmetic_with_plain_integers():
    F = CycField(l=5)
    z = F.zeta_pow(1)
    assert 1 - z == F.one - z
    assert 2 * z == z + z
    assert (1 - z) / (1 - z) == F.one
    assert z**0 == F.one
    assert z**-1 == z.inverse()
