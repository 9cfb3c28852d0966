import random
from fractions import Fraction

import pytest

from monocat.cyclo import (
    CycloScalar,
    cyclotomic_poly,
    euler_phi,
    one,
    root_of_unity,
    scalar_from_json,
    scalar_to_json,
    zero,
)
from monocat.errors import DivisionByZero


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    for n in range(1, 30):
        assert len(cyclotomic_poly(n)) == euler_phi(n) + 1


def test_root_of_unity_basics():
    assert root_of_unity(1, 0) == one()
    assert root_of_unity(2, 1) == CycloScalar.rational(-1)
    i = root_of_unity(4, 1)
    assert i * i == CycloScalar.rational(-1)
    # zeta4 * zeta4 = -1
    assert (i * i).is_rational()


def test_root_power_identity():
    for n in range(1, 25):
        z = root_of_unity(n, 1)
        assert z ** n == one()


def test_root_sum_vanishes():
    for n in range(2, 25):
        total = zero()
        for j in range(n):
            total = total + root_of_unity(n, j)
        assert total.is_zero(), n


def test_minimal_polynomial_relation():
    z3 = root_of_unity(3, 1)
    assert z3 + z3 * z3 == CycloScalar.rational(-1)


def test_inverse_of_root_is_conjugate_power():
    z8 = root_of_unity(8, 1)
    assert z8.inv() == root_of_unity(8, 7)
    assert z8 * z8.inv() == one()


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        zero().inv()


def _random_scalar(rng, conductors=(1, 3, 4, 8, 12)):
    n = rng.choice(conductors)
    coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 5))
              for _ in range(euler_phi(n))]
    return CycloScalar._canonical(n, coeffs)


def test_field_axioms_randomized():
    rng = random.Random(20260810)
    for _ in range(300):
        a, b, c = (_random_scalar(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
    for _ in range(80):
        a = _random_scalar(rng)
        if not a.is_zero():
            assert a * a.inv() == one()


def test_mixed_conductor_equality():
    # zeta_8^2 equals i from conductor 4, via canonical form
    z = root_of_unity(8, 1)
    assert z * z == root_of_unity(4, 1)
    assert (z * z).n == 4
    # conductor 6 collapses into conductor 3
    z6 = root_of_unity(6, 1)
    assert z6.n == 3
    z3 = root_of_unity(3, 1)
    assert z6 == CycloScalar.rational(1) + z3  # zeta_6 = 1 + zeta_3


def test_canonical_rational_detection():
    z5 = root_of_unity(5, 1)
    s = z5 + z5 ** 2 + z5 ** 3 + z5 ** 4
    assert s == CycloScalar.rational(-1)
    assert s.is_rational()


def test_as_root_of_unity():
    assert root_of_unity(12, 5).as_root_of_unity() == (12, 5)
    assert root_of_unity(12, 8).as_root_of_unity() == (3, 2)
    assert one().as_root_of_unity() == (1, 0)
    assert CycloScalar.rational(-1).as_root_of_unity() == (2, 1)
    assert CycloScalar.rational(Fraction(1, 2)).as_root_of_unity() is None


def test_sort_key_lifts():
    z4 = root_of_unity(4, 1)
    key = z4.sort_key(8)
    assert len(key) == euler_phi(8)
    with pytest.raises(ValueError):
        z4.sort_key(6)


def test_json_roundtrip():
    rng = random.Random(7)
    values = [one(), zero(), CycloScalar.rational(Fraction(-3, 7)),
              root_of_unity(8, 3)] + [_random_scalar(rng) for _ in range(20)]
    for v in values:
        assert scalar_from_json(scalar_to_json(v)) == v


def test_render():
    assert CycloScalar.rational(Fraction(3, 2)).render() == "3/2"
    txt = (one() + root_of_unity(8, 1)).render()
    assert "zeta_8" in txt and "z" in txt
