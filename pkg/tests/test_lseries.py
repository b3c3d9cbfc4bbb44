"""Character sums, Euler factors and the zeta function."""

from fractions import Fraction

import pytest

from biquad.characters import TowerConfig
from biquad.curve import Curve
from biquad.errors import ConfigurationError
from biquad.lseries import (PowerSeriesT, char_sum, euler_factorization_check, euler_product,
                            triangulate, zeta_numerator, zeta_series)


def test_char_sum_examples(f5):
    for ch in ("chi1", "chi2", "chi3", "trivial"):
        assert char_sum(f5, ch, 0) == 1
    assert char_sum(f5, "trivial", 1) == 8
    assert char_sum(f5, "chi1", 1) == 0
    with pytest.raises(ConfigurationError):
        char_sum(f5, "psi", 1)


def test_char_sums_vanish(f5):
    for ch in ("chi1", "chi2", "chi3"):
        assert [char_sum(f5, ch, n) for n in range(5)] == [1, 0, 0, 0, 0]


def test_divisor_counts(f5):
    # [DERIVED] Z(T) = (1 + 2T + 5T^2) / ((1 - T)(1 - 5T)) expanded by hand
    assert [sum(1 for _ in f5.curve.effective_divisors(n)) for n in range(5)] == [1, 8, 48, 248, 1248]
    assert list(zeta_series(f5.curve, 4).coeffs) == [1, 8, 48, 248, 1248]


def test_zeta_numerators():
    assert zeta_numerator(Curve(5, (0, 1, 4))) == [1, 2, 5]
    assert zeta_numerator(Curve(3, (0, 1, 2))) == [1, 0, 3]


def test_power_series_inverse():
    s = PowerSeriesT.from_poly([1, -3, 2], 6)
    one = s * s.inv()
    assert list(one.coeffs) == [1] + [0] * 6
    assert PowerSeriesT.from_poly([Fraction(1, 2)], 2).to_json() == ["1/2", "0", "0"]


def test_euler_scan(f5):
    rep = euler_factorization_check(f5, 3)
    assert rep["all_ok"]
    assert len(rep["places"]) == 8 + 12 + 32


@pytest.mark.parametrize("q,roots", [(5, (0, 1, 4)), (5, (0, 2, 3)), (3, (0, 1, 2))])
def test_triangulation(q, roots):
    c = Curve(q, roots)
    t = TowerConfig(c, (), (), ())
    rep = triangulate(t, 3)
    assert rep["all_ok"], rep


def test_euler_product_is_zeta(f5):
    assert euler_product(f5, "trivial", 4).coeffs == zeta_series(f5.curve, 4).coeffs
