"""Truncated Laurent series over F_q^d."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biquad.algebra import Poly, field
from biquad.errors import PrecisionError
from biquad.series import EXACT, Series

F = field(5, 2)
coeff = st.integers(0, F.order - 1)


def series(min_val=-3, max_val=3, prec_extra=8):
    return st.builds(lambda v, cs, p: Series(F, v, cs, v + p),
                     st.integers(min_val, max_val), st.lists(coeff, min_size=1, max_size=8),
                     st.integers(1, prec_extra))


def test_normalizes_leading_zeros():
    s = Series(F, 0, [0, 0, 3, 1], 10)
    assert s.val == 2 and s.c == [3, 1]
    z = Series(F, 0, [0, 0], 5)
    assert z.is_known_zero() and z.val == 5
    with pytest.raises(PrecisionError):
        z.ord


@given(series(), series())
def test_add_commutes(a, b):
    s, t = a + b, b + a
    assert (s.val, s.c, s.prec) == (t.val, t.c, t.prec)


@given(series(), series(), series())
def test_mul_associative_to_precision(a, b, c):
    l, r = (a * b) * c, a * (b * c)
    p = min(l.prec, r.prec)
    for e in range(min(l.val, r.val), p):
        assert l.coeff(e) == r.coeff(e)


@given(series())
def test_inverse(a):
    if a.is_known_zero():
        return
    one = a * a.inv()
    assert one.val == 0 and one.c[0] == 1
    for e in range(1, one.prec):
        assert one.coeff(e) == 0


@given(st.integers(0, 3), st.lists(coeff, min_size=1, max_size=6))
def test_sqrt_squares_back(half, cs):
    if cs[0] == 0:
        return
    s = Series(F, half, cs, half + 10)
    sq = s * s
    root = sq.sqrt(s.c[0])
    for e in range(root.val, min(root.prec, s.prec)):
        assert root.coeff(e) == s.coeff(e)


def test_eval_poly_horner():
    t = Series(F, 1, [1], EXACT)
    p = Poly(5, (1, 2, 3))  # 1 + 2t + 3t^2
    s = t.eval_poly(p).truncate(5)
    assert [s.coeff(e) for e in range(5)] == [1, 2, 3, 0, 0]
