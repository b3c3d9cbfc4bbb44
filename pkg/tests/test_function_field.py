"""Function fields of X and Y3: arithmetic, divisors, Riemann-Roch spaces."""

import random

import pytest
from hypothesis import given, reject
from hypothesis import strategies as st

from biquad.algebra import Poly, field
from biquad.characters import INERT, DivisorY3, PlaceY3, pullback_divisor
from biquad.curve import INFINITY, Divisor, Place
from biquad.errors import CapacityError
from biquad.function_field import (ElemK3, FuncF, affine_trace_one_slice, divisor_F,
                                   divisor_of, ord_F, riemann_roch_X, rr_space)

Q = 5


def small_poly(max_deg=2):
    return st.lists(st.integers(0, Q - 1), min_size=1, max_size=max_deg + 1).map(lambda c: Poly(Q, c))


@st.composite
def funcs(draw, nonzero=False):
    from biquad.config import load_tower
    c = load_tower(None).curve
    p, s = draw(small_poly()), draw(small_poly(1))
    r = draw(small_poly(1))
    if not r:
        r = Poly(Q, (1,))
    g = FuncF(c, p, s, r)
    if nonzero and g.is_zero():
        g = FuncF.const(c, 1)
    return g


def evaluate(g: FuncF, F, x, y):
    den = F.eval_poly(g.r, x)
    if den == 0:
        return None
    num = F.add(F.eval_poly(g.p, x), F.mul(F.eval_poly(g.s, x), y))
    return F.div(num, den)


@pytest.fixture(scope="module")
def sample_points(curve5):
    """20 random affine points over F_{5^4}, the evaluation oracle."""
    rng = random.Random(4)
    pts = [p for p in curve5.points_over(4) if not p.is_infinity]
    return field(5, 4), rng.sample(pts, 20)


@given(funcs(), funcs(nonzero=True))
def test_arithmetic_agrees_with_evaluation(a, b):
    from biquad.config import load_tower
    c = load_tower(None).curve
    F = field(5, 4)
    rng = random.Random(7)
    pts = [p for p in c.points_over(4) if not p.is_infinity]
    for pt in rng.sample(pts, 20):
        va, vb = evaluate(a, F, pt.x, pt.y), evaluate(b, F, pt.x, pt.y)
        if va is None or vb is None or vb == 0:
            continue
        for expr, want in ((a + b, F.add(va, vb)), (a * b, F.mul(va, vb)), (a / b, F.div(va, vb))):
            got = evaluate(expr, F, pt.x, pt.y)
            if got is not None:
                assert got == want


@given(funcs(nonzero=True))
def test_inverse_and_canonical_form(g):
    one = g * g.inv()
    assert one == 1
    assert g.r.lc == 1
    assert FuncF.decode(g.curve, g.encode()) == g


@given(funcs(nonzero=True))
def test_divisor_F_degree_zero(g):
    try:
        D = divisor_F(g)
    except CapacityError:
        reject()
    assert D.degree == 0


@pytest.mark.parametrize("c0", range(Q))
def test_divisor_F_of_x_matches_curve(curve5, c0):
    g = FuncF.x(curve5) - c0
    assert divisor_F(g) == curve5.divisor_of_coordinate_function("x", c0)


def test_divisor_F_of_y(curve5):
    assert divisor_F(FuncF.y(curve5)) == curve5.divisor_of_coordinate_function("y")


def test_ord_F_at_infinity(curve5):
    assert ord_F(FuncF.x(curve5), INFINITY) == -2
    assert ord_F(FuncF.y(curve5), INFINITY) == -3


def test_div_beta(f5, curve5):
    T3 = curve5.two_torsion(2)
    assert divisor_of(f5, ElemK3.beta(curve5)) == DivisorY3(
        {PlaceY3(INFINITY, 0): -1, PlaceY3(INFINITY, 1): -1, PlaceY3(T3, INERT): 1})
    assert divisor_of(f5, ElemK3(curve5, FuncF.const(curve5, 3))).is_zero()


def test_k3_identities(curve5):
    b = ElemK3.beta(curve5)
    assert b.trace() == 0
    assert ElemK3(curve5, FuncF.const(curve5, 3)).trace() == 1  # 1/2 = 3 in F_5
    x = FuncF.x(curve5)
    a = ElemK3(curve5, x + 1, FuncF.y(curve5) / (x - 2))
    assert a.sigma() == ElemK3(curve5, a.u, -a.v)
    assert a.trace() == a.u * 2
    assert a.norm() == a.u * a.u - a.v * a.v * (x - curve5.roots[2])
    assert (a * a.sigma()).trace() == a.norm() * 2
    assert a * a.inv() == ElemK3(curve5, FuncF.const(curve5, 1))
    assert ElemK3.decode(curve5, a.encode()) == a


@given(funcs(), funcs())
def test_div_a_plus_div_sigma_a_is_pullback_of_norm(u, v):
    from biquad.config import load_tower
    t = load_tower(None)
    a = ElemK3(t.curve, u, v)
    if a.is_zero():
        return
    try:
        da, dsa, dn = divisor_of(t, a), divisor_of(t, a.sigma()), divisor_F(a.norm())
    except CapacityError:
        reject()  # zeros of the norm live beyond the session field bound
    assert da.degree == 0
    assert da + dsa == pullback_divisor(t, dn)


@pytest.mark.parametrize("G", ["{inf^1}", "{inf^2}", "{1:0:0^1,1:2:1^1}", "{2:6:2^1}",
                               "{inf^3,1:3:2^-1}", "{1:0:0^-1,inf^2}"])
def test_riemann_roch_X(curve5, G):
    D = Divisor.parse(G)
    basis = riemann_roch_X(curve5, D)
    assert len(basis) == D.degree
    for b in basis:
        assert divisor_F(b) + D >= Divisor()


def test_riemann_roch_X_degree_zero(curve5):
    assert len(riemann_roch_X(curve5, Divisor())) == 1
    # (2,1) - inf is a nonprincipal degree-0 divisor on an elliptic curve
    assert riemann_roch_X(curve5, Divisor.parse("{1:2:1^1,inf^-1}")) == []


def test_rr_space_examples(f5):
    inf_up = pullback_divisor(f5, Divisor.point(INFINITY))
    assert rr_space(f5, inf_up).dim == 2
    M = pullback_divisor(f5, Divisor.point(INFINITY, 2)) - f5.D3_prime
    L = rr_space(f5, M)
    assert L.dim == 3
    assert all(L.contains(b) for b in L.basis)
    assert rr_space(f5, DivisorY3()).dim == 1


@pytest.mark.parametrize("n", [1, 2])
def test_rr_dim_equals_degree_over_all_D(f5, n):
    for D in f5.curve.effective_divisors(n):
        M = pullback_divisor(f5, D) - f5.D3_prime
        L = rr_space(f5, M)
        assert L.dim == M.degree
        for b in L.basis:
            assert (divisor_of(f5, b) + M) >= DivisorY3()


def test_affine_slice_members(f5):
    M = pullback_divisor(f5, Divisor.point(INFINITY, 2)) - f5.D3_prime
    elems, dim = affine_trace_one_slice(f5, M)
    assert len(elems) == Q ** dim
    L = rr_space(f5, M)
    for a in elems:
        assert a.trace() == 1
        assert L.contains(a)
