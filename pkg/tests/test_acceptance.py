"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from fractions import Fraction
from itertools import combinations

import pytest

from biquad import orbital
from biquad.characters import TowerConfig, pullback_divisor, validate_sigma
from biquad.curve import INFINITY, Curve, Divisor, Place
from biquad.function_field import ElemK3, FuncF, divisor_of, rr_space
from biquad.local_iwahori import iwahori_orbit_search
from biquad.lseries import char_sum, euler_factorization_check, triangulate
from biquad.spectra import MAX_DPRIME, decompose, spectrum_ok, verify_induced_iso

P32 = Place(1, 3, 2)
TOWER_CURVES = [(5, (0, 1, 4)), (5, (0, 1, 2)), (5, (1, 2, 3)), (5, (0, 2, 3)), (3, (0, 1, 2))]


def divisors_off_sigma(t, n):
    return [D for D in t.curve.effective_divisors(n) if not any(p in t.sigma for p in D.support)]


@pytest.fixture(scope="module")
def invariants(f5):
    """Every (D, a) for D of degree 1 and 2 on X - Sigma of the example tower."""
    return [(D, pt) for n in (1, 2) for D in divisors_off_sigma(f5, n)
            for pt in orbital.enumerate_AD(f5, D)]


def test_criterion_1_sigma_splits(acceptance):
    t0 = time.perf_counter()
    checked = 0
    ok = True
    for q, roots in TOWER_CURVES:
        c = Curve(q, roots)
        base = TowerConfig(c, (), (), ())
        cands = [x for x in c.places_up_to(2) if base.chi1.value(x) == base.chi2.value(x)]
        for size in range(1, len(cands) + 1):
            for sig in combinations(cands, size):
                f = tuple(x for x in sig if base.chi1.value(x) == 1)
                inf = tuple(x for x in sig if base.chi1.value(x) == -1)
                t = TowerConfig(c, f, inf, tuple((x, 0) for x in sig))
                validate_sigma(t)  # raises PropertyFailure if some chi3 = -1
                ok &= all(t.chi3.value(x) == 1 for x in sig)
                checked += 1
    acceptance(1, ok, f"{checked} level sets over {len(TOWER_CURVES)} towers (F_5, F_3)",
               time.perf_counter() - t0)
    assert ok and checked > 0


def test_criterion_2_oracle_equivalence(f5, invariants, acceptance):
    t0 = time.perf_counter()
    bad = [(D.label, pt.label) for D, pt in invariants
           if orbital.oracle_count(f5, D, pt.a) != orbital.j_of_a(f5, D, pt)]
    ok = not bad and len(invariants) > 0
    acceptance(2, ok, f"{len(invariants)} invariants, {len(bad)} mismatches",
               time.perf_counter() - t0)
    assert ok, bad[:5]


def _out_of_domain(f5, D, n):
    c = f5.curve
    x, y = FuncF.x(c), FuncF.y(c)
    out = []
    for k in range(1, 5):
        for v in [FuncF.const(c, k), y * k] + [(x - j) * k for j in range(5)] + \
                 [FuncF.const(c, k) / (x - j) for j in range(5)]:
            a = ElemK3(c, FuncF.const(c, 3), v)
            if not orbital.in_AD(f5, D, a):
                out.append(a)
    return out[:n]


def test_criterion_3_out_of_domain_vanishing(f5, acceptance):
    t0 = time.perf_counter()
    D = Divisor.point(Place(1, 0, 0))
    elems = _out_of_domain(f5, D, 20)
    counts = [orbital.oracle_triple_count(f5, D, a) for a in elems]
    zeros = [orbital.j_of_invariant(f5, D, a).is_zero() for a in elems]
    ok = len(elems) == 20 and all(c == 0 for c in counts) and all(zeros) \
        and all(a.trace() == 1 for a in elems)
    acceptance(3, ok, f"{len(elems)} trace-one elements outside the invariant set, "
               f"{sum(counts)} oracle triples", time.perf_counter() - t0)
    assert ok


def test_criterion_4_functional_equation(f5, invariants, acceptance):
    t0 = time.perf_counter()
    fe_ok = all(orbital.functional_equation_holds(f5, D, pt) for D, pt in invariants)
    by_D: dict = {}
    for D, pt in invariants:
        by_D.setdefault(D, []).append(pt)
    jr_ok = True
    for D, pts in by_D.items():
        J = orbital.j_global(f5, D, pts)
        for r in range(5):
            symbolic = J.derivative_coefficient(r, f5.N)
            direct = sum((orbital.j_r_direct(f5, p, r) for p in pts), Fraction(0))
            jr_ok &= symbolic == direct
    ok = fe_ok and jr_ok
    acceptance(4, ok, f"functional equation on {len(invariants)} invariants; "
               f"j_r two routes agree for r <= 4 on {len(by_D)} divisors",
               time.perf_counter() - t0)
    assert ok


def test_criterion_5_local_vanishing(acceptance):
    t0 = time.perf_counter()
    ok = True
    for k0 in range(-2, 3):
        for window in (4, 8):
            ok &= iwahori_orbit_search(k0, window, "both") == []
            ok &= iwahori_orbit_search(k0, window, "full") == [(k0, 0)]
    acceptance(5, ok, "both-conditions empty and full-only = {(k0, 0)} for k0 in [-2, 2], windows 4, 8",
               time.perf_counter() - t0)
    assert ok


def _criterion_6_parts():
    spec = all(spectrum_ok(d) for d in range(1, MAX_DPRIME + 1))
    irred = all(stable and irr for d in range(1, MAX_DPRIME + 1)
                for *_, stable, irr in decompose(d))
    isos = [verify_induced_iso(d1, d - d1) for d in range(1, MAX_DPRIME + 1) for d1 in range(d + 1)]
    literal_ind = all(r["matches_ind_eta_x_1"] for r in isos)
    literal_sym = all(r["symmetry_literal"] for r in isos)
    corrected = all(r["matches_ind_1_x_eta"] and r["swap_matches_ind_eta_x_1"]
                    and r["symmetry_up_to_eta_twist"] for r in isos)
    return spec, irred, literal_ind, literal_sym, corrected


@pytest.mark.xfail(strict=True, reason="eigenspace (d1, d2') is induced from 1 x eta_d2', "
                   "not eta_d1 x 1; the swap symmetry holds only up to an eta twist")
def test_criterion_6_representation_decomposition(acceptance):
    t0 = time.perf_counter()
    spec, irred, literal_ind, literal_sym, corrected = _criterion_6_parts()
    ok = spec and irred and literal_ind and literal_sym
    detail = (f"spectrum {'ok' if spec else 'BAD'}, stable+irreducible {'ok' if irred else 'BAD'}, "
              f"Ind(eta_d1 x 1) {'ok' if literal_ind else 'false'}, "
              f"V(d1,d2') = V(d2',d1) {'ok' if literal_sym else 'false'}; "
              f"corrected forms {'hold' if corrected else 'FAIL'}")
    acceptance(6, ok, detail, time.perf_counter() - t0)
    assert ok


def test_criterion_6_corrected_forms():
    spec, irred, literal_ind, literal_sym, corrected = _criterion_6_parts()
    assert spec and irred and corrected
    assert not literal_ind and not literal_sym


def test_criterion_7_lseries(f5, acceptance):
    t0 = time.perf_counter()
    sums_ok = all(char_sum(f5, ch, n) == 0 for ch in ("chi1", "chi2", "chi3") for n in range(1, 5))
    euler_ok = euler_factorization_check(f5, 3)["all_ok"]
    tri_ok = triangulate(f5, 4)["all_ok"]
    ok = sums_ok and euler_ok and tri_ok
    acceptance(7, ok, f"char sums {sums_ok}, Euler factors to degree 3 {euler_ok}, "
               f"zeta triangulation {tri_ok}", time.perf_counter() - t0)
    assert ok


def test_criterion_8_internal_consistency(f5, invariants, acceptance):
    t0 = time.perf_counter()
    c = f5.curve
    rng = random.Random(8)
    x, y = FuncF.x(c), FuncF.y(c)
    rt_ok = True
    for _ in range(20):
        v = (x * rng.randrange(5) + y * rng.randrange(5) + rng.randrange(5)) / (x - rng.randrange(5))
        a = ElemK3(c, FuncF.const(c, 3), v)
        rt_ok &= orbital.gamma_of_invariant(a).inv() == a
    dim_ok = True
    n_spaces = 0
    for n in (1, 2):
        for D in divisors_off_sigma(f5, n):
            for M in (pullback_divisor(f5, D), pullback_divisor(f5, D) - f5.D3_prime):
                if M.degree >= 1:
                    dim_ok &= rr_space(f5, M).dim == M.degree
                    n_spaces += 1
    div_ok = all(divisor_of(f5, pt.a).degree == 0 for _, pt in invariants)
    ok = rt_ok and dim_ok and div_ok
    acceptance(8, ok, f"gamma round trip x20 {rt_ok}, dim L(M) = deg M on {n_spaces} spaces {dim_ok}, "
               f"deg div(a) = 0 on {len(invariants)} invariants {div_ok}", time.perf_counter() - t0)
    assert ok
