"""Signed permutation group, the operator H and its eigenspaces."""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biquad.errors import ConfigurationError
from biquad.spectra import (SignedPerm, build_module, decompose, eigenspace_character,
                            group_elements, induced_character, induced_character_bruteforce,
                            inner, spectrum_ok, verify_induced_iso)


def signed_perms(d):
    return st.tuples(st.lists(st.sampled_from((1, -1)), min_size=d, max_size=d),
                     st.permutations(range(d))).map(lambda t: SignedPerm(tuple(t[0]), tuple(t[1])))


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(signed_perms(d), signed_perms(d), signed_perms(d))))
def test_group_laws_and_action(gs):
    g, h, k = gs
    d = len(g.perm)
    e = SignedPerm.identity(d)
    assert (g * h) * k == g * (h * k)
    assert g * g.inverse() == e
    x = tuple(k.signs)
    assert (g * h).act(x) == g.act(h.act(x))


def test_small_modules():
    m1 = build_module(1)
    assert m1.H == [[0, 1], [1, 0]]
    m2 = build_module(2)
    assert m2.dim == 4
    for i, x in enumerate(m2.basis):
        for j, y in enumerate(m2.basis):
            hamming = sum(a != b for a, b in zip(x, y))
            assert m2.H[i][j] == (1 if hamming == 1 else 0)


@pytest.mark.parametrize("dprime", range(1, 6))
def test_spectrum(dprime):
    rows = decompose(dprime)
    assert spectrum_ok(dprime)
    for d1, d2, lam, dim, stable, irr in rows:
        assert lam == d1 - d2 and dim == comb(dprime, d1)
        assert stable and irr


def test_dims_examples():
    assert [r[3] for r in decompose(2)] == [1, 2, 1]
    assert [r[3] for r in decompose(3)] == [1, 3, 3, 1]


@pytest.mark.parametrize("dprime", range(1, 4))
@pytest.mark.parametrize("eta_on", ["first", "second"])
def test_fast_induced_character_matches_frobenius(dprime, eta_on):
    for d1 in range(dprime + 1):
        assert induced_character(dprime, d1, eta_on) == induced_character_bruteforce(dprime, d1, eta_on)


@pytest.mark.parametrize("dprime", range(1, 6))
def test_character_dimension_and_orthogonality(dprime):
    m = build_module(dprime)
    e = SignedPerm.identity(dprime)
    chars = [eigenspace_character(m, dprime - 2 * j) for j in range(dprime + 1)]
    for j, chi in enumerate(chars):
        assert chi[e] == comb(dprime, j)
    for i in range(len(chars)):
        for j in range(i + 1, len(chars)):
            assert inner(chars[i], chars[j]) == 0


def test_one_one_case():
    """(1,1) in d' = 2: dimension 2, induced from 1 x eta."""
    r = verify_induced_iso(1, 1)
    assert r["matches_ind_1_x_eta"]
    assert eigenspace_character(build_module(2), 0)[SignedPerm.identity(2)] == 2


@pytest.mark.parametrize("dprime", range(1, 6))
def test_corrected_identifications(dprime):
    for d1 in range(dprime + 1):
        r = verify_induced_iso(d1, dprime - d1)
        assert r["matches_ind_1_x_eta"]
        assert r["swap_matches_ind_eta_x_1"]
        assert r["symmetry_up_to_eta_twist"]


@pytest.mark.parametrize("dprime", range(1, 6))
def test_literal_identifications_fail_off_diagonal(dprime):
    """With eta on the first factor, or with the bare swap, the match holds only
    in the balanced case d1 = d2' (and trivially when both sides coincide)."""
    for d1 in range(dprime + 1):
        d2 = dprime - d1
        r = verify_induced_iso(d1, d2)
        assert r["symmetry_literal"] == (d1 == d2)
        assert r["matches_ind_eta_x_1"] == (d1 == d2)


def test_bounds():
    with pytest.raises(ConfigurationError):
        build_module(6)
    with pytest.raises(ConfigurationError):
        verify_induced_iso(0, 0)
