"""Tests for the modular symbol spaces and their Hecke action."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckealg.dirichlet import (
    DirichletCharacter, legendre_character, trivial_character,
)
from heckealg.ff import make_field
from heckealg.linalg import base_change, min_poly_matrix
from heckealg.modsym import (
    P1List, _apply_family, _monomial_matrix, boundary_map, build_space,
    cuspidal_subspace, hecke_matrices, hecke_operator, heilbronn_cremona,
    merel_family, p1_normalize,
)

from math import gcd


# ---------------------------------------------------------------------------
# P1(Z/N)

@given(st.integers(2, 400), st.integers(-10**6, 10**6),
       st.integers(-10**6, 10**6))
@settings(max_examples=300, deadline=None)
def test_p1_normalize_scalar_relation(n, u, v):
    u2, v2, lam = p1_normalize(n, u, v)
    if lam == 0:
        assert gcd(gcd(u, v), n) > 1
        return
    assert gcd(lam, n) == 1
    assert (lam * u2 - u) % n == 0
    assert (lam * v2 - v) % n == 0
    # representatives are fixed points with scalar one
    assert p1_normalize(n, u2, v2) == (u2, v2, 1)


def test_p1_normalize_level_one():
    assert p1_normalize(1, 5, 7) == (0, 0, 1)


@pytest.mark.parametrize("n,size", [
    (1, 1), (2, 3), (11, 12), (12, 24), (15, 24), (24, 48), (431, 432),
])
def test_p1_size(n, size):
    # #P1(Z/N) = N * prod_{p | N} (1 + 1/p)
    assert len(P1List(n)) == size


@pytest.mark.parametrize("n", [7, 12, 45])
def test_p1_index_roundtrip(n):
    p1 = P1List(n)
    for i, (u, v) in enumerate(p1.reps):
        assert p1.index_of(u, v) == (i, 1)


@pytest.mark.parametrize("n", [13, 18])
def test_p1_batch_matches_scalar(n):
    p1 = P1List(n)
    us = np.arange(-5, 40)
    vs = np.arange(3, 48)
    idx, lam = p1.normalize_batch(us, vs)
    for i, (u, v) in enumerate(zip(us.tolist(), vs.tolist())):
        assert (idx[i], lam[i]) == p1.index_of(u, v)


def test_p1_sigma_involution():
    p1 = P1List(35)
    idx, lam = p1.apply_matrix((0, -1, 1, 0))
    # sigma^2 = -I acts trivially on P1
    again, _ = p1.normalize_batch(
        np.array([p1.reps[int(i)][0] * 0 - p1.reps[int(i)][1]
                  for i in idx]),
        np.array([p1.reps[int(i)][0] for i in idx]))
    assert np.array_equal(again, np.arange(len(p1)))


# ---------------------------------------------------------------------------
# monomial action and Heilbronn families

def test_monomial_matrix_identity():
    w = _monomial_matrix((1, 0, 0, 1), 12, 13)
    assert np.array_equal(w, np.eye(11, dtype=np.int64))


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6),
       st.integers(0, 6), st.integers(0, 6), st.integers(0, 6),
       st.integers(0, 6), st.integers(0, 6))
@settings(max_examples=60, deadline=None)
def test_monomial_matrix_multiplicative(a, b, c, d, e, f, g, h):
    # row-vector convention: W(m1 m2) = W(m1) @ W(m2)
    p, k = 7, 6
    m1 = (a, b, c, d)
    m2 = (e, f, g, h)
    prod = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    w12 = _monomial_matrix(prod, k, p)
    assert np.array_equal((_monomial_matrix(m1, k, p)
                           @ _monomial_matrix(m2, k, p)) % p, w12)


def test_merel_family_determinants():
    for l in (2, 3, 5, 11, 13):
        for (a, b, c, d) in merel_family(l):
            assert a * d - b * c == l
            assert a > b >= 0 and d > c >= 0


def test_merel_family_level_two():
    assert set(merel_family(2)) == {
        (1, 0, 0, 2), (2, 0, 0, 1), (2, 1, 0, 1), (1, 0, 1, 2)}


def test_cremona_family_determinants():
    for l in (3, 5, 7, 31):
        for (a, b, c, d) in heilbronn_cremona(l):
            assert a * d - b * c == l


def test_hecke_matrices_choice():
    assert hecke_matrices(2, 11) == merel_family(2)
    assert hecke_matrices(11, 11) == merel_family(11)
    assert hecke_matrices(3, 11) == heilbronn_cremona(3)


# ---------------------------------------------------------------------------
# dimensions of the presented spaces

F101 = make_field(101, 1)


@pytest.mark.parametrize("n,k,kind,dim,cuspdim", [
    # X_0(11): genus 1, two cusps
    (11, 2, "full", 3, 2),
    (11, 2, "plus", 2, 1),
    (11, 2, "minus", 1, 1),
    # X_0(23): genus 2
    (23, 2, "full", 5, 4),
    (23, 2, "plus", 3, 2),
    # X_0(37): genus 2
    (37, 2, "full", 5, 4),
    # level 1, weight 12: Delta plus one Eisenstein series
    (1, 12, "full", 3, 2),
    (1, 12, "plus", 2, 1),
    # weight 4, level 5: one cusp form, two Eisenstein series
    (5, 4, "full", 4, 2),
])
def test_classical_dimensions(n, k, kind, dim, cuspdim):
    sp = build_space(n, k, trivial_character(n, F101), F101, kind)
    assert sp.dim == dim
    assert cuspidal_subspace(sp).dim == cuspdim


def test_dimension_431_mod2():
    F = make_field(2, 1)
    sp = build_space(431, 2, trivial_character(431, F), F, "full")
    # genus of X_0(431) is 36: dim = 2g + (#cusps - 1)
    assert sp.dim == 73
    assert cuspidal_subspace(sp).dim == 72


@pytest.mark.parametrize("n,ncusps", [(11, 2), (12, 6), (15, 4), (24, 8)])
def test_boundary_columns_count_cusps(n, ncusps):
    # for trivial character and weight 2 every cusp class survives
    sp = build_space(n, 2, trivial_character(n, F101), F101, "full")
    assert boundary_map(sp).ncols == ncusps


def test_plus_minus_cusp_dims_sum():
    for (n, k, field, chi) in [
            (11, 2, F101, trivial_character(11, F101)),
            (23, 2, F101, trivial_character(23, F101))]:
        full = cuspidal_subspace(build_space(n, k, chi, field, "full")).dim
        plus = cuspidal_subspace(build_space(n, k, chi, field, "plus")).dim
        minus = cuspidal_subspace(build_space(n, k, chi, field, "minus")).dim
        assert plus + minus == full


def test_space_is_cached():
    chi = trivial_character(11, F101)
    assert build_space(11, 2, chi, F101, "full") is \
        build_space(11, 2, chi, F101, "full")


def test_build_space_validation():
    chi = trivial_character(11, F101)
    with pytest.raises(ValueError):
        build_space(11, 1, chi, F101)
    with pytest.raises(ValueError):
        build_space(12, 2, chi, F101)
    with pytest.raises(ValueError):
        build_space(11, 2, chi, make_field(7, 1))
    with pytest.raises(ValueError):
        build_space(11, 2, chi, F101, "both")


# ---------------------------------------------------------------------------
# Hecke eigenvalue oracles

def test_x0_11_eigenvalues():
    # a_l of the elliptic curve X_0(11), reduced mod 101
    sp = build_space(11, 2, trivial_character(11, F101), F101, "full")
    cusp = cuspidal_subspace(sp)
    for l, al in [(2, -2), (3, -1), (5, 1), (7, -2), (13, 4), (17, -2)]:
        tc = base_change(hecke_operator(sp, l), cusp)
        mp = min_poly_matrix(tc)
        assert mp.degree() == 1
        assert mp.evaluate(F101(al)).is_zero()


def test_delta_eigenvalues_extension_field():
    # tau(l) mod 7, computed over GF(49) to exercise extension scalars
    F = make_field(7, 2)
    sp = build_space(1, 12, trivial_character(1, F), F, "full")
    cusp = cuspidal_subspace(sp)
    for l, tl in [(2, -24), (3, 252), (5, 4830), (7, -16744), (11, 534612)]:
        tc = base_change(hecke_operator(sp, l), cusp)
        mp = min_poly_matrix(tc)
        assert mp.degree() == 1
        assert mp.evaluate(F(tl)).is_zero()


def test_delta_691_congruence():
    # Ramanujan: tau(l) = 1 + l^11 mod 691
    F = make_field(691, 1)
    sp = build_space(1, 12, trivial_character(1, F), F, "full")
    cusp = cuspidal_subspace(sp)
    for l in (2, 3, 5, 13):
        tc = base_change(hecke_operator(sp, l), cusp)
        mp = min_poly_matrix(tc)
        assert mp.evaluate(F(1 + l ** 11)).is_zero()


def _eta4_power6_coefficients(bound):
    """q-expansion of eta(4z)^6 = q prod (1 - q^(4n))^6 up to q^bound."""
    c = np.zeros(bound, dtype=np.int64)
    c[0] = 1
    for n in range(1, bound // 4 + 1):
        for _ in range(6):
            nxt = c.copy()
            nxt[4 * n:] -= c[:-4 * n]
            c = nxt
    return {m + 1: int(c[m]) for m in range(bound)}


def test_eta_product_oracle_level16():
    # eta(4z)^6 spans S_3(Gamma0(16), chi) for the odd character mod 4
    an = _eta4_power6_coefficients(60)
    assert an[5] == -6 and an[13] == 10  # alpha^2 + conj for 5, 13
    F = make_field(7, 1)
    chi = DirichletCharacter(16, F, [-1, 1])
    sp = build_space(16, 3, chi, F, "full")
    cusp = cuspidal_subspace(sp)
    assert cusp.dim == 2
    for l in (3, 5, 13, 17, 29, 37, 41):
        tc = base_change(hecke_operator(sp, l), cusp)
        mp = min_poly_matrix(tc)
        assert mp.degree() == 1
        assert mp.evaluate(F(an[l])).is_zero()


def test_order_four_character_space():
    # the boundary map must be compatible with the character twist;
    # with the wrong transport exponent the cuspidal space would not
    # be Hecke stable and base_change would raise
    F = make_field(13, 1)
    chi = DirichletCharacter(25, F, [8])
    sp = build_space(25, 3, chi, F, "full")
    cusp = cuspidal_subspace(sp)
    assert sp.dim == 10
    assert cusp.dim == 4
    for l in (2, 3, 7, 11):
        tc = base_change(hecke_operator(sp, l), cusp)
        assert tc.nrows == 4


def test_legendre_character_weight_p():
    # dihedral setting: weight p, quadratic character, plus quotient
    F = make_field(5, 1)
    chi = legendre_character(419, F)
    sp = build_space(419, 5, chi, F, "plus")
    cusp = cuspidal_subspace(sp)
    t2 = base_change(hecke_operator(sp, 2), cusp)
    t3 = base_change(hecke_operator(sp, 3), cusp)
    assert t2 @ t3 == t3 @ t2


def test_merel_equals_cremona_off_level():
    sp = build_space(11, 2, trivial_character(11, F101), F101, "full")
    for l in (3, 5, 7, 13):
        merel = _apply_family(sp, merel_family(l))
        cremona = _apply_family(sp, heilbronn_cremona(l))
        assert merel == cremona


def test_merel_equals_cremona_higher_weight():
    F = make_field(13, 1)
    sp = build_space(5, 4, trivial_character(5, F), F, "full")
    for l in (3, 7):
        assert _apply_family(sp, merel_family(l)) == \
            _apply_family(sp, heilbronn_cremona(l))


def test_hecke_operators_commute():
    F = make_field(13, 1)
    chi = DirichletCharacter(16, F, [-1, 1])
    sp = build_space(16, 3, chi, F, "full")
    ops = [hecke_operator(sp, l) for l in (2, 3, 5, 7)]
    for a in ops:
        for b in ops:
            assert a @ b == b @ a


def test_hecke_rejects_composite_index():
    sp = build_space(11, 2, trivial_character(11, F101), F101, "full")
    with pytest.raises(ValueError):
        hecke_operator(sp, 6)


def test_bad_prime_operator():
    # T_11 at level 11 (Merel family with the content drop rule)
    sp = build_space(11, 2, trivial_character(11, F101), F101, "full")
    cusp = cuspidal_subspace(sp)
    t11 = base_change(hecke_operator(sp, 11), cusp)
    # U_11 eigenvalue on the newform is a_11 = 1
    mp = min_poly_matrix(t11)
    assert mp.evaluate(F101(1)).is_zero()
