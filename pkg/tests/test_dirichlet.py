from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy import jacobi_symbol

from heckealg.dirichlet import (
    DirichletCharacter, char_eval, legendre_character, trivial_character,
    unit_group,
)
from heckealg.ff import make_field


# ---------------------------------------------------------------------------
# unit groups

@pytest.mark.parametrize("n", [1, 2, 3, 4, 8, 16, 24, 35, 45, 56, 97, 360])
def test_unit_group_generates_everything(n):
    g = unit_group(n)
    assert g.order == sympy.totient(n)
    units = {1 % n}
    frontier = [1 % n]
    # closure of the generator set
    seen = set(frontier)
    while frontier:
        x = frontier.pop()
        for gen in g.generators:
            y = (x * gen) % n
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    want = {a for a in range(n) if gcd(a, n) == 1} or {0}
    assert seen == want or (n == 1 and seen == {0})


@pytest.mark.parametrize("n", [3, 8, 15, 16, 21, 32, 97, 100])
def test_dlog_inverts(n):
    g = unit_group(n)
    for a in range(1, n):
        if gcd(a, n) != 1:
            continue
        exps = g.dlog(a)
        x = 1
        for gen, e in zip(g.generators, exps):
            x = (x * pow(gen, e, n)) % n
        assert x == a
        for e, order in zip(exps, g.orders):
            assert 0 <= e < order


def test_dlog_rejects_non_units():
    with pytest.raises(ValueError):
        unit_group(12).dlog(4)


def test_generator_orders_multiply_to_totient():
    for n in [5, 8, 12, 24, 40, 89, 720]:
        g = unit_group(n)
        prod = 1
        for o in g.orders:
            prod *= o
        assert prod == sympy.totient(n)


# ---------------------------------------------------------------------------
# characters

def test_trivial_character():
    F = make_field(5, 1)
    chi = trivial_character(12, F)
    assert chi.order() == 1
    assert chi.conductor() == 1
    for n in range(12):
        want = F.one() if gcd(n, 12) == 1 else F.zero()
        assert char_eval(chi, n) == want


def test_legendre_matches_jacobi_on_odd_arguments():
    F = make_field(5, 1)
    for n in [7, 11, 13, 15, 23, 431]:
        chi = legendre_character(n, F)
        for a in range(1, min(n, 80), 2):
            if gcd(a, n) != 1:
                continue
            want = jacobi_symbol(a, n)
            got = char_eval(chi, a)
            assert got == (F.one() if want == 1 else -F.one())


def test_legendre_is_quadratic():
    F = make_field(3, 1)
    chi = legendre_character(23, F)
    assert chi.order() == 2
    assert chi.conductor() == 23
    assert (chi * chi).is_trivial()


def test_legendre_even_argument_consistency():
    # multiplicativity must hold including even arguments, since the
    # attached discriminant is 1 mod 4
    F = make_field(7, 1)
    for n in [7, 11, 13]:
        chi = legendre_character(n, F)
        for a in range(1, n):
            for b in range(1, n):
                assert char_eval(chi, a * b) == \
                    char_eval(chi, a) * char_eval(chi, b)


def test_legendre_rejects_bad_input():
    F = make_field(5, 1)
    with pytest.raises(ValueError):
        legendre_character(12, F)
    with pytest.raises(ValueError):
        legendre_character(-7, F)
    with pytest.raises(ValueError):
        legendre_character(7, make_field(2, 1))


def test_order_four_character_mod_five():
    # 2 generates (Z/5)*; 8 has order 4 in GF(13)*
    F = make_field(13, 1)
    chi = DirichletCharacter(5, F, [8])
    assert chi.order() == 4
    assert chi.conductor() == 5
    assert char_eval(chi, 2) == F(8)
    assert char_eval(chi, 4) == F(8) * F(8)
    assert char_eval(chi, 1) == F.one()
    assert char_eval(chi, 5) == F.zero()
    assert (chi ** 2).order() == 2
    assert (chi ** 4).is_trivial()


def test_character_value_order_validation():
    F = make_field(13, 1)
    with pytest.raises(ValueError):
        DirichletCharacter(5, F, [2])  # 2 has order 12, not dividing 4
    with pytest.raises(ValueError):
        DirichletCharacter(5, F, [0])


def test_character_into_extension_field():
    # order-4 character mod 5 into GF(9): need an order-4 element there
    F = make_field(3, 2)
    zeta = None
    for n in range(2, 9):
        a = F.from_int(n)
        if a ** 4 == F.one() and a ** 2 != F.one():
            zeta = a
            break
    chi = DirichletCharacter(5, F, [zeta])
    assert chi.order() == 4
    assert char_eval(chi, 2) == zeta
    assert char_eval(chi, 3) == zeta ** 3


def test_conductor_of_imprimitive_character():
    # lift the mod-3 quadratic character to modulus 9 and modulus 15
    F = make_field(7, 1)
    chi9 = DirichletCharacter(9, F, [-1])   # gen of (Z/9)* maps to -1
    assert chi9.conductor() == 3
    chi15 = DirichletCharacter(15, F, [-1, 1])
    assert chi15.conductor() == 3


def test_values_array_matches_pointwise():
    F = make_field(13, 1)
    for chi in [trivial_character(12, F),
                legendre_character(15, F),
                DirichletCharacter(5, F, [8])]:
        table = chi.values_array()
        for n in range(chi.modulus):
            assert F.element(table[n].tolist()) == char_eval(chi, n)


def test_values_array_modulus_one():
    F = make_field(5, 1)
    chi = trivial_character(1, F)
    assert char_eval(chi, 0) == F.one()
    assert char_eval(chi, 7) == F.one()
    assert chi.values_array().shape == (1, 1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([7, 9, 12, 15, 16]), st.integers(0, 400),
       st.integers(0, 400))
def test_multiplicativity_property(n, a, b):
    F = make_field(17, 1)
    chi = trivial_character(n, F) if n % 2 == 0 else legendre_character(n, F)
    assert char_eval(chi, a * b) == char_eval(chi, a) * char_eval(chi, b)


def test_character_equality_and_hash():
    F = make_field(5, 1)
    a = trivial_character(7, F)
    b = trivial_character(7, F)
    c = legendre_character(7, F)
    assert a == b and hash(a) == hash(b)
    assert a != c
