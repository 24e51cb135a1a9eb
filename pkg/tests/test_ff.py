import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from heckealg.ff import (
    FF, Embedding, FieldElement, Poly, embed_field, is_irreducible,
    make_field, min_poly_element, poly_factor, poly_lcm,
)


# ---------------------------------------------------------------------------
# oracles

def sympy_irreducible(ints, p):
    """Independent irreducibility check over GF(p) via sympy."""
    x = sympy.Symbol("x")
    expr = sum(int(c) * x ** i for i, c in enumerate(ints))
    return sympy.Poly(expr, x, modulus=p).is_irreducible


def scan_least_irreducible(p, k):
    """Least monic irreducible by brute scan, using the sympy oracle."""
    for m in itertools.count():
        coeffs = []
        t = m
        for _ in range(k):
            coeffs.append(t % p)
            t //= p
        if sympy_irreducible(coeffs + [1], p):
            return tuple(coeffs + [1])


def brute_min_poly(a):
    """Least-degree monic poly over GF(p) vanishing at a, by enumeration."""
    field = a.field
    prime = make_field(field.p, 1)
    for deg in range(1, field.k + 1):
        for lower in itertools.product(range(field.p), repeat=deg):
            f = Poly.from_ints(prime, list(lower) + [1])
            acc = field.zero()
            for c in reversed(f.coeffs):
                acc = acc * a + field.element(c.coeffs[0])
            if acc.is_zero():
                return f
    raise AssertionError("no minimal polynomial found")


def trial_division_irreducible(f):
    """Exhaustive trial division; only usable for tiny fields/degrees."""
    n = f.degree()
    if n <= 0:
        return False
    field = f.field
    for d in range(1, n // 2 + 1):
        for lower in itertools.product(range(field.order), repeat=d):
            g = Poly(field, [field.from_int(c) for c in lower]
                     + [field.one()])
            if (f % g).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# field construction

def test_least_modulus_matches_scan():
    for p, k in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2),
                 (11, 3), (13, 2)]:
        assert make_field(p, k).modulus == scan_least_irreducible(p, k)


def test_gf4_modulus_is_x2_x_1():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_prime_field_modulus_is_x():
    assert make_field(5, 1).modulus == (0, 1)
    assert make_field(2, 1).modulus == (0, 1)


def test_make_field_is_cached():
    assert make_field(7, 3) is make_field(7, 3)


def test_make_field_rejects_bad_input():
    with pytest.raises(ValueError):
        make_field(6, 1)
    with pytest.raises(ValueError):
        make_field(5, 0)
    with pytest.raises(ValueError):
        make_field(5, 65)


def test_descriptor_immutable():
    F = make_field(3, 2)
    with pytest.raises(AttributeError):
        F.p = 5


# ---------------------------------------------------------------------------
# element arithmetic

@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (7, 1), (5, 2)])
def test_all_inverses(p, k):
    F = make_field(p, k)
    for n in range(1, F.order):
        a = F.from_int(n)
        assert a * a.inv() == F.one()


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (5, 1)])
def test_field_axioms_exhaustive(p, k):
    F = make_field(p, k)
    els = list(F.elements())
    for a in els:
        for b in els:
            assert a + b == b + a
            assert a * b == b * a
            assert a - b == -(b - a)
    # distributivity on a sample
    for a in els[:3]:
        for b in els:
            for c in els:
                assert a * (b + c) == a * b + a * c


def test_multiplicative_order_divides_group_order():
    F = make_field(3, 3)
    for n in range(1, F.order):
        a = F.from_int(n)
        assert a ** (F.order - 1) == F.one()


def test_int_roundtrip():
    F = make_field(5, 3)
    for n in range(F.order):
        assert F.from_int(n).to_int() == n


def test_scalar_coercion_is_mod_p():
    F = make_field(7, 2)
    assert F(9) == F(2)
    assert F.element(-1) == F(6)
    assert F([3, 4]) + 4 == F([0, 4])


def test_cross_field_operations_rejected():
    a = make_field(3, 1).one()
    b = make_field(5, 1).one()
    with pytest.raises(ValueError):
        a + b


def test_gen_is_root_of_modulus():
    for p, k in [(2, 4), (3, 3), (11, 2)]:
        F = make_field(p, k)
        g = F.gen()
        acc = F.zero()
        for c in reversed(F.modulus):
            acc = acc * g + F.element(c)
        assert acc.is_zero()


# ---------------------------------------------------------------------------
# polynomials

def test_divmod_property():
    F = make_field(5, 2)
    f = Poly.from_ints(F, [1, 2, 0, 3, 4])
    g = Poly.from_ints(F, [2, 1, 1])
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree() < g.degree()


def test_gcd_and_lcm():
    F = make_field(2, 1)
    f = Poly.from_ints(F, [1, 1]) * Poly.from_ints(F, [1, 1, 1])
    g = Poly.from_ints(F, [1, 1]) * Poly.from_ints(F, [0, 1])
    assert f.gcd(g) == Poly.from_ints(F, [1, 1])
    assert poly_lcm(f, g) == (f * g) // Poly.from_ints(F, [1, 1])


@given(st.lists(st.integers(0, 4), min_size=1, max_size=8),
       st.lists(st.integers(0, 4), min_size=1, max_size=8))
def test_poly_mul_matches_sympy(ac, bc):
    F = make_field(5, 1)
    x = sympy.Symbol("x")
    fa = Poly.from_ints(F, ac)
    fb = Poly.from_ints(F, bc)
    sa = sympy.Poly(sum(c * x ** i for i, c in enumerate(ac)), x, modulus=5)
    sb = sympy.Poly(sum(c * x ** i for i, c in enumerate(bc)), x, modulus=5)
    prod = sa * sb
    got = [c.to_int() for c in (fa * fb).coeffs]
    want = [int(c) % 5 for c in reversed(prod.all_coeffs())] if ac and bc \
        else []
    while want and want[-1] == 0:
        want.pop()
    assert got == want


def test_is_irreducible_against_sympy():
    F = make_field(3, 1)
    for m in range(3 ** 4):
        coeffs = [(m // 3 ** i) % 3 for i in range(4)] + [1]
        f = Poly.from_ints(F, coeffs)
        assert is_irreducible(f) == sympy_irreducible(coeffs, 3)


def test_is_irreducible_over_extension_field():
    F = make_field(2, 2)
    # exhaustive cross-check on all monic cubics over GF(4)
    for m in range(4 ** 3):
        lower = [(m // 4 ** i) % 4 for i in range(3)]
        f = Poly(F, [F.from_int(c) for c in lower] + [F.one()])
        assert is_irreducible(f) == trial_division_irreducible(f)


# ---------------------------------------------------------------------------
# factorization

def reconstruct(unit, factors, field):
    prod = Poly(field, [unit])
    for g, m in factors:
        for _ in range(m):
            prod = prod * g
    return prod


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3 ** 7 - 1), st.sampled_from([(2, 1), (3, 1), (2, 2),
                                                    (5, 1), (3, 2)]))
def test_factor_reconstructs(n, pk):
    F = make_field(*pk)
    coeffs = []
    while n:
        coeffs.append(n % F.order)
        n //= F.order
    if not coeffs:
        return
    f = Poly(F, [F.from_int(c) for c in coeffs])
    if f.is_zero():
        return
    unit, factors = poly_factor(f)
    assert reconstruct(unit, factors, F) == f
    for g, m in factors:
        assert m >= 1
        assert g.leading() == F.one()
        assert is_irreducible(g)


def test_factor_irreducibles_match_sympy():
    F = make_field(7, 1)
    f = Poly.from_ints(F, [3, 0, 1, 5, 0, 0, 1, 2])
    unit, factors = poly_factor(f)
    for g, _ in factors:
        assert sympy_irreducible([c.to_int() for c in g.coeffs], 7)
    assert reconstruct(unit, factors, F) == f


def test_factor_is_deterministic_and_sorted():
    F = make_field(2, 1)
    f = Poly.from_ints(F, [1, 1]) ** 2 * Poly.from_ints(F, [1, 1, 1]) \
        * Poly.from_ints(F, [0, 1]) ** 3
    first = poly_factor(f)
    second = poly_factor(f)
    assert first == second
    keys = [g.key() for g, _ in first[1]]
    assert keys == sorted(keys)
    assert dict((tuple(c.to_int() for c in g.coeffs), m)
                for g, m in first[1]) == {
        (0, 1): 3, (1, 1): 2, (1, 1, 1): 1}


def test_factor_pth_power():
    # x^4 + 1 = (x + 1)^4 over GF(2): derivative vanishes identically
    F = make_field(2, 1)
    f = Poly.from_ints(F, [1, 0, 0, 0, 1])
    unit, factors = poly_factor(f)
    assert unit == F.one()
    assert factors == [(Poly.from_ints(F, [1, 1]), 4)]


def test_factor_rejects_zero():
    F = make_field(3, 1)
    with pytest.raises(ValueError):
        poly_factor(Poly(F, []))


def test_factor_respects_unit():
    F = make_field(5, 1)
    f = Poly.from_ints(F, [2, 0, 3])
    unit, factors = poly_factor(f)
    assert unit == F(3)
    assert reconstruct(unit, factors, F) == f


# ---------------------------------------------------------------------------
# minimal polynomials and embeddings

def test_min_poly_matches_brute_force():
    for p, k in [(2, 4), (3, 2), (5, 2)]:
        F = make_field(p, k)
        for n in range(F.order):
            a = F.from_int(n)
            assert min_poly_element(a) == brute_min_poly(a)


def test_min_poly_of_zeta5_plus_inverse():
    # In GF(16)* of order 15 pick z of order 5; z + 1/z lies in GF(4)
    # and is not rational, so its minimal polynomial is x^2 + x + 1.
    F = make_field(2, 4)
    g = None
    for n in range(2, F.order):
        a = F.from_int(n)
        if all(a ** d != F.one() for d in (1, 3, 5)):
            g = a
            break
    z = g ** 3
    assert z ** 5 == F.one() and z != F.one()
    a = z + z.inv()
    assert min_poly_element(a) == Poly.from_ints(make_field(2, 1), [1, 1, 1])


def test_frobenius_permutes_min_poly_roots():
    F = make_field(3, 4)
    for n in [5, 17, 44, 80]:
        a = F.from_int(n)
        f = min_poly_element(a)
        b = a ** 3
        acc = F.zero()
        for c in reversed(f.coeffs):
            acc = acc * b + F.element(c.coeffs[0])
        assert acc.is_zero()


def test_embedding_is_ring_hom():
    E = make_field(2, 2)
    F = make_field(2, 4)
    phi = embed_field(E, F)
    els = list(E.elements())
    for a in els:
        for b in els:
            assert phi(a + b) == phi(a) + phi(b)
            assert phi(a * b) == phi(a) * phi(b)
    assert phi(E.one()) == F.one()


def test_embedding_root_is_least():
    E = make_field(3, 2)
    F = make_field(3, 4)
    phi = embed_field(E, F)
    # the image of the generator must be a root of E's modulus in F,
    # and least in counting order among all such roots
    roots = []
    for n in range(F.order):
        a = F.from_int(n)
        acc = F.zero()
        for c in reversed(E.modulus):
            acc = acc * a + F.element(c)
        if acc.is_zero():
            roots.append(n)
    assert phi(E.gen()).to_int() == min(roots)


def test_embedding_rejects_bad_pairs():
    with pytest.raises(ValueError):
        embed_field(make_field(2, 2), make_field(3, 2))
    with pytest.raises(ValueError):
        embed_field(make_field(2, 3), make_field(2, 4))


def test_prime_field_embedding():
    phi = embed_field(make_field(5, 1), make_field(5, 3))
    assert phi(make_field(5, 1)(3)) == make_field(5, 3)(3)
