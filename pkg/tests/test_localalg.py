"""Local algebra invariants: splitting, residue fields, presentations."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckealg.ff import make_field
from heckealg.linalg import Mat, spin_algebra
from heckealg.localalg import (
    AffineTuple, LocalAlgebra, affine_from_tup, affine_tup,
    change_to_residue_field, localisations,
)


def _mat(field, rows):
    return Mat(field, np.array(rows, dtype=np.int64))


def _block_diag(field, *mats):
    n = sum(m.nrows for m in mats)
    out = np.zeros((n, n, field.k), dtype=np.int64)
    at = 0
    for m in mats:
        out[at:at + m.nrows, at:at + m.nrows] = m.a
        at += m.nrows
    return Mat(field, out)


def _single(gens):
    pieces = localisations(gens)
    assert len(pieces) == 1
    return pieces[0][1]


F2 = make_field(2, 1)
F3 = make_field(3, 1)

# companion matrix of x^2+x+1 over GF(2); row convention, so w -> w^2 = 1+w
C4 = _mat(F2, [[0, 1], [1, 1]])


def jordan_nilpotent(field, n):
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        a[i, i + 1] = 1
    return Mat(field, a)


# ---------------------------------------------------------------------------
# single local pieces

def test_truncated_polynomial_ring():
    """GF(2)[x]/(x^4) from one nilpotent Jordan block."""
    loc = _single([jordan_nilpotent(F2, 4)])
    assert loc.dim == 4
    assert loc.residue_degree() == 1
    assert loc.maximal_ideal().nrows == 3
    assert loc.local_invariants() == (1, 3)
    assert loc.gorenstein_defect() == 0
    tup = affine_tup(loc)
    assert tup == AffineTuple(1, 1, 3, ((((4,), (1,)),),))


def test_one_dimensional_algebra():
    loc = _single([Mat.identity(F3, 1)])
    assert loc.dim == 1
    assert loc.residue_degree() == 1
    assert loc.local_invariants() == (0, 0)
    assert loc.gorenstein_defect() == 0
    assert affine_tup(loc) == AffineTuple(1, 0, 0, ())


def test_field_extension_piece():
    """GF(4) spun over GF(2) is local with trivial maximal ideal."""
    loc = _single([C4])
    assert loc.dim == 2
    assert loc.residue_degree() == 2
    assert loc.maximal_ideal().nrows == 0
    assert loc.local_invariants() == (0, 0)
    assert loc.gorenstein_defect() == 0
    down = change_to_residue_field(loc)
    assert down.field.order == 4
    assert down.dim == 1
    assert down.residue_degree() == 1
    assert affine_tup(down) == AffineTuple(2, 0, 0, ())


def test_square_zero_algebra_three_generators():
    """F[x,y,z]/(x,y,z)^2: defect two, six quadratic relations."""
    # regular representation on basis (1, x, y, z)
    gens = []
    for j in (1, 2, 3):
        a = np.zeros((4, 4), dtype=np.int64)
        a[0, j] = 1
        gens.append(Mat(F2, a))
    loc = _single(gens)
    assert loc.dim == 4
    assert loc.residue_degree() == 1
    assert loc.local_invariants() == (3, 1)
    assert loc.socle_dimension() == 3
    assert loc.gorenstein_defect() == 2
    tup = affine_tup(loc)
    assert tup.embedding_dimension == 3
    assert tup.nilpotency_order == 1
    exps = sorted(r[0][0] for r in tup.relations)
    assert exps == [(0, 0, 2), (0, 1, 1), (0, 2, 0),
                    (1, 0, 1), (1, 1, 0), (2, 0, 0)]
    assert all(len(r) == 1 and r[0][1] == (1,) for r in tup.relations)


def test_gorenstein_product_of_dual_numbers():
    """GF(2)[x,y]/(x^2,y^2) has a one-dimensional socle (xy)."""
    # regular representation on basis (1, x, y, xy)
    mx = np.zeros((4, 4), dtype=np.int64)
    mx[0, 1] = 1
    mx[2, 3] = 1
    my = np.zeros((4, 4), dtype=np.int64)
    my[0, 2] = 1
    my[1, 3] = 1
    loc = _single([Mat(F2, mx), Mat(F2, my)])
    assert loc.dim == 4
    assert loc.residue_degree() == 1
    assert loc.local_invariants() == (2, 2)
    assert loc.socle_dimension() == 1
    assert loc.gorenstein_defect() == 0
    tup = affine_tup(loc)
    # x^3, x^2 y, ... are multiples of x^2 and y^2 and get pruned
    assert sorted(r[0][0] for r in tup.relations) == [(0, 2), (2, 0)]
    full = affine_tup(loc, try_minimal=False)
    assert len(full.relations) == 6


def test_dual_numbers_over_quartic_field():
    """GF(4)[y]/(y^2) as a four-dimensional GF(2)-algebra."""
    # basis (1, w, y, wy) with w^2 = 1 + w
    mw = _mat(F2, [[0, 1, 0, 0], [1, 1, 0, 0],
                   [0, 0, 0, 1], [0, 0, 1, 1]])
    my = _mat(F2, [[0, 0, 1, 0], [0, 0, 0, 1],
                   [0, 0, 0, 0], [0, 0, 0, 0]])
    loc = _single([mw, my])
    assert loc.dim == 4
    assert loc.residue_degree() == 2
    assert loc.dimension_over_residue() == 2
    assert loc.local_invariants() == (1, 1)
    assert loc.gorenstein_defect() == 0
    down = change_to_residue_field(loc)
    assert down.field.order == 4
    assert down.dim == 2
    assert down.residue_degree() == 1
    assert down.local_invariants() == (1, 1)
    assert down.gorenstein_defect() == 0
    assert affine_tup(down) == AffineTuple(2, 1, 1, ((((2,), (1, 0)),),))


def test_residue_degree_three():
    comp = _mat(F2, [[0, 1, 0], [0, 0, 1], [1, 1, 0]])  # x^3 + x + 1
    loc = _single([comp])
    assert loc.residue_degree() == 3
    down = change_to_residue_field(loc)
    assert down.dim == 1 and down.field.order == 8


# ---------------------------------------------------------------------------
# splitting

def test_split_two_fields_one_generator():
    t = _block_diag(F2, jordan_nilpotent(F2, 3), C4)
    pieces = localisations([t])
    assert [alg.dim for _, alg in pieces] == [3, 2]
    assert [alg.residue_degree() for _, alg in pieces] == [1, 2]
    assert pieces[0][1].local_invariants() == (1, 2)
    assert [bc.dim for bc, _ in pieces] == [3, 2]


def test_split_needs_fixed_point_search():
    """Two copies of GF(4) glued so every generator is primary.

    T1 acts as (w, w) and T2 as (w, w^2); each has irreducible minimal
    polynomial, so only the fixed algebra of the squaring map detects
    that the algebra is a product.
    """
    t1 = _block_diag(F2, C4, C4)
    t2 = _block_diag(F2, C4, C4 @ C4)
    pieces = localisations([t1, t2])
    assert len(pieces) == 2
    for _, alg in pieces:
        assert alg.dim == 2
        assert alg.residue_degree() == 2
        assert alg.gorenstein_defect() == 0


def test_nonlocal_maximal_ideal_raises():
    t = _mat(F2, [[0, 0], [0, 1]])
    bad = LocalAlgebra(F2, [t], spin_algebra([t]))
    with pytest.raises(ArithmeticError):
        bad.maximal_ideal()


def test_base_changes_restrict_generators():
    t = _block_diag(F3, jordan_nilpotent(F3, 2), Mat.identity(F3, 1))
    pieces = localisations([t])
    assert len(pieces) == 2
    total = sum(bc.dim for bc, _ in pieces)
    assert total == 3


# ---------------------------------------------------------------------------
# affine presentations round-trip

@pytest.mark.parametrize("build", [
    lambda: _single([jordan_nilpotent(F2, 4)]),
    lambda: _single([jordan_nilpotent(F3, 5)]),
    lambda: _single([Mat(F2, np.array(
        [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])),
        Mat(F2, np.array(
            [[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])),
        Mat(F2, np.array(
            [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))]),
])
def test_affine_roundtrip(build):
    loc = build()
    tup = affine_tup(loc)
    back = affine_from_tup(tup, loc.field.p)
    assert back.dim == loc.dim
    assert back.residue_degree() == 1
    assert back.local_invariants() == loc.local_invariants()
    assert back.gorenstein_defect() == loc.gorenstein_defect()
    assert affine_tup(back) == tup


def test_affine_roundtrip_over_extension():
    mw = _mat(F2, [[0, 1, 0, 0], [1, 1, 0, 0],
                   [0, 0, 0, 1], [0, 0, 1, 1]])
    my = _mat(F2, [[0, 0, 1, 0], [0, 0, 0, 1],
                   [0, 0, 0, 0], [0, 0, 0, 0]])
    down = change_to_residue_field(_single([mw, my]))
    tup = affine_tup(down)
    back = affine_from_tup(tup, 2)
    assert back.field.order == 4
    assert back.dim == 2
    assert back.local_invariants() == (1, 1)
    assert affine_tup(back) == tup


def test_affine_tup_requires_residue_field():
    loc = _single([C4])
    with pytest.raises(ValueError):
        affine_tup(loc)


def test_tuple_fields_are_plain_data():
    loc = _single([jordan_nilpotent(F2, 3)])
    tup = affine_tup(loc)
    assert isinstance(tup.relations, tuple)
    for rel in tup.relations:
        for alpha, coeffs in rel:
            assert isinstance(alpha, tuple)
            assert all(isinstance(c, int) for c in coeffs)


# ---------------------------------------------------------------------------
# properties on random single-generator algebras

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([2, 3, 5]))
def test_invariants_of_random_generator(seed, p):
    """Factor dimensions add up and every piece satisfies the bounds."""
    rng = np.random.default_rng(seed)
    field = make_field(p, 1)
    n = int(rng.integers(1, 7))
    t = Mat(field, rng.integers(0, p, size=(n, n)))
    pieces = localisations([t])
    assert sum(bc.dim for bc, _ in pieces) == n
    for bc, alg in pieces:
        f = alg.residue_degree()
        assert alg.dim >= 1 and alg.dim % f == 0
        dk = alg.dimension_over_residue()
        e, nil = alg.local_invariants()
        assert alg.gorenstein_defect() >= 0
        if dk == 1:
            assert (e, nil) == (0, 0)
        else:
            assert 1 <= e <= dk - 1
            assert nil >= 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_single_generator_matches_companion_theory(seed):
    """For one generator the local data follows the minimal polynomial."""
    rng = np.random.default_rng(seed)
    field = make_field(2, 1)
    n = int(rng.integers(2, 6))
    t = Mat(field, rng.integers(0, 2, size=(n, n)))
    from heckealg.linalg import min_poly_matrix
    from heckealg.ff import poly_factor
    _, factors = poly_factor(min_poly_matrix(t))
    pieces = localisations([t])
    assert len(pieces) == len(factors)
    by_deg = sorted((g.degree() * m, g.degree()) for g, m in factors)
    got = sorted((alg.dim, alg.residue_degree()) for _, alg in pieces)
    assert got == by_deg
