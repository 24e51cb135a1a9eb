"""Invariants of commutative artinian algebras of matrices over GF(q).

An algebra here is given by a list of commuting square matrices over a
finite field; the unital algebra they generate acts on the column span
of the ambient space.  localisations() splits the ambient module into
the joint generalized eigenspaces on which the generated algebra is
local; the LocalAlgebra wrapper then computes the structural numbers of
one local piece: its maximal ideal, residue degree, embedding dimension
(minimal generator count of the maximal ideal), nilpotency order, and
Gorenstein defect (the codimension-minus-one of the socle over the
residue field).

The maximal ideal is found through the generator minimal polynomials:
in a local algebra each one is a power of a single irreducible g, and
the elements g(T) generate the radical (the quotient by them is a
commutative algebra generated by separable elements, hence a field).
Splitting a non-local piece uses the fixed algebra of the q-power map,
whose dimension counts the local factors.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np

from .ff import embed_field, make_field, poly_factor
from .linalg import (
    AlgebraBasis, BaseChangeTuple, Echelon, Mat, base_change, kernel,
    min_poly_matrix, poly_eval_matrix, primary_components, spin_algebra,
)

AffineTuple = namedtuple(
    "AffineTuple",
    ["field_degree", "embedding_dimension", "nilpotency_order", "relations"])


def _coord_row(ab, m):
    """Coordinates of an algebra element as a flat int array (d, k)."""
    return np.array([c.coeffs for c in ab.coords(m)], dtype=np.int64)


class LocalAlgebra:
    """A local commutative matrix algebra with its distinguished generators.

    Locality is not verified up front; maximal_ideal() raises if a
    generator has a non-primary minimal polynomial.
    """

    def __init__(self, field, gens, basis: AlgebraBasis):
        self.field = field
        self.gens = list(gens)
        self.basis = basis
        self._mid = None
        self._powers = None
        self._socle = None

    @property
    def dim(self):
        return self.basis.dim

    # -- maximal ideal and its powers ------------------------------------

    def _mideal(self):
        """Echelonized coordinate rows of the maximal ideal."""
        if self._mid is not None:
            return self._mid
        ab = self.basis
        nil_gens = []
        for t in self.gens:
            f = min_poly_matrix(t)
            _, factors = poly_factor(f)
            if len(factors) != 1:
                raise ArithmeticError("algebra is not local")
            g, mult = factors[0]
            if mult > 1:
                nil_gens.append(poly_eval_matrix(g, t))
        ech = Echelon(self.field, ab.dim)
        if nil_gens:
            rows = []
            for b in ab.mats:
                for ng in nil_gens:
                    rows.append(_coord_row(ab, b @ ng))
            ech.add_rows(np.stack(rows))
        self._mid = ech
        return ech

    def maximal_ideal(self):
        """Coordinate basis of the maximal ideal (rows over the algebra)."""
        ech = self._mideal()
        if ech.rank == 0:
            return Mat(self.field,
                       np.zeros((0, self.dim, self.field.k), dtype=np.int8))
        return Mat(self.field, ech._rows)

    def _mideal_mats(self, rows):
        return [self.basis.element_from_coords(
            [self.field.element(r[j].tolist()) for j in range(self.dim)])
            for r in rows]

    def _power_chain(self):
        """Dimensions of m, m^2, ... down to zero."""
        if self._powers is not None:
            return self._powers
        ech = self._mideal()
        dims = []
        if ech.rank:
            m1 = self._mideal_mats(ech._rows.astype(np.int64))
            cur = m1
            dims.append(len(m1))
            while True:
                nxt_ech = Echelon(self.field, self.dim)
                rows = [_coord_row(self.basis, x @ y)
                        for x in cur for y in m1]
                nxt_ech.add_rows(np.stack(rows))
                if nxt_ech.rank == 0:
                    break
                dims.append(nxt_ech.rank)
                cur = self._mideal_mats(nxt_ech._rows.astype(np.int64))
        self._powers = dims
        return dims

    # -- invariants -------------------------------------------------------

    def residue_degree(self):
        """Degree of the residue field over the coefficient field."""
        return self.dim - self._mideal().rank

    def dimension_over_residue(self):
        f = self.residue_degree()
        assert self.dim % f == 0
        return self.dim // f

    def socle_dimension(self):
        """Dimension of Ann(m) over the coefficient field."""
        if self._socle is not None:
            return self._socle
        ech = self._mideal()
        if ech.rank == 0:
            self._socle = self.dim
            return self._socle
        ab = self.basis
        m1 = self._mideal_mats(ech._rows.astype(np.int64))
        blocks = []
        for ng in m1:
            rows = np.stack([_coord_row(ab, b @ ng) for b in ab.mats])
            blocks.append(rows)
        stacked = np.concatenate(blocks, axis=1)
        self._socle = kernel(Mat(self.field, stacked)).dim
        return self._socle

    def gorenstein_defect(self):
        f = self.residue_degree()
        s = self.socle_dimension()
        assert s % f == 0
        return s // f - 1

    def local_invariants(self):
        """(embedding dimension, nilpotency order) over the residue field."""
        chain = self._power_chain()
        f = self.residue_degree()
        if not chain:
            return 0, 0
        msq = chain[1] if len(chain) > 1 else 0
        e = (chain[0] - msq) // f
        return e, len(chain)


# ---------------------------------------------------------------------------
# splitting into local factors

def _frobenius_fixed_rows(ab):
    """Echelonized coordinate basis of {x : x^q = x}."""
    q = ab.field.order
    d = ab.dim
    phi = np.zeros((d, d, ab.field.k), dtype=np.int64)
    for j, b in enumerate(ab.mats):
        phi[j] = _coord_row(ab, b ** q)
    ident = np.zeros_like(phi)
    for j in range(d):
        ident[j, j, 0] = 1
    fixed = kernel(Mat(ab.field, (phi - ident) % ab.field.p))
    return fixed.basis.a.astype(np.int64)


def localisations(gens):
    """Split the ambient module under the algebra generated by gens.

    Returns a list of (BaseChangeTuple, LocalAlgebra) pairs, one per
    local factor, in a deterministic order.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].field
    n = gens[0].nrows
    if n == 0:
        return []
    comps = [BaseChangeTuple.full(field, n)]
    for t in gens:
        nxt = []
        for bc in comps:
            for _, sub in primary_components(base_change(t, bc)):
                nxt.append(bc.compose(sub))
        comps = nxt
    out = []
    stack = list(comps)
    while stack:
        bc = stack.pop(0)
        rgens = [base_change(t, bc) for t in gens]
        ab = spin_algebra(rgens)
        fixed = _frobenius_fixed_rows(ab)
        if len(fixed) <= 1:
            out.append((bc, LocalAlgebra(field, rgens, ab)))
            continue
        # non-local: split along an idempotent-carrying fixed element
        zrow = None
        for row in fixed:
            if row[1:].any():
                zrow = row
                break
        z = ab.element_from_coords(
            [field.element(zrow[j].tolist()) for j in range(ab.dim)])
        subs = primary_components(z)
        assert len(subs) > 1, "fixed element failed to split the module"
        stack = [bc.compose(s) for _, s in subs] + stack
    return out


# ---------------------------------------------------------------------------
# residue field change

def _embed_mat(m, emb):
    powers = np.array([pw.coeffs for pw in emb._powers], dtype=np.int64)
    out = np.einsum("rci,id->rcd", m.a.astype(np.int64), powers) % emb.dst.p
    return Mat(emb.dst, out)


def change_to_residue_field(loc: LocalAlgebra) -> LocalAlgebra:
    """Base-change a local algebra to its residue field.

    Over the residue field the algebra splits into residue-degree many
    conjugate local factors; one of them is returned (the first in the
    deterministic localisation order), which has residue degree one and
    dimension dim/f.
    """
    f = loc.residue_degree()
    if f == 1:
        return loc
    src = loc.field
    dst = make_field(src.p, src.k * f)
    emb = embed_field(src, dst)
    pieces = localisations([_embed_mat(t, emb) for t in loc.gens])
    assert len(pieces) == f, "conjugate count does not match residue degree"
    dims = {alg.dim for _, alg in pieces}
    assert dims == {loc.dim // f}
    alg = pieces[0][1]
    assert alg.residue_degree() == 1
    return alg


# ---------------------------------------------------------------------------
# affine presentations

def _monomials(nvars, maxdeg):
    """All exponent tuples with 1 <= total degree <= maxdeg, graded lex."""
    out = []
    level = [(0,) * nvars]
    for _ in range(maxdeg):
        nxt = []
        seen = set()
        for alpha in level:
            for i in range(nvars):
                beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                if beta not in seen:
                    seen.add(beta)
                    nxt.append(beta)
        nxt.sort()
        out.extend(nxt)
        level = nxt
    return out


def _mgens_mod_square(loc):
    """Lifts of a basis of m/m^2, in echelon order."""
    ech = loc._mideal()
    rows = ech._rows.astype(np.int64)
    m1 = loc._mideal_mats(rows)
    sq = Echelon(loc.field, loc.dim)
    prods = [_coord_row(loc.basis, x @ y) for x in m1 for y in m1]
    if prods:
        sq.add_rows(np.stack(prods))
    picked = []
    for t, row in enumerate(rows):
        if sq.add_rows(row[None])[0]:
            picked.append(m1[t])
    return picked


def _ideal_span(field, monomials, mono_index, rels):
    """Echelon of the span of all truncated monomial multiples of rels."""
    nvars = len(monomials[0])
    maxdeg = max(sum(m) for m in monomials)
    shifts = [(0,) * nvars] + monomials
    ech = Echelon(field, len(monomials))
    rows = []
    for terms in rels:
        mindeg = min(sum(a) for a, _ in terms)
        for beta in shifts:
            if sum(beta) + mindeg > maxdeg:
                continue
            vec = np.zeros((len(monomials), field.k), dtype=np.int64)
            hit = False
            for alpha, coeffs in terms:
                gamma = tuple(a + b for a, b in zip(alpha, beta))
                if sum(gamma) <= maxdeg:
                    vec[mono_index[gamma]] = coeffs
                    hit = True
            if hit:
                rows.append(vec)
    if rows:
        ech.add_rows(np.stack(rows))
    return ech


def _rel_terms(monomials, row):
    terms = []
    for t, alpha in enumerate(monomials):
        if row[t].any():
            terms.append((alpha, tuple(int(c) for c in row[t])))
    return tuple(terms)


def affine_tup(loc: LocalAlgebra, try_minimal=True) -> AffineTuple:
    """Affine presentation of a local algebra over its residue field.

    The relations are polynomials in e = embedding-dimension variables
    (the chosen m/m^2 lifts), complete through total degree n + 1, so
    together with the recorded nilpotency order they determine the
    algebra.  With try_minimal, relations implied by the others are
    greedily discarded.
    """
    if loc.residue_degree() != 1:
        raise ValueError("change to the residue field first")
    field = loc.field
    e, n = loc.local_invariants()
    if e == 0:
        return AffineTuple(field.k, 0, 0, ())
    xs = _mgens_mod_square(loc)
    monomials = _monomials(e, n + 1)
    mono_index = {m: t for t, m in enumerate(monomials)}
    prods = {}
    rows = np.zeros((len(monomials), loc.dim, field.k), dtype=np.int64)
    for t, alpha in enumerate(monomials):
        i = next(j for j in range(e) if alpha[j])
        down = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
        prev = prods[down] if sum(down) else None
        cur = xs[i] if prev is None else prev @ xs[i]
        prods[alpha] = cur
        rows[t] = _coord_row(loc.basis, cur)
    ker = kernel(Mat(field, rows))
    rels = [_rel_terms(monomials, ker.basis.a[j].astype(np.int64))
            for j in range(ker.dim)]
    if try_minimal:
        kept = list(rels)
        idx = 0
        while idx < len(kept):
            others = kept[:idx] + kept[idx + 1:]
            if others:
                span = _ideal_span(field, monomials, mono_index, others)
                vec = np.zeros((len(monomials), field.k), dtype=np.int64)
                for alpha, coeffs in kept[idx]:
                    vec[mono_index[alpha]] = coeffs
                if span.contains(vec):
                    kept.pop(idx)
                    continue
            idx += 1
        rels = kept
    return AffineTuple(field.k, e, n, tuple(rels))


def affine_from_tup(tup: AffineTuple, characteristic: int) -> LocalAlgebra:
    """Rebuild a local algebra from its affine presentation tuple.

    The model is the truncated polynomial ring in e variables modulo
    the span of all monomial multiples of the relations; the returned
    algebra is generated by the multiplication maps of the variables.
    """
    field = make_field(characteristic, tup.field_degree)
    e, n = tup.embedding_dimension, tup.nilpotency_order
    if e == 0:
        one = Mat.identity(field, 1)
        return LocalAlgebra(field, [one], spin_algebra([one]))
    monomials = _monomials(e, n + 1)
    mono_index = {m: t for t, m in enumerate(monomials)}
    span = _ideal_span(field, monomials, mono_index, tup.relations)
    pivset = set(span.pivots)
    free = [t for t in range(len(monomials)) if t not in pivset]
    basis_monos = [(0,) * e] + [monomials[t] for t in free]
    bidx = {m: t for t, m in enumerate(basis_monos)}
    dim = len(basis_monos)
    span_free = span._rows[:, free, :].astype(np.int64) if span.rank else \
        np.zeros((0, len(free), field.k), dtype=np.int64)
    piv_row = {c: r for r, c in enumerate(span.pivots)}
    p = field.p

    def reduced(alpha):
        """Coordinates of the monomial alpha over the quotient basis."""
        vec = np.zeros((dim, field.k), dtype=np.int64)
        if sum(alpha) > n + 1:
            return vec
        if alpha in bidx:
            vec[bidx[alpha]][0] = 1
            return vec
        r = piv_row[mono_index[alpha]]
        vec[1:] = (-span_free[r]) % p
        return vec

    gens = []
    for i in range(e):
        rows = np.zeros((dim, dim, field.k), dtype=np.int64)
        for t, alpha in enumerate(basis_monos):
            beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
            rows[t] = reduced(beta)
        gens.append(Mat(field, rows))
    return LocalAlgebra(field, gens, spin_algebra(gens))
