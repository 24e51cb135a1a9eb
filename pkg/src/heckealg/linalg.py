"""Exact linear algebra over finite fields, numpy-backed.

Matrices over GF(p) hold reduced integer entries and are multiplied
through float BLAS whenever the inner products fit the float mantissa
exactly (inner_dim * (p-1)^2 < 2^53, or 2^24 for single precision);
otherwise exact integer matmul is used.  Matrices over GF(p^k) are
stored entrywise as coefficient vectors and multiplied componentwise
through the same kernels plus the field multiplication table.

Vectors are rows throughout: an operator T sends v to v @ T, kernels
are left kernels {v : v T = 0}, and a subspace is described by a
BaseChangeTuple (basis rows B, section S) with B S = identity.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .ff import Poly, poly_factor, poly_lcm

_F32_LIMIT = 2 ** 24
_F64_LIMIT = 2 ** 53
_CHUNK_ELEMS = 1 << 23  # cap temporary float buffers at 64 MB


def _store_dtype(p):
    if p < 128:
        return np.int8
    if p < 2 ** 15:
        return np.int16
    if p < 2 ** 31:
        return np.int32
    return np.int64


def gemm_mod(a, b, p):
    """(a @ b) mod p for 2-d arrays with entries reduced into [0, p)."""
    m, r = a.shape
    n = b.shape[1]
    if m == 0 or n == 0 or r == 0:
        return np.zeros((m, n), dtype=_store_dtype(p))
    bound = r * (p - 1) * (p - 1)
    if bound < _F64_LIMIT:
        ftype = np.float32 if bound < _F32_LIMIT else np.float64
        af = a.astype(ftype)
        out = np.empty((m, n), dtype=_store_dtype(p))
        step = max(_CHUNK_ELEMS // max(m + r, 1), 16)
        for j in range(0, n, step):
            blk = af @ b[:, j:j + step].astype(ftype)
            np.mod(blk, p, out=blk)
            out[:, j:j + step] = blk
        return out
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


@lru_cache(maxsize=None)
def _mult_table(field):
    """T[i,j,:] = coefficients of x^i * x^j in GF(p^k)."""
    k = field.k
    table = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            e = field.from_int(field.p ** i) * field.from_int(field.p ** j)
            table[i, j, :] = e.coeffs
    return table


def _field_gemm(a, b, field):
    """Matrix product over GF(p^k); a is (m,r,k), b is (r,n,k)."""
    p = field.p
    k = field.k
    if k == 1:
        return gemm_mod(a[:, :, 0], b[:, :, 0], p)[:, :, None]
    table = _mult_table(field)
    m = a.shape[0]
    n = b.shape[1]
    out = np.zeros((m, n, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod = gemm_mod(a[:, :, i], b[:, :, j], p).astype(np.int64)
            for t in range(k):
                c = int(table[i, j, t])
                if c:
                    out[:, :, t] += c * prod
    return (out % p).astype(_store_dtype(p))


def _scale_rows(arr, scalars, field):
    """Multiply rows (..., n, k) by field scalars (..., k) entrywise."""
    p = field.p
    if field.k == 1:
        return (arr.astype(np.int64) * scalars[..., None, :]) % p
    table = _mult_table(field)
    out = np.einsum("...nk,...l,klt->...nt", arr.astype(np.int64),
                    scalars.astype(np.int64), table)
    return out % p


def _first_nonzero_col(vec):
    """Index of first column of (n, k) with a nonzero entry, or -1."""
    nz = np.flatnonzero(vec.any(axis=-1))
    return int(nz[0]) if nz.size else -1


class Echelon:
    """Growing reduced row-echelon form over a finite field.

    Row batches are reduced against the current form with one matrix
    product, locally eliminated, and folded back in, so the total cost
    is rows * rank * cols in BLAS-shaped operations.  With track=True
    every added row is remembered and membership queries (solve) return
    coordinates over the rows added so far.
    """

    def __init__(self, field, ncols, track=False):
        self.field = field
        self.ncols = ncols
        self.track = track
        self.pivots = []
        self._pivset = set()
        self._dtype = _store_dtype(field.p)
        self._buf = np.zeros((16, ncols, field.k), dtype=self._dtype)
        self._nrows = 0
        self._n_inputs = 0
        self._u = np.zeros((0, 0, field.k), dtype=np.int64)

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def _rows(self):
        return self._buf[:self._nrows]

    def _ensure_capacity(self, extra):
        need = self._nrows + extra
        if need <= self._buf.shape[0]:
            return
        cap = max(need, 2 * self._buf.shape[0])
        grown = np.zeros((cap,) + self._buf.shape[1:], dtype=self._dtype)
        grown[:self._nrows] = self._rows
        self._buf = grown

    def _append(self, block):
        self._ensure_capacity(block.shape[0])
        self._buf[self._nrows:self._nrows + block.shape[0]] = block
        self._nrows += block.shape[0]

    def _inv(self, scalar):
        return np.array(
            self.field(scalar.tolist()).inv().coeffs, dtype=np.int64)

    def _as3(self, arr):
        arr = np.asarray(arr)
        if arr.ndim == 2 and self.field.k == 1:
            arr = arr[:, :, None]
        return arr.astype(np.int64) % self.field.p

    def _reduce_block(self, arr):
        """Clear the existing pivot columns out of the rows of arr."""
        if self.rank == 0:
            return arr
        coeffs = arr[:, self.pivots, :]
        if not coeffs.any():
            return arr
        prod = _field_gemm(coeffs, self._rows, self.field)
        return (arr - prod) % self.field.p

    def reduce(self, arr):
        """Rows of arr reduced modulo the current row space."""
        squeeze = self.field.k == 1 and np.asarray(arr).ndim == 2
        out = self._reduce_block(self._as3(arr))
        return out[:, :, 0] if squeeze else out

    def contains(self, v):
        return not self.reduce(np.asarray(v)[None]).any()

    def add_rows(self, arr):
        """Fold rows into the form; returns per-row independence flags."""
        arr = self._as3(arr)
        if self.track:
            # rows must reach _add_tracked unreduced, so that the
            # reduction coefficients enter the tracking matrix
            return np.array([self._add_tracked(v)[0] for v in arr],
                            dtype=bool)
        arr = self._reduce_block(arr)
        m = arr.shape[0]
        flags = np.zeros(m, dtype=bool)
        if not arr.any():
            self._n_inputs += m
            return flags
        local = np.empty_like(arr)
        local_pivs = []
        cnt = 0
        for i in range(m):
            v = arr[i]
            if cnt:
                c = v[local_pivs, :]
                if c.any():
                    v = (v - _field_gemm(c[None], local[:cnt],
                                         self.field)[0]) % self.field.p
            j = _first_nonzero_col(v)
            if j < 0:
                continue
            v = _scale_rows(v, self._inv(v[j]), self.field)
            if cnt:
                # keep the local block fully reduced (Gauss-Jordan), so
                # the simultaneous subtraction above stays valid
                d = local[:cnt, j, :].astype(np.int64)
                if d.any():
                    sub = _scale_rows(np.broadcast_to(
                        v, (cnt,) + v.shape), d, self.field)
                    local[:cnt] = (local[:cnt] - sub) % self.field.p
            local[cnt] = v
            local_pivs.append(j)
            cnt += 1
            flags[i] = True
        if cnt:
            local = local[:cnt]
            if self.rank:
                c = self._rows[:, local_pivs, :].astype(np.int64)
                if c.any():
                    prod = _field_gemm(c, local, self.field)
                    np.mod(self._rows - prod, self.field.p,
                           out=self._buf[:self._nrows],
                           casting="unsafe")
            self._append(local.astype(self._dtype))
            self.pivots.extend(local_pivs)
            self._pivset.update(local_pivs)
        self._n_inputs += m
        return flags

    def _grow_u(self):
        r, ni, k = self._u.shape
        grown = np.zeros((r, self._n_inputs + 1, k), dtype=np.int64)
        grown[:, :ni, :] = self._u
        self._u = grown

    def _add_tracked(self, v):
        """Add one row; returns (independent, null-combo if dependent)."""
        p = self.field.p
        k = self.field.k
        self._grow_u()
        idx = self._n_inputs
        self._n_inputs += 1
        v = v.astype(np.int64) % p
        c = v[self.pivots, :] if self.rank else None
        ucombo = np.zeros((self._n_inputs, k), dtype=np.int64)
        ucombo[idx, 0] = 1
        if c is not None and c.any():
            v = (v - _field_gemm(c[None], self._rows, self.field)[0]) % p
            if k == 1:
                ucombo[:-1, 0] -= c[:, 0] @ self._u[:, :-1, 0]
            else:
                table = _mult_table(self.field)
                ucombo[:-1, :] -= np.einsum("rk,ril,klt->it", c,
                                            self._u[:, :-1, :], table)
            ucombo %= p
        j = _first_nonzero_col(v)
        if j < 0:
            return False, ucombo
        s = self._inv(v[j])
        v = _scale_rows(v, s, self.field)
        urow = _scale_rows(ucombo[None, :, :], s, self.field)[0]
        # back-reduce existing rows at the new pivot column
        if self.rank:
            d = self._rows[:, j, :].astype(np.int64)
            if d.any():
                sub = _scale_rows(np.broadcast_to(
                    v, (self.rank,) + v.shape), d, self.field)
                np.mod(self._rows - sub, p, out=self._buf[:self._nrows],
                       casting="unsafe")
                usub = _scale_rows(np.broadcast_to(
                    urow, (self.rank,) + urow.shape), d, self.field)
                self._u = (self._u - usub) % p
        self._append(v[None].astype(self._dtype))
        self._u = np.concatenate([self._u, urow[None]], axis=0)
        self.pivots.append(j)
        self._pivset.add(j)
        return True, None

    def solve(self, v):
        """Coordinates of v over the added rows, or None if outside."""
        if not self.track:
            raise ValueError("echelon was built without tracking")
        p = self.field.p
        k = self.field.k
        v = self._as3(np.asarray(v)[None])[0]
        if self.rank == 0:
            if v.any():
                return None
            return np.zeros((self._n_inputs, k), dtype=np.int64)
        c = v[self.pivots, :]
        res = (v - _field_gemm(c[None], self._rows, self.field)[0]) % p
        if res.any():
            return None
        if k == 1:
            return ((c[:, 0] @ self._u[:, :, 0]) % p)[:, None]
        table = _mult_table(self.field)
        return np.einsum("rk,ril,klt->it", c.astype(np.int64),
                         self._u, table) % p

    def row_array(self):
        rows = self._rows.copy()
        return rows[:, :, 0] if self.field.k == 1 else rows


# ---------------------------------------------------------------------------

class Mat:
    """Matrix over a finite field; entries as (rows, cols, k) coefficients."""

    __slots__ = ("field", "a")

    def __init__(self, field, a):
        self.field = field
        a = np.asarray(a)
        if a.ndim == 2:
            a = a[:, :, None]
        if a.ndim != 3 or a.shape[2] != field.k:
            raise ValueError("entry width does not match the field")
        if np.iinfo(a.dtype).max < field.p:
            a = a.astype(np.int64)
        self.a = (a % field.p).astype(_store_dtype(field.p))

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, np.zeros((nrows, ncols, field.k), dtype=np.int8))

    @classmethod
    def identity(cls, field, n):
        a = np.zeros((n, n, field.k), dtype=np.int8)
        a[np.arange(n), np.arange(n), 0] = 1
        return cls(field, a)

    @classmethod
    def from_rows(cls, field, rows):
        rows = list(rows)
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        a = np.zeros((nrows, ncols, field.k), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                a[i, j, :] = field.element(x).coeffs
        return cls(field, a)

    @property
    def nrows(self):
        return self.a.shape[0]

    @property
    def ncols(self):
        return self.a.shape[1]

    def entry(self, i, j):
        return self.field.element(self.a[i, j].tolist())

    def arr2(self):
        """The (rows, cols) integer array; prime fields only."""
        if self.field.k != 1:
            raise ValueError("not a prime-field matrix")
        return self.a[:, :, 0]

    def __add__(self, other):
        self._compat(other)
        return Mat(self.field,
                   (self.a.astype(np.int64) + other.a) % self.field.p)

    def __sub__(self, other):
        self._compat(other)
        return Mat(self.field,
                   (self.a.astype(np.int64) - other.a) % self.field.p)

    def __neg__(self):
        return Mat(self.field, (-self.a.astype(np.int64)) % self.field.p)

    def __matmul__(self, other):
        if not isinstance(other, Mat) or other.field != self.field:
            raise ValueError("incompatible matrices")
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return Mat(self.field, _field_gemm(self.a, other.a, self.field))

    def __mul__(self, scalar):
        s = np.array(self.field.element(scalar).coeffs, dtype=np.int64)
        flat = _scale_rows(self.a.reshape(1, -1, self.field.k),
                           s[None], self.field)
        return Mat(self.field, flat.reshape(self.a.shape))

    __rmul__ = __mul__

    def __pow__(self, e):
        if self.nrows != self.ncols:
            raise ValueError("not square")
        if e < 0:
            raise ValueError("negative matrix power")
        result = Mat.identity(self.field, self.nrows)
        base = self
        while e > 0:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def transpose(self):
        return Mat(self.field, np.swapaxes(self.a, 0, 1))

    def is_zero(self):
        return not self.a.any()

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.a.shape == other.a.shape
                and np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash((self.field, self.a.shape, self.a.tobytes()))

    def _compat(self, other):
        if not isinstance(other, Mat) or other.field != self.field:
            raise ValueError("incompatible matrices")
        if self.a.shape != other.a.shape:
            raise ValueError("shape mismatch")

    def rref(self):
        """Reduced row echelon form and its pivot columns (sorted)."""
        ech = Echelon(self.field, self.ncols)
        ech.add_rows(self.a)
        order = np.argsort(np.array(ech.pivots, dtype=np.int64),
                           kind="stable") if ech.rank else []
        rows = ech._rows[order] if ech.rank else \
            np.zeros((0, self.ncols, self.field.k), dtype=np.int8)
        pivots = tuple(int(ech.pivots[i]) for i in order)
        return Mat(self.field, rows), pivots

    def rank(self):
        ech = Echelon(self.field, self.ncols)
        ech.add_rows(self.a)
        return ech.rank

    def __repr__(self):
        return "Mat(%r, %dx%d)" % (self.field, self.nrows, self.ncols)


class BaseChangeTuple:
    """Subspace description: basis rows B and a section S with B S = 1."""

    __slots__ = ("basis", "section")

    def __init__(self, basis, section):
        if basis.field != section.field \
                or basis.nrows != section.ncols \
                or basis.ncols != section.nrows:
            raise ValueError("basis/section shapes do not match")
        self.basis = basis
        self.section = section

    @property
    def field(self):
        return self.basis.field

    @property
    def dim(self):
        return self.basis.nrows

    @property
    def ambient_dim(self):
        return self.basis.ncols

    @classmethod
    def full(cls, field, n):
        eye = Mat.identity(field, n)
        return cls(eye, eye)

    def compose(self, inner):
        """Tuple for a subspace given in this subspace's coordinates."""
        return BaseChangeTuple(inner.basis @ self.basis,
                               self.section @ inner.section)

    def __repr__(self):
        return "BaseChangeTuple(%d in %d over %r)" % (
            self.dim, self.ambient_dim, self.field)


def coerce_mat(m, field):
    """View a prime-field matrix inside an extension of the same p."""
    if m.field == field:
        return m
    if m.field.p != field.p or m.field.k != 1:
        raise ValueError("no canonical coercion between these fields")
    a = np.zeros(m.a.shape[:2] + (field.k,), dtype=m.a.dtype)
    a[:, :, 0] = m.a[:, :, 0]
    return Mat(field, a)


def kernel(m: Mat) -> BaseChangeTuple:
    """Left kernel {v : v m = 0} with its canonical section."""
    field = m.field
    nr = m.nrows
    r, pivots = m.transpose().rref()
    pivset = set(pivots)
    free = np.array([j for j in range(nr) if j not in pivset],
                    dtype=np.int64)
    d = len(free)
    k = field.k
    c = np.zeros((d, nr, k), dtype=np.int64)
    if d:
        c[np.arange(d), free, 0] = 1
        if pivots:
            rarr = r.a.astype(np.int64)
            c[:, np.array(pivots, dtype=np.int64), :] = \
                np.swapaxes((-rarr[:, free, :]) % field.p, 0, 1)
    sec = np.zeros((nr, d, k), dtype=np.int64)
    if d:
        sec[free, np.arange(d), 0] = 1
    return BaseChangeTuple(Mat(field, c), Mat(field, sec))


def poly_eval_matrix(f: Poly, t: Mat) -> Mat:
    """The matrix f(t); scalars of f are coerced into t's field."""
    field = t.field
    if f.field != field and not (f.field.p == field.p and f.field.k == 1):
        raise ValueError("polynomial is over an unrelated field")
    out = Mat.zeros(field, t.nrows, t.nrows)
    eye = Mat.identity(field, t.nrows)
    for c in reversed(f.coeffs):
        scalar = field.element(c if f.field == field else c.coeffs[0])
        out = out @ t + eye * scalar
    return out


def _min_poly_reference(t: Mat) -> Poly:
    """Dense minimal polynomial via powers of t; fine for small sizes."""
    field = t.field
    n = t.nrows
    ech = Echelon(field, n * n, track=True)
    power = Mat.identity(field, n)
    count = 0
    while True:
        flat = power.a.reshape(-1, field.k)
        if not ech.add_rows(flat[None])[0]:
            combo = ech.solve(flat)
            coeffs = [field.element(combo[i].tolist()) for i in range(count)]
            return Poly(field, [-c for c in coeffs] + [field.one()])
        count += 1
        power = power @ t


def min_poly_matrix(t: Mat) -> Poly:
    """Minimal polynomial of t, as the lcm of cyclic-vector polynomials.

    Krylov chains start at standard basis vectors, skipping vectors
    already inside the (invariant) span of completed chains.
    """
    field = t.field
    n = t.nrows
    if t.ncols != n:
        raise ValueError("not square")
    if n == 0:
        return Poly(field, [field.one()])
    if n <= 8:
        return _min_poly_reference(t)
    span = Echelon(field, n)
    m = Poly(field, [field.one()])
    for start in range(n):
        if span.rank == n:
            break
        e = np.zeros((n, field.k), dtype=np.int64)
        e[start, 0] = 1
        if span.contains(e):
            continue
        chain = Echelon(field, n, track=True)
        vecs = []
        v = e
        while True:
            if not chain.add_rows(v[None])[0]:
                combo = chain.solve(v)
                d = len(vecs)
                poly = Poly(field,
                            [-field.element(combo[i].tolist())
                             for i in range(d)] + [field.one()])
                break
            vecs.append(v)
            v = _field_gemm(v[None], t.a, field)[0]
        m = poly_lcm(m, poly)
        span.add_rows(np.stack(vecs))
    return m


class AlgebraBasis:
    """Basis of a matrix algebra with coordinate lookup."""

    __slots__ = ("field", "n", "mats", "_ech")

    def __init__(self, field, n, mats, ech):
        self.field = field
        self.n = n
        self.mats = mats
        self._ech = ech

    @property
    def dim(self):
        return len(self.mats)

    def coords(self, m: Mat):
        """Coordinates of m over the basis; raises if m is outside."""
        combo = self._ech.solve(m.a.reshape(-1, self.field.k))
        if combo is None:
            raise ValueError("matrix not in the algebra")
        return [self.field.element(combo[i].tolist())
                for i in range(self.dim)]

    def contains(self, m: Mat):
        return self._ech.solve(m.a.reshape(-1, self.field.k)) is not None

    def element_from_coords(self, coords):
        out = Mat.zeros(self.field, self.n, self.n)
        for c, b in zip(coords, self.mats):
            out = out + b * self.field.element(c)
        return out


def spin_algebra(gens) -> AlgebraBasis:
    """Basis of the unital matrix algebra generated by gens.

    Worklist closure: every new basis element is multiplied by every
    generator until nothing independent turns up.  The identity is
    always the first basis element.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].field
    n = gens[0].nrows
    for g in gens:
        if g.field != field or g.nrows != n or g.ncols != n:
            raise ValueError("generators must be square over one field")
    ech = Echelon(field, n * n, track=True)
    basis = []
    queue = [Mat.identity(field, n)]
    while queue:
        b = queue.pop(0)
        if not ech.add_rows(b.a.reshape(-1, field.k)[None])[0]:
            continue
        basis.append(b)
        for g in gens:
            queue.append(b @ g)
    # dependent worklist entries consumed input slots; re-track so that
    # coordinates come out over the retained basis only
    clean = Echelon(field, n * n, track=True)
    for b in basis:
        clean.add_rows(b.a.reshape(-1, field.k)[None])
    return AlgebraBasis(field, n, basis, clean)


def regular_representation(ab: AlgebraBasis):
    """Matrices of multiplication by each basis element, in basis coords."""
    d = ab.dim
    out = []
    for bi in ab.mats:
        rows = np.zeros((d, d, ab.field.k), dtype=np.int64)
        for j, bj in enumerate(ab.mats):
            coords = ab.coords(bi @ bj)
            for mcol, cval in enumerate(coords):
                rows[j, mcol, :] = cval.coeffs
        out.append(Mat(ab.field, rows))
    return out


def base_change(m: Mat, bc: BaseChangeTuple) -> Mat:
    """Restriction of m to the subspace described by bc.

    The subspace must be invariant (checked); a prime-field matrix is
    coerced into the tuple's field when necessary.
    """
    m = coerce_mat(m, bc.field)
    bm = bc.basis @ m
    restricted = bm @ bc.section
    if restricted @ bc.basis != bm:
        raise ValueError("subspace is not invariant under the matrix")
    return restricted


def primary_components(t: Mat):
    """Primary (generalized-eigenspace) decomposition of t.

    Returns [(f, tuple)] with f running over the irreducible factors of
    the minimal polynomial and tuple the base change onto ker f(t)^e,
    e the factor's multiplicity in the minimal polynomial; sorted by
    (degree, coefficients).  The dimensions add up to the size of t.
    """
    n = t.nrows
    m = min_poly_matrix(t)
    _, factors = poly_factor(m)
    out = []
    total = 0
    for f, mult in factors:
        k = poly_eval_matrix(f, t)
        bc = kernel(k ** mult)
        out.append((f, bc))
        total += bc.dim
    if total != n:
        raise ArithmeticError("primary components do not fill the space")
    return out
