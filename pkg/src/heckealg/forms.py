"""Eigenform specifications from class groups and quintic polynomials.

Two families of mod-p eigenforms are constructed here without touching
modular symbols at all.  Dihedral ones come from characters of the
class group of an imaginary quadratic field: the class group is built
by reduced-form enumeration and Gaussian composition, and the l-th
coefficient of the form is 0 or zeta + zeta^-1 according to the
splitting of l.  Icosahedral ones (characteristic 2) come from a
quintic polynomial with Galois group A_5 = SL_2(GF(4)), with traces
read off the factorization pattern of the quintic mod l, the level
predicted from the ramified primes, and the traces scaled by the
character that twists the conductor down to that level.

A specification carries a Dirichlet character, a weight, and a partial
coefficient function returning minimal polynomials over the prime
field; the engine consults it at good primes to pin down one system of
eigenvalues.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd, isqrt
from typing import Callable, Optional

import numpy as np
from sympy import ZZ, factorint
from sympy import Matrix as _SymMatrix
from sympy import Poly as _SymPoly
from sympy import Symbol
from sympy.ntheory.residue_ntheory import n_order, sqrt_mod
from sympy.polys.numberfields.basis import (
    _apply_Dedekind_criterion, _second_enlargement,
)
from sympy.polys.numberfields.modules import PowerBasis
from sympy.polys.numberfields.utilities import extract_fundamental_discriminant

from .dirichlet import (
    DirichletCharacter, _kronecker, legendre_character, trivial_character,
    unit_group,
)
from .ff import FF, Poly, make_field, min_poly_element
from .linalg import Mat, kernel


# ---------------------------------------------------------------------------
# binary quadratic forms

def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _reduce_form(a, b, c):
    """Reduce a positive definite form: |b| <= a <= c, b >= 0 at the edge."""
    while True:
        if b <= -a or b > a:
            t = (a - b) // (2 * a)
            c = a * t * t + b * t + c
            b = b + 2 * a * t
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return (a, b, c)


def _compose(f1, f2):
    """Gaussian composition of two forms of the same discriminant.

    Follows the classical resolution of the middle coefficient (Cohen,
    Algorithm 5.4.7); works for non-coprime leading coefficients too.
    """
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d0 = 0, a1
    else:
        d0, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d0 == 0:
        y2, x2, d1 = -1, 0, d0
    else:
        d1, u, v = _xgcd(s, d0)
        x2, y2 = u, -v
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    a3 = v1 * v2
    b3 = b2 + 2 * v2 * r
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return _reduce_form(a3, b3, c3)


def _is_squarefree(n):
    return all(e == 1 for e in factorint(n).values())


class QuadClassGroup:
    """Class group of an imaginary quadratic order of discriminant d.

    Elements are reduced primitive positive definite forms (a, b, c)
    with b^2 - 4ac = d.  Generators decompose the group into cyclic
    factors of prime-power order; dlog expresses any reduced form over
    them.
    """

    def __init__(self, d):
        if d >= 0 or d % 4 != 1:
            raise ValueError("discriminant must be negative and 1 mod 4")
        if not _is_squarefree(-d):
            raise ValueError("discriminant must be squarefree")
        self.d = d
        self.forms = self._enumerate()
        self.identity = (1, 1, (1 - d) // 4)
        self._orders = {}
        self.generators, self.generator_orders = self._structure()
        self._dlog = self._dlog_table()

    def _enumerate(self):
        d = self.d
        forms = []
        for a in range(1, isqrt(-d // 3) + 1):
            for b in range(-a + 1, a + 1):
                if (b * b - d) % (4 * a):
                    continue
                c = (b * b - d) // (4 * a)
                if c < a:
                    continue
                if b < 0 and a == c:
                    continue
                if gcd(gcd(a, abs(b)), c) == 1:
                    forms.append((a, b, c))
        forms.sort()
        return forms

    @property
    def h(self):
        return len(self.forms)

    def compose(self, f1, f2):
        return _compose(f1, f2)

    def inverse(self, f):
        a, b, c = f
        return _reduce_form(a, -b, c)

    def power(self, f, e):
        out = self.identity
        base = f
        if e < 0:
            base, e = self.inverse(f), -e
        while e:
            if e & 1:
                out = _compose(out, base)
            base = _compose(base, base)
            e >>= 1
        return out

    def order_of(self, f):
        if f not in self._orders:
            k, x = 1, f
            while x != self.identity:
                x = _compose(x, f)
                k += 1
            self._orders[f] = k
        return self._orders[f]

    def _structure(self):
        """Cyclic decomposition, one basis per Sylow subgroup.

        Greedily picks an element of maximal order in the quotient by
        the basis built so far and adjusts it to a direct factor; the
        adjustment exponents are divisible by the quotient order
        exactly when the greedy choice was maximal, which doubles as a
        self-check of the composition law.
        """
        gens, orders = [], []
        for p in sorted(factorint(self.h)):
            pv = p ** factorint(self.h)[p]
            syl = [x for x in self.forms if pv % self.order_of(x) == 0]
            pbasis, porders = [], []
            span = {self.identity: ()}
            while len(span) < len(syl):
                best = None
                for x in syl:
                    if x in span:
                        continue
                    e, y = 0, x
                    while y not in span:
                        y = self.power(y, p)
                        e += 1
                    if best is None or e > best[0]:
                        best = (e, x, y)
                e, x, y = best
                pe = p ** e
                t = self.identity
                for bi, ci in zip(pbasis, span[y]):
                    q, rem = divmod(ci, pe)
                    if rem:
                        raise ArithmeticError("basis adjustment failed")
                    t = _compose(t, self.power(bi, q))
                x = _compose(x, self.inverse(t))
                if self.power(x, pe) != self.identity:
                    raise ArithmeticError("basis element has wrong order")
                pbasis.append(x)
                porders.append(pe)
                span = {}
                for ks in product(*[range(o) for o in porders]):
                    g = self.identity
                    for bi, ki in zip(pbasis, ks):
                        g = _compose(g, self.power(bi, ki))
                    span[g] = ks
            gens.extend(pbasis)
            orders.extend(porders)
        return gens, orders

    def _dlog_table(self):
        table = {}
        for ks in product(*[range(o) for o in self.generator_orders]):
            g = self.identity
            for bi, ki in zip(self.generators, ks):
                g = _compose(g, self.power(bi, ki))
            table[g] = ks
        if len(table) != self.h:
            raise ArithmeticError("generators do not span the class group")
        return table

    def dlog(self, f):
        return self._dlog[f]

    @property
    def elementary_divisors(self):
        """Invariant factors d_1 | d_2 | ..., smallest first."""
        per_prime = {}
        for o in self.generator_orders:
            p = min(factorint(o))
            per_prime.setdefault(p, []).append(o)
        for p in per_prime:
            per_prime[p].sort(reverse=True)
        depth = max((len(v) for v in per_prime.values()), default=0)
        divisors = []
        for i in range(depth):
            q = 1
            for p in per_prime:
                if i < len(per_prime[p]):
                    q *= per_prime[p][i]
            divisors.append(q)
        return sorted(divisors)


def class_group(d) -> QuadClassGroup:
    return QuadClassGroup(d)


PrimeClass = namedtuple("PrimeClass", ["kind", "form"])


def prime_class(d, l) -> PrimeClass:
    """Class of a prime ideal above l in the order of discriminant d.

    kind is "inert" (form None), "split", or "ramified"; for the split
    and ramified kinds the form is the reduced representative of the
    ideal class.
    """
    if d % l == 0:
        c = (l * l - d) // (4 * l)
        return PrimeClass("ramified", _reduce_form(l, l, c))
    if _kronecker(d, l) == -1:
        return PrimeClass("inert", None)
    if l == 2:
        b = 1
    else:
        b = int(sqrt_mod(d % l, l))
        if b % 2 == 0:
            b = l - b
    c = (b * b - d) // (4 * l)
    return PrimeClass("split", _reduce_form(l, b, c))


# ---------------------------------------------------------------------------
# eigenform specifications

@dataclass
class ModularFormSpec:
    """A mod-p eigenform given by character, weight, and coefficients.

    coefficient_function maps a good prime l (l != p, l not dividing
    the level) to the minimal polynomial over GF(p) of the l-th
    q-expansion coefficient; payload stores what is needed to rebuild
    the function after serialization.
    """

    character: DirichletCharacter
    weight: int
    coefficient_function: Optional[Callable[[int], Poly]] = None
    image_name: str = ""
    defining_polynomial: Optional[tuple] = None
    payload: dict = field(default_factory=dict)

    @property
    def level(self):
        return self.character.modulus

    @property
    def characteristic(self):
        return self.character.field.p


def _primitive_element(fld: FF):
    """Deterministic generator of the multiplicative group."""
    q = fld.order
    primes = list(factorint(q - 1))
    for n in range(1, q):
        g = fld.from_int(n)
        if all(g ** ((q - 1) // r) != fld.one() for r in primes):
            return g
    raise ArithmeticError("no primitive element found")


class ClassGroupCharacter:
    """Character of a class group with values in a finite field.

    Determined by exponents c_i on the group generators g_i; the value
    of chi(g_i) is zeta^(n c_i / d_i) for zeta a fixed primitive n-th
    root of unity, n the order of chi.
    """

    def __init__(self, group: QuadClassGroup, exponents, characteristic):
        self.group = group
        if len(exponents) != len(group.generator_orders):
            raise ValueError("need one exponent per class-group generator")
        self.exponents = tuple(int(c) % o for c, o in
                               zip(exponents, group.generator_orders))
        self.order = 1
        for c, o in zip(self.exponents, group.generator_orders):
            self.order = self.order * (o // gcd(c, o)) // \
                gcd(self.order, o // gcd(c, o))
        if self.order % characteristic == 0:
            raise ValueError("character order divisible by characteristic")
        n = self.order
        m = 1
        while (characteristic ** m - 1) % n:
            m += 1
        self.field = make_field(characteristic, m)
        self.zeta = _primitive_element(self.field) ** \
            ((self.field.order - 1) // n)
        # exponent of zeta for each generator
        self._gen_exp = []
        for c, o in zip(self.exponents, group.generator_orders):
            g = gcd(c, o)
            self._gen_exp.append((n // (o // g)) * (c // g) % n)

    def exponent_of(self, form):
        ks = self.group.dlog(form)
        return sum(e * k for e, k in zip(self._gen_exp, ks)) % self.order

    def __call__(self, form):
        return self.zeta ** self.exponent_of(form)


def dihedral_coefficient(spec: ModularFormSpec, l) -> Poly:
    """Minimal polynomial over GF(p) of the l-th coefficient.

    The trace of Frobenius is 0 for inert l and chi + chi^-1 of a
    prime above l for split l; ramified l and the characteristic are
    outside the coefficient-function contract.
    """
    chi: ClassGroupCharacter = spec.payload["character"]
    d = spec.payload["disc"]
    p = spec.characteristic
    if l == p or d % l == 0:
        raise ValueError("coefficient only defined away from p and d")
    cls = prime_class(d, l)
    prime = make_field(p, 1)
    if cls.kind == "inert":
        return Poly.from_ints(prime, [0, 1])
    z = chi(cls.form)
    return min_poly_element(z + z.inv())


def dihedral_forms(N, *, list_of_primes=(), bound=100, odd_only=True,
                   quad_disc=0, completely_split=True,
                   all_conjugacy_classes=True):
    """Dihedral eigenform specifications at level |d|.

    For each characteristic p, each odd order n >= 3 prime to p, and
    each class-group character of that order up to Galois conjugacy
    (chi ~ chi^p), one specification of weight p is emitted, with the
    Legendre character of the field for p odd and the trivial one for
    p = 2.  With completely_split, only characters trivial on a prime
    above a split p are kept.  Real quadratic fields are not handled.
    """
    base = quad_disc if quad_disc else N
    d = base if base % 4 == 1 else -base
    if d > 0:
        raise ValueError(
            "positive discriminant %d: real quadratic fields are not "
            "supported" % d)
    if d % 4 != 1:
        raise ValueError("discriminant %d is not 1 mod 4" % d)
    group = class_group(d)
    level = -d
    if list_of_primes:
        primes = sorted(set(int(p) for p in list_of_primes))
        if not all(_is_prime(p) for p in primes):
            raise ValueError("list_of_primes must contain primes")
    else:
        primes = [p for p in range(2, bound + 1) if _is_prime(p)]
    # odd_only never filters here: with d < 0 every induced
    # representation is odd.
    specs = []
    for p in primes:
        if level % p == 0:
            continue
        seen = set()
        chis = []
        for exps in product(*[range(o) for o in group.generator_orders]):
            if exps in seen:
                continue
            try:
                chi = ClassGroupCharacter(group, exps, p)
            except ValueError:
                continue
            if chi.order < 3 or chi.order % 2 == 0:
                continue
            # Frobenius orbit of the character
            orbit = []
            cur = exps
            while cur not in orbit:
                orbit.append(cur)
                cur = tuple((p * c) % o for c, o in
                            zip(cur, group.generator_orders))
            seen.update(orbit)
            chis.append((chi.order, min(orbit)))
        chis.sort()
        if not all_conjugacy_classes:
            first = {}
            for n, exps in chis:
                first.setdefault(n, (n, exps))
            chis = sorted(first.values())
        for n, exps in chis:
            chi = ClassGroupCharacter(group, exps, p)
            if completely_split:
                if _kronecker(d, p) != 1:
                    continue
                if chi.exponent_of(prime_class(d, p).form) != 0:
                    continue
            if p == 2:
                eps = trivial_character(level, make_field(2, 1))
            else:
                eps = legendre_character(level, make_field(p, 1))
            spec = ModularFormSpec(
                character=eps,
                weight=p,
                image_name="D_{%d}" % n,
                payload={"kind": "dihedral", "disc": d, "order": n,
                         "exponents": exps, "character": chi},
            )
            spec.coefficient_function = \
                lambda l, s=spec: dihedral_coefficient(s, l)
            specs.append(spec)
    return specs


def _is_prime(n):
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# icosahedral forms from quintics

@dataclass
class Quintic:
    """Integer quintic, coefficients lowest-degree first; optional level."""

    coeffs: tuple
    level: int = 0

    def __post_init__(self):
        self.coeffs = tuple(int(c) for c in self.coeffs)
        if len(self.coeffs) != 6 or self.coeffs[5] == 0:
            raise ValueError("polynomial must have degree exactly 5")


def _sympoly(q: Quintic):
    x = Symbol("x")
    return _SymPoly(list(reversed(q.coeffs)), x)


@lru_cache(maxsize=None)
def _quintic_field_data(coeffs):
    """Discriminants and multiplication table of the quintic field.

    Returns (disc_T, disc_K, S) for the monic model T of the quintic:
    the polynomial discriminant, the field discriminant, and the
    structure-constant tensor of the maximal order, b_i b_j =
    sum_k S[i,j,k] b_k with b_0 = 1.

    The maximal order comes from Zassenhaus's Round 2 (Cohen,
    Algorithm 6.1.8) run on sympy's submodule machinery.  We drive the
    loop ourselves instead of calling sympy's round_two because that
    function reduces every Hermite form modulo the polynomial
    discriminant, which stops being a multiple of the lattice
    determinant once enlargements at several index primes accumulate
    in the denominator, silently corrupting the basis.
    """
    T = _SymPoly(list(reversed(coeffs)), Symbol("x"))
    if not T.is_irreducible:
        raise ValueError("quintic must be irreducible over the rationals")
    T, _ = T.make_monic_over_integers_by_scaling_roots()
    n = T.degree()
    D = T.discriminant()
    _, F = extract_fundamental_discriminant(D)
    Ztheta = PowerBasis(T)
    H = Ztheta.whole_submodule()
    while F:
        p, e = F.popitem()
        U_bar, m = _apply_Dedekind_criterion(T, p)
        if m == 0:
            continue
        U = Ztheta.element_from_poly(_SymPoly(U_bar, domain=ZZ))
        H = H.add(U // p * H)
        if e <= m:
            continue
        q = p
        while q < n:
            q *= p
        H1, _ = _second_enlargement(H, p, q)
        while H1 != H:
            H = H1
            H1, _ = _second_enlargement(H, p, q)
    dT = int(D)
    dK = int((D * H.matrix.det() ** 2) // H.denom ** (2 * n))
    W = H.matrix.to_Matrix()
    den = int(H.denom)
    idx2 = dT // dK
    assert idx2 * dK == dT and isqrt(idx2) ** 2 == idx2
    assert [int(W[i, 0]) for i in range(n)] == [den] + [0] * (n - 1)
    # columns of W are the basis elements in power-basis coordinates
    cols = [_SymPoly([int(W[n - 1 - i, j]) for i in range(n)], T.gen)
            for j in range(n)]
    Winv = W.inv()
    S = np.zeros((n, n, n), dtype=object)
    for i in range(n):
        for j in range(i + 1):
            r = (cols[i] * cols[j]) % T
            coords = _SymMatrix(
                [int(r.coeff_monomial(T.gen ** k)) for k in range(n)])
            c = Winv * coords
            for k in range(n):
                num, rem = divmod(c[k], den)
                if rem != 0:
                    raise ArithmeticError("maximal order is not closed")
                S[i, j, k] = S[j, i, k] = int(num)
    return dT, dK, S


_A5_PATTERNS = {(5,): 5, (3, 1, 1): 3, (2, 2, 1): 2, (1, 1, 1, 1, 1): 1}


def _frobenius_cycle_type(S, l):
    """Residue degrees above an unramified prime l, from x -> x^l.

    Frobenius acts linearly on the maximal order mod l; the dimension
    of its fixed space counts the primes above l, and the fixed space
    of its square separates the two A_5 cycle types with three primes.
    Returns None when the answer is not an A_5 cycle type.
    """
    n = S.shape[0]
    Sl = (S % l).astype(np.int64)
    fld = make_field(l, 1)

    def mul(u, v):
        return np.einsum("i,j,ijk->k", u, v, Sl) % l

    def frob(u):
        acc = np.zeros(n, dtype=np.int64)
        acc[0] = 1
        base, e = u, l
        while e:
            if e & 1:
                acc = mul(acc, base)
            base = mul(base, base)
            e >>= 1
        return acc

    phi = np.array([frob(row) for row in np.eye(n, dtype=np.int64)])
    ident = np.eye(n, dtype=np.int64)
    r1 = kernel(Mat(fld, (phi - ident) % l)).dim
    if r1 == 1:
        return (5,)
    if r1 == 5:
        return (1, 1, 1, 1, 1)
    if r1 == 3:
        r2 = kernel(Mat(fld, (phi @ phi - ident) % l)).dim
        if r2 == 3:
            return (3, 1, 1)
        if r2 == 5:
            return (2, 2, 1)
    return None


def _frobenius_order(q, l):
    """Order (1, 2, 3 or 5) of Frobenius at an unramified prime l."""
    if not _is_prime(l):
        raise ValueError("%d is not prime" % l)
    dT, dK, S = _quintic_field_data(q.coeffs)
    if dK % l == 0:
        raise ValueError("prime %d is ramified in the quintic field" % l)
    if dT % l:
        fl = _monic_model(q.coeffs).set_modulus(l).factor_list()
        pattern = tuple(sorted((g.degree() for g, _ in fl[1]), reverse=True))
    else:
        pattern = _frobenius_cycle_type(S, l)
    if pattern not in _A5_PATTERNS:
        raise ValueError(
            "splitting pattern %s at %d is impossible for Galois group A_5"
            % (pattern, l))
    return _A5_PATTERNS[pattern]


def a5_trace(q, l) -> Poly:
    """Trace polynomial at Frobenius for an unramified prime l.

    The cycle type of Frobenius in A_5 determines the trace: order 5
    gives the irreducible x^2+x+1, order 3 gives x+1, orders 1 and 2
    give x.  Away from the index the cycle type is the degree pattern
    of the quintic mod l; at index primes it is computed from the
    Frobenius action on the maximal order mod l.
    """
    q = q if isinstance(q, Quintic) else Quintic(tuple(q))
    order = _frobenius_order(q, l)
    gf2 = make_field(2, 1)
    if order == 5:
        return Poly.from_ints(gf2, [1, 1, 1])
    if order == 3:
        return Poly.from_ints(gf2, [1, 1])
    return Poly.from_ints(gf2, [0, 1])


@lru_cache(maxsize=None)
def _monic_model(coeffs):
    T = _SymPoly(list(reversed(coeffs)), Symbol("x"))
    return T.make_monic_over_integers_by_scaling_roots()[0]


def _ramified_cases(coeffs):
    """Per ramified prime: (p, conductor exponent, twisting order).

    Tame inertia of order 5 at p = 1 mod 5, or of order 3 at p = 1
    mod 3, extends to a global character of the same order whose twist
    lowers the conductor exponent from 2 to 1; those primes carry
    twisting order 5 or 3.  Order-5 inertia at p = -1 mod 5 and
    order-3 inertia at p = -1 mod 3 cannot be twisted away (exponent
    stays 2), and unipotent inertia contributes exponent 1 untwisted.
    Wild ramification, or an index prime that is also ramified, has no
    tame conductor formula and raises.
    """
    dT, dK, S = _quintic_field_data(coeffs)
    idx2 = dT // dK
    cases = []
    for p, v in sorted(factorint(abs(dK)).items()):
        if p == 2:
            raise ValueError(
                "ramification at 2 has no tame conductor formula in "
                "characteristic 2; supply the level explicitly")
        if idx2 % p == 0:
            raise ValueError(
                "prime %d divides both the field discriminant and the "
                "index of the quintic order; supply the level explicitly"
                % p)
        fl = _monic_model(coeffs).set_modulus(p).factor_list()
        pairs = [(int(m), g.degree()) for g, m in fl[1]]
        if any(e % p == 0 for e, _ in pairs):
            raise ValueError(
                "wild ramification at %d; supply the level explicitly" % p)
        assert v == sum((e - 1) * f for e, f in pairs)
        es = [e for e, _ in pairs]
        if 5 in es:
            cases.append((p, 2, 0) if p % 5 == 4 else (p, 1, 5))
        elif 3 in es:
            cases.append((p, 2, 0) if p % 3 == 2 else (p, 1, 3))
        else:
            cases.append((p, 1, 0))
    return cases


def predicted_level(q) -> int:
    """Conductor of the (suitably twisted) mod-2 representation.

    Each prime p ramified in the quintic field contributes p, except
    that inertia of order 5 with p = -1 mod 5, or of order 3 with
    p = -1 mod 3, cannot be twisted away and contributes p^2.  Wild
    ramification, or an index prime that is also ramified, has no
    tame conductor formula; those cases require an explicit level.
    """
    q = q if isinstance(q, Quintic) else Quintic(tuple(q))
    level = 1
    for p, e, _ in _ramified_cases(q.coeffs):
        level *= p ** e
    return level


def _twisted_trace_poly(q, twists, l):
    """Minimal polynomial of the twisted trace at Frobenius, or raise.

    twists lists (p, m) pairs: the conductor-lowering character is a
    product of characters of order m ramified at p, each pinned down
    only up to a power, and the quintic cannot tell the two classes of
    5-cycles apart either.  Every consistent choice of trace value is
    enumerated as a root of unity; the minimal polynomial is returned
    when all choices agree on it and the coefficient is otherwise left
    undefined (ValueError), matching the partial-map contract.
    """
    order = _frobenius_order(q, l)
    gf2 = make_field(2, 1)
    if order in (1, 2):
        return Poly.from_ints(gf2, [0, 1])
    live = [m for p, m in twists if pow(l, (p - 1) // m, p) != 1]
    if not live:
        return Poly.from_ints(gf2, [1, 1, 1] if order == 5 else [1, 1])
    M = 3 if order == 5 else 1
    for m in live:
        M = M * m // gcd(M, m)
    fld = make_field(2, n_order(2, M))
    zeta = _primitive_element(fld) ** ((fld.order - 1) // M)
    parts = [range(M // m, M, M // m) for m in live]
    if order == 5:
        parts.append((M // 3, 2 * M // 3))
    polys = {min_poly_element(zeta ** (sum(combo) % M))
             for combo in product(*parts)}
    if len(polys) > 1:
        raise ValueError(
            "twisted trace at %d is not determined by the quintic" % l)
    return polys.pop()


def a5_form(q) -> ModularFormSpec:
    """Icosahedral eigenform in characteristic 2 of smallest level.

    The quintic must be irreducible; its Galois group is assumed (not
    verified) to be A_5.  Weight 2 at the predicted level.  When a
    ramified prime admits a conductor-lowering twist (order-5 inertia
    at p = 1 mod 5, order-3 at p = 1 mod 3), the smallest level
    belongs to the twisted representation: the coefficient function
    scales each trace by the twisting character (traces whose minimal
    polynomial the quintic does not determine are left undefined), and
    the determinant of the twisted representation is the square of the
    twisting character, so the spec carries that nebentypus, with
    values in the smallest field containing the needed roots of unity.
    Without twisted primes the character is trivial over GF(2) and the
    coefficients reduce to a5_trace.
    """
    q = q if isinstance(q, Quintic) else Quintic(tuple(q))
    if not _sympoly(q).is_irreducible:
        raise ValueError("quintic must be irreducible over the rationals")
    if q.level:
        level = q.level
        try:
            cases = _ramified_cases(q.coeffs)
        except ValueError:
            cases = []  # conductor analysis failed; keep plain traces
    else:
        cases = _ramified_cases(q.coeffs)
        level = 1
        for p, e, _ in cases:
            level *= p ** e
    twists = tuple((p, m) for p, _, m in cases if m)
    if twists:
        M0 = 1
        for _, m in twists:
            M0 = M0 * m // gcd(M0, m)
        fld = make_field(2, n_order(2, M0))
        zeta = _primitive_element(fld) ** ((fld.order - 1) // M0)
        values = []
        for g in unit_group(level).generators:
            m = next((mm for p, mm in twists if g % p != 1), 0)
            values.append(zeta ** (2 * M0 // m) if m else fld.one())
        character = DirichletCharacter(level, fld, values)
    else:
        character = trivial_character(level, make_field(2, 1))
    spec = ModularFormSpec(
        character=character,
        weight=2,
        image_name="A_5",
        defining_polynomial=q.coeffs,
        payload={"kind": "a5", "poly": q.coeffs, "level": level},
    )
    spec.coefficient_function = lambda l, qq=q, tw=twists: (
        _twisted_trace_poly(qq, tw, l))
    return spec
