"""Finite fields GF(p^k) and univariate polynomial arithmetic over them.

Fields are represented as GF(p)[x]/(m(x)) with m the lexicographically
least monic irreducible of degree k (coefficient vectors scanned in
base-p counting order), so every descriptor is canonical.  Polynomial
factorization is Cantor-Zassenhaus (squarefree / distinct-degree /
equal-degree) with a seedable generator, cf. Lidl & Niederreiter,
"Finite Fields", ch. 4.
"""

from __future__ import annotations

import random
from functools import lru_cache

from sympy import isprime

# Default seed for the equal-degree splitting; fixed so that repeated
# runs of the whole pipeline produce identical output.
_DEFAULT_SEED = 1729

_DEGREE_CAP = 64


# ---------------------------------------------------------------------------
# raw GF(p)[x] helpers on int lists (low degree first, no trailing zeros)

def _ptrim(a):
    n = len(a)
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        a = _ptrim(a)
        if len(a) - 1 < dm:
            break
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _ptrim(a)
    return a


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e > 0:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pirreducible(f, p):
    """Irreducibility over GF(p) via x^(p^d) fixed-point tests."""
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) must equal x mod f
    r = x
    for _ in range(k):
        r = _ppowmod(r, p, f, p)
    if _ptrim([(ri - xi) % p for ri, xi in
               zip(r + [0] * 2, x + [0] * len(r))]) != []:
        return False
    # for each prime divisor d of k, gcd(x^(p^(k/d)) - x, f) must be 1
    for d in _prime_divisors(k):
        r = x
        for _ in range(k // d):
            r = _ppowmod(r, p, f, p)
        diff = [0] * max(len(r), 2)
        for i, c in enumerate(r):
            diff[i] = c
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(diff, f, p)
        if len(g) != 1:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _least_irreducible(p, k):
    """Lexicographically least monic irreducible of degree k over GF(p).

    Lower-coefficient vectors (c_0, ..., c_{k-1}) are scanned in base-p
    counting order, i.e. candidate m enumerates c_0 + c_1*p + ...
    """
    if k == 1:
        return (0, 1)
    for m in range(p ** k):
        coeffs = []
        t = m
        for _ in range(k):
            coeffs.append(t % p)
            t //= p
        f = coeffs + [1]
        if _pirreducible(f, p):
            return tuple(f)
    raise RuntimeError("no irreducible found")  # unreachable


# ---------------------------------------------------------------------------

class FF:
    """Descriptor of a finite field GF(p^k), immutable."""

    __slots__ = ("p", "k", "modulus")

    def __init__(self, p, k, modulus):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("field descriptors are immutable")

    @property
    def order(self):
        return self.p ** self.k

    @property
    def char(self):
        return self.p

    def zero(self):
        return FieldElement(self, (0,) * self.k)

    def one(self):
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def element(self, value):
        """Coerce an integer (scalar, mod p), digit sequence, or element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients")
        return FieldElement(self, coeffs + (0,) * (self.k - len(coeffs)))

    def __call__(self, value):
        return self.element(value)

    def from_int(self, n):
        """Element whose coefficient vector is n written in base p."""
        if not 0 <= n < self.order:
            raise ValueError("integer out of range")
        coeffs = []
        for _ in range(self.k):
            coeffs.append(n % self.p)
            n //= self.p
        return FieldElement(self, tuple(coeffs))

    def gen(self):
        """The class of x (a root of the modulus); for k = 1 this is 0."""
        if self.k == 1:
            return self.zero()
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self):
        for n in range(self.order):
            yield self.from_int(n)

    def __eq__(self, other):
        return (isinstance(other, FF) and self.p == other.p
                and self.k == other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        if self.k == 1:
            return "GF(%d)" % self.p
        return "GF(%d^%d)" % (self.p, self.k)


@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FF:
    """The field GF(p^k) with canonical (least) modulus.

    Raises ValueError unless p is prime and 1 <= k <= 64.
    """
    if not isinstance(p, int) or not isprime(p):
        raise ValueError("p = %r is not prime" % (p,))
    if not isinstance(k, int) or not 1 <= k <= _DEGREE_CAP:
        raise ValueError("extension degree must be in 1..%d" % _DEGREE_CAP)
    return FF(p, k, _least_irreducible(p, k))


class FieldElement:
    """An element of GF(p^k), stored as a coefficient tuple (low first)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("field elements are immutable")

    def _check(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, int):
                return self.field.element(other)
            return NotImplemented
        if other.field != self.field:
            raise ValueError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple(
            (a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        prod = _pmul(list(self.coeffs), list(other.coeffs), f.p)
        if f.k > 1:
            prod = _pmod(prod, list(f.modulus), f.p)
        else:
            prod = _pmod(prod, [0, 1], f.p) if len(prod) > 1 else prod
        prod = tuple(prod) + (0,) * (f.k - len(prod))
        return FieldElement(f, prod)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if f.k == 1:
            return FieldElement(f, (pow(self.coeffs[0], f.p - 2, f.p),))
        # extended Euclid against the modulus
        a, b = list(f.modulus), _ptrim(list(self.coeffs))
        s0, s1 = [], [1]
        while b:
            q, r = _pdivmod(a, b, f.p)
            a, b = b, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, f.p), f.p)
        lead_inv = pow(a[-1], f.p - 2, f.p)
        s0 = [(c * lead_inv) % f.p for c in s0]
        s0 = _pmod(s0, list(f.modulus), f.p)
        return FieldElement(f, tuple(s0) + (0,) * (f.k - len(s0)))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def to_int(self):
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.field.p + c
        return n

    __int__ = to_int

    def in_prime_field(self):
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field.element(other)
        return (isinstance(other, FieldElement) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __repr__(self):
        return ",".join(str(c) for c in self.coeffs)


def _pdivmod(a, b, p):
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    if not b:
        raise ZeroDivisionError
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _ptrim(a)
    return _ptrim(q), a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


# ---------------------------------------------------------------------------

class Poly:
    """Polynomial over a finite field, coefficient tuple low-to-high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.element(c) for c in ints])

    @classmethod
    def x(cls, field):
        return cls.from_ints(field, [0, 1])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [field.element(c)])

    def degree(self):
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.leading().inv()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero()
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return Poly(self.field, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return Poly(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly(self.field, [])
        z = self.field.zero()
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(self.field, 1)
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree()
        inv_lead = other.leading().inv()
        z = self.field.zero()
        q = [z] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            while rem and rem[-1].is_zero():
                rem.pop()
            if len(rem) - 1 < db or not rem:
                break
            c = rem[-1] * inv_lead
            shift = len(rem) - 1 - db
            q[shift] = c
            for i, bi in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * bi
        return Poly(self.field, q), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def pow_mod(self, e, mod):
        result = Poly.constant(self.field, 1)
        base = self % mod
        while e > 0:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def derivative(self):
        f = self.field
        return Poly(f, [f.element(i) * c
                        for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x):
        acc = self.field.zero() if isinstance(x, FieldElement) else None
        if acc is None:
            raise TypeError("evaluate expects a field element")
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_substitute(self, a):
        """The polynomial f(x + a)."""
        result = Poly(self.field, [])
        xa = Poly(self.field, [a, self.field.one()])
        for c in reversed(self.coeffs):
            result = result * xa + Poly(self.field, [c])
        return result

    def key(self):
        """Deterministic sort key: (degree, coefficient integers)."""
        return (self.degree(), tuple(c.to_int() for c in self.coeffs))

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.k,
                     tuple(c.coeffs for c in self.coeffs)))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            ci = c.to_int() if c.in_prime_field() else "(%s)" % c
            if i == 0:
                parts.append(str(ci))
            elif i == 1:
                parts.append("x" if ci == 1 else "%s*x" % ci)
            else:
                parts.append("x^%d" % i if ci == 1 else "%s*x^%d" % (ci, i))
        return " + ".join(reversed(parts))


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly(a.field, [])
    return ((a * b) // a.gcd(b)).monic()


def is_irreducible(f: Poly) -> bool:
    n = f.degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    q = f.field.order
    x = Poly.x(f.field)
    r = x
    for _ in range(n):
        r = r.pow_mod(q, f)
    if not (r - x % f).is_zero():
        return False
    for d in _prime_divisors(n):
        r = x
        for _ in range(n // d):
            r = r.pow_mod(q, f)
        if f.gcd(r - x).degree() != 0:
            return False
    return True


def _pth_root_poly(f: Poly) -> Poly:
    """For f a polynomial in x^p, the unique g with g^p = f."""
    field = f.field
    p = field.p
    e = field.order // p  # a ** e is the p-th root of a in GF(p^k)
    coeffs = []
    for i in range(0, f.degree() + 1, p):
        c = f.coeffs[i] if i < len(f.coeffs) else field.zero()
        coeffs.append(c ** e)
    return Poly(field, coeffs)


def _distinct_degree(f: Poly):
    """Split squarefree monic f into [(product of degree-d factors, d)]."""
    q = f.field.order
    out = []
    x = Poly.x(f.field)
    w = x
    d = 0
    while f.degree() > 0:
        d += 1
        if 2 * d > f.degree():
            out.append((f, f.degree()))
            break
        w = w.pow_mod(q, f)
        g = f.gcd(w - x)
        if g.degree() > 0:
            out.append((g, d))
            f = f // g
            w = w % f
    return out


def _equal_degree(f: Poly, d: int, rng):
    """Cantor-Zassenhaus split of monic squarefree f, all factors degree d."""
    field = f.field
    if f.degree() == d:
        return [f]
    q = field.order
    n = f.degree()
    while True:
        a = Poly(field, [field.from_int(rng.randrange(q)) for _ in range(n)])
        if a.degree() < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree() < n:
            break
        if field.p == 2:
            # trace map a + a^2 + a^4 + ... over GF(2^(k*d))
            t = a
            acc = a
            for _ in range(field.k * d - 1):
                t = t.pow_mod(2, f)
                acc = (acc + t) % f
            g = f.gcd(acc)
        else:
            b = a.pow_mod((q ** d - 1) // 2, f)
            g = f.gcd(b - Poly.constant(field, 1))
        if 0 < g.degree() < n:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def set_default_seed(seed):
    """Reset the seed poly_factor uses when none is passed explicitly.

    Factorizations stay deterministic either way; this only moves the
    fixed starting point of the equal-degree stage.
    """
    global _DEFAULT_SEED
    _DEFAULT_SEED = int(seed)


def poly_factor(f: Poly, seed=None):
    """Factor f into monic irreducibles.

    Returns (unit, factors) with unit the leading coefficient and
    factors a list of (irreducible monic Poly, multiplicity) pairs
    sorted by (degree, coefficient vector).  The zero polynomial is
    rejected.  Runs are deterministic: the equal-degree stage draws
    from random.Random(seed), and the default seed is a fixed constant.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(_DEFAULT_SEED if seed is None else seed)
    unit = f.leading()
    work = f.monic()
    found = {}
    while work.degree() > 0:
        deriv = work.derivative()
        if deriv.is_zero():
            # a polynomial in x^p: take the p-th root and scale
            # multiplicities afterwards
            root = _pth_root_poly(work)
            _, sub = poly_factor(root, seed=seed)
            for g, m in sub:
                found[g] = found.get(g, 0) + m * work.field.p
            break
        sqfree = work // work.gcd(deriv)
        for part, d in _distinct_degree(sqfree):
            for g in _equal_degree(part, d, rng):
                m = 0
                while True:
                    quo, rem = divmod(work, g)
                    if not rem.is_zero():
                        break
                    work = quo
                    m += 1
                found[g] = found.get(g, 0) + m
    factors = sorted(found.items(), key=lambda gm: gm[0].key())
    return unit, factors


def min_poly_element(a: FieldElement) -> Poly:
    """Minimal polynomial of a over the prime subfield GF(p)."""
    field = a.field
    prime = make_field(field.p, 1)
    # Frobenius orbit of a
    orbit = [a]
    b = a ** field.p
    while b != a:
        orbit.append(b)
        b = b ** field.p
    prod = Poly(field, [field.one()])
    for c in orbit:
        prod = prod * Poly(field, [-c, field.one()])
    coeffs = []
    for c in prod.coeffs:
        if not c.in_prime_field():
            raise ArithmeticError("minimal polynomial not over GF(p)")
        coeffs.append(c.coeffs[0])
    return Poly.from_ints(prime, coeffs)


class Embedding:
    """Field homomorphism GF(p^k) -> GF(p^m) for k | m, least-root choice."""

    __slots__ = ("src", "dst", "root", "_powers")

    def __init__(self, src, dst, root):
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "root", root)
        powers = [dst.one()]
        for _ in range(src.k - 1):
            powers.append(powers[-1] * root)
        object.__setattr__(self, "_powers", powers)

    def __setattr__(self, name, value):
        raise AttributeError("embeddings are immutable")

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.field != self.src:
            raise ValueError("element not in the source field")
        acc = self.dst.zero()
        for c, w in zip(a.coeffs, self._powers):
            acc = acc + w * c
        return acc


def embed_field(src: FF, dst: FF) -> Embedding:
    """Embedding of src into dst; requires same characteristic, src.k | dst.k.

    The image of the source generator is the root of the source modulus
    in dst with the least coefficient vector (base-p counting order).
    """
    if src.p != dst.p:
        raise ValueError("different characteristics")
    if dst.k % src.k != 0:
        raise ValueError("no embedding: %r does not sit inside %r"
                         % (src, dst))
    if src.k == 1:
        return Embedding(src, dst, dst.one())
    lifted = Poly.from_ints(dst, [0])
    x = Poly.x(dst)
    for c in reversed(src.modulus):
        lifted = lifted * x + Poly.constant(dst, c)
    _, factors = poly_factor(lifted)
    roots = [(-g.coeffs[0]).to_int() for g, _ in factors if g.degree() == 1]
    if not roots:
        raise ArithmeticError("modulus has no root in the target field")
    return Embedding(src, dst, dst.from_int(min(roots)))
