"""Unit groups (Z/N)* and Dirichlet characters with finite-field values.

The unit group is decomposed through CRT into cyclic pieces: a
primitive root for every odd prime power, and the pair (-1, 5) for
powers of two of exponent at least three.  A character is stored by
its values on the resulting generators; evaluation goes through
discrete logarithms in the cyclic pieces.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np
from sympy import discrete_log, factorint, jacobi_symbol, primitive_root
from sympy.ntheory.modular import crt

from .ff import FF, FieldElement


def _kronecker(d, n):
    """Kronecker symbol (d/n) for odd d and n > 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    result = 1
    if v and d % 8 not in (1, 7):
        result = -1 if v % 2 else 1
    if n == 1:
        return result
    return result * int(jacobi_symbol(d % n, n))


class UnitGroup:
    """Structure of (Z/N)* as a product of cyclic groups."""

    def __init__(self, modulus):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus
        # per CRT factor: (prime, exponent, [(generator mod q, order)])
        self._factors = []
        gens = []
        orders = []
        for l, e in sorted(factorint(modulus).items()):
            q = l ** e
            if l == 2:
                if e == 1:
                    local = []
                elif e == 2:
                    local = [(3, 2)]
                else:
                    local = [(q - 1, 2), (5, 2 ** (e - 2))]
            else:
                local = [(int(primitive_root(q)), (l - 1) * l ** (e - 1))]
            self._factors.append((l, e, local))
            for g, order in local:
                gens.append(self._lift(g, q))
                orders.append(order)
        self.generators = tuple(gens)
        self.orders = tuple(orders)

    def _lift(self, g, q):
        """CRT lift: g at the factor q, 1 at every other factor."""
        if q == self.modulus:
            return g % q
        rest = self.modulus // q
        val, _ = crt([q, rest], [g, 1])
        return int(val)

    @property
    def order(self):
        out = 1
        for o in self.orders:
            out *= o
        return out

    def dlog(self, a):
        """Exponent tuple of a over the generators; a must be a unit."""
        a = a % self.modulus
        if gcd(a, self.modulus) != 1:
            raise ValueError("%d is not a unit mod %d" % (a, self.modulus))
        exps = []
        for l, e, local in self._factors:
            q = l ** e
            r = a % q
            if l == 2:
                if e == 1:
                    continue
                if e == 2:
                    exps.append(0 if r == 1 else 1)
                    continue
                s = 0 if r % 4 == 1 else 1
                if s:
                    r = (q - r) % q
                t = 0 if r == 1 else int(discrete_log(q, r, 5))
                exps.extend([s, t])
            else:
                g = local[0][0]
                exps.append(0 if r == 1 else int(discrete_log(q, r, g)))
        return tuple(exps)


@lru_cache(maxsize=None)
def unit_group(modulus: int) -> UnitGroup:
    return UnitGroup(modulus)


class DirichletCharacter:
    """Character of (Z/N)* with values in a finite field.

    Non-units evaluate to zero.  The character is determined by its
    values on the unit-group generators; those values are checked to
    have compatible orders at construction time.
    """

    __slots__ = ("modulus", "field", "gen_values", "_group", "_table")

    def __init__(self, modulus, field, gen_values):
        group = unit_group(modulus)
        gen_values = tuple(field.element(v) for v in gen_values)
        if len(gen_values) != len(group.generators):
            raise ValueError("expected %d generator values"
                             % len(group.generators))
        for v, order in zip(gen_values, group.orders):
            if v.is_zero() or v ** order != field.one():
                raise ValueError("value %r incompatible with generator "
                                 "order %d" % (v, order))
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "gen_values", gen_values)
        object.__setattr__(self, "_group", group)
        object.__setattr__(self, "_table", None)

    def __setattr__(self, name, value):
        raise AttributeError("characters are immutable")

    def __call__(self, n):
        return char_eval(self, n)

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter)
                and self.modulus == other.modulus
                and self.field == other.field
                and self.gen_values == other.gen_values)

    def __hash__(self):
        return hash((self.modulus, self.field, self.gen_values))

    def __mul__(self, other):
        if not isinstance(other, DirichletCharacter) \
                or other.modulus != self.modulus \
                or other.field != self.field:
            raise ValueError("characters live on different groups")
        return DirichletCharacter(
            self.modulus, self.field,
            [a * b for a, b in zip(self.gen_values, other.gen_values)])

    def __pow__(self, e):
        return DirichletCharacter(self.modulus, self.field,
                                  [v ** e for v in self.gen_values])

    def is_trivial(self):
        one = self.field.one()
        return all(v == one for v in self.gen_values)

    def order(self):
        """Multiplicative order of the character."""
        out = 1
        one = self.field.one()
        for v in self.gen_values:
            o = 1
            w = v
            while w != one:
                w = w * v
                o += 1
            out = out * o // gcd(out, o)
        return out

    def conductor(self):
        """Smallest modulus the character factors through."""
        n = self.modulus
        divisors = sorted(d for d in range(1, n + 1) if n % d == 0)
        for m in divisors:
            if all(char_eval(self, a) == self.field.one()
                   for a in range(1, n + 1)
                   if a % m == 1 % m and gcd(a, n) == 1):
                return m
        return n

    def values_array(self):
        """(N, k) integer array of coefficient vectors of chi(0..N-1)."""
        if self._table is not None:
            return self._table
        n = self.modulus
        k = self.field.k
        table = np.zeros((max(n, 1), k), dtype=np.int64)
        if self.is_trivial():
            if n == 1:
                table[0, 0] = 1
            else:
                for a in range(n):
                    if gcd(a, n) == 1:
                        table[a, 0] = 1
        else:
            # multiplicative fill: evaluate on primes, extend by the
            # smallest-prime-factor sieve
            spf = np.zeros(n, dtype=np.int64)
            for p in range(2, n):
                if spf[p] == 0:
                    spf[p::p][spf[p::p] == 0] = p
            vals = [None] * n
            one = self.field.one()
            if n > 1:
                vals[1] = one
            for a in range(2, n):
                if gcd(a, n) != 1:
                    continue
                if spf[a] == a:
                    vals[a] = char_eval(self, a)
                else:
                    vals[a] = vals[spf[a]] * vals[a // spf[a]]
            for a in range(n):
                if vals[a] is not None:
                    table[a, :] = vals[a].coeffs
        object.__setattr__(self, "_table", table)
        return table

    def __repr__(self):
        return "DirichletCharacter(mod %d, order %d, into %r)" % (
            self.modulus, self.order(), self.field)


def trivial_character(modulus: int, field: FF) -> DirichletCharacter:
    group = unit_group(modulus)
    return DirichletCharacter(modulus, field,
                              [field.one()] * len(group.generators))


def legendre_character(modulus: int, field: FF) -> DirichletCharacter:
    """The quadratic character n -> (D / n) with D = +-modulus = 1 mod 4.

    The modulus must be odd and positive and the field of odd
    characteristic (in characteristic two the two square classes
    collapse and the character would be trivial).
    """
    if modulus <= 0 or modulus % 2 == 0:
        raise ValueError("modulus must be odd and positive")
    if field.p == 2:
        raise ValueError("quadratic characters need odd characteristic")
    d = modulus if modulus % 4 == 1 else -modulus
    group = unit_group(modulus)
    one = field.one()
    values = []
    for g in group.generators:
        s = _kronecker(d, g)
        values.append(one if s == 1 else -one)
    return DirichletCharacter(modulus, field, values)


def char_eval(chi: DirichletCharacter, n: int) -> FieldElement:
    """chi(n), with non-units going to zero."""
    n = n % chi.modulus if chi.modulus > 1 else 0
    if chi.modulus > 1 and gcd(n, chi.modulus) != 1:
        return chi.field.zero()
    out = chi.field.one()
    if chi.modulus == 1:
        return out
    for v, e in zip(chi.gen_values, chi._group.dlog(n)):
        if e:
            out = out * v ** e
    return out
