"""Cutting spaces of modular symbols into certified local Hecke factors.

The driver consumes Hecke operators in a deterministic schedule (small
good primes first, with the characteristic and the primes dividing the
level inserted at configurable steps), restricts the working space to
primary components of each operator -- steered by a target eigenform's
coefficient polynomials when one is given -- and, every few steps,
spins the algebra generated by the restricted operators.  A working
piece is certified complete once

    dimension_factor * dim(algebra) = dim(piece)

holds; the factor is 2 on the full space of modular symbols and 1 on a
plus/minus quotient.  When every piece is certified the run stops and
each piece is split into local factors; if instead as many operators
have been consumed as there are primes under the Hecke bound, the run
gives up and the results are flagged as uncertified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime, nextprime, primefactors, primerange

from .forms import ModularFormSpec
from .linalg import (
    AlgebraBasis, BaseChangeTuple, Mat, base_change, kernel,
    poly_eval_matrix, primary_components, spin_algebra,
)
from .localalg import (
    AffineTuple, affine_tup, change_to_residue_field, localisations,
    _frobenius_fixed_rows,
)
from .modsym import build_space, cuspidal_subspace, hecke_operator

_KIND_ALIASES = {0: "full", 1: "plus", -1: "minus",
                 "full": "full", "plus": "plus", "minus": "minus"}


@dataclass(frozen=True)
class EngineOptions:
    """Knobs of the operator schedule and the certification loop.

    user_bound overrides the Hecke bound that limits the number of
    operators; first_test/test_interval say when the stop test runs;
    when_test_p and when_test_bad are the steps at which the
    characteristic and the primes dividing the level are inserted into
    the schedule; test_sequence is consumed before anything else.
    dimension_factor 0 resolves to 2 on the full space and 1 on a
    plus/minus quotient; setting 2 by hand on a quotient is rejected
    since the quotient has multiplicity one and could never certify.
    """

    user_bound: int = 0
    first_test: int = 3
    test_interval: int = 1
    when_test_p: int = 3
    when_test_bad: int = 4
    test_sequence: tuple = ()
    dimension_factor: int = 0
    ms_space: object = "full"
    cuspidal: bool = True
    degree_bound: int = 0
    operator_list: tuple = ()
    over_residue_field: bool = True
    try_minimal: bool = True
    force_local: bool = False

    def resolved(self):
        """(space kind, dimension factor) after validation."""
        if self.ms_space not in _KIND_ALIASES:
            raise ValueError("ms_space must be full, plus or minus (0, 1, -1)")
        kind = _KIND_ALIASES[self.ms_space]
        factor = self.dimension_factor
        if factor not in (0, 1, 2):
            raise ValueError("dimension_factor must be 1 or 2")
        if factor == 0:
            factor = 2 if kind == "full" else 1
        elif factor == 2 and kind != "full":
            raise ValueError("a plus/minus quotient has multiplicity one; "
                             "pass dimension_factor=1")
        for name in ("first_test", "test_interval", "when_test_p",
                     "when_test_bad"):
            if getattr(self, name) < 1:
                raise ValueError("%s must be at least 1" % name)
        if self.user_bound < 0 or self.degree_bound < 0:
            raise ValueError("bounds cannot be negative")
        for l in self.test_sequence:
            if not isprime(l):
                raise ValueError("test_sequence entries must be prime")
        return kind, factor


@dataclass
class AlgebraData:
    """Structural numbers of one local Hecke factor.

    residue_degree and algebra_field_degree are absolute (over the
    prime field); dimension is taken over the residue field, so that
    summing (residue_degree / base_field_degree) * dimension over all
    factors recovers the dimension of the full algebra over its base
    field.  relations is the affine presentation of the factor over
    its residue field.
    """

    level: int
    weight: int
    characteristic: int
    base_field_degree: int
    character_order: int
    character_conductor: int
    character_generator_values: tuple
    algebra_field_degree: int
    residue_degree: int
    dimension: int
    gorenstein_defect: int
    embedding_dimension: int
    nilpotency_order: int
    relations: AffineTuple
    number_gen_used: int
    sturm_prime_count: int
    image_name: str
    defining_polynomial: object
    stop_certified: bool
    torsion_warning: bool


def sturm_bound(target, weight):
    """Hecke bound (k N / 12) prod_{q | N} (1 + 1/q) and the primes below.

    target is a level or a Dirichlet character (whose modulus is then
    used).  Hecke operators at the returned primes generate the full
    Hecke algebra; the list is inclusive of the bound itself.
    """
    level = getattr(target, "modulus", target)
    if not isinstance(level, int) or level < 1:
        raise ValueError("level must be a positive integer")
    if weight < 2:
        raise ValueError("weight must be at least 2")
    bound = Fraction(weight * level, 12)
    for q in primefactors(level):
        bound *= Fraction(q + 1, q)
    top = bound.numerator // bound.denominator
    return float(bound), list(primerange(2, top + 1))


def check_torsion_hypotheses(level, weight, p):
    """Whether the level/characteristic pair avoids torsion trouble.

    True when p >= 5, or p = 2 and the level is divisible by 4 or by a
    prime that is 3 mod 4, or p = 3 and the level is divisible by 9 or
    by a prime that is 2 mod 3.  The conditions do not involve the
    weight; it is accepted so that callers can pass the run parameters
    through unchanged.
    """
    if p >= 5:
        return True
    if p == 2:
        return level % 4 == 0 or any(q % 4 == 3 for q in primefactors(level))
    if p == 3:
        return level % 9 == 0 or any(q % 3 == 2 for q in primefactors(level))
    return False


# ---------------------------------------------------------------------------
# the operator schedule

def _schedule(level, p, opts, budget):
    """Yield the primes to use, in order, at most budget of them."""
    seq = list(opts.test_sequence)
    bad = [q for q in primefactors(level)]
    used = set()
    cursor = 1

    def next_good():
        nonlocal cursor
        while True:
            cursor = int(nextprime(cursor))
            if level % cursor != 0 and cursor not in used:
                return cursor

    for t in range(1, budget + 1):
        while seq and seq[0] in used:
            seq.pop(0)
        while bad and bad[0] in used:
            bad.pop(0)
        if seq:
            l = seq.pop(0)
        elif t == opts.when_test_p and p not in used and level % p != 0:
            l = p
        elif t >= opts.when_test_bad and bad:
            l = bad.pop(0)
        else:
            l = next_good()
        used.add(l)
        yield l


# ---------------------------------------------------------------------------
# primary restriction helpers

def _stable_kernel(t, f):
    """Base change onto ker f(t)^infinity, or None when it is zero."""
    k = poly_eval_matrix(f, t)
    power = k
    bc = kernel(power)
    if bc.dim == 0:
        return None
    while bc.dim < t.nrows:
        power = power @ power
        nxt = kernel(power)
        if nxt.dim == bc.dim:
            break
        bc = nxt
    return bc


class _Branch:
    __slots__ = ("bc", "ops", "algebra")

    def __init__(self, bc, ops):
        self.bc = bc
        self.ops = ops          # prime -> operator in branch coordinates
        self.algebra = None     # spun algebra cache

    def spin(self):
        if self.algebra is None:
            self.algebra = spin_algebra(list(self.ops.values()))
        return self.algebra


def _sample_commute(a, b):
    """Spot-check commutation of two operators on a couple of rows."""
    for i in (0, a.nrows // 2):
        v = Mat(a.field, a.a[i:i + 1])
        w = Mat(b.field, b.a[i:i + 1])
        if v @ b != w @ a:
            raise ArithmeticError("operators fail to commute")


def _split_branch(branch, l, opmat, target_poly, degree_bound):
    """Children of a branch under the operator opmat = T_l.

    opmat is in branch coordinates.  With a target polynomial only its
    primary component survives (possibly nothing); otherwise every
    irreducible factor of the minimal polynomial opens a child, except
    factors beyond degree_bound when that is positive.
    """
    if target_poly is not None:
        pieces = []
        if degree_bound == 0 or target_poly.degree() <= degree_bound:
            sub = _stable_kernel(opmat, target_poly)
            if sub is not None:
                pieces.append(sub)
    else:
        pieces = [sub for g, sub in primary_components(opmat)
                  if degree_bound == 0 or g.degree() <= degree_bound]
    children = []
    for sub in pieces:
        if sub.dim == opmat.nrows:
            branch.ops[l] = opmat
            branch.algebra = None
            children.append(branch)
        else:
            ops = {l2: base_change(m2, sub) for l2, m2 in branch.ops.items()}
            ops[l] = base_change(opmat, sub)
            children.append(_Branch(branch.bc.compose(sub), ops))
    return children


def _is_local(branch):
    return len(_frobenius_fixed_rows(branch.spin())) <= 1


# ---------------------------------------------------------------------------
# the driver

def hecke_algebras(target, weight=None, options=None):
    """Local factors of the Hecke algebra on a space of modular symbols.

    target is either a Dirichlet character (then weight is required)
    or a ModularFormSpec, in which case the spec's coefficient
    polynomials steer the restriction: at each good prime only the
    matching primary component is kept, and the run returns empty when
    no such eigenform exists.

    Returns (data, bases, space, embeddings, operators): a list of
    AlgebraData, the parallel list of algebra bases, the ambient
    modular-symbol space, the base changes from the ambient space onto
    each factor's subspace (always over the base field), and per
    factor the restricted Hecke operators keyed by prime.  With
    over_residue_field the bases and operators are given over the
    factor's residue field (one conjugate is kept); the embeddings
    stay over the base field.
    """
    opts = options if options is not None else EngineOptions()
    kind, factor = opts.resolved()
    if isinstance(target, ModularFormSpec):
        spec = target
        character = spec.character
        weight = spec.weight
    else:
        spec = None
        character = target
        if weight is None:
            raise ValueError("weight is required without an eigenform spec")
    fld = character.field
    level = character.modulus
    p = fld.p

    bound, sturm_primes = sturm_bound(level, weight)
    budget = len(sturm_primes)
    if opts.user_bound > 0:
        budget = len(list(primerange(2, opts.user_bound + 1)))

    space = build_space(level, weight, character, fld, kind=kind)
    if opts.cuspidal:
        ambient = cuspidal_subspace(space)
    else:
        ambient = BaseChangeTuple.full(fld, space.dim)
    torsion_warn = not check_torsion_hypotheses(level, weight, p)

    def finish(branches, used, certified):
        datas, bases, bcs, opdicts = [], [], [], []
        for br in branches:
            for bc_loc, loc in localisations(list(br.ops.values())):
                f_rel = loc.residue_degree()
                rloc = change_to_residue_field(loc)
                e, n = rloc.local_invariants()
                dim = loc.dimension_over_residue()
                assert dim >= 1
                assert (n == 0) == (dim == 1)
                assert dim == 1 or e <= dim - 1
                out = rloc if opts.over_residue_field else loc
                datas.append(AlgebraData(
                    level=level,
                    weight=weight,
                    characteristic=p,
                    base_field_degree=fld.k,
                    character_order=character.order(),
                    character_conductor=character.conductor(),
                    character_generator_values=tuple(character.gen_values),
                    algebra_field_degree=out.field.k,
                    residue_degree=f_rel * fld.k,
                    dimension=dim,
                    gorenstein_defect=rloc.gorenstein_defect(),
                    embedding_dimension=e,
                    nilpotency_order=n,
                    relations=affine_tup(rloc, try_minimal=opts.try_minimal),
                    number_gen_used=len(used),
                    sturm_prime_count=len(sturm_primes),
                    image_name=spec.image_name if spec else "",
                    defining_polynomial=(spec.defining_polynomial
                                         if spec else None),
                    stop_certified=certified,
                    torsion_warning=torsion_warn))
                bases.append(out.basis)
                bcs.append(br.bc.compose(bc_loc))
                opdicts.append(dict(zip(br.ops.keys(), out.gens)))
        return datas, bases, space, bcs, opdicts

    if ambient.dim == 0 or budget == 0:
        return [], [], space, [], []

    precomputed = dict(opts.operator_list)
    branches = [_Branch(ambient, {})]
    used = []
    certified = False
    first_op = None
    for l in _schedule(level, p, opts, budget):
        t = len(used) + 1
        opmat = precomputed.get(l)
        if opmat is None:
            opmat = hecke_operator(space, l)
        elif opmat.nrows != space.dim:
            raise ValueError("pre-computed operator has the wrong size")
        if first_op is None:
            first_op = opmat
        else:
            _sample_commute(first_op, opmat)
        used.append(l)

        target_poly = None
        if spec is not None and spec.coefficient_function is not None \
                and l != p and level % l != 0:
            try:
                target_poly = spec.coefficient_function(l)
            except ValueError:
                target_poly = None
        nxt = []
        for br in branches:
            restricted = base_change(opmat, br.bc)
            nxt.extend(_split_branch(br, l, restricted, target_poly,
                                     opts.degree_bound))
        branches = nxt
        if not branches:
            return [], [], space, [], []

        if t >= opts.first_test \
                and (t - opts.first_test) % opts.test_interval == 0 \
                and not certified:
            certified = all(factor * br.spin().dim == br.bc.dim
                            for br in branches)
        if certified:
            if not opts.force_local or all(_is_local(br) for br in branches):
                break
    return finish(branches, used, certified)
