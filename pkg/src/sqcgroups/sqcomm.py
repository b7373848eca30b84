"""Square-commutativity analysis for finite groups.

A group is square commutative when (xy)^2 = (yx)^2 for every pair of
elements.  This module provides the brute-force check, the equivalent
generator criteria for two and for n >= 3 generators, the quotient by the
central involutions, coverage and normal-form decompositions, and the
auxiliary identities that square commutative groups satisfy.  Every "for all"
check here is exhaustive, never sampled, and witnesses are lexicographic
minima so reports are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from sqcgroups.core import (
    CayleyGroup,
    QuotientMap,
    SubgroupSet,
    center,
    is_abelian,
    product_set,
    quotient_group,
    subgroup_generated,
)

__all__ = [
    "AnalysisReport",
    "BiconditionalCheck",
    "ConditionalEquivalenceReport",
    "CriterionReport",
    "GeneratorListTooLong",
    "MAX_C_SET_GENERATORS",
    "NoDecomposition",
    "NormalForm2",
    "NotGenerating",
    "NotSquareCommutative",
    "RelationCheck",
    "TooFewGenerators",
    "analyze",
    "c_set",
    "central_even_powers_check",
    "conditional_equivalence_checks",
    "coverage_check",
    "fourth_power_check",
    "g_mod_center_abelian",
    "hat_group",
    "is_square_commutative",
    "n_generator_criterion",
    "noncentral_square_witness",
    "normal_form_two_gen",
    "power_shift_consequence_check",
    "reorder_defect_check",
    "sandwich_check",
    "sim_witness",
    "square_commutativity_witness",
    "squares_central",
    "two_generator_criterion",
    "z2_subgroup",
]

MAX_C_SET_GENERATORS = 16


class NotGenerating(ValueError):
    """The supplied elements do not generate the whole group."""


class TooFewGenerators(ValueError):
    """The n-generator criterion needs at least three generators."""


class GeneratorListTooLong(ValueError):
    """Guards the 2^n blowup of generator-subset products."""


class NoDecomposition(ValueError):
    """No (h_a, h_b, lambda) decomposition exists; the group was presumably
    not square commutative as the caller asserted."""


class NotSquareCommutative(ValueError):
    """Operation requires a square commutative group."""


@dataclass(frozen=True)
class RelationCheck:
    """One named relation together with its verdict and a witness on failure."""

    name: str
    holds: bool
    witness: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class CriterionReport:
    """Verdicts for a family of generator relations; overall is their conjunction."""

    relations: tuple[RelationCheck, ...]

    @property
    def overall(self) -> bool:
        return all(r.holds for r in self.relations)


@dataclass(frozen=True)
class NormalForm2:
    """Exponents with a^h_a * b^h_b * (ab)^(2*lam) equal to the decomposed element."""

    h_a: int
    h_b: int
    lam: int


@dataclass(frozen=True)
class AnalysisReport:
    """Full square-commutativity audit of one group."""

    order: int
    is_sq_comm: bool
    brute_witness: Optional[tuple[int, int]]
    center_size: int
    z2_size: int
    hat_order: int
    hat_abelian: bool
    squares_central: bool
    g_mod_z_abelian: bool
    criteria: Optional[CriterionReport]
    coverage_ok: Optional[bool]
    consistent: bool


def _require_generating(G: CayleyGroup, gens: Sequence[int]) -> None:
    if len(subgroup_generated(G, gens)) != G.order:
        raise NotGenerating(
            f"elements {[G.labels[g] for g in gens]} do not generate the group"
        )


def square_commutativity_witness(G: CayleyGroup) -> Optional[tuple[int, int]]:
    """Lexicographically least (x, y) with (xy)^2 != (yx)^2, or None."""
    T = G.mul_table
    sq = T[T, T]  # sq[x, y] = (xy)^2
    bad = np.argwhere(sq != sq.T)
    if bad.size == 0:
        return None
    return int(bad[0][0]), int(bad[0][1])


def is_square_commutative(G: CayleyGroup) -> bool:
    """Exhaustive check of (xy)^2 = (yx)^2 over all pairs."""
    return square_commutativity_witness(G) is None


def two_generator_criterion(G: CayleyGroup, a: int, b: int) -> CriterionReport:
    """Check the three relations equivalent to square commutativity for G = <a, b>:
    b^2 a = a b^2, a^2 b = b a^2, and (ab)^2 = (ba)^2."""
    a, b = G._check(a), G._check(b)
    _require_generating(G, (a, b))
    a2, b2 = G.mul(a, a), G.mul(b, b)
    ab, ba = G.mul(a, b), G.mul(b, a)
    checks = (
        ("b^2a=ab^2", G.mul(b2, a) == G.mul(a, b2)),
        ("a^2b=ba^2", G.mul(a2, b) == G.mul(b, a2)),
        ("(ab)^2=(ba)^2", G.mul(ab, ab) == G.mul(ba, ba)),
    )
    return CriterionReport(
        tuple(
            RelationCheck(name, holds, None if holds else (a, b))
            for name, holds in checks
        )
    )


def n_generator_criterion(G: CayleyGroup, gens: Sequence[int]) -> CriterionReport:
    """Check the relation family equivalent to square commutativity for a group
    generated by n >= 3 distinct elements: over all ordered pairs (x1, x2) of
    distinct generators, x1 x2^2 = x2^2 x1 and (x1 x2)^2 = (x2 x1)^2, and over
    all ordered distinct triples, x1 (x2 x3)^2 = (x2 x3)^2 x1."""
    gens = [G._check(g) for g in gens]
    if len(gens) < 3:
        raise TooFewGenerators(f"need at least 3 generators, got {len(gens)}")
    if len(set(gens)) != len(gens):
        raise ValueError("generator ids must be distinct")
    _require_generating(G, gens)

    def first_pair_failure(relation) -> Optional[tuple[int, ...]]:
        for x1, x2 in itertools.permutations(gens, 2):
            if not relation(x1, x2):
                return (x1, x2)
        return None

    def rel_square_commute(x1: int, x2: int) -> bool:
        x2sq = G.mul(x2, x2)
        return G.mul(x1, x2sq) == G.mul(x2sq, x1)

    def rel_product_squares(x1: int, x2: int) -> bool:
        u, v = G.mul(x1, x2), G.mul(x2, x1)
        return G.mul(u, u) == G.mul(v, v)

    def first_triple_failure() -> Optional[tuple[int, ...]]:
        for x1, x2, x3 in itertools.permutations(gens, 3):
            p = G.mul(x2, x3)
            psq = G.mul(p, p)
            if G.mul(x1, psq) != G.mul(psq, x1):
                return (x1, x2, x3)
        return None

    w1 = first_pair_failure(rel_square_commute)
    w2 = first_triple_failure()
    w3 = first_pair_failure(rel_product_squares)
    return CriterionReport(
        (
            RelationCheck("x1x2^2=x2^2x1", w1 is None, w1),
            RelationCheck("x1(x2x3)^2=(x2x3)^2x1", w2 is None, w2),
            RelationCheck("(x1x2)^2=(x2x1)^2", w3 is None, w3),
        )
    )


def z2_subgroup(G: CayleyGroup) -> SubgroupSet:
    """Central elements of order dividing 2 (always a normal, elementary
    abelian subgroup)."""
    Z = center(G)
    e = G.identity
    members = tuple(z for z in Z.members if G.mul(z, z) == e)
    return SubgroupSet(G, members)


def hat_group(G: CayleyGroup) -> QuotientMap:
    """Quotient of G by its subgroup of central involutions."""
    return quotient_group(G, z2_subgroup(G))


def noncentral_square_witness(G: CayleyGroup) -> Optional[tuple[int, int]]:
    """Least (x, y) with x^2 y != y x^2, or None when every square is central."""
    T = G.mul_table
    ids = np.arange(G.order, dtype=np.int32)
    sq = T[ids, ids]
    lhs = T[sq]  # lhs[x, y] = x^2 y
    rhs = T[:, sq].T  # rhs[x, y] = y x^2
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return None
    return int(bad[0][0]), int(bad[0][1])


def squares_central(G: CayleyGroup) -> bool:
    """True iff the set of squares lies in the center."""
    return noncentral_square_witness(G) is None


def c_set(G: CayleyGroup, gens: Sequence[int]) -> tuple[int, ...]:
    """Identity plus all products of generators along strictly increasing index
    subsequences (at most 2^n products before deduplication)."""
    gens = [G._check(g) for g in gens]
    if not gens:
        raise ValueError("generator list must be nonempty")
    n = len(gens)
    if n > MAX_C_SET_GENERATORS:
        raise GeneratorListTooLong(
            f"{n} generators would need 2^{n} subset products (limit {MAX_C_SET_GENERATORS})"
        )
    if len(set(gens)) != len(gens):
        raise ValueError("generator ids must be distinct")
    prod = [G.identity] * (1 << n)
    for mask in range(1, 1 << n):
        j = mask.bit_length() - 1
        prod[mask] = G.mul(prod[mask ^ (1 << j)], gens[j])
    return tuple(sorted(set(prod)))


def coverage_check(G: CayleyGroup, gens: Sequence[int]) -> bool:
    """True iff C * Z_G covers the whole group, where C is the increasing-index
    product set of the generators."""
    gens = [G._check(g) for g in gens]
    _require_generating(G, gens)
    covered = product_set(G, c_set(G, gens), center(G).members)
    return len(covered) == G.order


def normal_form_two_gen(G: CayleyGroup, a: int, b: int, x: int) -> NormalForm2:
    """Lexicographically least (h_a, h_b, lam) with a^h_a b^h_b (ab)^(2 lam) = x.

    Exponents are searched modulo the element orders (powers only depend on
    the exponent mod the order).  Raises NoDecomposition when no triple works,
    which signals that the group was not square commutative after all."""
    a, b, x = G._check(a), G._check(b), G._check(x)
    _require_generating(G, (a, b))
    ab2 = G.pow(G.mul(a, b), 2)
    pa = G.identity
    for h_a in range(G.element_order(a)):
        pab = pa
        for h_b in range(G.element_order(b)):
            if pab == x:
                return NormalForm2(h_a, h_b, 0)
            if G.mul(pab, ab2) == x:
                return NormalForm2(h_a, h_b, 1)
            pab = G.mul(pab, b)
        pa = G.mul(pa, a)
    raise NoDecomposition(
        f"{G.labels[x]} has no a^h_a b^h_b (ab)^(2 lam) decomposition; "
        "the group is not square commutative"
    )


def sim_witness(G: CayleyGroup, x: int, y: int) -> Optional[int]:
    """The central involution d with xy = yx * d, or None if (yx)^-1 (xy) is
    not a central involution.  d is unique when it exists."""
    x, y = G._check(x), G._check(y)
    d = G.mul(G.inv(G.mul(y, x)), G.mul(x, y))
    return d if d in z2_subgroup(G) else None


def _power_vectors(G: CayleyGroup, exponents: Iterable[int]) -> dict[int, np.ndarray]:
    """v -> v^k tables for each requested exponent k."""
    n = G.order
    ids = np.arange(n, dtype=np.int32)
    ks = sorted(set(int(k) for k in exponents))
    kmax = max((abs(k) for k in ks), default=0)
    pos = [np.full(n, G.identity, dtype=np.int32), ids.copy()]
    for _ in range(2, kmax + 1):
        pos.append(G.mul_table[pos[-1], ids])
    out = {}
    for k in ks:
        out[k] = pos[k] if k >= 0 else G.inv_table[pos[-k]]
    return out


def sandwich_check(
    G: CayleyGroup, m_range: Iterable[int], n_range: Iterable[int]
) -> Optional[tuple[int, int, int, int]]:
    """Verify (x y x)^m y^n = y^n (x y x)^m for all pairs and all exponents in
    the given ranges; None means verified.  Requires a square commutative group."""
    if not is_square_commutative(G):
        raise NotSquareCommutative("sandwich identity is only asserted for square commutative groups")
    ms = sorted(set(int(m) for m in m_range))
    ns = sorted(set(int(v) for v in n_range))
    T = G.mul_table
    n = G.order
    ids = np.arange(n, dtype=np.int32)
    comm = T == T.T
    pw = _power_vectors(G, set(ms) | set(ns))
    s = T[T, ids[:, None]]  # s[x, y] = (x y) x
    first: Optional[tuple[int, int, int, int]] = None
    for m in ms:
        left = pw[m][s]
        for nn in ns:
            ok = comm[left, pw[nn][None, :]]
            if ok.all():
                continue
            x, y = (int(v) for v in np.argwhere(~ok)[0])
            cand = (x, y, m, nn)
            if first is None or cand < first:
                first = cand
    return first


def fourth_power_check(G: CayleyGroup) -> Optional[tuple[int, int]]:
    """Verify (xy)^4 = x^4 y^4 for all pairs; None means verified."""
    T = G.mul_table
    n = G.order
    ids = np.arange(n, dtype=np.int32)
    sq = T[ids, ids]
    fourth = sq[sq]
    lhs = fourth[T]  # (xy)^4
    rhs = T[np.ix_(fourth, fourth)]  # x^4 y^4
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return None
    return int(bad[0][0]), int(bad[0][1])


def reorder_defect_check(
    G: CayleyGroup, gens: Sequence[int], max_len: int
) -> Optional[tuple[tuple[int, ...], int]]:
    """For every generator sequence of length <= max_len and every adjacent
    transposition, the two products must differ by a central involution.
    Returns the first failing (sequence, swap position), or None.

    Adjacent transpositions generate all permutations, so this check covers
    arbitrary reorderings without factorial blowup."""
    gens = [G._check(g) for g in gens]
    _require_generating(G, gens)
    z2 = set(z2_subgroup(G).members)

    def product(seq: Sequence[int]) -> int:
        acc = G.identity
        for s in seq:
            acc = G.mul(acc, s)
        return acc

    for m in range(2, max_len + 1):
        for seq in itertools.product(gens, repeat=m):
            base = product(seq)
            for t in range(m - 1):
                swapped = seq[:t] + (seq[t + 1], seq[t]) + seq[t + 2:]
                defect = G.mul(G.inv(base), product(swapped))
                if defect not in z2:
                    return seq, t
    return None


def g_mod_center_abelian(G: CayleyGroup) -> bool:
    """True iff the quotient by the center is abelian."""
    return is_abelian(quotient_group(G, center(G)).quotient)


def central_even_powers_check(
    G: CayleyGroup, a: int, b: int
) -> Optional[tuple[int, int]]:
    """In a group satisfying the two-generator relations, even powers of a, b
    and ab are central.  Returns the first (element, exponent) violating that,
    checking each even exponent up to the element order; None means verified."""
    a, b = G._check(a), G._check(b)
    Z = set(center(G).members)
    for base in (a, b, G.mul(a, b)):
        for p in range(2, G.element_order(base) + 1, 2):
            if G.pow(base, p) not in Z:
                return base, p
    return None


def power_shift_consequence_check(
    G: CayleyGroup, max_exp: int = 6
) -> Optional[tuple[int, int, int, int]]:
    """In a square commutative group, whenever x^p y = y x^q the element
    x^(2(p-q)) (p, q both odd) or x^(p-q) (otherwise) must be the identity.
    Checks all pairs and all 1 <= p, q <= max_exp; returns the first failing
    (x, y, p, q) or None.  Requires a square commutative group."""
    if not is_square_commutative(G):
        raise NotSquareCommutative("power-shift consequence needs a square commutative group")
    T = G.mul_table
    n = G.order
    e = G.identity
    pw = _power_vectors(G, range(1, max_exp + 1))
    powers_all = _power_vectors(G, range(0, 2 * max_exp + 1))
    first: Optional[tuple[int, int, int, int]] = None
    for p in range(1, max_exp + 1):
        xp = pw[p]
        lhs = T[xp]  # lhs[x, y] = x^p y
        for q in range(1, max_exp + 1):
            xq = pw[q]
            rhs = T[:, xq].T  # rhs[x, y] = y x^q
            relation = lhs == rhs
            t = 2 * (p - q) if (p % 2 == 1 and q % 2 == 1) else p - q
            if t >= 0:
                conclusion = powers_all[t] == e
            else:
                conclusion = G.inv_table[powers_all[-t]] == e
            bad = relation & ~conclusion[:, None]
            if bad.any():
                x, y = (int(v) for v in np.argwhere(bad)[0])
                cand = (x, y, p, q)
                if first is None or cand < first:
                    first = cand
    return first


@dataclass(frozen=True)
class BiconditionalCheck:
    """One conditional theorem instance: whether its hypothesis applied here,
    and if so whether the biconditional held."""

    name: str
    applicable: bool
    holds: Optional[bool]


@dataclass(frozen=True)
class ConditionalEquivalenceReport:
    checks: tuple[BiconditionalCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks if c.applicable)


def conditional_equivalence_checks(
    G: CayleyGroup, a: int, b: int
) -> ConditionalEquivalenceReport:
    """Evaluate three biconditionals as concrete truth values on G = <a, b>:

    1. square commutative <=> (G/Z abelian and (ab)^2 = (ba)^2), always applicable;
    2. when a^2 b = b a^2 holds: square commutative <=> G/Z abelian;
    3. when ord(a) or ord(b) is odd: square commutative <=> abelian.
    """
    a, b = G._check(a), G._check(b)
    _require_generating(G, (a, b))
    sq = is_square_commutative(G)
    gz_abelian = g_mod_center_abelian(G)
    ab, ba = G.mul(a, b), G.mul(b, a)
    squares_match = G.mul(ab, ab) == G.mul(ba, ba)
    a2, b2 = G.mul(a, a), G.mul(b, b)

    checks = [
        BiconditionalCheck(
            "sqcomm<=>(G/Z abelian and (ab)^2=(ba)^2)",
            True,
            sq == (gz_abelian and squares_match),
        )
    ]
    if G.mul(a2, b) == G.mul(b, a2):
        checks.append(
            BiconditionalCheck("a^2b=ba^2: sqcomm<=>G/Z abelian", True, sq == gz_abelian)
        )
    else:
        checks.append(BiconditionalCheck("a^2b=ba^2: sqcomm<=>G/Z abelian", False, None))
    if G.element_order(a) % 2 == 1 or G.element_order(b) % 2 == 1:
        checks.append(
            BiconditionalCheck(
                "odd generator order: sqcomm<=>abelian", True, sq == is_abelian(G)
            )
        )
    else:
        checks.append(
            BiconditionalCheck("odd generator order: sqcomm<=>abelian", False, None)
        )
    return ConditionalEquivalenceReport(tuple(checks))


def analyze(G: CayleyGroup, gens: Optional[Sequence[int]] = None) -> AnalysisReport:
    """Run the full square-commutativity audit.

    With generators supplied, also evaluates the matching generator criterion
    (two relations families for 2 generators, the triple family for >= 3) and
    the C * Z_G coverage check.
    """
    witness = square_commutativity_witness(G)
    sq = witness is None
    Z = center(G)
    z2 = z2_subgroup(G)
    hat = hat_group(G)
    hat_ab = is_abelian(hat.quotient)
    sq_central = squares_central(G)
    gz_abelian = g_mod_center_abelian(G)

    criteria: Optional[CriterionReport] = None
    coverage: Optional[bool] = None
    if gens is not None:
        gens = [G._check(g) for g in gens]
        _require_generating(G, gens)
        if len(gens) == 2:
            criteria = two_generator_criterion(G, gens[0], gens[1])
        elif len(gens) >= 3:
            criteria = n_generator_criterion(G, gens)
        coverage = coverage_check(G, gens)

    consistent = sq == hat_ab == sq_central
    if criteria is not None:
        consistent = consistent and sq == criteria.overall
    return AnalysisReport(
        order=G.order,
        is_sq_comm=sq,
        brute_witness=witness,
        center_size=len(Z),
        z2_size=len(z2),
        hat_order=hat.quotient.order,
        hat_abelian=hat_ab,
        squares_central=sq_central,
        g_mod_z_abelian=gz_abelian,
        criteria=criteria,
        coverage_ok=coverage,
        consistent=consistent,
    )
