"""Exhaustive cross-checking suites over a fixed corpus of groups.

Each suite verifies one of the library's structural facts (an equivalence,
an implication, or an identity family) on every applicable corpus group by
brute force.  The corpus spans all groups of order below 12, dihedral and
metacyclic families, Heisenberg groups, the two presented counterexample
groups, and direct products up to order 64.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from sqcgroups.catalog import (
    CatalogEntry,
    cyclic,
    dihedral,
    elementary_abelian,
    heisenberg_mod,
    metacyclic,
    product_entry,
    quaternion8,
    small_groups_under_12,
)
from sqcgroups.core import (
    CayleyGroup,
    are_isomorphic,
    center,
    is_abelian,
    is_normal,
    subgroup_generated,
)
from sqcgroups.presentation import (
    CosetLimitExceeded,
    parse_presentation,
    todd_coxeter,
)
from sqcgroups.sqcomm import (
    central_even_powers_check,
    conditional_equivalence_checks,
    coverage_check,
    fourth_power_check,
    g_mod_center_abelian,
    hat_group,
    is_square_commutative,
    n_generator_criterion,
    normal_form_two_gen,
    power_shift_consequence_check,
    reorder_defect_check,
    sandwich_check,
    squares_central,
    two_generator_criterion,
    z2_subgroup,
)

__all__ = [
    "PRESENTED_12",
    "PRESENTED_16",
    "SuiteResult",
    "build_corpus",
    "metacyclic_grid",
    "presented_counterexamples",
    "run_all_suites",
    "sim_all_pairs_present",
]

PRESENTED_12 = "< a, b | a^4 = b^3 = 1, b a = a b^2, b a^2 = a^2 b >"
PRESENTED_16 = "< a, b | a^4 = b^2 = 1, b a = (a b)^3, b a^2 = a^2 b >"


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def presented_counterexamples() -> list[CatalogEntry]:
    """The two presented groups on which exactly one two-generator relation fails."""
    out = []
    for name, text in (("presented-12", PRESENTED_12), ("presented-16", PRESENTED_16)):
        r = todd_coxeter(parse_presentation(text))
        out.append(CatalogEntry(name, r.group, r.assignment, {"presentation": text}))
    return out


def metacyclic_grid(
    max_n: int = 12, max_m: int = 4
) -> list[CatalogEntry]:
    """All coherent metacyclic groups M(n, m, j) with 2 <= n <= max_n,
    2 <= m <= max_m, 2 <= j < n and j^m = 1 (mod n)."""
    grid = []
    for n in range(2, max_n + 1):
        for m in range(2, max_m + 1):
            for j in range(2, n):
                if pow(j, m, n) == 1 % n:
                    grid.append(metacyclic(n, m, j))
    return grid


def build_corpus() -> list[CatalogEntry]:
    """The deterministic verification corpus (orders <= 64)."""
    entries: list[CatalogEntry] = []
    entries.extend(small_groups_under_12())
    entries.extend(dihedral(n).renamed(f"dihedral:{n}") for n in range(1, 9))
    entries.append(heisenberg_mod(2))
    entries.append(heisenberg_mod(3))
    entries.extend(presented_counterexamples())
    entries.extend(e.renamed(f"grid:{e.name}") for e in metacyclic_grid())

    c2, c3, c4 = cyclic(2), cyclic(3), cyclic(4)
    d6, d8, q8 = dihedral(3), dihedral(4), quaternion8()
    h2, h3 = heisenberg_mod(2), heisenberg_mod(3)
    entries.extend(
        [
            product_entry("D8xC2", d8, c2),
            product_entry("Q8xC2", q8, c2),
            product_entry("D6xC2", d6, c2),
            product_entry("D8xC3", d8, c3),
            product_entry("Q8xC3", q8, c3),
            product_entry("D6xC3", d6, c3),
            product_entry("D8xC2xC2", d8, c2, c2),
            product_entry("D6xC2xC2", d6, c2, c2),
            product_entry("D8xD8", d8, d8),
            product_entry("C4xC4", c4, c4),
            product_entry("C4xC2xC2", c4, c2, c2),
            product_entry("Heis(2)xC2", h2, c2),
            product_entry("Heis(3)xC2", h3, c2),
            elementary_abelian(2, 4),
            elementary_abelian(2, 5),
            elementary_abelian(3, 3),
            elementary_abelian(5, 2),
        ]
    )
    names = [e.name for e in entries]
    assert len(set(names)) == len(names), "corpus names must be unique"
    return entries


def sim_all_pairs_present(G: CayleyGroup) -> bool:
    """True iff for every pair (x, y) the element (yx)^-1 (xy) is a central
    involution, i.e. xy and yx always differ by a central involution."""
    T, inv = G.mul_table, G.inv_table
    d = T[inv[T.T], T]
    mask = np.zeros(G.order, dtype=bool)
    mask[list(z2_subgroup(G).members)] = True
    return bool(mask[d].all())


def _check_all(
    corpus: Iterable[CatalogEntry],
    name: str,
    predicate: Callable[[CatalogEntry], Optional[str]],
) -> SuiteResult:
    count = 0
    for entry in corpus:
        failure = predicate(entry)
        if failure is not None:
            return SuiteResult(name, False, f"{entry.name}: {failure}")
        count += 1
    return SuiteResult(name, True, f"{count} groups checked")


def suite_census(corpus) -> SuiteResult:
    census = small_groups_under_12()
    bad = sorted(e.name for e in census if not is_square_commutative(e.group))
    expected = ["D10", "D6"]
    ok = len(census) == 19 and sorted(bad) == sorted(expected)
    detail = f"{len(census)} classes, non-square-commutative: {sorted(bad)}"
    return SuiteResult("small-group census (< 12)", ok, detail)


def suite_hat_equivalence(corpus) -> SuiteResult:
    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        sq = is_square_commutative(G)
        hat_ab = is_abelian(hat_group(G).quotient)
        if sq != hat_ab:
            return f"square commutative {sq} but hat quotient abelian {hat_ab}"
        if sq and not sim_all_pairs_present(G):
            return "xy and yx fail to differ by a central involution somewhere"
        return None

    return _check_all(corpus, "hat-quotient equivalence (+ xy~yx)", check)


def suite_squares_central(corpus) -> SuiteResult:
    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        sq = is_square_commutative(G)
        sc = squares_central(G)
        if sq != sc:
            return f"square commutative {sq} but squares central {sc}"
        return None

    return _check_all(corpus, "squares-in-center equivalence", check)


def suite_two_generator(corpus) -> SuiteResult:
    two_gen = [e for e in corpus if len(e.canonical_generators) == 2]

    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        rep = two_generator_criterion(G, *entry.canonical_generators)
        if rep.overall != is_square_commutative(G):
            return "criterion verdict disagrees with the brute-force scan"
        return None

    result = _check_all(two_gen, "two-generator criterion equivalence", check)
    if not result.passed:
        return result
    # The presented counterexamples must each fail exactly one stated relation.
    for name, failing in (("presented-12", "b^2a=ab^2"), ("presented-16", "(ab)^2=(ba)^2")):
        entry = next(e for e in corpus if e.name == name)
        rep = two_generator_criterion(entry.group, *entry.canonical_generators)
        failed = [r.name for r in rep.relations if not r.holds]
        if failed != [failing]:
            return SuiteResult(result.name, False, f"{name}: failed relations {failed}")
    return SuiteResult(
        result.name, True, f"{len(two_gen)} groups checked, counterexample patterns match"
    )


def suite_n_generator(corpus) -> SuiteResult:
    many_gen = [e for e in corpus if len(e.canonical_generators) >= 3]
    if len(many_gen) < 10:
        return SuiteResult(
            "n-generator criterion equivalence",
            False,
            f"corpus has only {len(many_gen)} groups with >= 3 generators",
        )

    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        rep = n_generator_criterion(G, entry.canonical_generators)
        if rep.overall != is_square_commutative(G):
            return "criterion verdict disagrees with the brute-force scan"
        return None

    return _check_all(many_gen, "n-generator criterion equivalence", check)


def suite_center_quotient_implication(corpus) -> SuiteResult:
    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        if is_square_commutative(G) and not g_mod_center_abelian(G):
            return "square commutative but G/Z is not abelian"
        return None

    result = _check_all(corpus, "center-quotient implication", check)
    if not result.passed:
        return result
    h3 = heisenberg_mod(3).group
    converse_fails = g_mod_center_abelian(h3) and not is_square_commutative(h3)
    if not converse_fails:
        return SuiteResult(result.name, False, "Heis(3) fails to refute the converse")
    return SuiteResult(result.name, True, result.detail + "; converse refuted by Heis(3)")


def suite_coverage_and_normal_form(corpus) -> SuiteResult:
    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        gens = entry.canonical_generators
        if not gens or not is_square_commutative(G):
            return None
        if not coverage_check(G, gens):
            return "C * Z_G does not cover the group"
        if len(gens) == 2:
            a, b = gens
            for x in G.elements():
                nf = normal_form_two_gen(G, a, b, x)
                rebuilt = G.mul(
                    G.mul(G.pow(a, nf.h_a), G.pow(b, nf.h_b)),
                    G.pow(G.mul(a, b), 2 * nf.lam),
                )
                if rebuilt != x:
                    return f"normal form of {G.labels[x]} does not re-evaluate"
        return None

    return _check_all(corpus, "coverage and two-generator normal form", check)


def suite_proof_identities(corpus) -> SuiteResult:
    exponents = range(-3, 4)

    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        if not is_square_commutative(G):
            return None
        if sandwich_check(G, exponents, exponents) is not None:
            return "(xyx)^m y^n = y^n (xyx)^m fails"
        if fourth_power_check(G) is not None:
            return "(xy)^4 = x^4 y^4 fails"
        gens = entry.canonical_generators
        if gens and reorder_defect_check(G, gens, 4) is not None:
            return "a reordered generator product is off by a non-involution"
        return None

    return _check_all(corpus, "proof identities on square commutative groups", check)


def suite_central_even_powers(corpus) -> SuiteResult:
    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        if len(entry.canonical_generators) != 2:
            return None
        a, b = entry.canonical_generators
        if not two_generator_criterion(G, a, b).overall:
            return None
        bad = central_even_powers_check(G, a, b)
        if bad is not None:
            return f"{G.labels[bad[0]]}^{bad[1]} is not central"
        return None

    return _check_all(corpus, "central even generator powers", check)


def suite_central_involutions(corpus) -> SuiteResult:
    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        z2 = z2_subgroup(G)
        if not is_normal(G, z2):
            return "central involution subgroup is not normal"
        if any(G.mul(d, d) != G.identity for d in z2):
            return "a member does not square to the identity"
        return None

    return _check_all(corpus, "central involutions form a normal subgroup", check)


def suite_dihedral_family(corpus) -> SuiteResult:
    for n in range(1, 9):
        entry = dihedral(n)
        G = entry.group
        a, b = entry.canonical_generators
        if G.order != 2 * n:
            return SuiteResult("dihedral family", False, f"D{2*n} has order {G.order}")
        relations_hold = (
            G.pow(a, n) == G.identity
            and G.pow(b, 2) == G.identity
            and G.mul(G.mul(a, b), a) == b
        )
        if not relations_hold:
            return SuiteResult("dihedral family", False, f"D{2*n} defining relations fail")
        if is_square_commutative(G) != (n in (1, 2, 4)):
            return SuiteResult(
                "dihedral family", False, f"D{2*n} square-commutativity verdict wrong"
            )
    return SuiteResult(
        "dihedral family", True, "orders, relations, and verdicts match for n = 1..8"
    )


def _metacyclic_prediction(n: int, j: int) -> bool:
    if j % n == 1 % n:
        return True
    if j % 2 == 1:
        return 2 * (j - 1) % n == 0
    return (j - 1) % n == 0


def suite_metacyclic_family(corpus) -> SuiteResult:
    checked = 0
    for entry in metacyclic_grid():
        G = entry.group
        n, m, j = (entry.family_params[k] for k in ("n", "m", "j"))
        a, b = entry.canonical_generators
        if G.order != n * m:
            return SuiteResult("metacyclic family", False, f"{entry.name} order {G.order}")
        if G.mul(a, b) != G.mul(b, G.pow(a, j)):
            return SuiteResult("metacyclic family", False, f"{entry.name} relation fails")
        predicted = _metacyclic_prediction(n, j)
        if is_square_commutative(G) != predicted:
            return SuiteResult(
                "metacyclic family",
                False,
                f"{entry.name}: predicted square commutative {predicted}",
            )
        if m == 2 and predicted != (j % 2 == 1 and n == 2 * (j - 1)):
            return SuiteResult(
                "metacyclic family", False, f"{entry.name}: closed form disagrees"
            )
        checked += 1
    return SuiteResult("metacyclic family", True, f"{checked} coherent grid entries verified")


def suite_heisenberg(corpus) -> SuiteResult:
    h3 = heisenberg_mod(3).group
    if not (g_mod_center_abelian(h3) and not is_square_commutative(h3)):
        return SuiteResult("Heisenberg groups", False, "Heis(3) pattern wrong")
    if len(center(h3)) != 3:
        return SuiteResult("Heisenberg groups", False, "Heis(3) center size wrong")
    h2 = heisenberg_mod(2).group
    if not is_square_commutative(h2):
        return SuiteResult("Heisenberg groups", False, "Heis(2) not square commutative")
    if are_isomorphic(h2, dihedral(4).group) is None:
        return SuiteResult("Heisenberg groups", False, "Heis(2) is not isomorphic to D8")
    return SuiteResult("Heisenberg groups", True, "mod 2 and mod 3 behave as classified")


def suite_power_shift(corpus) -> SuiteResult:
    def check(entry: CatalogEntry) -> Optional[str]:
        G = entry.group
        if not is_square_commutative(G):
            return None
        bad = power_shift_consequence_check(G, max_exp=6)
        if bad is not None:
            x, y, p, q = bad
            return f"x^p y = y x^q with (x,y,p,q)=({G.labels[x]},{G.labels[y]},{p},{q})"
        return None

    return _check_all(corpus, "power-shift consequence", check)


def suite_conditional_equivalences(corpus) -> SuiteResult:
    count = 0
    for entry in corpus:
        G = entry.group
        gens = entry.canonical_generators
        if len(gens) > 2:
            continue
        if len(gens) == 2:
            a, b = gens
        elif len(gens) == 1:
            a, b = gens[0], G.identity
        else:
            a = b = G.identity
            if G.order > 1:
                continue
        report = conditional_equivalence_checks(G, a, b)
        if not report.all_hold:
            broken = [c.name for c in report.checks if c.applicable and not c.holds]
            return SuiteResult(
                "conditional equivalences", False, f"{entry.name}: {broken}"
            )
        count += 1
    return SuiteResult("conditional equivalences", True, f"{count} groups checked")


def suite_enumeration_goldens(corpus) -> SuiteResult:
    name = "presented enumeration goldens"
    r12 = todd_coxeter(parse_presentation(PRESENTED_12))
    if r12.group.order != 12:
        return SuiteResult(name, False, f"order-12 presentation gave {r12.group.order}")
    r16 = todd_coxeter(parse_presentation(PRESENTED_16))
    if r16.group.order != 16:
        return SuiteResult(name, False, f"order-16 presentation gave {r16.group.order}")
    for n in range(1, 11):
        pres = parse_presentation(f"< a, b | a^{n} = b^2 = 1, a b a = b >")
        got = todd_coxeter(pres).group.order
        if got != 2 * n:
            return SuiteResult(name, False, f"dihedral presentation n={n} gave {got}")
    try:
        todd_coxeter(parse_presentation("< a, b | a^2 b = b a^3 >"), max_cosets=1000)
    except CosetLimitExceeded:
        pass
    else:
        return SuiteResult(name, False, "a^2 b = b a^3 enumeration unexpectedly finished")
    return SuiteResult(name, True, "orders 12 and 16, dihedral n <= 10, and the infinite case")


_SUITES: tuple[Callable, ...] = (
    suite_census,
    suite_hat_equivalence,
    suite_squares_central,
    suite_two_generator,
    suite_n_generator,
    suite_center_quotient_implication,
    suite_coverage_and_normal_form,
    suite_proof_identities,
    suite_central_even_powers,
    suite_central_involutions,
    suite_dihedral_family,
    suite_metacyclic_family,
    suite_heisenberg,
    suite_power_shift,
    suite_conditional_equivalences,
    suite_enumeration_goldens,
)


def run_all_suites(corpus: Optional[list[CatalogEntry]] = None) -> list[SuiteResult]:
    """Run every suite over the corpus (built fresh when not supplied)."""
    if corpus is None:
        corpus = build_corpus()
    for entry in corpus:
        gens = entry.canonical_generators
        if gens and len(subgroup_generated(entry.group, gens)) != entry.group.order:
            return [
                SuiteResult(
                    "corpus sanity", False, f"{entry.name}: canonical generators do not generate"
                )
            ]
    return [suite(corpus) for suite in _SUITES]
