"""Deterministic constructors for the group families the toolkit works with:
cyclic and elementary abelian groups, dihedral groups, the quaternion group,
Heisenberg groups over prime fields, metacyclic families, every group of
order below 12, and finite quotients of the one-relator a^p b = b a^q groups.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

from sqcgroups.core import CayleyGroup, direct_product
from sqcgroups.presentation import (
    DEFAULT_MAX_COSETS,
    parse_presentation,
    todd_coxeter,
)

__all__ = [
    "BadParameter",
    "CatalogEntry",
    "bs_relation_quotient",
    "cyclic",
    "dihedral",
    "elementary_abelian",
    "heisenberg_mod",
    "metacyclic",
    "product_entry",
    "quaternion8",
    "small_groups_under_12",
]


class BadParameter(ValueError):
    """A family constructor received parameters outside its domain."""


@dataclass(frozen=True)
class CatalogEntry:
    """A named group with its canonical generators and family parameters."""

    name: str
    group: CayleyGroup
    canonical_generators: tuple[int, ...]
    family_params: dict

    def renamed(self, name: str) -> "CatalogEntry":
        return CatalogEntry(name, self.group, self.canonical_generators, self.family_params)


def _entry_from_elements(
    name: str,
    elements: Sequence,
    mult: Callable,
    label_fn: Callable,
    generator_elems: Sequence,
    params: dict,
) -> CatalogEntry:
    index = {el: i for i, el in enumerate(elements)}
    n = len(elements)
    table = [[index[mult(x, y)] for y in elements] for x in elements]
    labels = [label_fn(el) for el in elements]
    gens = tuple(index[g] for g in generator_elems)
    group = CayleyGroup(table, labels, gens)
    return CatalogEntry(name, group, gens, params)


def _power_label(sym: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return sym
    return f"{sym}^{k}"


def cyclic(n: int) -> CatalogEntry:
    """Cyclic group of order n, written multiplicatively with generator g."""
    if n < 1:
        raise BadParameter(f"cyclic order must be positive, got {n}")
    labels = ["e"] + [_power_label("g", k) for k in range(1, n)]
    table = [[(x + y) % n for y in range(n)] for x in range(n)]
    gens = (1,) if n > 1 else ()
    group = CayleyGroup(table, labels, gens)
    return CatalogEntry(f"C{n}", group, gens, {"n": n})


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def elementary_abelian(p: int, k: int) -> CatalogEntry:
    """Direct power (C_p)^k with the coordinate vectors as generators."""
    if not _is_prime(p):
        raise BadParameter(f"p must be prime, got {p}")
    if k < 1 or p**k > 4096:
        raise BadParameter(f"need k >= 1 and p^k <= 4096, got p^k = {p}^{k}")
    elements = list(itertools.product(range(p), repeat=k))

    def mult(x, y):
        return tuple((a + b) % p for a, b in zip(x, y))

    def label_fn(v):
        return "e" if not any(v) else "(" + ",".join(map(str, v)) + ")"

    basis = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    name = "x".join([f"C{p}"] * k)
    return _entry_from_elements(name, elements, mult, label_fn, basis, {"p": p, "k": k})


def dihedral(n: int) -> CatalogEntry:
    """Dihedral group of order 2n on the symbols a^i and a^i b, with
    a^n = b^2 = e and a b a = b."""
    if n < 1:
        raise BadParameter(f"dihedral parameter must be positive, got {n}")
    # (i, 0) is a^i, (i, 1) is a^i b; b a^j = a^-j b gives the flip rule.
    elements = [(i, r) for r in (0, 1) for i in range(n)]

    def mult(x, y):
        i, r = x
        j, s = y
        if r == 0:
            return ((i + j) % n, s)
        return ((i - j) % n, 1 - s)

    def label_fn(el):
        i, r = el
        core = _power_label("a", i) + ("b" if r else "")
        return core if core else "e"

    gens = [(1 % n, 0), (0, 1)]
    return _entry_from_elements(f"D{2 * n}", elements, mult, label_fn, gens, {"n": n})


_QUAT_MUL = {
    ("i", "i"): (-1, "1"),
    ("i", "j"): (1, "k"),
    ("i", "k"): (-1, "j"),
    ("j", "i"): (-1, "k"),
    ("j", "j"): (-1, "1"),
    ("j", "k"): (1, "i"),
    ("k", "i"): (1, "j"),
    ("k", "j"): (-1, "i"),
    ("k", "k"): (-1, "1"),
}


def quaternion8() -> CatalogEntry:
    """The eight quaternion units with i, j as generators."""
    elements = [(s, u) for u in ("1", "i", "j", "k") for s in (1, -1)]

    def mult(x, y):
        s1, u1 = x
        s2, u2 = y
        if u1 == "1":
            return (s1 * s2, u2)
        if u2 == "1":
            return (s1 * s2, u1)
        s3, u3 = _QUAT_MUL[(u1, u2)]
        return (s1 * s2 * s3, u3)

    def label_fn(el):
        s, u = el
        return u if s == 1 else f"-{u}"

    return _entry_from_elements(
        "Q8", elements, mult, label_fn, [(1, "i"), (1, "j")], {}
    )


def heisenberg_mod(p: int) -> CatalogEntry:
    """Upper unitriangular 3x3 matrices over Z_p, order p^3.  Elements are the
    triples (x, y, z) filling [[1, x, y], [0, 1, z], [0, 0, 1]]; the generators
    are the two elementary transvections (x-entry and z-entry)."""
    if p not in (2, 3, 5, 7):
        raise BadParameter(f"p must be a prime <= 7, got {p}")
    elements = list(itertools.product(range(p), repeat=3))

    def mult(u, v):
        x1, y1, z1 = u
        x2, y2, z2 = v
        return ((x1 + x2) % p, (y1 + y2 + x1 * z2) % p, (z1 + z2) % p)

    def label_fn(v):
        return "e" if not any(v) else "(" + ",".join(map(str, v)) + ")"

    gens = [(1, 0, 0), (0, 0, 1)]
    return _entry_from_elements(f"Heis({p})", elements, mult, label_fn, gens, {"p": p})


def metacyclic(n: int, m: int, j: int, max_cosets: int = DEFAULT_MAX_COSETS) -> CatalogEntry:
    """The group <a, b | a^n = b^m = e, a b = b a^j> on the symbols b^i a^k.

    The direct order-mn construction needs the coherence condition
    j^m = 1 (mod n); otherwise the relations force a collapse, so we fall back
    to coset enumeration of the same presentation and report the actual order
    with a warning.
    """
    if n < 1 or m < 1 or j < 1:
        raise BadParameter(f"need n, m, j >= 1, got ({n}, {m}, {j})")
    params = {"n": n, "m": m, "j": j}
    name = f"M({n},{m},{j})"
    if pow(j, m, n) != 1 % n:
        pres = parse_presentation(f"< a, b | a^{n} = b^{m} = 1, a b = b a^{j} >")
        realization = todd_coxeter(pres, max_cosets)
        actual = realization.group.order
        warnings.warn(
            f"metacyclic({n}, {m}, {j}) is incoherent (j^m != 1 mod n): "
            f"the presented group collapses to order {actual}, not {m * n}",
            stacklevel=2,
        )
        params = dict(params, collapsed=True, order=actual)
        return CatalogEntry(
            name, realization.group, realization.assignment, params
        )

    elements = [(i, k) for i in range(m) for k in range(n)]  # b^i a^k
    jpow = [pow(j, i, n) for i in range(m)]

    def mult(u, v):
        i1, k1 = u
        i2, k2 = v
        # a^k1 b^i2 = b^i2 a^(k1 * j^i2) from a b = b a^j
        return ((i1 + i2) % m, (k1 * jpow[i2] + k2) % n)

    def label_fn(el):
        i, k = el
        core = _power_label("b", i) + _power_label("a", k)
        return core if core else "e"

    gens = [(0, 1 % n), (1 % m, 0)]
    return _entry_from_elements(name, elements, mult, label_fn, gens, params)


def product_entry(name: str, *factors: CatalogEntry) -> CatalogEntry:
    """Direct product of catalog entries, keeping the combined generators."""
    if not factors:
        raise BadParameter("need at least one factor")
    group = factors[0].group
    for f in factors[1:]:
        group = direct_product(group, f.group)
    return CatalogEntry(
        name, group, group.generators, {"factors": [f.name for f in factors]}
    )


def small_groups_under_12() -> list[CatalogEntry]:
    """All isomorphism classes of groups of order 1 to 11 (19 classes:
    1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1 per order), each with canonical generators."""
    return [
        cyclic(1),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        elementary_abelian(2, 2),
        cyclic(5),
        cyclic(6),
        dihedral(3),
        cyclic(7),
        cyclic(8),
        product_entry("C4xC2", cyclic(4), cyclic(2)),
        elementary_abelian(2, 3),
        dihedral(4),
        quaternion8(),
        cyclic(9),
        elementary_abelian(3, 2),
        cyclic(10),
        dihedral(5),
        cyclic(11),
    ]


def bs_relation_quotient(
    p: int,
    q: int,
    extra_relations: str = "",
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> CatalogEntry:
    """Realize <a, b | a^p b = b a^q, extra...> by coset enumeration.

    Without enough extra relations the group is usually infinite, in which
    case the enumeration raises CosetLimitExceeded.
    """
    if p == 0 or q == 0:
        raise BadParameter("p and q must be nonzero")
    relations = f"a^{p} b = b a^{q}"
    extra = extra_relations.strip()
    if extra:
        relations += f", {extra}"
    pres = parse_presentation(f"< a, b | {relations} >")
    realization = todd_coxeter(pres, max_cosets)
    name = f"BS({p},{q})[{extra}]" if extra else f"BS({p},{q})"
    return CatalogEntry(
        name,
        realization.group,
        realization.assignment,
        {"p": p, "q": q, "extra": extra},
    )
