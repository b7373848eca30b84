"""Finite groups as dense multiplication tables over integer element ids.

Element ids are plain ints in ``[0, order)``.  Construction checks every
group axiom exhaustively (including a full associativity scan), so any
``CayleyGroup`` in circulation is a verified group.  Groups are immutable
after construction and safe to share.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "BadLabels",
    "CayleyGroup",
    "GeneratorsDoNotGenerate",
    "ISOMORPHISM_ORDER_LIMIT",
    "Isomorphism",
    "NotAGroup",
    "NotASubgroup",
    "NotNormal",
    "OrderLimitExceeded",
    "QuotientMap",
    "SubgroupSet",
    "are_isomorphic",
    "build_group",
    "center",
    "direct_product",
    "generating_sequence",
    "is_abelian",
    "is_normal",
    "noncommuting_pair",
    "order_profile",
    "product_set",
    "quotient_group",
    "squares_set",
    "subgroup_from_members",
    "subgroup_generated",
]

ISOMORPHISM_ORDER_LIMIT = 512


class NotAGroup(ValueError):
    """A multiplication table violates a group axiom.

    ``axiom`` is one of ``"closure"``, ``"identity"``, ``"inverse"``,
    ``"associativity"``; ``witness`` holds the offending element ids
    (lexicographically least).
    """

    def __init__(self, axiom: str, witness: tuple[int, ...], message: str) -> None:
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class BadLabels(ValueError):
    """Label list is mismatched, duplicated, empty, or contains whitespace."""


class GeneratorsDoNotGenerate(ValueError):
    """Declared generators fail to generate the whole group."""


class NotASubgroup(ValueError):
    """A member set is not closed under the parent group operations."""


class NotNormal(ValueError):
    """A subgroup is not normal; carries a conjugation witness ``(h, y)``."""

    def __init__(self, witness: tuple[int, int], message: str) -> None:
        super().__init__(message)
        self.witness = witness


class OrderLimitExceeded(ValueError):
    """Group order exceeds the documented limit for this operation."""


class CayleyGroup:
    """Finite group given by an ``order x order`` multiplication table.

    The identity and inverse table are derived during validation.  The
    conjugation convention is ``conj(x, y) = y^-1 * x * y`` throughout.
    """

    __slots__ = (
        "order",
        "identity",
        "labels",
        "generators",
        "_table",
        "_inv",
        "_label_index",
        "_element_orders",
        "_center_members",
    )

    def __init__(
        self,
        mul_table: Sequence[Sequence[int]] | np.ndarray,
        labels: Sequence[str],
        generators: Sequence[int] = (),
    ) -> None:
        table = np.asarray(mul_table)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError(f"multiplication table must be square, got shape {table.shape}")
        if table.shape[0] == 0:
            raise ValueError("a group has at least one element")
        if not np.issubdtype(table.dtype, np.integer):
            raise ValueError(f"table entries must be integers, got dtype {table.dtype}")
        table = table.astype(np.int32, copy=True)
        n = int(table.shape[0])

        label_list = [str(s) for s in labels]
        if len(label_list) != n:
            raise BadLabels(f"expected {n} labels, got {len(label_list)}")
        if len(set(label_list)) != n:
            dup = next(s for s in label_list if label_list.count(s) > 1)
            raise BadLabels(f"duplicate label {dup!r}")
        for s in label_list:
            if not s or any(ch.isspace() for ch in s):
                raise BadLabels(f"labels must be nonempty and whitespace-free, got {s!r}")

        self.order = n
        self._table = table
        self.labels = tuple(label_list)
        self._validate_axioms()
        self._table.setflags(write=False)
        self._inv.setflags(write=False)
        self._label_index = {s: i for i, s in enumerate(self.labels)}
        self._element_orders: Optional[tuple[int, ...]] = None
        self._center_members: Optional[tuple[int, ...]] = None

        gens = tuple(self._check(g) for g in generators)
        self.generators = gens
        if gens:
            reached = _closure(self._table, self._inv, gens)
            if len(reached) != n:
                raise GeneratorsDoNotGenerate(
                    f"generators {[self.labels[g] for g in gens]} generate only "
                    f"{len(reached)} of {n} elements"
                )

    def _validate_axioms(self) -> None:
        table = self._table
        n = self.order
        if table.min() < 0 or table.max() >= n:
            bad = np.argwhere((table < 0) | (table >= n))[0]
            raise NotAGroup(
                "closure",
                (int(bad[0]), int(bad[1])),
                f"entry at ({bad[0]}, {bad[1]}) is outside [0, {n})",
            )
        ar = np.arange(n, dtype=np.int32)
        ident_mask = (table == ar).all(axis=1) & (table.T == ar).all(axis=1)
        ident_rows = np.flatnonzero(ident_mask)
        if ident_rows.size == 0:
            raise NotAGroup("identity", (), "no two-sided identity element")
        e = int(ident_rows[0])
        self.identity = e

        inv = np.empty(n, dtype=np.int32)
        for x in range(n):
            ys = np.flatnonzero(table[x] == e)
            if ys.size == 0 or table[int(ys[0]), x] != e:
                raise NotAGroup("inverse", (x,), f"element {x} has no two-sided inverse")
            inv[x] = ys[0]
        self._inv = inv

        # Full associativity scan, row-blocked to bound memory.
        block = max(1, 8_000_000 // (n * n))
        for x0 in range(0, n, block):
            x1 = min(n, x0 + block)
            lhs = table[table[x0:x1]]  # lhs[i, y, z] = (x y) z
            rhs = table[x0:x1][:, table]  # rhs[i, y, z] = x (y z)
            if not np.array_equal(lhs, rhs):
                i, y, z = np.argwhere(lhs != rhs)[0]
                raise NotAGroup(
                    "associativity",
                    (int(x0 + i), int(y), int(z)),
                    f"(x y) z != x (y z) for (x, y, z) = ({x0 + i}, {y}, {z})",
                )

    # -- element arithmetic ------------------------------------------------

    def _check(self, x: int) -> int:
        x = int(x)
        if not 0 <= x < self.order:
            raise IndexError(f"element id {x} out of range [0, {self.order})")
        return x

    def elements(self) -> range:
        return range(self.order)

    def mul(self, x: int, y: int) -> int:
        return int(self._table[self._check(x), self._check(y)])

    def inv(self, x: int) -> int:
        return int(self._inv[self._check(x)])

    def pow(self, x: int, k: int) -> int:
        """k-th power by square and multiply; negative k goes through the inverse."""
        x = self._check(x)
        k = int(k)
        if k < 0:
            x, k = int(self._inv[x]), -k
        acc = self.identity
        base = x
        while k:
            if k & 1:
                acc = int(self._table[acc, base])
            base = int(self._table[base, base])
            k >>= 1
        return acc

    def element_order(self, x: int) -> int:
        x = self._check(x)
        acc = x
        k = 1
        while acc != self.identity:
            acc = int(self._table[acc, x])
            k += 1
        return k

    def conj(self, x: int, y: int) -> int:
        """Conjugate of x by y, fixed as y^-1 * x * y."""
        x, y = self._check(x), self._check(y)
        return int(self._table[self._table[self._inv[y], x], y])

    def element_orders(self) -> tuple[int, ...]:
        if self._element_orders is None:
            self._element_orders = tuple(self.element_order(x) for x in range(self.order))
        return self._element_orders

    def label(self, x: int) -> str:
        return self.labels[self._check(x)]

    def element_by_label(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"no element labelled {label!r}") from None

    @property
    def mul_table(self) -> np.ndarray:
        """Read-only view of the multiplication table (row x, column y, entry x*y)."""
        return self._table

    @property
    def inv_table(self) -> np.ndarray:
        return self._inv

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"CayleyGroup(order={self.order})"


def build_group(
    mul_table: Sequence[Sequence[int]] | np.ndarray,
    labels: Sequence[str],
    generators: Sequence[int] = (),
) -> CayleyGroup:
    """Validate a multiplication table and wrap it as a CayleyGroup.

    Raises NotAGroup (with the failed axiom and a lexicographically least
    witness), BadLabels, or GeneratorsDoNotGenerate.
    """
    return CayleyGroup(mul_table, labels, generators)


def _closure(table: np.ndarray, inv: np.ndarray, seed: Iterable[int]) -> set[int]:
    """All elements reachable from the identity by multiplying with seed elements."""
    seed = list(seed)
    e = _identity_of(table)
    members = {e}
    frontier = [e]
    step = [int(inv[s]) for s in seed] + [int(s) for s in seed]
    while frontier:
        x = frontier.pop()
        for s in step:
            y = int(table[x, s])
            if y not in members:
                members.add(y)
                frontier.append(y)
    return members


def _identity_of(table: np.ndarray) -> int:
    ar = np.arange(table.shape[0], dtype=table.dtype)
    return int(np.flatnonzero((table == ar).all(axis=1))[0])


@dataclass(frozen=True)
class SubgroupSet:
    """A subgroup of ``parent`` given by its strictly sorted member ids."""

    parent: CayleyGroup
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(int(m) for m in self.members)
        object.__setattr__(self, "members", members)
        G = self.parent
        if any(not 0 <= m < G.order for m in members):
            raise NotASubgroup("member id out of range")
        if any(a >= b for a, b in zip(members, members[1:])):
            raise NotASubgroup("members must be strictly sorted")
        if G.identity not in members:
            raise NotASubgroup("subgroup must contain the identity")
        mask = np.zeros(G.order, dtype=bool)
        mask[list(members)] = True
        idx = np.array(members, dtype=np.int32)
        if not mask[G.mul_table[np.ix_(idx, idx)]].all():
            raise NotASubgroup("member set is not closed under multiplication")
        if not mask[G.inv_table[idx]].all():
            raise NotASubgroup("member set is not closed under inversion")

    def __contains__(self, x: int) -> bool:
        return int(x) in set(self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m


def subgroup_from_members(G: CayleyGroup, members: Iterable[int]) -> SubgroupSet:
    return SubgroupSet(G, tuple(sorted({int(m) for m in members})))


def subgroup_generated(G: CayleyGroup, seed: Iterable[int]) -> SubgroupSet:
    """Smallest subgroup containing ``seed`` (breadth-first closure)."""
    seed = [G._check(s) for s in seed]
    members = _closure(G.mul_table, G.inv_table, seed)
    return SubgroupSet(G, tuple(sorted(members)))


def center(G: CayleyGroup) -> SubgroupSet:
    """Elements commuting with everything in G."""
    if G._center_members is None:
        T = G.mul_table
        mask = (T == T.T).all(axis=1)
        G._center_members = tuple(int(z) for z in np.flatnonzero(mask))
    return SubgroupSet(G, G._center_members)


def noncommuting_pair(G: CayleyGroup) -> Optional[tuple[int, int]]:
    """Lexicographically least (x, y) with xy != yx, or None if abelian."""
    T = G.mul_table
    bad = np.argwhere(T != T.T)
    if bad.size == 0:
        return None
    return int(bad[0][0]), int(bad[0][1])


def is_abelian(G: CayleyGroup) -> bool:
    return noncommuting_pair(G) is None


def _normality_witness(G: CayleyGroup, H: SubgroupSet) -> Optional[tuple[int, int]]:
    """Least (h, y) with y^-1 h y outside H, or None when H is normal."""
    T, inv = G.mul_table, G.inv_table
    mask = H.mask()
    ar = np.arange(G.order, dtype=np.int32)
    for h in H.members:
        conj = T[T[inv, h], ar]  # conj[y] = (y^-1 h) y
        bad = np.flatnonzero(~mask[conj])
        if bad.size:
            return int(h), int(bad[0])
    return None


def is_normal(G: CayleyGroup, H: SubgroupSet) -> bool:
    if H.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    return _normality_witness(G, H) is None


@dataclass(frozen=True)
class QuotientMap:
    """Quotient of ``source`` by the normal subgroup ``kernel``.

    ``projection[x]`` is the image of x; it is a surjective homomorphism whose
    fibre over the quotient identity is exactly the kernel.
    """

    source: CayleyGroup
    kernel: SubgroupSet
    quotient: CayleyGroup
    projection: tuple[int, ...]


def quotient_group(G: CayleyGroup, N: SubgroupSet) -> QuotientMap:
    """Form G/N.  Cosets are labelled by their least-index representative plus a "·N" suffix."""
    if N.parent is not G:
        raise NotASubgroup("kernel belongs to a different group")
    witness = _normality_witness(G, N)
    if witness is not None:
        h, y = witness
        raise NotNormal(
            (h, y),
            f"subgroup is not normal: conj({G.labels[h]}, {G.labels[y]}) lies outside it",
        )
    T = G.mul_table
    n = G.order
    nmembers = np.array(N.members, dtype=np.int32)
    proj = np.full(n, -1, dtype=np.int32)
    reps: list[int] = []
    for x in range(n):
        if proj[x] >= 0:
            continue
        coset = T[x, nmembers]
        proj[coset] = len(reps)
        reps.append(x)
    k = len(reps)
    rep_arr = np.array(reps, dtype=np.int32)
    qtable = proj[T[np.ix_(rep_arr, rep_arr)]]
    qlabels = [f"{G.labels[r]}·N" for r in reps]
    qgens = tuple(int(proj[g]) for g in G.generators)
    quotient = CayleyGroup(qtable, qlabels, qgens)
    return QuotientMap(G, N, quotient, tuple(int(p) for p in proj))


def direct_product(G: CayleyGroup, H: CayleyGroup) -> CayleyGroup:
    """Componentwise product with labels "(g,h)" and the combined generator images."""
    m = H.order
    TG, TH = G.mul_table, H.mul_table
    table = (TG[:, None, :, None].astype(np.int64) * m + TH[None, :, None, :]).reshape(
        G.order * m, G.order * m
    )
    labels = [f"({lg},{lh})" for lg in G.labels for lh in H.labels]
    gens: list[int] = []
    if (G.generators or G.order == 1) and (H.generators or H.order == 1):
        gens = [g * m + H.identity for g in G.generators]
        gens += [G.identity * m + h for h in H.generators]
    return CayleyGroup(table, labels, gens)


def product_set(G: CayleyGroup, xs: Iterable[int], ys: Iterable[int]) -> tuple[int, ...]:
    """Exact setwise product {x*y}, deduplicated and sorted."""
    xa = np.array([G._check(x) for x in xs], dtype=np.int32)
    ya = np.array([G._check(y) for y in ys], dtype=np.int32)
    if xa.size == 0 or ya.size == 0:
        return ()
    return tuple(int(v) for v in np.unique(G.mul_table[np.ix_(xa, ya)]))


def squares_set(G: CayleyGroup) -> tuple[int, ...]:
    """The set of squares {x^2 : x in G}, deduplicated and sorted."""
    diag = G.mul_table[np.arange(G.order), np.arange(G.order)]
    return tuple(int(v) for v in np.unique(diag))


def order_profile(G: CayleyGroup) -> Counter:
    """Multiset of element orders (an isomorphism invariant)."""
    return Counter(G.element_orders())


def generating_sequence(G: CayleyGroup) -> list[int]:
    """Declared generators if present, else a greedy least-id generating sequence."""
    if G.generators:
        return list(G.generators)
    gens: list[int] = []
    reached = {G.identity}
    while len(reached) < G.order:
        x = min(set(range(G.order)) - reached)
        gens.append(x)
        reached = _closure(G.mul_table, G.inv_table, gens)
    return gens


@dataclass(frozen=True)
class Isomorphism:
    """A verified isomorphism: ``mapping[x]`` is the image of x in ``target``."""

    source: CayleyGroup
    target: CayleyGroup
    mapping: tuple[int, ...]

    def is_valid(self) -> bool:
        """Re-check bijectivity and the homomorphism law on every pair."""
        G, H, m = self.source, self.target, self.mapping
        if len(m) != G.order or G.order != H.order:
            return False
        marr = np.array(m, dtype=np.int32)
        if len(set(m)) != G.order:
            return False
        return bool(np.array_equal(marr[G.mul_table], H.mul_table[np.ix_(marr, marr)]))


def are_isomorphic(G: CayleyGroup, H: CayleyGroup) -> Optional[Isomorphism]:
    """Backtracking isomorphism search pruned by element-order profiles.

    Maps a generating sequence of G onto candidate images in H of equal
    element order, extending each partial assignment to a homomorphism by
    closure.  Orders above ISOMORPHISM_ORDER_LIMIT are rejected.
    """
    if G.order > ISOMORPHISM_ORDER_LIMIT or H.order > ISOMORPHISM_ORDER_LIMIT:
        raise OrderLimitExceeded(
            f"isomorphism search limited to order {ISOMORPHISM_ORDER_LIMIT}"
        )
    if G.order != H.order or order_profile(G) != order_profile(H):
        return None
    gens = generating_sequence(G)
    orders_G = G.element_orders()
    orders_H = H.element_orders()
    TG, TH = G.mul_table, H.mul_table

    def close(images: list[tuple[int, int]]) -> Optional[dict[int, int]]:
        phi = {G.identity: H.identity}
        used = {H.identity}
        frontier = [G.identity]
        while frontier:
            x = frontier.pop()
            for g, h in images:
                y = int(TG[x, g])
                w = int(TH[phi[x], h])
                if y in phi:
                    if phi[y] != w:
                        return None
                elif w in used:
                    return None
                else:
                    phi[y] = w
                    used.add(w)
                    frontier.append(y)
        return phi

    def backtrack(k: int, images: list[tuple[int, int]]) -> Optional[tuple[int, ...]]:
        if k == len(gens):
            phi = close(images)
            if phi is None or len(phi) != G.order:
                return None
            marr = np.array([phi[x] for x in range(G.order)], dtype=np.int32)
            if np.array_equal(marr[TG], TH[np.ix_(marr, marr)]):
                return tuple(int(v) for v in marr)
            return None
        g = gens[k]
        want = orders_G[g]
        for img in range(H.order):
            if orders_H[img] != want:
                continue
            trial = images + [(g, img)]
            if close(trial) is None:
                continue
            found = backtrack(k + 1, trial)
            if found is not None:
                return found
        return None

    mapping = backtrack(0, [])
    if mapping is None:
        return None
    return Isomorphism(G, H, mapping)
