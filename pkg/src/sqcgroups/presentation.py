"""Group presentations: parsing, free-word algebra, and coset enumeration.

Grammar (ASCII emitted; Unicode angle brackets also accepted on input):

    presentation := "<" genlist "|" [relation ("," relation)*] ">"
    genlist      := name ("," name)*
    relation     := word ("=" word)+ | word        (a bare word is a relator)
    word         := "1" | "e" | term+
    term         := atom ["^" integer]             (integer may be negative)
    atom         := name | "(" term+ ")"
    name         := [A-Za-z][A-Za-z0-9]*

"e" and "1" denote the identity and are reserved; they cannot be declared as
generators.  A relation chain ``u = v = ... = w`` produces one relator per
non-final member, each formed against the final member, so the common style
``a^4 = b^2 = 1`` yields the relators ``a^4`` and ``b^2``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from sqcgroups.core import CayleyGroup

__all__ = [
    "CosetLimitExceeded",
    "DEFAULT_MAX_COSETS",
    "EmptyGeneratorList",
    "Presentation",
    "PresentationSyntaxError",
    "Realization",
    "RESERVED_NAMES",
    "UnknownGenerator",
    "Word",
    "evaluate_word",
    "format_presentation",
    "format_word",
    "parse_presentation",
    "reduce_word",
    "todd_coxeter",
    "word",
    "word_concat",
    "word_inverse",
    "word_pow",
]

DEFAULT_MAX_COSETS = 100_000
RESERVED_NAMES = ("e", "1")
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")


class PresentationSyntaxError(ValueError):
    """Malformed presentation text; carries the character position."""

    def __init__(self, position: int, message: str) -> None:
        super().__init__(f"at position {position}: {message}")
        self.position = position


class UnknownGenerator(ValueError):
    """A word references a name that is not a declared generator."""

    def __init__(self, name: str, position: int) -> None:
        super().__init__(f"at position {position}: unknown generator {name!r}")
        self.name = name
        self.position = position


class EmptyGeneratorList(ValueError):
    """A presentation or enumeration needs at least one generator."""


class CosetLimitExceeded(RuntimeError):
    """Enumeration defined more cosets than allowed; the group may be infinite."""


@dataclass(frozen=True)
class Word:
    """Free-group word as (generator index, nonzero exponent) syllables.

    The canonical form is freely reduced: adjacent syllables have distinct
    generator indices and all exponents are nonzero; the empty word is the
    identity.  Use :func:`word` or the word operations to stay canonical.
    """

    syllables: tuple[tuple[int, int], ...] = ()

    def is_reduced(self) -> bool:
        if any(k == 0 for _, k in self.syllables):
            return False
        return all(g1 != g2 for (g1, _), (g2, _) in zip(self.syllables, self.syllables[1:]))

    def is_identity(self) -> bool:
        return not self.syllables

    def length(self) -> int:
        return sum(abs(k) for _, k in self.syllables)


def _reduced(syllables) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for g, k in syllables:
        g, k = int(g), int(k)
        if k == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += k
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, k])
    return tuple((g, k) for g, k in out)


def word(syllables) -> Word:
    """Build a freely reduced word from raw (generator, exponent) pairs."""
    return Word(_reduced(syllables))


def reduce_word(w: Word) -> Word:
    """Freely reduce: merge adjacent equal-generator syllables, drop zero exponents."""
    return Word(_reduced(w.syllables))


def word_inverse(w: Word) -> Word:
    return Word(tuple((g, -k) for g, k in reversed(w.syllables)))


def word_concat(u: Word, v: Word) -> Word:
    return Word(_reduced(u.syllables + v.syllables))


def word_pow(w: Word, k: int) -> Word:
    """k-fold concatenation; negative k raises the inverse."""
    k = int(k)
    if k < 0:
        w, k = word_inverse(w), -k
    acc = Word()
    for _ in range(k):
        acc = word_concat(acc, w)
    return acc


@dataclass(frozen=True)
class Presentation:
    """Generator names plus relators (words declared equal to the identity)."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(str(g) for g in self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if not self.generators:
            raise EmptyGeneratorList("a presentation declares at least one generator")
        seen = set()
        for name in self.generators:
            if not _NAME_RE.match(name):
                raise PresentationSyntaxError(0, f"invalid generator name {name!r}")
            if name in RESERVED_NAMES:
                raise PresentationSyntaxError(
                    0, f"{name!r} denotes the identity and cannot be a generator"
                )
            if name in seen:
                raise PresentationSyntaxError(0, f"duplicate generator {name!r}")
            seen.add(name)
        ngens = len(self.generators)
        for rel in self.relators:
            if not rel.is_reduced():
                raise ValueError(f"relator {rel} is not freely reduced")
            for g, _ in rel.syllables:
                if not 0 <= g < ngens:
                    raise UnknownGenerator(f"#{g}", 0)


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<int>-?\d+)"
    r"|(?P<punct><|>|\||,|=|\^|\(|\)|⟨|⟩)"
)

_PUNCT_CANON = {"⟨": "<", "⟩": ">"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PresentationSyntaxError(pos, f"unexpected character {text[pos]!r}")
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        value = m.group()
        if m.lastgroup == "punct":
            value = _PUNCT_CANON.get(value, value)
        tokens.append((m.lastgroup, value, m.start()))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> tuple[str, str, int]:
        kind, text, pos = self.take()
        if text != value:
            shown = text if kind != "end" else "end of input"
            raise PresentationSyntaxError(pos, f"expected {value!r}, found {shown!r}")
        return kind, text, pos

    def parse(self) -> Presentation:
        self.expect("<")
        names = self.parse_genlist()
        self.expect("|")
        relators: list[Word] = []
        if self.peek()[1] != ">":
            relators.extend(self.parse_relation(names))
            while self.peek()[1] == ",":
                self.take()
                relators.extend(self.parse_relation(names))
        self.expect(">")
        kind, text, pos = self.peek()
        if kind != "end":
            raise PresentationSyntaxError(pos, f"trailing input {text!r}")
        return Presentation(tuple(names), tuple(relators))

    def parse_genlist(self) -> list[str]:
        names: list[str] = []
        kind, text, pos = self.peek()
        if text == "|":
            raise EmptyGeneratorList(f"at position {pos}: generator list is empty")
        while True:
            kind, text, pos = self.take()
            if kind != "name":
                raise PresentationSyntaxError(pos, f"expected generator name, found {text!r}")
            if text in RESERVED_NAMES:
                raise PresentationSyntaxError(
                    pos, f"{text!r} denotes the identity and cannot be a generator"
                )
            if text in names:
                raise PresentationSyntaxError(pos, f"duplicate generator {text!r}")
            names.append(text)
            if self.peek()[1] != ",":
                return names
            self.take()

    def parse_relation(self, names: list[str]) -> list[Word]:
        members = [self.parse_word(names)]
        while self.peek()[1] == "=":
            self.take()
            members.append(self.parse_word(names))
        if len(members) == 1:
            return [members[0]]
        last_inv = word_inverse(members[-1])
        return [word_concat(m, last_inv) for m in members[:-1]]

    def parse_word(self, names: list[str]) -> Word:
        kind, text, pos = self.peek()
        if kind == "int":
            if text != "1":
                raise PresentationSyntaxError(pos, f"expected a word or '1', found {text!r}")
            self.take()
            return self._require_word_end(Word())
        if kind == "name" and text == "e":
            self.take()
            return self._require_word_end(Word())
        acc: Optional[Word] = None
        while True:
            kind, text, pos = self.peek()
            if kind != "name" and text != "(":
                break
            term = self.parse_term(names)
            acc = term if acc is None else word_concat(acc, term)
        if acc is None:
            kind, text, pos = self.peek()
            shown = text if kind != "end" else "end of input"
            raise PresentationSyntaxError(pos, f"expected a word, found {shown!r}")
        return acc

    def parse_term(self, names: list[str]) -> Word:
        kind, text, pos = self.take()
        if text == "(":
            base: Optional[Word] = None
            while self.peek()[1] != ")":
                k2, t2, p2 = self.peek()
                if k2 != "name" and t2 != "(":
                    shown = t2 if k2 != "end" else "end of input"
                    raise PresentationSyntaxError(p2, f"expected ')' or a term, found {shown!r}")
                inner = self.parse_term(names)
                base = inner if base is None else word_concat(base, inner)
            self.take()
            if base is None:
                raise PresentationSyntaxError(pos, "empty parentheses")
        elif kind == "name":
            if text in RESERVED_NAMES:
                raise PresentationSyntaxError(
                    pos, "'e' denotes the identity and must stand alone in a word"
                )
            if text not in names:
                raise UnknownGenerator(text, pos)
            base = Word(((names.index(text), 1),))
        else:
            raise PresentationSyntaxError(pos, f"expected a term, found {text!r}")
        if self.peek()[1] == "^":
            self.take()
            ekind, etext, epos = self.take()
            if ekind != "int":
                raise PresentationSyntaxError(epos, f"expected integer exponent, found {etext!r}")
            return word_pow(base, int(etext))
        return base

    def _require_word_end(self, w: Word) -> Word:
        kind, text, pos = self.peek()
        if text not in (",", "=", ">") and kind != "end":
            raise PresentationSyntaxError(
                pos, "the identity word cannot be followed by further terms"
            )
        return w


def parse_presentation(text: str) -> Presentation:
    """Parse ``< gens | relations >`` text into a validated Presentation."""
    return _Parser(text).parse()


def format_word(w: Word, names: Sequence[str], sep: str = " ") -> str:
    """Render a word; the empty word renders as "1"."""
    if not w.syllables:
        return "1"
    parts = []
    for g, k in w.syllables:
        parts.append(names[g] if k == 1 else f"{names[g]}^{k}")
    return sep.join(parts)


def format_presentation(p: Presentation) -> str:
    """Canonical ASCII form; parse(format(p)) reproduces p exactly."""
    gens = ", ".join(p.generators)
    rels = ", ".join(format_word(r, p.generators) for r in p.relators)
    return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


def evaluate_word(G: CayleyGroup, assignment: Sequence[int], w: Word) -> int:
    """Left-to-right product of pow(assignment[g], exponent) over the syllables."""
    acc = G.identity
    for g, k in w.syllables:
        acc = G.mul(acc, G.pow(assignment[g], k))
    return acc


# -- coset enumeration -------------------------------------------------------


@dataclass(frozen=True)
class Realization:
    """A presented group made concrete: ``assignment[i]`` is the element of
    ``group`` realizing generator i.  Every relator evaluates to the identity
    and the assignment generates the whole group."""

    group: CayleyGroup
    assignment: tuple[int, ...]


def _relator_letters(p: Presentation) -> list[list[int]]:
    """Relators as column-letter strings: column 2g is generator g, 2g+1 its inverse."""
    rels = []
    for rel in p.relators:
        letters: list[int] = []
        for g, k in rel.syllables:
            col = 2 * g if k > 0 else 2 * g + 1
            letters.extend([col] * abs(k))
        rels.append(letters)
    return rels


def todd_coxeter(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> Realization:
    """Enumerate the cosets of the trivial subgroup and realize the group.

    Relator-table strategy without lookahead: cosets are processed in
    definition order; for each live coset every relator is scanned and filled,
    then any remaining undefined generator entries are defined.  Coincidences
    are merged through a FIFO queue, always folding the larger coset index
    into the smaller, so the run is fully deterministic.  On completion the
    generator actions on cosets are closed under composition into a validated
    CayleyGroup.

    Raises CosetLimitExceeded once more than ``max_cosets`` cosets have been
    defined (the group may be infinite or just larger than the limit).
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    if not p.generators:
        raise EmptyGeneratorList("cannot enumerate without generators")
    ngens = len(p.generators)
    ncols = 2 * ngens
    relators = _relator_letters(p)

    table: list[list[int]] = [[-1] * ncols]
    rep: list[int] = [0]

    def find(c: int) -> int:
        root = c
        while rep[root] != root:
            root = rep[root]
        while rep[c] != root:
            rep[c], c = root, rep[c]
        return root

    def define() -> int:
        if len(table) >= max_cosets:
            raise CosetLimitExceeded(
                f"more than {max_cosets} cosets defined; "
                "the group may be infinite or larger than the limit"
            )
        table.append([-1] * ncols)
        rep.append(len(table) - 1)
        return len(table) - 1

    def coincidence(a: int, b: int) -> None:
        queue: deque[int] = deque()

        def merge(u: int, v: int) -> None:
            u, v = find(u), find(v)
            if u == v:
                return
            lo, hi = (u, v) if u < v else (v, u)
            rep[hi] = lo
            queue.append(hi)

        merge(a, b)
        while queue:
            dead = queue.popleft()
            row = table[dead]
            for col in range(ncols):
                delta = row[col]
                if delta == -1:
                    continue
                table[delta][col ^ 1] = -1
                mu, nu = find(dead), find(delta)
                if table[mu][col] != -1:
                    merge(nu, table[mu][col])
                elif table[nu][col ^ 1] != -1:
                    merge(mu, table[nu][col ^ 1])
                else:
                    table[mu][col] = nu
                    table[nu][col ^ 1] = mu

    def scan_and_fill(alpha: int, letters: list[int]) -> None:
        if not letters:
            return
        while True:
            f = alpha
            i = 0
            while i < len(letters) and table[f][letters[i]] != -1:
                f = table[f][letters[i]]
                i += 1
            if i == len(letters):
                if f != alpha:
                    coincidence(f, alpha)
                return
            b = alpha
            j = len(letters) - 1
            while j >= i and table[b][letters[j] ^ 1] != -1:
                b = table[b][letters[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][letters[i]] = b
                table[b][letters[i] ^ 1] = f
                return
            new = define()
            table[f][letters[i]] = new
            table[new][letters[i] ^ 1] = f

    alpha = 0
    while alpha < len(table):
        if find(alpha) != alpha:
            alpha += 1
            continue
        for letters in relators:
            scan_and_fill(alpha, letters)
            if find(alpha) != alpha:
                break
        if find(alpha) == alpha:
            for col in range(ncols):
                if table[alpha][col] == -1:
                    new = define()
                    table[alpha][col] = new
                    table[new][col ^ 1] = alpha
        alpha += 1

    live = [c for c in range(len(table)) if find(c) == c]
    renumber = {c: i for i, c in enumerate(live)}
    ncosets = len(live)
    perms = []
    for g in range(ngens):
        perm = []
        for c in live:
            target = table[c][2 * g]
            if target == -1:
                raise RuntimeError("coset table left incomplete; enumeration bug")
            perm.append(renumber[find(target)])
        perms.append(tuple(perm))

    return _realize(p, ncosets, perms)


def _realize(p: Presentation, ncosets: int, perms: list[tuple[int, ...]]) -> Realization:
    """Close the generator permutations under composition into a CayleyGroup."""
    identity = tuple(range(ncosets))
    index: dict[tuple[int, ...], int] = {identity: 0}
    elems: list[tuple[int, ...]] = [identity]
    words: list[tuple[int, ...]] = [()]
    queue: deque[int] = deque([0])
    while queue:
        i = queue.popleft()
        base = elems[i]
        for g, pg in enumerate(perms):
            q = tuple(pg[c] for c in base)  # apply base, then generator g
            if q not in index:
                index[q] = len(elems)
                elems.append(q)
                words.append(words[i] + (g,))
                queue.append(len(elems) - 1)

    n = len(elems)
    table = [[0] * n for _ in range(n)]
    for i, u in enumerate(elems):
        for j, v in enumerate(elems):
            table[i][j] = index[tuple(v[c] for c in u)]
    labels = [_compact_word_label(w, p.generators) for w in words]
    assignment = tuple(index[tuple(pg)] for pg in perms)
    group = CayleyGroup(table, labels, assignment)

    for rel in p.relators:
        if evaluate_word(group, assignment, rel) != group.identity:
            raise RuntimeError(f"relator {format_word(rel, p.generators)} does not close")
    return Realization(group, assignment)


def _compact_word_label(letters: tuple[int, ...], names: Sequence[str]) -> str:
    if not letters:
        return "e"
    w = word((g, 1) for g in letters)
    return format_word(w, names, sep="")
