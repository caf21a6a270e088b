"""Canonical acceptors for named families of regular sets.

Every constructor returns a trim deterministic acceptor of reduced words.
Families with an inherently nondeterministic description (right cones,
double-based cones, generalized cones) are built as small NFAs and put
through the subset construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import (
    Arrow,
    Automaton,
    determinize,
    reduced_word_acceptor,
    trim,
)
from .errors import InvalidFamilyError
from .words import Alphabet, Letter, Word, format_letter, format_word, is_reduced

FULL = "full"
NONTRIVIAL = "nontrivial"
CONE = "cone"
RCONE = "rcone"
DCONE = "dcone"
GCONE = "gcone"
THICK_MONOID = "thickmonoid"
BALL_COMPLEMENT = "ballcomp"
EVEN = "even"
SINGLETON = "singleton"

KINDS = (
    FULL, NONTRIVIAL, CONE, RCONE, DCONE, GCONE,
    THICK_MONOID, BALL_COMPLEMENT, EVEN, SINGLETON,
)


@dataclass(frozen=True)
class Family:
    """Description of one named family instance."""

    kind: str
    word: Word = ()
    left: Word = ()
    right: Word = ()
    radius: int = 0

    def describe(self) -> str:
        if self.kind in (CONE, RCONE, SINGLETON):
            return f"{self.kind}({format_word(self.word) or '1'})"
        if self.kind in (GCONE, THICK_MONOID):
            return f"{self.kind}({format_word(self.word)})"
        if self.kind == DCONE:
            return f"dcone({format_word(self.left)}, {format_word(self.right)})"
        if self.kind == BALL_COMPLEMENT:
            return f"ballcomp({self.radius})"
        return self.kind


def full() -> Family:
    return Family(FULL)


def nontrivial() -> Family:
    return Family(NONTRIVIAL)


def cone(word: Word) -> Family:
    return Family(CONE, word=tuple(word))


def rcone(word: Word) -> Family:
    return Family(RCONE, word=tuple(word))


def dcone(left: Word, right: Word) -> Family:
    return Family(DCONE, left=tuple(left), right=tuple(right))


def gcone(letter: Letter) -> Family:
    return Family(GCONE, word=(letter,))


def thick_monoid(letter: Letter) -> Family:
    return Family(THICK_MONOID, word=(letter,))


def ball_complement(radius: int) -> Family:
    return Family(BALL_COMPLEMENT, radius=radius)


def even() -> Family:
    return Family(EVEN)


def singleton(word: Word) -> Family:
    return Family(SINGLETON, word=tuple(word))


def _check_word(word: Word, m: int, what: str, nonempty: bool) -> None:
    alphabet = Alphabet(m)
    if nonempty and not word:
        raise InvalidFamilyError(f"{what} must be a nonempty word")
    if not is_reduced(word):
        raise InvalidFamilyError(f"{what} must be freely reduced")
    for letter in word:
        if letter not in alphabet:
            raise InvalidFamilyError(f"{what} uses letters outside rank {m}")


def make_family(family: Family, m: int) -> Automaton:
    """Build the canonical trim deterministic acceptor of a family."""
    if family.kind == FULL:
        return reduced_word_acceptor(m)
    if family.kind == NONTRIVIAL:
        base = reduced_word_acceptor(m)
        return base.with_finals(set(range(1, base.n_states)))
    if family.kind == CONE:
        _check_word(family.word, m, "cone handle", nonempty=True)
        return _cone(family.word, m)
    if family.kind == RCONE:
        _check_word(family.word, m, "cone handle", nonempty=True)
        return trim(determinize(_rcone_nfa(family.word, m)))
    if family.kind == DCONE:
        _check_word(family.left, m, "left handle", nonempty=True)
        _check_word(family.right, m, "right handle", nonempty=True)
        return trim(determinize(_dcone_nfa(family.left, family.right, m)))
    if family.kind == GCONE:
        _check_word(family.word, m, "cone letter", nonempty=True)
        if len(family.word) != 1:
            raise InvalidFamilyError("generalized cone wants a single letter")
        return trim(determinize(_gcone_nfa(family.word[0], m)))
    if family.kind == THICK_MONOID:
        _check_word(family.word, m, "monoid letter", nonempty=True)
        if len(family.word) != 1:
            raise InvalidFamilyError("thick monoid wants a single letter")
        return trim(_thick_monoid(family.word[0], m))
    if family.kind == BALL_COMPLEMENT:
        if family.radius < 0:
            raise InvalidFamilyError("radius must be non-negative")
        if family.radius == 0:
            return reduced_word_acceptor(m)
        return _ball_complement(family.radius, m)
    if family.kind == EVEN:
        return _even(m)
    if family.kind == SINGLETON:
        _check_word(family.word, m, "word", nonempty=False)
        return _singleton(family.word, m)
    raise InvalidFamilyError(f"unknown family kind {family.kind!r}")


def _cone(word: Word, m: int) -> Automaton:
    """Words with ``word`` as initial subword: a spine, then free continuation."""
    letters = Alphabet(m).letters()
    r = len(word)
    slot = {letter: r + 1 + i for i, letter in enumerate(letters)}
    arrows: list[Arrow] = [(i, word[i], i + 1) for i in range(r)]
    arrows.extend(
        (r, letter, slot[letter]) for letter in letters if letter != -word[-1]
    )
    for prev in letters:
        arrows.extend(
            (slot[prev], nxt, slot[nxt]) for nxt in letters if nxt != -prev
        )
    names = tuple(f"p{i}" for i in range(r + 1)) + tuple(
        format_letter(letter) for letter in letters
    )
    return trim(
        Automaton(
            rank=m,
            n_states=r + 1 + len(letters),
            arrows=tuple(arrows),
            initials=frozenset({0}),
            finals=frozenset({r}) | frozenset(slot.values()),
            names=names,
        )
    )


def _rcone_nfa(word: Word, m: int) -> Automaton:
    """Words ending in ``word``: guess where the suffix starts."""
    letters = Alphabet(m).letters()
    r = len(word)
    # 0 = start, 1..2m = last-letter states, then the suffix spine
    slot = {letter: 1 + i for i, letter in enumerate(letters)}
    spine = {j: len(letters) + j for j in range(1, r + 1)}
    arrows: list[Arrow] = []
    for letter in letters:
        arrows.append((0, letter, slot[letter]))
    for prev in letters:
        arrows.extend(
            (slot[prev], nxt, slot[nxt]) for nxt in letters if nxt != -prev
        )
    arrows.append((0, word[0], spine[1]))
    for prev in letters:
        if word[0] != -prev:
            arrows.append((slot[prev], word[0], spine[1]))
    for j in range(1, r):
        arrows.append((spine[j], word[j], spine[j + 1]))
    return Automaton(
        rank=m,
        n_states=1 + len(letters) + r,
        arrows=tuple(arrows),
        initials=frozenset({0}),
        finals=frozenset({spine[r]}),
    )


def _dcone_nfa(left: Word, right: Word, m: int) -> Automaton:
    """Words ``left * f * right`` with a cancellation-free junction each side."""
    letters = Alphabet(m).letters()
    lu, lv = len(left), len(right)
    # 0..lu = left spine, then last-letter states, then right spine
    slot = {letter: lu + 1 + i for i, letter in enumerate(letters)}
    spine = {j: lu + 1 + len(letters) + j - 1 for j in range(1, lv + 1)}
    arrows: list[Arrow] = [(i, left[i], i + 1) for i in range(lu)]
    for letter in letters:
        if letter != -left[-1]:
            arrows.append((lu, letter, slot[letter]))
    for prev in letters:
        arrows.extend(
            (slot[prev], nxt, slot[nxt]) for nxt in letters if nxt != -prev
        )
    if right[0] != -left[-1]:
        arrows.append((lu, right[0], spine[1]))
    for prev in letters:
        if right[0] != -prev:
            arrows.append((slot[prev], right[0], spine[1]))
    for j in range(1, lv):
        arrows.append((spine[j], right[j], spine[j + 1]))
    return Automaton(
        rank=m,
        n_states=lu + 1 + len(letters) + lv,
        arrows=tuple(arrows),
        initials=frozenset({0}),
        finals=frozenset({spine[lv]}),
    )


def _gcone_nfa(x: Letter, m: int) -> Automaton:
    """Words of length at least two that end in ``x`` and do not start x^-1."""
    letters = Alphabet(m).letters()
    slot = {letter: 1 + i for i, letter in enumerate(letters)}
    fin = 1 + len(letters)
    arrows: list[Arrow] = [
        (0, letter, slot[letter]) for letter in letters if letter != -x
    ]
    for prev in letters:
        arrows.extend(
            (slot[prev], nxt, slot[nxt]) for nxt in letters if nxt != -prev
        )
        if x != -prev:
            arrows.append((slot[prev], x, fin))
    return Automaton(
        rank=m,
        n_states=2 + len(letters),
        arrows=tuple(arrows),
        initials=frozenset({0}),
        finals=frozenset({fin}),
    )


def _thick_monoid(x: Letter, m: int) -> Automaton:
    """The identity together with every word ending in ``x`` that does not
    start with ``x^-1``; the base state is both initial and final."""
    letters = Alphabet(m).letters()
    others = [letter for letter in letters if letter != x]
    slot = {letter: 1 + i for i, letter in enumerate(others)}
    arrows: list[Arrow] = [(0, x, 0)]
    arrows.extend((0, y, slot[y]) for y in others if y != -x)
    for prev in others:
        if prev != -x:
            arrows.append((slot[prev], x, 0))
        arrows.extend(
            (slot[prev], nxt, slot[nxt])
            for nxt in others
            if nxt != -prev
        )
    names = ("base",) + tuple(format_letter(letter) for letter in others)
    return Automaton(
        rank=m,
        n_states=1 + len(others),
        arrows=tuple(arrows),
        initials=frozenset({0}),
        finals=frozenset({0}),
        names=names,
    )


def _ball_complement(radius: int, m: int) -> Automaton:
    """All reduced words of length at least ``radius``."""
    letters = Alphabet(m).letters()
    width = len(letters)

    def slot(depth: int, letter: Letter) -> int:
        return 1 + (depth - 1) * width + letters.index(letter)

    arrows: list[Arrow] = [(0, letter, slot(1, letter)) for letter in letters]
    for depth in range(1, radius + 1):
        nxt_depth = min(depth + 1, radius)
        for prev in letters:
            arrows.extend(
                (slot(depth, prev), nxt, slot(nxt_depth, nxt))
                for nxt in letters
                if nxt != -prev
            )
    return Automaton(
        rank=m,
        n_states=1 + radius * width,
        arrows=tuple(arrows),
        initials=frozenset({0}),
        finals=frozenset(slot(radius, letter) for letter in letters),
    )


def _even(m: int) -> Automaton:
    """The subgroup of words of even length."""
    letters = Alphabet(m).letters()
    width = len(letters)

    def slot(parity: int, letter: Letter) -> int:
        return 1 + parity * width + letters.index(letter)

    arrows: list[Arrow] = [(0, letter, slot(1, letter)) for letter in letters]
    for parity in (0, 1):
        for prev in letters:
            arrows.extend(
                (slot(parity, prev), nxt, slot(1 - parity, nxt))
                for nxt in letters
                if nxt != -prev
            )
    return Automaton(
        rank=m,
        n_states=1 + 2 * width,
        arrows=tuple(arrows),
        initials=frozenset({0}),
        finals=frozenset({0}) | frozenset(slot(0, letter) for letter in letters),
    )


def _singleton(word: Word, m: int) -> Automaton:
    arrows = tuple((i, word[i], i + 1) for i in range(len(word)))
    return Automaton(
        rank=m,
        n_states=len(word) + 1,
        arrows=arrows,
        initials=frozenset({0}),
        finals=frozenset({len(word)}),
    )
