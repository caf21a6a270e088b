"""Free groups of finite rank: letters, reduced words, spheres, weights.

A letter of the symmetrized alphabet is a nonzero integer: ``+i`` encodes
the generator ``x<i>`` and ``-i`` its formal inverse ``X<i>``.  A word is a
tuple of letters; the empty tuple is the identity.  Lexicographic order on
letters is x1 < X1 < x2 < X2 < ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import CancellationError, RankTooSmallError

Letter = int
Word = tuple[Letter, ...]

IDENTITY: Word = ()

_TOKEN = re.compile(r"([xX])([0-9]+)")


def inverse(letter: Letter) -> Letter:
    return -letter


def inverse_word(word: Iterable[Letter]) -> Word:
    return tuple(-letter for letter in reversed(tuple(word)))


def lex_key(letter: Letter) -> tuple[int, int]:
    """Sort key realising x1 < X1 < x2 < X2 < ..."""
    return (abs(letter), 0 if letter > 0 else 1)


def word_key(word: Word) -> tuple[tuple[int, int], ...]:
    return tuple(lex_key(letter) for letter in word)


@dataclass(frozen=True)
class Alphabet:
    """Symmetrized alphabet of the free group of rank ``rank``."""

    rank: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError("rank must be at least 1")

    @property
    def size(self) -> int:
        return 2 * self.rank

    def letters(self) -> tuple[Letter, ...]:
        """All letters in lexicographic order."""
        return tuple(
            sign * i for i in range(1, self.rank + 1) for sign in (1, -1)
        )

    def __contains__(self, letter: object) -> bool:
        return (
            isinstance(letter, int)
            and not isinstance(letter, bool)
            and letter != 0
            and abs(letter) <= self.rank
        )


def reduce_word(raw: Iterable[Letter]) -> Word:
    """Freely reduce a letter sequence by cancelling adjacent inverse pairs."""
    stack: list[Letter] = []
    for letter in raw:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def is_reduced(word: Iterable[Letter]) -> bool:
    word = tuple(word)
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def circ(u: Word, v: Word) -> Word:
    """Cancellation-free product; raises when the junction cancels."""
    if u and v and u[-1] == -v[0]:
        raise CancellationError(
            f"product undefined: {format_word(u)!r} * {format_word(v)!r} cancels"
        )
    return u + v


def sphere_size(m: int, k: int) -> int:
    """Number of reduced words of length exactly ``k`` in rank ``m``."""
    if m < 1:
        raise ValueError("rank must be at least 1")
    if k < 0:
        raise ValueError("length must be non-negative")
    if k == 0:
        return 1
    return 2 * m * (2 * m - 1) ** (k - 1)


def ball_size(m: int, k: int) -> int:
    """Number of reduced words of length at most ``k``."""
    return sum(sphere_size(m, j) for j in range(k + 1))


def enumerate_sphere(m: int, k: int) -> Iterator[Word]:
    """Yield every reduced word of length ``k`` once, in lexicographic order."""
    if m < 1:
        raise ValueError("rank must be at least 1")
    if k < 0:
        raise ValueError("length must be non-negative")
    if k == 0:
        yield IDENTITY
        return
    order = Alphabet(m).letters()
    # successor letters per previous letter, in lexicographic order
    succ = {letter: tuple(x for x in order if x != -letter) for letter in order}
    word = [0] * k
    choice = [0] * k
    options: list[tuple[Letter, ...]] = [order] + [()] * (k - 1)
    pos = 0
    while pos >= 0:
        if choice[pos] >= len(options[pos]):
            pos -= 1
            if pos >= 0:
                choice[pos] += 1
            continue
        word[pos] = options[pos][choice[pos]]
        if pos == k - 1:
            yield tuple(word)
            choice[pos] += 1
        else:
            pos += 1
            options[pos] = succ[word[pos - 1]]
            choice[pos] = 0


def enumerate_ball(m: int, k: int) -> Iterator[Word]:
    """Yield every reduced word of length at most ``k``, shortest first."""
    for j in range(k + 1):
        yield from enumerate_sphere(m, j)


def word_weight_star(word: Word, m: int) -> Fraction:
    """Adjusted singleton weight (2m-1)^(-|w|); the identity has weight 1."""
    if m < 2:
        raise RankTooSmallError("adjusted weights need rank at least 2")
    return Fraction(1, (2 * m - 1) ** len(word))


def format_letter(letter: Letter) -> str:
    if letter == 0:
        raise ValueError("0 is not a letter")
    return f"x{letter}" if letter > 0 else f"X{-letter}"


def parse_letter(token: str, m: int | None = None) -> Letter:
    match = _TOKEN.fullmatch(token)
    if match is None:
        raise ValueError(f"bad letter token {token!r}")
    index = int(match.group(2))
    if index < 1 or (m is not None and index > m):
        raise ValueError(f"letter index out of range in {token!r}")
    return index if match.group(1) == "x" else -index


def format_word(word: Word) -> str:
    """Token rendering, e.g. ``x1 X2 x1``; the identity is the empty string."""
    return " ".join(format_letter(letter) for letter in word)


def format_word_compact(word: Word) -> str:
    """Compact a..z/A..Z rendering, available for rank at most 26."""
    out = []
    for letter in word:
        if abs(letter) > 26:
            raise ValueError("compact form only covers indices up to 26")
        base = ord("a") if letter > 0 else ord("A")
        out.append(chr(base + abs(letter) - 1))
    return "".join(out)


def parse_word(text: str, m: int | None = None) -> Word:
    """Parse either token form (``x1 X2``) or compact form (``aB``)."""
    text = text.strip()
    if not text:
        return IDENTITY
    tokens = text.split()
    if all(_TOKEN.fullmatch(tok) for tok in tokens):
        return tuple(parse_letter(tok, m) for tok in tokens)
    if len(tokens) == 1 and tokens[0].isalpha():
        word = []
        for ch in tokens[0]:
            index = ord(ch.lower()) - ord("a") + 1
            if m is not None and index > m:
                raise ValueError(f"letter {ch!r} out of range for rank {m}")
            word.append(index if ch.islower() else -index)
        return tuple(word)
    raise ValueError(f"cannot parse word {text!r}")
