"""Brute-force ground truth by exhaustive enumeration of reduced words.

Everything here works by generating reduced words and running them through
automata as paths; no matrix or series machinery is involved, so these
counts are an independent check on the exact pipeline.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Sequence

from .automaton import Automaton
from .errors import BudgetExceededError, RankMismatchError
from .words import Word, ball_size, enumerate_sphere, sphere_size, word_key

if TYPE_CHECKING:  # pragma: no cover
    from .measures import FrequencySeries

DEFAULT_BUDGET = 10_000_000

Claim = str  # "disjoint" | "union_equals" | "inclusion" | "circ_bijection"


def _ensure_budget(m: int, depth: int, budget: int) -> None:
    total = ball_size(m, depth)
    if total > budget:
        raise BudgetExceededError(
            f"enumerating {total} words exceeds the budget of {budget}"
        )


def make_walker(a: Automaton) -> Callable[[Word], bool]:
    """Compiled acceptance test: walks arrows directly, one word at a time."""
    out = a.out_map()
    if a.is_deterministic:
        table = {(src, label): dst for src, label, dst in a.arrows}
        start = a.initial
        finals = a.finals

        def walk_det(word: Word) -> bool:
            state = start
            for letter in word:
                state = table.get((state, letter), -1)
                if state < 0:
                    return False
            return state in finals

        return walk_det

    closures: dict[int, frozenset[int]] = {}
    for state in range(a.n_states):
        seen = {state}
        queue = deque([state])
        while queue:
            for label, dst in out[queue.popleft()]:
                if label is None and dst not in seen:
                    seen.add(dst)
                    queue.append(dst)
        closures[state] = frozenset(seen)
    start_set = frozenset().union(*(closures[s] for s in a.initials))
    moves: dict[tuple[int, int], tuple[int, ...]] = {}
    for src, label, dst in a.arrows:
        if label is not None:
            moves.setdefault((src, label), ())
            moves[(src, label)] += (dst,)
    finals = a.finals

    def walk_nfa(word: Word) -> bool:
        current = start_set
        for letter in word:
            step: set[int] = set()
            for state in current:
                for dst in moves.get((state, letter), ()):
                    step |= closures[dst]
            if not step:
                return False
            current = frozenset(step)
        return bool(current & finals)

    return walk_nfa


@dataclass(frozen=True)
class FrequencyPrefix:
    """Exact membership counts per word length, up to a depth."""

    rank: int
    depth: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.depth + 1:
            raise ValueError("one count per length required")
        for k, count in enumerate(self.counts):
            if not 0 <= count <= sphere_size(self.rank, k):
                raise ValueError(f"count {count} impossible at length {k}")

    @property
    def frequencies(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(count, sphere_size(self.rank, k))
            for k, count in enumerate(self.counts)
        )

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "depth": self.depth,
            "counts": list(self.counts),
            "frequencies": [str(f) for f in self.frequencies],
        }


def frequencies(a: Automaton, depth: int, budget: int = DEFAULT_BUDGET) -> FrequencyPrefix:
    """Count accepted words per length by full enumeration of reduced words."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    _ensure_budget(a.rank, depth, budget)
    walk = make_walker(a)
    counts = []
    for k in range(depth + 1):
        counts.append(sum(1 for word in enumerate_sphere(a.rank, k) if walk(word)))
    return FrequencyPrefix(rank=a.rank, depth=depth, counts=tuple(counts))


@dataclass(frozen=True)
class AgreementReport:
    depth: int
    first_mismatch: int | None
    series_value: Fraction | None
    oracle_value: Fraction | None

    @property
    def agree(self) -> bool:
        return self.first_mismatch is None


def compare_series(gs: "FrequencySeries", fp: FrequencyPrefix) -> AgreementReport:
    """First index where the Taylor coefficients differ from enumerated
    frequencies, if any."""
    if gs.rank != fp.rank:
        raise RankMismatchError("series and prefix have different ranks")
    coefficients = gs.g.series(fp.depth)
    freqs = fp.frequencies
    for k in range(fp.depth + 1):
        if coefficients[k] != freqs[k]:
            return AgreementReport(fp.depth, k, coefficients[k], freqs[k])
    return AgreementReport(fp.depth, None, None, None)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    counterexample: Word | None

    def __bool__(self) -> bool:
        return self.ok


def set_algebra_check(
    claim: Claim,
    operands: Sequence[Automaton],
    depth: int,
    budget: int = DEFAULT_BUDGET,
) -> CheckResult:
    """Verify a set-algebra claim on the ball of radius ``depth``.

    Claims: ``disjoint`` (pairwise over all operands), ``union_equals``
    (union of all but the last equals the last), ``inclusion`` (first inside
    second), ``circ_bijection`` (operands A1, A2, A: splitting each word of
    L(A) as a product from L(A1) x L(A2) succeeds exactly once, and no pair
    multiplies to a word outside L(A)).  On failure the shortest
    counterexample word is returned.
    """
    if not operands:
        raise ValueError("no operands")
    rank = operands[0].rank
    if any(op.rank != rank for op in operands):
        raise RankMismatchError("operands must share the rank")
    _ensure_budget(rank, depth, budget)
    walkers = [make_walker(op) for op in operands]

    if claim == "disjoint":
        for k in range(depth + 1):
            for word in enumerate_sphere(rank, k):
                if sum(1 for walk in walkers if walk(word)) > 1:
                    return CheckResult(False, word)
        return CheckResult(True, None)
    if claim == "union_equals":
        if len(walkers) < 2:
            raise ValueError("union_equals needs parts and a whole")
        *parts, whole = walkers
        for k in range(depth + 1):
            for word in enumerate_sphere(rank, k):
                if any(walk(word) for walk in parts) != whole(word):
                    return CheckResult(False, word)
        return CheckResult(True, None)
    if claim == "inclusion":
        if len(walkers) != 2:
            raise ValueError("inclusion needs exactly two operands")
        sub, sup = walkers
        for k in range(depth + 1):
            for word in enumerate_sphere(rank, k):
                if sub(word) and not sup(word):
                    return CheckResult(False, word)
        return CheckResult(True, None)
    if claim == "circ_bijection":
        if len(walkers) != 3:
            raise ValueError("circ_bijection needs left, right and whole")
        left, right, whole = walkers
        for k in range(depth + 1):
            for word in enumerate_sphere(rank, k):
                # every split of a reduced word is a cancellation-free product
                splits = sum(
                    1
                    for i in range(len(word) + 1)
                    if left(word[:i]) and right(word[i:])
                )
                if whole(word):
                    if splits != 1:
                        return CheckResult(False, word)
                elif splits > 0:
                    return CheckResult(False, word)
        return CheckResult(True, None)
    raise ValueError(f"unknown claim {claim!r}")


def language(a: Automaton, depth: int) -> list[Word]:
    """All accepted words of length at most ``depth``, shortest first.

    Walks the acceptor word by word (lazily determinized), so the cost is
    proportional to the accepted prefix tree rather than the whole ball.
    """
    out = a.out_map()
    closures: dict[int, frozenset[int]] = {}
    for state in range(a.n_states):
        seen = {state}
        queue = deque([state])
        while queue:
            for label, dst in out[queue.popleft()]:
                if label is None and dst not in seen:
                    seen.add(dst)
                    queue.append(dst)
        closures[state] = frozenset(seen)
    start = frozenset().union(*(closures[s] for s in a.initials))
    words: list[Word] = []
    layer: list[tuple[frozenset[int], Word]] = [(start, ())]
    for length in range(depth + 1):
        next_layer: list[tuple[frozenset[int], Word]] = []
        for subset, word in layer:
            if subset & a.finals:
                words.append(word)
            if length == depth:
                continue
            moves: dict[int, set[int]] = {}
            for state in subset:
                for label, dst in out[state]:
                    if label is not None:
                        moves.setdefault(label, set()).update(closures[dst])
            for label, targets in moves.items():
                next_layer.append((frozenset(targets), word + (label,)))
        layer = next_layer
    return sorted(words, key=lambda w: (len(w), word_key(w)))
