"""Shared fixtures: worked-example automata and the pseudorandom corpus."""

from __future__ import annotations

import random

import pytest

import fgmeasure as fg
from fgmeasure.automaton import Automaton, determinize, reduced_normalize, trim
from fgmeasure.errors import EmptyLanguageError
from fgmeasure.words import Alphabet

CORPUS_SEED = 0x5EED


def alternating_automaton() -> Automaton:
    """Saturated special acceptor of (x1 x2 | X1 x2)+ over rank 2."""
    return Automaton.make(
        2,
        ["i0", "s1", "s2", "z0"],
        [
            ("i0", "x1", "s1"),
            ("i0", "X1", "s2"),
            ("s1", "x2", "z0"),
            ("s2", "x2", "z0"),
            ("z0", "x1", "s1"),
            ("z0", "X1", "s2"),
        ],
        ["i0"],
        ["z0"],
    )


def prefixed_monoid_automaton() -> Automaton:
    """x1 glued in front of the thick monoid of words ending in x2."""
    monoid = fg.make_family(fg.families.thick_monoid(2), 2)
    arrows = [(src + 1, label, dst + 1) for src, label, dst in monoid.arrows]
    arrows.append((0, 1, 1))
    return Automaton(
        rank=2,
        n_states=monoid.n_states + 1,
        arrows=tuple(arrows),
        initials=frozenset({0}),
        finals=frozenset({1}),
    )


def random_corpus(
    m: int = 2,
    count: int = 20,
    max_states: int = 6,
    seed: int = CORPUS_SEED,
) -> list[Automaton]:
    """Pseudorandom trim deterministic reduced-word acceptors."""
    rng = random.Random(seed)
    letters = Alphabet(m).letters()
    out: list[Automaton] = []
    while len(out) < count:
        n = rng.randint(2, 5)
        density = rng.uniform(0.25, 0.85)
        arrows = []
        for state in range(n):
            for letter in letters:
                if rng.random() < density:
                    arrows.append((state, letter, rng.randrange(n)))
        finals = frozenset(s for s in range(n) if rng.random() < 0.5)
        if not finals:
            continue
        raw = Automaton(
            rank=m,
            n_states=n,
            arrows=tuple(arrows),
            initials=frozenset({0}),
            finals=finals,
        )
        try:
            acceptor = trim(determinize(reduced_normalize(raw)))
        except EmptyLanguageError:
            continue
        if acceptor.n_states > max_states:
            continue
        out.append(acceptor)
    return out


def canonical_deterministic(a: Automaton) -> tuple:
    """Structure of a deterministic automaton up to state renaming:
    breadth-first renumbering from the initial state, arrows in label order."""
    assert a.is_deterministic
    out = a.out_map()
    order = {a.initial: 0}
    queue = [a.initial]
    arrows = []
    while queue:
        state = queue.pop(0)
        for label, dst in sorted(out[state], key=lambda e: (e[0] is None, e[0])):
            if dst not in order:
                order[dst] = len(order)
                queue.append(dst)
            arrows.append((order[state], label, order[dst]))
    finals = frozenset(order[s] for s in a.finals if s in order)
    return (a.rank, len(order), tuple(arrows), finals)


@pytest.fixture
def alt_automaton() -> Automaton:
    return alternating_automaton()


@pytest.fixture(scope="session")
def corpus() -> list[Automaton]:
    return random_corpus()
