"""Finite-state acceptors over the symmetrized alphabet of a free group.

States are integers ``0..n-1`` with optional display names.  An arrow is a
triple ``(source, label, target)`` whose label is a letter (nonzero int) or
``None`` for an epsilon arrow.  Automata are immutable; every transform
returns a new value.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import (
    EmptyLanguageError,
    EpsilonArrowsError,
    KindMismatchError,
    NotDeterministicError,
)
from .words import Alphabet, Letter, Word, format_letter, lex_key, parse_letter

Label = Letter | None
Arrow = tuple[int, Label, int]


def _label_key(label: Label) -> tuple[int, int, int]:
    if label is None:
        return (0, 0, 0)
    return (1, abs(label), 0 if label > 0 else 1)


def _arrow_key(arrow: Arrow) -> tuple:
    src, label, dst = arrow
    return (src, _label_key(label), dst)


@dataclass(frozen=True)
class Automaton:
    """Acceptor ``(states, alphabet, arrows, initials, finals)``."""

    rank: int
    n_states: int
    arrows: tuple[Arrow, ...]
    initials: frozenset[int]
    finals: frozenset[int]
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        if self.n_states < 1:
            raise ValueError("automaton needs at least one state")
        if not self.initials:
            raise ValueError("automaton needs at least one initial state")
        object.__setattr__(self, "initials", frozenset(self.initials))
        object.__setattr__(self, "finals", frozenset(self.finals))
        alphabet = Alphabet(self.rank)
        for src, label, dst in self.arrows:
            if not (0 <= src < self.n_states and 0 <= dst < self.n_states):
                raise ValueError(f"arrow ({src}, {label}, {dst}) out of range")
            if label is not None and label not in alphabet:
                raise ValueError(f"label {label} outside the rank-{self.rank} alphabet")
        for state in self.initials | self.finals:
            if not 0 <= state < self.n_states:
                raise ValueError(f"state {state} out of range")
        if self.names is not None and len(self.names) != self.n_states:
            raise ValueError("one name per state required")
        object.__setattr__(
            self, "arrows", tuple(sorted(set(self.arrows), key=_arrow_key))
        )

    @classmethod
    def make(
        cls,
        rank: int,
        states: int | Sequence[str],
        arrows: Iterable[tuple[int | str, Label | str, int | str]],
        initials: Iterable[int | str],
        finals: Iterable[int | str],
    ) -> "Automaton":
        """Convenience constructor accepting state names and string labels."""
        if isinstance(states, int):
            names: tuple[str, ...] | None = None
            index = {i: i for i in range(states)}
            count = states
        else:
            names = tuple(states)
            index = {name: i for i, name in enumerate(names)}
            index.update({i: i for i in range(len(names))})
            count = len(names)

        def lab(value: Label | str) -> Label:
            if value is None or isinstance(value, int):
                return value
            if value == "eps":
                return None
            return parse_letter(value, rank)

        return cls(
            rank=rank,
            n_states=count,
            arrows=tuple((index[s], lab(l), index[t]) for s, l, t in arrows),
            initials=frozenset(index[s] for s in initials),
            finals=frozenset(index[s] for s in finals),
            names=names,
        )

    # -- inspection ---------------------------------------------------------

    def state_name(self, state: int) -> str:
        return self.names[state] if self.names is not None else f"s{state}"

    def out_map(self) -> dict[int, list[tuple[Label, int]]]:
        out: dict[int, list[tuple[Label, int]]] = {s: [] for s in range(self.n_states)}
        for src, label, dst in self.arrows:
            out[src].append((label, dst))
        return out

    def in_map(self) -> dict[int, list[tuple[Label, int]]]:
        into: dict[int, list[tuple[Label, int]]] = {s: [] for s in range(self.n_states)}
        for src, label, dst in self.arrows:
            into[dst].append((label, src))
        return into

    @property
    def has_epsilon(self) -> bool:
        return any(label is None for _, label, _ in self.arrows)

    @property
    def is_deterministic(self) -> bool:
        if len(self.initials) != 1 or self.has_epsilon:
            return False
        seen = set()
        for src, label, _ in self.arrows:
            if (src, label) in seen:
                return False
            seen.add((src, label))
        return True

    @property
    def initial(self) -> int:
        if len(self.initials) != 1:
            raise NotDeterministicError("automaton has several initial states")
        return next(iter(self.initials))

    def _closure(self, states: Iterable[int], out: dict) -> frozenset[int]:
        seen = set(states)
        queue = deque(seen)
        while queue:
            for label, dst in out[queue.popleft()]:
                if label is None and dst not in seen:
                    seen.add(dst)
                    queue.append(dst)
        return frozenset(seen)

    def accepts(self, word: Word) -> bool:
        """Path simulation: does some initial-to-final path spell ``word``?"""
        out = self.out_map()
        current = self._closure(self.initials, out)
        for letter in word:
            step = {dst for s in current for label, dst in out[s] if label == letter}
            if not step:
                return False
            current = self._closure(step, out)
        return bool(current & self.finals)

    def accepts_only_reduced(self) -> bool:
        """No state may be entered by ``x`` and left by ``x^-1`` (epsilon-free)."""
        into = self.in_map()
        out = self.out_map()
        for state in range(self.n_states):
            incoming = {label for label, _ in into[state] if label is not None}
            outgoing = {label for label, _ in out[state] if label is not None}
            if any(-label in outgoing for label in incoming):
                return False
        return True

    # -- derived automata ----------------------------------------------------

    def with_finals(self, finals: Iterable[int]) -> "Automaton":
        return Automaton(
            self.rank, self.n_states, self.arrows, self.initials,
            frozenset(finals), self.names,
        )

    def restrict(self, keep: Iterable[int]) -> "Automaton":
        """Sub-automaton on a state subset, states renumbered in order."""
        kept = sorted(set(keep))
        index = {old: new for new, old in enumerate(kept)}
        return Automaton(
            rank=self.rank,
            n_states=len(kept),
            arrows=tuple(
                (index[s], label, index[t])
                for s, label, t in self.arrows
                if s in index and t in index
            ),
            initials=frozenset(index[s] for s in self.initials if s in index),
            finals=frozenset(index[s] for s in self.finals if s in index),
            names=tuple(self.names[s] for s in kept) if self.names else None,
        )


# -- reachability and trimming ------------------------------------------------


def _reachable(a: Automaton) -> set[int]:
    out = a.out_map()
    seen = set(a.initials)
    queue = deque(seen)
    while queue:
        for _, dst in out[queue.popleft()]:
            if dst not in seen:
                seen.add(dst)
                queue.append(dst)
    return seen


def _coreachable(a: Automaton, targets: Iterable[int] | None = None) -> set[int]:
    into = a.in_map()
    seen = set(a.finals if targets is None else targets)
    queue = deque(seen)
    while queue:
        for _, src in into[queue.popleft()]:
            if src not in seen:
                seen.add(src)
                queue.append(src)
    return seen


def trim(a: Automaton) -> Automaton:
    """Drop states that are unreachable or cannot reach a final state."""
    keep = _reachable(a) & _coreachable(a)
    if not keep:
        raise EmptyLanguageError("automaton accepts the empty language")
    return a.restrict(keep)


def is_trim(a: Automaton) -> bool:
    return len(_reachable(a) & _coreachable(a)) == a.n_states


# -- determinization -----------------------------------------------------------


def clone_initial_if_entered(a: Automaton) -> Automaton:
    """Give the single initial state an inedge-free copy when it has inedges.

    The copy takes over as initial with the same outgoing arrows and finality,
    so the accepted language is unchanged.
    """
    i0 = a.initial
    if not any(dst == i0 for _, _, dst in a.arrows):
        return a
    clone = a.n_states
    arrows = list(a.arrows)
    arrows.extend((clone, label, dst) for src, label, dst in a.arrows if src == i0)
    return Automaton(
        rank=a.rank,
        n_states=a.n_states + 1,
        arrows=tuple(arrows),
        initials=frozenset({clone}),
        finals=a.finals | {clone} if i0 in a.finals else a.finals,
        names=a.names + (a.state_name(i0) + "'",) if a.names else None,
    )


def determinize(a: Automaton) -> Automaton:
    """Subset construction; the result is deterministic, accepts the same
    language, and its initial state has no inedges."""
    out = a.out_map()
    start = a._closure(a.initials, out)
    order: list[frozenset[int]] = [start]
    index = {start: 0}
    arrows: list[Arrow] = []
    finals: set[int] = set()
    pos = 0
    while pos < len(order):
        subset = order[pos]
        if subset & a.finals:
            finals.add(pos)
        moves: dict[Letter, set[int]] = {}
        for s in sorted(subset):
            for label, dst in out[s]:
                if label is not None:
                    moves.setdefault(label, set()).add(dst)
        for label in sorted(moves, key=lex_key):
            target = a._closure(moves[label], out)
            nxt = index.setdefault(target, len(order))
            if nxt == len(order):
                order.append(target)
            arrows.append((pos, label, nxt))
        pos += 1
    result = Automaton(
        rank=a.rank,
        n_states=len(order),
        arrows=tuple(arrows),
        initials=frozenset({0}),
        finals=frozenset(finals),
    )
    return clone_initial_if_entered(result)


# -- reduced-word normalization -------------------------------------------------


def reduced_word_acceptor(m: int) -> Automaton:
    """Acceptor of every freely reduced word: a start state plus one
    last-letter state per letter, all final."""
    letters = Alphabet(m).letters()
    slot = {letter: i + 1 for i, letter in enumerate(letters)}
    arrows: list[Arrow] = [(0, letter, slot[letter]) for letter in letters]
    for prev in letters:
        arrows.extend(
            (slot[prev], nxt, slot[nxt]) for nxt in letters if nxt != -prev
        )
    return Automaton(
        rank=m,
        n_states=1 + len(letters),
        arrows=tuple(arrows),
        initials=frozenset({0}),
        finals=frozenset(range(1 + len(letters))),
        names=("start",) + tuple(format_letter(letter) for letter in letters),
    )


def reduced_normalize(a: Automaton) -> Automaton:
    """Product with the reduced-word acceptor: keeps exactly the accepted
    strings that are freely reduced, so no accepting path spells a
    cancelling pair."""
    out = a.out_map()
    start_pairs = sorted((s, 0) for s in a.initials)
    index: dict[tuple[int, Letter | int], int] = {}
    order: list[tuple[int, Letter | int]] = []
    for pair in start_pairs:
        index[pair] = len(order)
        order.append(pair)
    arrows: list[Arrow] = []
    pos = 0
    while pos < len(order):
        state, last = order[pos]
        for label, dst in out[state]:
            if label is None:
                target = (dst, last)
            elif last == 0 or label != -last:
                target = (dst, label)
            else:
                continue
            nxt = index.setdefault(target, len(order))
            if nxt == len(order):
                order.append(target)
            arrows.append((pos, label, nxt))
        pos += 1
    return Automaton(
        rank=a.rank,
        n_states=len(order),
        arrows=tuple(arrows),
        initials=frozenset(range(len(start_pairs))),
        finals=frozenset(i for i, (s, _) in enumerate(order) if s in a.finals),
    )


# -- state splitting --------------------------------------------------------------


def split_by_incoming_label(a: Automaton) -> Automaton:
    """Split every state with mixed incoming labels into one copy per label.

    Each copy keeps all outgoing arrows of the original, so the language and
    determinism are preserved, and afterwards every non-initial state has a
    well-defined type (its unique incoming label).
    """
    if not a.is_deterministic:
        raise NotDeterministicError("state splitting expects a deterministic automaton")
    a = clone_initial_if_entered(a)
    into = a.in_map()
    i0 = a.initial
    copies: dict[int, list[Letter | None]] = {}
    for state in range(a.n_states):
        labels = sorted({label for label, _ in into[state]}, key=_label_key)
        copies[state] = labels if len(labels) > 1 else [None]
    index: dict[tuple[int, Letter | None], int] = {}
    names: list[str] = []
    for state in range(a.n_states):
        for label in copies[state]:
            index[(state, label)] = len(index)
            suffix = "" if label is None else "~" + format_letter(label)
            names.append(a.state_name(state) + suffix)
    arrows: list[Arrow] = []
    for src, label, dst in a.arrows:
        target = (dst, label if len(copies[dst]) > 1 else None)
        for src_label in copies[src]:
            arrows.append((index[(src, src_label)], label, index[target]))
    return Automaton(
        rank=a.rank,
        n_states=len(index),
        arrows=tuple(arrows),
        initials=frozenset({index[(i0, None)]}),
        finals=frozenset(
            index[(s, label)] for s in a.finals for label in copies[s]
        ),
        names=tuple(names) if a.names else None,
    )


# -- speciality -------------------------------------------------------------------


class SpecialityKind(Enum):
    NOT_SPECIAL = "not_special"
    SPECIAL_OVER_MONOID = "special_over_monoid"
    SPECIAL_OVER_GROUP = "special_over_group"
    SPECIAL_MONOID = "special_monoid"


@dataclass(frozen=True)
class SpecialityReport:
    """Verdict per speciality condition plus the per-state type map."""

    deterministic: bool
    initial_inedge_free: bool  # (a)
    single_final: bool  # (b)
    accessible: bool  # (c)
    coaccessible: bool  # (d)
    uniform_incoming: bool  # (e)
    no_inverse_exit: bool  # (f)
    types: tuple[Letter | None, ...]
    kind: SpecialityKind

    def condition(self, name: str) -> bool:
        return {
            "a": self.initial_inedge_free,
            "b": self.single_final,
            "c": self.accessible,
            "d": self.coaccessible,
            "e": self.uniform_incoming,
            "f": self.no_inverse_exit,
        }[name]


def check_speciality(a: Automaton) -> SpecialityReport:
    """Evaluate the speciality conditions (a)-(f) and classify the automaton."""
    deterministic = a.is_deterministic
    into = a.in_map()
    out = a.out_map()

    cond_a = len(a.initials) == 1 and not into[next(iter(a.initials))]
    cond_b = len(a.finals) == 1
    cond_c = len(_reachable(a)) == a.n_states
    cond_d = bool(a.finals) and len(_coreachable(a)) == a.n_states

    types: list[Letter | None] = []
    cond_e = True
    for state in range(a.n_states):
        labels = {label for label, _ in into[state]}
        if len(labels) == 1 and None not in labels:
            types.append(next(iter(labels)))
        else:
            types.append(None)
            if labels:
                cond_e = False

    cond_f = True
    for state in range(a.n_states):
        x = types[state]
        if x is not None and any(label == -x for label, _ in out[state]):
            cond_f = False

    kind = SpecialityKind.NOT_SPECIAL
    if deterministic:
        i0 = next(iter(a.initials))
        if cond_b and cond_c and cond_d and cond_e and cond_f and a.finals == {i0}:
            kind = SpecialityKind.SPECIAL_MONOID
        elif cond_a and cond_b and cond_c and cond_d and cond_e:
            if cond_f:
                kind = SpecialityKind.SPECIAL_OVER_GROUP
            else:
                kind = SpecialityKind.SPECIAL_OVER_MONOID
    return SpecialityReport(
        deterministic=deterministic,
        initial_inedge_free=cond_a,
        single_final=cond_b,
        accessible=cond_c,
        coaccessible=cond_d,
        uniform_incoming=cond_e,
        no_inverse_exit=cond_f,
        types=tuple(types),
        kind=kind,
    )


def check_sigma_complete(a: Automaton, kind: str) -> bool:
    """Completeness of the exit labels.

    ``kind="first"`` (special over the group): every non-initial state of
    type x must emit all 2m-1 labels other than x^-1 and the initial state
    must emit all 2m labels.  ``kind="second"`` (special monoid): every state
    of type x must emit all labels other than x^-1.
    """
    report = check_speciality(a)
    letters = set(Alphabet(a.rank).letters())
    out = a.out_map()
    if kind == "first":
        if report.kind is not SpecialityKind.SPECIAL_OVER_GROUP:
            raise KindMismatchError("expected an automaton special over the group")
    elif kind == "second":
        if report.kind is not SpecialityKind.SPECIAL_MONOID:
            raise KindMismatchError("expected a special monoid automaton")
    else:
        raise ValueError(f"unknown completeness kind {kind!r}")
    i0 = a.initial
    for state in range(a.n_states):
        emitted = {label for label, _ in out[state]}
        if kind == "first" and state == i0:
            if emitted != letters:
                return False
            continue
        x = report.types[state]
        if x is None:
            # untyped (inedge-free) states cannot certify completeness
            return False
        if emitted != letters - {-x}:
            return False
    return True


# -- adjacency ---------------------------------------------------------------------


def adjacency_matrix(a: Automaton) -> list[list[int]]:
    """Arrow counts; entry (i, j) counts arrows from i to j."""
    if a.has_epsilon:
        raise EpsilonArrowsError("adjacency matrix requires an epsilon-free automaton")
    matrix = [[0] * a.n_states for _ in range(a.n_states)]
    for src, _, dst in a.arrows:
        matrix[src][dst] += 1
    return matrix


# -- serialization -----------------------------------------------------------------


def to_json_dict(a: Automaton) -> dict:
    names = [a.state_name(s) for s in range(a.n_states)]
    return {
        "rank": a.rank,
        "states": names,
        "initial": [names[s] for s in sorted(a.initials)],
        "finals": [names[s] for s in sorted(a.finals)],
        "transitions": [
            {
                "from": names[src],
                "label": "eps" if label is None else format_letter(label),
                "to": names[dst],
            }
            for src, label, dst in a.arrows
        ],
    }


def from_json_dict(data: dict) -> Automaton:
    names = list(data["states"])
    if len(set(names)) != len(names):
        raise ValueError("duplicate state names")
    return Automaton.make(
        rank=int(data["rank"]),
        states=names,
        arrows=[(t["from"], t["label"], t["to"]) for t in data["transitions"]],
        initials=data["initial"],
        finals=data["finals"],
    )


def dumps(a: Automaton) -> str:
    return json.dumps(to_json_dict(a), indent=2) + "\n"


def loads(text: str) -> Automaton:
    return from_json_dict(json.loads(text))


def save(a: Automaton, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(a))


def load(path: str) -> Automaton:
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read())
