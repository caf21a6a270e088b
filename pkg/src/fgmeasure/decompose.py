"""Decomposition of regular sets into special pieces and thickness tests.

Any acceptor is first normalized (reduced product, subset construction,
trimming, incoming-label splitting); the result is deterministic with an
inedge-free initial state and uniformly-typed states, so restricting to a
single final state yields an automaton special over the group.  A special
automaton whose final state has exits splits further into a first-type
prefix part, a second-type monoid part and its third-type generator part.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .automaton import (
    Automaton,
    SpecialityKind,
    check_sigma_complete,
    check_speciality,
    determinize,
    dumps as automaton_dumps,
    reduced_normalize,
    split_by_incoming_label,
    trim,
)
from .errors import (
    EmptyLanguageError,
    HigherOrderPoleError,
    InconsistentClassificationError,
    KindMismatchError,
    NotSpecialError,
)
from .words import Word, circ, inverse_word, word_key


class PieceKind(Enum):
    SPECIAL_OVER_GROUP = "special"
    SPECIAL_MONOID = "monoid"
    TRIVIAL_IDENTITY = "identity"


@dataclass(frozen=True)
class Decomposition:
    """Pairwise disjoint pieces whose union is the source language."""

    source: Automaton
    pieces: tuple[tuple[Automaton, PieceKind], ...]


def normalize(a: Automaton) -> Automaton:
    """Canonical pipeline: reduced product, subset construction, trim,
    incoming-label splitting.  Preserves the language of reduced words."""
    return split_by_incoming_label(trim(determinize(reduced_normalize(a))))


def _identity_acceptor(rank: int) -> Automaton:
    return Automaton(
        rank=rank,
        n_states=1,
        arrows=(),
        initials=frozenset({0}),
        finals=frozenset({0}),
        names=("1",),
    )


def decompose(a: Automaton) -> Decomposition:
    """Split the language into pieces accepted by special automata, plus a
    trivial identity piece when the identity is accepted.

    Each piece keeps the paths from the initial state to one final state of
    the normalized acceptor; determinism makes the pieces pairwise disjoint.
    """
    norm = normalize(a)  # EmptyLanguageError propagates
    i0 = norm.initial
    pieces: list[tuple[Automaton, PieceKind]] = []
    for final in sorted(norm.finals):
        if final == i0:
            pieces.append((_identity_acceptor(norm.rank), PieceKind.TRIVIAL_IDENTITY))
            continue
        piece = trim(norm.with_finals({final}))
        report = check_speciality(piece)
        if report.kind is not SpecialityKind.SPECIAL_OVER_GROUP:
            raise InconsistentClassificationError(
                "normalization produced a non-special piece"
            )
        pieces.append((piece, PieceKind.SPECIAL_OVER_GROUP))
    return Decomposition(source=a, pieces=tuple(pieces))


def save_decomposition(dec: Decomposition, directory: str, genfuncs: bool = True) -> dict:
    """Write piece automata plus a manifest into ``directory``."""
    from .measures import generating_function

    os.makedirs(directory, exist_ok=True)
    manifest: dict = {"pieces": []}
    for i, (piece, kind) in enumerate(dec.pieces):
        filename = f"piece_{i}.json"
        with open(os.path.join(directory, filename), "w", encoding="utf-8") as handle:
            handle.write(automaton_dumps(piece))
        entry = {"file": filename, "kind": kind.value}
        if genfuncs:
            entry["g"] = str(generating_function(piece).g)
        manifest["pieces"].append(entry)
    import json

    with open(os.path.join(directory, "manifest.json"), "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2)
        handle.write("\n")
    return manifest


# -- saturated splitting -------------------------------------------------------


@dataclass(frozen=True)
class SpecialSplit:
    """First/second/third-type parts of the language of a special automaton.

    For a saturated automaton the language factors unambiguously as
    L(a1) ∘ L(a2), the monoid L(a2) is the iterated cancellation-free
    product of L(a3), and a3 accepts the first-return loops at the base.
    """

    a1: Automaton
    a2: Automaton | None
    a3: Automaton | None
    saturated: bool


def split_saturated(a: Automaton) -> SpecialSplit:
    """Split off the return monoid at the final state of a special automaton."""
    report = check_speciality(a)
    if report.kind is not SpecialityKind.SPECIAL_OVER_GROUP:
        raise NotSpecialError("splitting expects an automaton special over the group")
    z0 = next(iter(a.finals))
    out = a.out_map()
    if not out[z0]:
        return SpecialSplit(a1=a, a2=None, a3=None, saturated=False)
    first = trim(
        Automaton(
            rank=a.rank,
            n_states=a.n_states,
            arrows=tuple(arrow for arrow in a.arrows if arrow[0] != z0),
            initials=a.initials,
            finals=a.finals,
            names=a.names,
        )
    )
    reach = {z0}
    queue = deque([z0])
    while queue:
        for _, dst in out[queue.popleft()]:
            if dst not in reach:
                reach.add(dst)
                queue.append(dst)
    second = Automaton(
        rank=a.rank,
        n_states=a.n_states,
        arrows=a.arrows,
        initials=frozenset({z0}),
        finals=frozenset({z0}),
        names=a.names,
    ).restrict(reach)
    third = split_monoid_base(second)
    return SpecialSplit(a1=first, a2=second, a3=third, saturated=True)


def split_monoid_base(a2: Automaton) -> Automaton:
    """Split the coinciding initial/final state of a monoid automaton into an
    inedge-free initial and an exit-free final; accepts the first-return
    loop words of the monoid."""
    if len(a2.initials) != 1 or a2.finals != a2.initials:
        raise KindMismatchError("expected coinciding initial and final state")
    base = next(iter(a2.initials))
    start = a2.n_states
    final = a2.n_states + 1

    def redirect(src: int, dst: int) -> tuple[int, int]:
        return (start if src == base else src, final if dst == base else dst)

    arrows = []
    for src, label, dst in a2.arrows:
        new_src, new_dst = redirect(src, dst)
        arrows.append((new_src, label, new_dst))
    names = None
    if a2.names:
        names = a2.names + (a2.state_name(base) + ">", a2.state_name(base) + "<")
    raw = Automaton(
        rank=a2.rank,
        n_states=a2.n_states + 2,
        arrows=tuple(arrows),
        initials=frozenset({start}),
        finals=frozenset({final}),
        names=names,
    )
    try:
        return trim(raw)
    except EmptyLanguageError:
        # trivial monoid: the loop language is empty
        return raw.restrict({start, final})


def monoid_generators(a2: Automaton, depth: int) -> tuple[Word, ...]:
    """Free generators of a monoid language up to ``depth``: the loop words
    that do not factor as a cancellation-free product of two shorter ones."""
    from .oracle import language

    report = check_speciality(a2)
    if report.kind is not SpecialityKind.SPECIAL_MONOID:
        raise KindMismatchError("generator extraction expects a special monoid automaton")
    loops = language(split_monoid_base(a2), depth)
    pool = set(loops)
    generators = [
        w
        for w in loops
        if not any(w[:i] in pool and w[i:] in pool for i in range(1, len(w)))
    ]
    return tuple(sorted(generators, key=lambda w: (len(w), word_key(w))))


def prefix_closure(a: Automaton) -> Automaton:
    """Acceptor of all prefixes of accepted words: every useful state is final."""
    trimmed = trim(a)
    return trimmed.with_finals(range(trimmed.n_states))


# -- classification ---------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    thick: bool
    mu0: Fraction


def _complete_monoid_pieces(dec: Decomposition) -> list[tuple[Automaton, SpecialSplit]]:
    """Saturated pieces whose return monoid is exit-complete."""
    found = []
    for piece, kind in dec.pieces:
        if kind is not PieceKind.SPECIAL_OVER_GROUP:
            continue
        parts = split_saturated(piece)
        if parts.saturated and check_sigma_complete(parts.a2, "second"):
            found.append((piece, parts))
    return found


def classify(a: Automaton) -> Classification:
    """Thick (positive Cesàro density) or exponentially negligible.

    The pole of the generating function at t = 1 decides; the structural
    criterion (existence of a complete return monoid among the pieces) is
    evaluated as a cross-check and any disagreement is reported as an error.
    """
    from .measures import cesaro_density, generating_function

    try:
        dec = decompose(a)
    except EmptyLanguageError:
        return Classification(thick=False, mu0=Fraction(0))
    norm = normalize(a)
    gs = generating_function(norm)
    order = gs.g.pole_order_at_one()
    if order > 1:
        raise HigherOrderPoleError(
            f"pole of order {order} at t = 1; not a regular frequency series"
        )
    pole_thick = order == 1
    struct_thick = bool(_complete_monoid_pieces(dec))
    if pole_thick != struct_thick:
        raise InconsistentClassificationError(
            f"pole test says thick={pole_thick} but completeness says {struct_thick}"
        )
    mu0 = cesaro_density(gs) if pole_thick else Fraction(0)
    if pole_thick and mu0 <= 0:
        raise InconsistentClassificationError("simple pole with non-positive density")
    return Classification(thick=pole_thick, mu0=mu0)


def witness_thick(a: Automaton, depth: int = 6) -> tuple[Word, Automaton] | None:
    """For a thick set, a word w and a complete monoid acceptor T with
    w ∘ L(T) inside the language (enumeration-checked to ``depth``);
    None for a negligible set."""
    from .oracle import language

    if not classify(a).thick:
        return None
    dec = decompose(a)
    for piece, parts in _complete_monoid_pieces(dec):
        prefix_words = language(parts.a1, parts.a1.n_states)
        if not prefix_words:
            continue
        w = min(prefix_words, key=lambda u: (len(u), word_key(u)))
        monoid = parts.a2
        budget = max(depth - len(w), 0)
        for tail in language(monoid, budget):
            if not a.accepts(circ(w, tail)):
                raise InconsistentClassificationError(
                    "monoid witness is not contained in the language"
                )
        return (w, monoid)
    raise InconsistentClassificationError("thick set without a complete monoid piece")


def suffix_witnesses(a3: Automaton) -> tuple[Word, ...]:
    """Inverses of the labels of simple paths into the final state of a
    third-type automaton, one bundle over all start states."""
    report = check_speciality(a3)
    if report.kind is not SpecialityKind.SPECIAL_OVER_GROUP:
        raise KindMismatchError("expected a third-type automaton")
    z3 = next(iter(a3.finals))
    out = a3.out_map()
    if out[z3]:
        raise KindMismatchError("third-type automata have an exit-free final state")
    words: set[Word] = set()

    def explore(state: int, visited: frozenset[int], acc: Word) -> None:
        if state == z3:
            words.add(inverse_word(acc))
            return
        for label, dst in out[state]:
            if dst not in visited:
                explore(dst, visited | {dst}, acc + (label,))

    for state in range(a3.n_states):
        explore(state, frozenset({state}), ())
    return tuple(sorted(words, key=lambda w: (len(w), word_key(w))))
