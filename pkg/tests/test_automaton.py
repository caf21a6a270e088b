"""Tests for acceptors: constructions, transforms, speciality, serialization."""

import pytest

from fgmeasure.automaton import (
    Automaton,
    SpecialityKind,
    adjacency_matrix,
    check_sigma_complete,
    check_speciality,
    clone_initial_if_entered,
    determinize,
    dumps,
    from_json_dict,
    loads,
    reduced_normalize,
    reduced_word_acceptor,
    split_by_incoming_label,
    to_json_dict,
    trim,
)
from fgmeasure.errors import (
    EmptyLanguageError,
    EpsilonArrowsError,
    KindMismatchError,
    NotDeterministicError,
)
from fgmeasure.oracle import language
from fgmeasure.words import parse_word

from conftest import alternating_automaton, canonical_deterministic


def test_accepts_full_group():
    full = reduced_word_acceptor(2)
    for text in ("", "x1", "x1 x2 X1", "X2 X2 X2"):
        assert full.accepts(parse_word(text))
    # unreduced strings have no path
    assert not full.accepts((1, -1))


def test_accepts_worked_example():
    alt = alternating_automaton()
    assert alt.accepts(parse_word("x1 x2"))
    assert not alt.accepts(parse_word("x2 x1"))
    assert alt.accepts(parse_word("X1 x2 x1 x2"))
    assert not alt.accepts(())


def test_validation_errors():
    with pytest.raises(ValueError):
        Automaton(rank=2, n_states=1, arrows=(), initials=frozenset(), finals=frozenset())
    with pytest.raises(ValueError):
        Automaton(rank=2, n_states=1, arrows=((0, 5, 0),), initials=frozenset({0}), finals=frozenset())
    with pytest.raises(ValueError):
        Automaton(rank=2, n_states=1, arrows=((0, 1, 3),), initials=frozenset({0}), finals=frozenset())


def test_determinize_keeps_deterministic_input():
    alt = alternating_automaton()
    det = determinize(alt)
    assert det.is_deterministic
    assert canonical_deterministic(det) == canonical_deterministic(alt)


def test_determinize_union_of_two_initials():
    a = Automaton.make(
        2, ["p", "q", "f1", "f2"],
        [("p", "x1", "f1"), ("q", "x2", "f2")],
        ["p", "q"], ["f1", "f2"],
    )
    det = determinize(a)
    assert det.is_deterministic
    assert det.n_states == 3
    assert det.accepts((1,)) and det.accepts((2,))
    assert not det.accepts((1, 2))


def test_determinize_epsilon_chain():
    a = Automaton.make(
        2, ["i", "s", "z"],
        [("i", "eps", "s"), ("s", "x1", "z")],
        ["i"], ["z"],
    )
    det = determinize(a)
    assert det.is_deterministic and det.n_states == 2
    assert det.accepts((1,)) and not det.accepts(())


def test_determinize_clones_entered_initial():
    # single state with a loop: the initial subset acquires an inedge
    a = Automaton.make(2, 1, [(0, "x1", 0)], [0], [0])
    det = determinize(a)
    i0 = det.initial
    assert all(dst != i0 for _, _, dst in det.arrows)
    for word in [(), (1,), (1, 1, 1)]:
        assert det.accepts(word)
    assert not det.accepts((2,))


def test_trim_removes_unreachable_island():
    a = Automaton.make(
        2, ["i", "z", "island"],
        [("i", "x1", "z"), ("island", "x2", "island")],
        ["i"], ["z"],
    )
    t = trim(a)
    assert t.n_states == 2
    assert t.accepts((1,))


def test_trim_removes_dead_end():
    a = Automaton.make(
        2, ["i", "z", "sink"],
        [("i", "x1", "z"), ("z", "x2", "sink")],
        ["i"], ["z"],
    )
    t = trim(a)
    assert t.n_states == 2


def test_trim_empty_language():
    a = Automaton.make(2, 2, [(0, "x1", 1)], [0], [])
    with pytest.raises(EmptyLanguageError):
        trim(a)


def test_clone_initial_if_entered_noop():
    alt = alternating_automaton()
    assert clone_initial_if_entered(alt) is alt


def test_split_by_incoming_label_mixed_state():
    # S entered by one x2 arrow and two x1 arrows, with exits x2 and x1:
    # the split makes one copy per incoming label, each keeping both exits
    a = Automaton.make(
        2, ["i", "a", "b", "S", "u", "v"],
        [
            ("i", "x2", "S"),
            ("i", "x1", "a"),
            ("a", "x2", "b"),
            ("a", "x1", "S"),
            ("b", "x1", "S"),
            ("S", "x2", "u"),
            ("S", "x1", "v"),
        ],
        ["i"], ["u", "v"],
    )
    split = split_by_incoming_label(trim(a))
    assert split.is_deterministic
    out = split.out_map()
    into = split.in_map()
    copies = [
        s for s in range(split.n_states)
        if len(out[s]) == 2 and all(dst in split.finals for _, dst in out[s])
    ]
    assert len(copies) == 2
    assert {frozenset(label for label, _ in into[s]) for s in copies} == {
        frozenset({1}),
        frozenset({2}),
    }
    assert sorted(language(split, 5)) == sorted(language(a, 5))
    assert check_speciality(split).uniform_incoming


def test_split_by_incoming_label_requires_deterministic():
    a = Automaton.make(2, 2, [(0, "x1", 1), (0, "x1", 0)], [0], [1])
    with pytest.raises(NotDeterministicError):
        split_by_incoming_label(a)


def test_split_by_incoming_label_uniform_unchanged():
    alt = alternating_automaton()
    split = split_by_incoming_label(alt)
    assert canonical_deterministic(split) == canonical_deterministic(alt)


def test_check_speciality_worked_example():
    report = check_speciality(alternating_automaton())
    assert report.kind is SpecialityKind.SPECIAL_OVER_GROUP
    assert all(report.condition(c) for c in "abcdef")
    # types: s1 is x1-typed, s2 is X1-typed, z0 is x2-typed
    assert report.types == (None, 1, -1, 2)


def test_check_speciality_full_group():
    report = check_speciality(reduced_word_acceptor(2))
    assert report.kind is SpecialityKind.NOT_SPECIAL
    assert not report.single_final
    assert report.initial_inedge_free


def test_check_speciality_single_arrow():
    a = Automaton.make(2, 2, [(0, "x1", 1)], [0], [1])
    assert check_speciality(a).kind is SpecialityKind.SPECIAL_OVER_GROUP


def test_check_speciality_monoid():
    from fgmeasure.families import make_family, thick_monoid

    monoid = make_family(thick_monoid(1), 2)
    assert check_speciality(monoid).kind is SpecialityKind.SPECIAL_MONOID


def test_sigma_complete_examples():
    from fgmeasure.decompose import split_saturated
    from fgmeasure.families import make_family, thick_monoid

    alt = alternating_automaton()
    assert not check_sigma_complete(alt, "first")
    parts = split_saturated(alt)
    assert not check_sigma_complete(parts.a1, "first")
    assert not check_sigma_complete(parts.a2, "second")
    assert not check_sigma_complete(parts.a3, "first")

    monoid = make_family(thick_monoid(1), 2)
    assert check_sigma_complete(monoid, "second")

    single = Automaton.make(2, 2, [(0, "x1", 1)], [0], [1])
    assert not check_sigma_complete(single, "first")
    with pytest.raises(KindMismatchError):
        check_sigma_complete(single, "second")
    with pytest.raises(KindMismatchError):
        check_sigma_complete(monoid, "first")


def test_reduced_normalize_drops_cancelling_path():
    a = Automaton.make(
        2, ["i", "s", "z"],
        [("i", "x1", "s"), ("s", "X1", "z"), ("i", "x2", "z")],
        ["i"], ["z"],
    )
    normalized = reduced_normalize(a)
    assert sorted(language(trim(determinize(normalized)), 4)) == [(2,)]


def test_reduced_normalize_preserves_reduced_acceptor():
    alt = alternating_automaton()
    assert sorted(language(reduced_normalize(alt), 8)) == sorted(language(alt, 8))


def test_reduced_normalize_all_strings_gives_full_group():
    one = Automaton.make(2, 1, [(0, lab, 0) for lab in ("x1", "X1", "x2", "X2")], [0], [0])
    normalized = trim(determinize(reduced_normalize(one)))
    assert sorted(language(normalized, 6)) == sorted(language(reduced_word_acceptor(2), 6))


def test_adjacency_matrix_examples():
    single = Automaton.make(2, 2, [(0, "x1", 1)], [0], [1])
    assert adjacency_matrix(single) == [[0, 1], [0, 0]]

    full = reduced_word_acceptor(2)
    rows = adjacency_matrix(full)
    assert sum(rows[full.initial]) == 4
    assert all(sum(rows[s]) == 3 for s in range(full.n_states) if s != full.initial)

    from fgmeasure.decompose import split_saturated

    a3 = split_saturated(alternating_automaton()).a3
    entries = adjacency_matrix(a3)
    assert a3.n_states == 4
    assert sum(c for row in entries for c in row) == 4

    eps = Automaton.make(2, 2, [(0, "eps", 1)], [0], [1])
    with pytest.raises(EpsilonArrowsError):
        adjacency_matrix(eps)


def test_json_roundtrip():
    alt = alternating_automaton()
    blob = dumps(alt)
    back = loads(blob)
    assert back == alt
    assert dumps(back) == blob

    eps = Automaton.make(2, ["i", "z"], [("i", "eps", "z"), ("i", "x2", "i")], ["i"], ["z"])
    assert loads(dumps(eps)) == eps


def test_json_dict_schema():
    alt = alternating_automaton()
    data = to_json_dict(alt)
    assert data["rank"] == 2
    assert data["states"] == ["i0", "s1", "s2", "z0"]
    assert data["initial"] == ["i0"]
    assert data["finals"] == ["z0"]
    assert {"from": "i0", "label": "x1", "to": "s1"} in data["transitions"]
    assert from_json_dict(data) == alt


def _raw_nfa_samples():
    """Small nondeterministic automata with epsilon arrows, fixed seed."""
    import random

    rng = random.Random(77)
    letters = [1, -1, 2, -2]
    samples = []
    for _ in range(8):
        n = rng.randint(2, 5)
        arrows = []
        for _ in range(rng.randint(3, 12)):
            label = rng.choice(letters + [None])
            arrows.append((rng.randrange(n), label, rng.randrange(n)))
        finals = frozenset(s for s in range(n) if rng.random() < 0.5)
        initials = frozenset({0} | ({1} if n > 1 and rng.random() < 0.3 else set()))
        samples.append(
            Automaton(rank=2, n_states=n, arrows=tuple(arrows), initials=initials, finals=finals)
        )
    return samples


def test_transforms_preserve_reduced_language_on_random_nfas():
    """reduced_normalize, determinize, trim and the label splitting all keep
    the accepted set of reduced words (ball of radius 6)."""
    from fgmeasure.oracle import make_walker
    from fgmeasure.words import enumerate_ball

    for raw in _raw_nfa_samples():
        stages = [raw, reduced_normalize(raw)]
        stages.append(determinize(stages[-1]))
        try:
            stages.append(trim(stages[-1]))
        except EmptyLanguageError:
            walk = make_walker(raw)
            assert not any(walk(w) for w in enumerate_ball(2, 6))
            continue
        stages.append(split_by_incoming_label(stages[-1]))
        walkers = [make_walker(stage) for stage in stages]
        for w in enumerate_ball(2, 6):
            expected = walkers[0](w)
            assert all(walk(w) == expected for walk in walkers[1:]), w


def test_path_counting_identity_on_corpus(corpus):
    """For a trim deterministic reduced-word acceptor the number of accepted
    words of length k equals the initial-to-final entry sum of the k-th
    adjacency power."""
    from fgmeasure.oracle import frequencies

    for a in corpus[:8]:
        matrix = adjacency_matrix(a)
        n = a.n_states
        vector = [1 if s in a.initials else 0 for s in range(n)]
        counts = frequencies(a, 8).counts
        for k in range(9):
            assert sum(vector[s] for s in a.finals) == counts[k], k
            vector = [
                sum(vector[i] * matrix[i][j] for i in range(n)) for j in range(n)
            ]
