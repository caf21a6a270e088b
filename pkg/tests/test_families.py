"""Family constructors versus direct word-level membership predicates."""

import pytest

from fgmeasure.automaton import SpecialityKind, check_speciality, is_trim
from fgmeasure.errors import InvalidFamilyError
from fgmeasure.families import (
    Family,
    ball_complement,
    cone,
    dcone,
    even,
    full,
    gcone,
    make_family,
    nontrivial,
    rcone,
    singleton,
    thick_monoid,
)
from fgmeasure.oracle import frequencies, make_walker
from fgmeasure.words import Word, enumerate_ball


def _starts_with(w: Word, prefix: Word) -> bool:
    return w[: len(prefix)] == prefix


def _ends_with(w: Word, suffix: Word) -> bool:
    return len(w) >= len(suffix) and w[len(w) - len(suffix):] == suffix


def _predicate(family: Family):
    kind, word = family.kind, family.word
    if kind == "full":
        return lambda w: True
    if kind == "nontrivial":
        return lambda w: len(w) > 0
    if kind == "cone":
        return lambda w: _starts_with(w, word)
    if kind == "rcone":
        return lambda w: _ends_with(w, word)
    if kind == "dcone":
        left, right = family.left, family.right
        return lambda w: (
            len(w) >= len(left) + len(right)
            and _starts_with(w, left)
            and _ends_with(w, right)
        )
    if kind == "gcone":
        x = word[0]
        return lambda w: len(w) >= 2 and w[-1] == x and w[0] != -x
    if kind == "thickmonoid":
        x = word[0]
        return lambda w: w == () or (w[-1] == x and w[0] != -x)
    if kind == "ballcomp":
        return lambda w: len(w) >= family.radius
    if kind == "even":
        return lambda w: len(w) % 2 == 0
    if kind == "singleton":
        return lambda w: w == word
    raise AssertionError(kind)


FAMILIES_M2 = [
    full(),
    nontrivial(),
    cone((1,)),
    cone((1, 2)),
    cone((-2, -2, 1)),
    rcone((1,)),
    rcone((2, 1)),
    rcone((1, 1, 2)),
    dcone((1,), (1,)),
    dcone((1,), (-1,)),
    dcone((1,), (2,)),
    dcone((2, 1), (1, -2)),
    dcone((1, 2, 1), (2,)),
    gcone(1),
    gcone(-2),
    thick_monoid(1),
    thick_monoid(-1),
    ball_complement(0),
    ball_complement(1),
    ball_complement(3),
    even(),
    singleton(()),
    singleton((1, -2, 1)),
]


@pytest.mark.parametrize("family", FAMILIES_M2, ids=lambda f: f.describe())
def test_family_membership_matches_predicate_m2(family):
    acceptor = make_family(family, 2)
    assert acceptor.is_deterministic
    assert is_trim(acceptor)
    assert acceptor.accepts_only_reduced()
    walk = make_walker(acceptor)
    predicate = _predicate(family)
    for w in enumerate_ball(2, 6):
        assert walk(w) == predicate(w), w


@pytest.mark.parametrize(
    "family",
    [full(), cone((3,)), dcone((2,), (-3,)), thick_monoid(3), even()],
    ids=lambda f: f.describe(),
)
def test_family_membership_matches_predicate_m3(family):
    acceptor = make_family(family, 3)
    walk = make_walker(acceptor)
    predicate = _predicate(family)
    for w in enumerate_ball(3, 4):
        assert walk(w) == predicate(w), w


def test_thick_monoid_is_special_monoid():
    monoid = make_family(thick_monoid(1), 2)
    assert check_speciality(monoid).kind is SpecialityKind.SPECIAL_MONOID
    # rank 1 still works; the useless letter state is trimmed away
    tiny = make_family(thick_monoid(1), 1)
    walk = make_walker(tiny)
    for w in enumerate_ball(1, 5):
        assert walk(w) == all(letter == 1 for letter in w)


def test_double_cone_sphere_counts():
    counts = frequencies(make_family(dcone((1,), (1,)), 2), 4).counts
    assert counts == (0, 0, 1, 3, 7)


def test_double_cone_bijection_offset():
    same = make_family(dcone((1,), (1,)), 2)
    opposite = make_family(dcone((1,), (-1,)), 2)
    ns = frequencies(same, 6).counts
    no = frequencies(opposite, 6).counts
    for k in range(2, 7):
        assert ns[k] == no[k] + 1


def test_even_subgroup_sphere_hits():
    fp = frequencies(make_family(even(), 2), 3)
    assert fp.frequencies == (1, 0, 1, 0)


def test_invalid_family_specs():
    with pytest.raises(InvalidFamilyError):
        make_family(cone(()), 2)
    with pytest.raises(InvalidFamilyError):
        make_family(dcone((), (1,)), 2)
    with pytest.raises(InvalidFamilyError):
        make_family(dcone((1,), ()), 2)
    with pytest.raises(InvalidFamilyError):
        make_family(cone((1, -1)), 2)  # not reduced
    with pytest.raises(InvalidFamilyError):
        make_family(cone((3,)), 2)  # letter out of range
    with pytest.raises(InvalidFamilyError):
        make_family(ball_complement(-1), 2)
    with pytest.raises(InvalidFamilyError):
        make_family(Family("gcone", word=(1, 2)), 2)
    with pytest.raises(InvalidFamilyError):
        make_family(Family("mystery"), 2)


def test_describe():
    assert cone((1, 2)).describe() == "cone(x1 x2)"
    assert dcone((1,), (-1,)).describe() == "dcone(x1, X1)"
    assert ball_complement(2).describe() == "ballcomp(2)"
    assert singleton(()).describe() == "singleton(1)"
