"""Asymptotic invariants of regular sets in a free group.

The frequency of a set R at length k is |R ∩ S_k| / |S_k|; the generating
function g_R(t) collects these into a rational function, the Cesàro density
is -Res_{t=1} g_R(t), and the λ-measure is Σ f_k = g_R(1) when finite.  The
adjusted companions (g*, λ*) weight a word w by (2m-1)^(-|w|), which makes
cancellation-free products multiplicative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automaton import (
    Automaton,
    SpecialityKind,
    adjacency_matrix,
    check_speciality,
)
from .errors import (
    EmptyLanguageError,
    IdentityInGeneratorsError,
    InconsistentClassificationError,
    NotDeterministicError,
    NotMeasurableError,
    NotReducedError,
    NotSpecialError,
    RankMismatchError,
    RankTooSmallError,
    ThickSetError,
    UnsupportedFamilyError,
)
from .families import (
    BALL_COMPLEMENT,
    CONE,
    DCONE,
    EVEN,
    FULL,
    NONTRIVIAL,
    RCONE,
    THICK_MONOID,
    Family,
    make_family,
)
from .ratfunc import Polynomial, RationalFunction, solve_shared_denominator


@dataclass(frozen=True)
class FrequencySeries:
    """Frequency generating function of one set, tagged with the group rank."""

    g: RationalFunction
    rank: int

    def __post_init__(self) -> None:
        if self.rank < 2:
            raise RankTooSmallError("frequency series need rank at least 2")
        constant = self.g(Fraction(0)) if self.g.den[0] != 0 else None
        if constant not in (0, 1):
            raise ValueError(f"constant term {constant} is not a frequency of the identity")

    @property
    def contains_identity(self) -> bool:
        return self.g(Fraction(0)) == 1

    def coefficients(self, depth: int) -> list[Fraction]:
        return self.g.series(depth)


def generating_function(a: Automaton) -> FrequencySeries:
    """Exact frequency generating function of the accepted language.

    The acceptor must be deterministic, epsilon-free and reduced-safe, so
    that paths from the initial state biject with accepted reduced words.
    With s = t/(2m-1) each length-k path carries weight s^k up to the
    first-letter factor, and summing the fundamental matrix s A (E - s A)^-1
    over initial row and final columns yields the series; the k = 0 term is
    the indicator of the identity.
    """
    m = a.rank
    if m < 2:
        raise RankTooSmallError("generating functions need rank at least 2")
    if a.has_epsilon or not a.is_deterministic:
        raise NotDeterministicError(
            "generating function needs a deterministic epsilon-free acceptor"
        )
    if not a.accepts_only_reduced():
        raise NotReducedError("acceptor admits a cancelling letter pair on a path")
    n = a.n_states
    adj = adjacency_matrix(a)
    q = 2 * m - 1
    # rows of q(E - sA) = qE - tA; the solve gives x = (E - sA)^{-1} 1_finals
    rows = [
        [Polynomial((q if i == j else 0, -adj[i][j])) for j in range(n)]
        for i in range(n)
    ]
    rhs = [Polynomial.constant(q if j in a.finals else 0) for j in range(n)]
    numerators, shared_den = solve_shared_denominator(rows, rhs)
    i0 = a.initial
    acc = Polynomial.zero()
    for j in range(n):
        if adj[i0][j]:
            acc = acc + numerators[j] * adj[i0][j]
    g = RationalFunction(Polynomial.t() * acc, shared_den * (2 * m))
    if i0 in a.finals:
        g = g + 1
    return FrequencySeries(g, m)


def adjusted(gs: FrequencySeries) -> RationalFunction:
    """Adjusted series g*: every positive-length term scaled by 2m/(2m-1),
    the identity term kept at weight one."""
    m = gs.rank
    constant = gs.g(Fraction(0))
    return Fraction(2 * m, 2 * m - 1) * (gs.g - constant) + constant


def compose_union(
    g1: FrequencySeries, g2: FrequencySeries, g12: FrequencySeries
) -> FrequencySeries:
    """Series of a union via inclusion-exclusion: g1 + g2 - g12."""
    if not g1.rank == g2.rank == g12.rank:
        raise RankMismatchError("union operands must share the rank")
    return FrequencySeries(g1.g + g2.g - g12.g, g1.rank)


def compose_circ(g1: FrequencySeries, g2: FrequencySeries) -> FrequencySeries:
    """Series of an unambiguous cancellation-free product: g1 * g2-adjusted."""
    if g1.rank != g2.rank:
        raise RankMismatchError("product operands must share the rank")
    return FrequencySeries(g1.g * adjusted(g2), g1.rank)


def star_second_type(g3: FrequencySeries) -> FrequencySeries:
    """Series of the free monoid on a generator set with series g3:
    the adjusted series of the result is 1/(1 - g3-adjusted)."""
    if g3.g(Fraction(0)) != 0:
        raise IdentityInGeneratorsError("generator set must not contain the identity")
    g2 = 1 + g3.g / (1 - adjusted(g3))
    return FrequencySeries(g2, g3.rank)


def cesaro_density(gs: FrequencySeries) -> Fraction:
    """Cesàro density: minus the residue of the series at t = 1."""
    mu0 = -gs.g.residue_at_one()
    if mu0 < 0:
        raise ValueError("negative density; input is not a frequency series")
    return mu0


def lambda_eval(gs: FrequencySeries) -> Fraction:
    """λ-measure Σ f_k, evaluated as g(1); infinite exactly on thick sets."""
    if gs.g.pole_order_at_one() > 0:
        raise NotMeasurableError("series has a pole at t = 1 (thick set)")
    return gs.g(Fraction(1))


# -- absorbing-chain route to the λ-measure -----------------------------------


@dataclass(frozen=True)
class AbsorbingChain:
    """Exact absorbing walk on a special automaton plus a dead state.

    Every arrow of the automaton carries probability 1/(2m) out of the
    initial state and 1/(2m-1) elsewhere; missing labels lead to the dead
    state, so each transient row sums to one.  The absorption probability
    at the target equals the λ-measure of the accepted language.
    """

    n_states: int  # automaton states plus the dead state (the last index)
    start: int
    target: int
    rows: tuple[tuple[tuple[int, Fraction], ...], ...]

    @property
    def dead(self) -> int:
        return self.n_states - 1

    def absorption_probability(self) -> Fraction:
        transients = [s for s in range(self.n_states) if s not in (self.target, self.dead)]
        index = {s: i for i, s in enumerate(transients)}
        size = len(transients)
        matrix = [[Fraction(0)] * size for _ in range(size)]
        rhs = [Fraction(0)] * size
        for s in transients:
            i = index[s]
            matrix[i][i] += 1
            for dst, weight in self.rows[s]:
                if dst == self.target:
                    rhs[i] += weight
                elif dst in index:
                    matrix[i][index[dst]] -= weight
        solution = _solve_fraction_system(matrix, rhs)
        return solution[index[self.start]]


def _solve_fraction_system(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for k in range(n):
        pivot = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if pivot is None:
            raise ArithmeticError("absorbing chain system is singular")
        aug[k], aug[pivot] = aug[pivot], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [c * inv for c in aug[k]]
        for r in range(n):
            if r != k and aug[r][k]:
                factor = aug[r][k]
                aug[r] = [cr - factor * ck for cr, ck in zip(aug[r], aug[k])]
    return [aug[i][n] for i in range(n)]


def build_absorbing_chain(a: Automaton) -> AbsorbingChain:
    """Markov chain of a special automaton whose final state has no exits."""
    m = a.rank
    if m < 2:
        raise RankTooSmallError("absorbing chains need rank at least 2")
    report = check_speciality(a)
    if report.kind is not SpecialityKind.SPECIAL_OVER_GROUP:
        raise NotSpecialError("absorbing chain needs an automaton special over the group")
    out = a.out_map()
    target = next(iter(a.finals))
    if out[target]:
        raise NotSpecialError("final state of the chain automaton must have no exits")
    i0 = a.initial
    dead = a.n_states
    rows: list[tuple[tuple[int, Fraction], ...]] = []
    for s in range(a.n_states):
        if s == target:
            rows.append(((s, Fraction(1)),))
            continue
        per_arrow = Fraction(1, 2 * m) if s == i0 else Fraction(1, 2 * m - 1)
        entries = [(dst, per_arrow) for _, dst in out[s]]
        total = per_arrow * len(entries)
        if total > 1:
            raise NotSpecialError("state emits more labels than the walk allows")
        if total < 1:
            entries.append((dead, 1 - total))
        rows.append(tuple(entries))
    rows.append(((dead, Fraction(1)),))
    return AbsorbingChain(
        n_states=a.n_states + 1, start=i0, target=target, rows=tuple(rows)
    )


def lambda_via_chain(a: Automaton) -> Fraction:
    """λ-measure of the language of a special automaton by absorption
    probabilities: λ(R) = λ(R1) · λ*(R2) with λ*(R2) = 1/(1 - λ*(R3))."""
    from .decompose import split_saturated

    report = check_speciality(a)
    if report.kind is not SpecialityKind.SPECIAL_OVER_GROUP:
        raise NotSpecialError("chain measure needs an automaton special over the group")
    parts = split_saturated(a)
    lam1 = build_absorbing_chain(parts.a1).absorption_probability()
    if not parts.saturated:
        return lam1
    lam3 = build_absorbing_chain(parts.a3).absorption_probability()
    m = a.rank
    lam3_star = Fraction(2 * m, 2 * m - 1) * lam3
    if lam3_star >= 1:
        raise ThickSetError("monoid part is complete; the set is thick")
    return lam1 / (1 - lam3_star)


# -- tabulated closed forms ------------------------------------------------------


def closed_form(family: Family, m: int) -> RationalFunction:
    """Tabulated closed-form generating function for a named family.

    These are the classical expressions the families are documented to
    satisfy.  They are reported verbatim and not trusted: verify_fidelity
    compares them against the automaton-derived series and surfaces any
    deviation instead of resolving it.
    """
    if m < 2:
        raise RankTooSmallError("closed forms need rank at least 2")
    t = RationalFunction.t()
    one_minus_t = 1 - t
    if family.kind == FULL:
        return 1 / one_minus_t
    if family.kind == NONTRIVIAL:
        return t / one_minus_t
    if family.kind in (CONE, RCONE):
        r = len(family.word)
        return t**r / (2 * m * (2 * m - 1) ** (r - 1)) / one_minus_t
    if family.kind == BALL_COMPLEMENT:
        return t**family.radius / one_minus_t
    if family.kind == EVEN:
        return 1 / (1 - t * t)
    if family.kind == DCONE:
        left, right = family.left, family.right
        base = _dcone_closed_form(m, degenerate=right[0] == -left[-1])
        shift = (t / (2 * m - 1)) ** (len(left) - 1 + len(right) - 1)
        return shift * base
    if family.kind == THICK_MONOID:
        mm = 4 * m * m
        return (
            RationalFunction(Polynomial.monomial(2 * m - 1, 2), Polynomial((mm, -mm)))
            + 1
            + t / (2 * m)
            + t * t / mm
            + t**3 / (2 * m) / RationalFunction(Polynomial((2 * m - 1, -1)))
        )
    raise UnsupportedFamilyError(f"no tabulated closed form for {family.describe()}")


def _dcone_closed_form(m: int, degenerate: bool) -> RationalFunction:
    t = RationalFunction.t()
    mm = 4 * m * m
    head = RationalFunction(Polynomial.monomial(1, 2), Polynomial((mm, -mm)))
    tail_den = RationalFunction(Polynomial((2 * m - 1, -1)))
    if degenerate:
        return head - t * t / mm - t**3 / (2 * m) / tail_den
    return head + t * t / (mm * (2 * m - 1)) + t**3 / (2 * m * (2 * m - 1)) / tail_den


@dataclass(frozen=True)
class FidelityReport:
    """Comparison of a tabulated closed form against the automaton series."""

    family: Family
    rank: int
    depth: int
    computed: RationalFunction
    tabulated: RationalFunction
    first_mismatch: int | None
    computed_value: Fraction | None
    tabulated_value: Fraction | None
    mu0_computed: Fraction
    mu0_tabulated: Fraction

    @property
    def coefficients_agree(self) -> bool:
        return self.first_mismatch is None

    @property
    def mu0_agrees(self) -> bool:
        return self.mu0_computed == self.mu0_tabulated


def verify_fidelity(family: Family, m: int, depth: int = 10) -> FidelityReport:
    """Compare the tabulated closed form of a family with the series computed
    from its canonical acceptor, coefficient by coefficient up to ``depth``."""
    if depth < 2:
        raise ValueError("fidelity comparison needs depth at least 2")
    ground = generating_function(make_family(family, m))
    tabulated = closed_form(family, m)
    ground_coeffs = ground.g.series(depth)
    tab_coeffs = tabulated.series(depth)
    first = next(
        (k for k in range(depth + 1) if ground_coeffs[k] != tab_coeffs[k]), None
    )
    return FidelityReport(
        family=family,
        rank=m,
        depth=depth,
        computed=ground.g,
        tabulated=tabulated,
        first_mismatch=first,
        computed_value=None if first is None else ground_coeffs[first],
        tabulated_value=None if first is None else tab_coeffs[first],
        mu0_computed=cesaro_density(ground),
        mu0_tabulated=-tabulated.residue_at_one(),
    )


# -- bundled report ---------------------------------------------------------------


@dataclass(frozen=True)
class MeasureReport:
    """g(t), Cesàro density, λ-measure and classification of one set."""

    series: FrequencySeries
    mu0: Fraction
    lam: Fraction | None  # None encodes an infinite measure
    thick: bool
    oracle_depth: int

    def to_json_dict(self) -> dict:
        return {
            "g": str(self.series.g),
            "mu0": str(self.mu0),
            "lambda": "infinite" if self.lam is None else str(self.lam),
            "class": "thick" if self.thick else "negligible",
            "oracle_depth": self.oracle_depth,
        }


def measure_report(a: Automaton, oracle_depth: int = 8) -> MeasureReport:
    """Full measurement of the language of ``a``, oracle-checked.

    The series is recomputed from the normalized acceptor, classified by its
    pole at t = 1 with the structural completeness cross-check, and its first
    ``oracle_depth`` coefficients are verified against exhaustive enumeration.
    """
    from .decompose import classify as classify_set
    from .decompose import normalize as normalize_acceptor
    from .oracle import compare_series, frequencies

    if a.rank < 2:
        raise RankTooSmallError("measure reports need rank at least 2")
    try:
        norm = normalize_acceptor(a)
    except EmptyLanguageError:
        series = FrequencySeries(RationalFunction.zero(), a.rank)
        return MeasureReport(series, Fraction(0), Fraction(0), False, oracle_depth)
    classification = classify_set(a)
    gs = generating_function(norm)
    lam = None if classification.thick else lambda_eval(gs)
    agreement = compare_series(gs, frequencies(a, oracle_depth))
    if not agreement.agree:
        raise InconsistentClassificationError(
            f"series disagrees with enumeration at k={agreement.first_mismatch}"
        )
    return MeasureReport(
        series=gs,
        mu0=classification.mu0,
        lam=lam,
        thick=classification.thick,
        oracle_depth=oracle_depth,
    )
