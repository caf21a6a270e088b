"""Exact asymptotic invariants of regular subsets of finite-rank free groups.

The package computes frequency generating functions, Cesàro densities and
λ-measures of regular sets given by finite automata over the symmetrized
alphabet, decomposes regular sets into pieces accepted by special automata
or special monoids, classifies them thick versus exponentially negligible,
and checks every closed form against a brute-force enumeration oracle.
"""

from .automaton import (
    Automaton,
    SpecialityKind,
    SpecialityReport,
    adjacency_matrix,
    check_sigma_complete,
    check_speciality,
    determinize,
    reduced_normalize,
    reduced_word_acceptor,
    split_by_incoming_label,
    trim,
)
from .decompose import (
    Classification,
    Decomposition,
    PieceKind,
    SpecialSplit,
    classify,
    decompose,
    monoid_generators,
    normalize,
    prefix_closure,
    split_saturated,
    suffix_witnesses,
    witness_thick,
)
from .families import Family, make_family
from .measures import (
    AbsorbingChain,
    FidelityReport,
    FrequencySeries,
    MeasureReport,
    adjusted,
    build_absorbing_chain,
    cesaro_density,
    closed_form,
    compose_circ,
    compose_union,
    generating_function,
    lambda_eval,
    lambda_via_chain,
    measure_report,
    star_second_type,
    verify_fidelity,
)
from .oracle import (
    AgreementReport,
    CheckResult,
    FrequencyPrefix,
    compare_series,
    frequencies,
    language,
    set_algebra_check,
)
from .ratfunc import (
    Polynomial,
    RationalFunction,
    parse_rational_function,
    solve_linear,
)
from .words import (
    Alphabet,
    Word,
    circ,
    enumerate_ball,
    enumerate_sphere,
    format_word,
    inverse,
    inverse_word,
    parse_word,
    reduce_word,
    sphere_size,
    word_weight_star,
)

__version__ = "0.1.0"
