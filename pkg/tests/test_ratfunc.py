"""Tests for the exact polynomial / rational-function kernel."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fgmeasure.errors import (
    HigherOrderPoleError,
    PoleAtPointError,
    PoleAtZeroError,
    SingularMatrixError,
)
from fgmeasure.ratfunc import (
    Polynomial,
    RationalFunction,
    parse_polynomial,
    parse_rational_function,
    solve_linear,
    solve_shared_denominator,
)

T = Polynomial.t()
ONE = Polynomial.one()


def _poly(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    return Polynomial(value)


def rf(num, den=1) -> RationalFunction:
    return RationalFunction(_poly(num), _poly(den))


small_polys = st.lists(st.integers(-6, 6), max_size=5).map(Polynomial)
nonzero_polys = small_polys.filter(lambda p: not p.is_zero)


def test_polynomial_normalizes_trailing_zeros():
    assert Polynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert Polynomial([0, 0]).is_zero
    assert Polynomial().degree == -1


def test_polynomial_arithmetic():
    p = Polynomial([1, 2])  # 1 + 2t
    q = Polynomial([0, 1])  # t
    assert (p + q).coeffs == (1, 3)
    assert (p - p).is_zero
    assert (p * q).coeffs == (0, 1, 2)
    assert (p * 3).coeffs == (3, 6)
    assert p(Fraction(1, 2)) == 2


def test_polynomial_divmod_and_gcd():
    p = Polynomial([-1, 0, 1])  # t^2 - 1
    d = Polynomial([-1, 1])  # t - 1
    q, r = divmod(p, d)
    assert q.coeffs == (1, 1) and r.is_zero
    assert p.gcd(d) == Polynomial([-1, 1])
    assert Polynomial([2, 2]).gcd(Polynomial([4])) == ONE
    with pytest.raises(ZeroDivisionError):
        divmod(p, Polynomial())


def test_rational_function_canonical_form():
    f = rf([0, 0, 1], [0, 0, Fraction(1, 3)])  # t^2 / (t^2/3)
    assert f == RationalFunction(3)
    g = rf([0, 0, 3], [18, 0, -4])
    assert str(g) == "3*t^2 / (18 - 4*t^2)"
    # sign pinned by the denominator's lowest-order coefficient
    h = rf([0, 0, -3], [-18, 0, 4])
    assert h == g
    assert rf([0, 1], [-1, 1]) == rf([0, -1], [1, -1])


def test_rational_arithmetic_examples():
    one_minus_t = Polynomial([1, -1])
    a = rf([1], one_minus_t)
    assert (a + (-a)).is_zero
    b = rf([0, 1], one_minus_t) * rf(one_minus_t, Polynomial([0, 1]))
    assert b == RationalFunction(1)
    c = rf([0, 0, 1], Polynomial([6, -6]))
    assert c + c == rf([0, 0, 1], Polynomial([3, -3]))
    assert str(c + c) == "t^2 / (3 - 3*t)"


def test_division_by_zero_function():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(1) / RationalFunction(0)


def test_series_examples():
    assert rf([1], [1, -2]).series(3) == [1, 2, 4, 8]
    assert rf([1], [1, 0, -1]).series(4) == [1, 0, 1, 0, 1]
    assert rf([0, 1], [1, -1]).series(2) == [0, 1, 1]
    with pytest.raises(PoleAtZeroError):
        rf([1], [0, 1]).series(2)


def test_pole_order_at_one():
    assert rf([1], [1, -1]).pole_order_at_one() == 1
    assert rf([0, 0, 3], [18, 0, -4]).pole_order_at_one() == 0
    assert rf([1], (Polynomial([1, -1]) * Polynomial([1, -1])).coeffs).pole_order_at_one() == 2


def test_residue_at_one():
    assert rf([-1], [-1, 1]).residue_at_one() == -1
    assert rf([1], [1, 0, -1]).residue_at_one() == Fraction(-1, 2)
    assert rf([0, 1], [2, -1]).residue_at_one() == 0
    with pytest.raises(HigherOrderPoleError):
        rf([1], (Polynomial([1, -1]) ** 2).coeffs).residue_at_one()


def test_evaluate():
    f = rf([0, 0, 3], [18, 0, -4])
    assert f(Fraction(1)) == Fraction(3, 14)
    assert rf([1], [1, 0, -1])(Fraction(0)) == 1
    with pytest.raises(PoleAtPointError):
        rf([1], [1, -1])(Fraction(1))


@given(small_polys, nonzero_polys, small_polys, nonzero_polys)
def test_equality_is_cross_multiplication(p1, q1, p2, q2):
    f = RationalFunction(p1, q1)
    g = RationalFunction(p2, q2)
    assert (f == g) == (p1 * q2 == p2 * q1)


@given(small_polys, nonzero_polys, small_polys, nonzero_polys)
def test_series_of_product_is_convolution(p1, q1, p2, q2):
    if q1[0] == 0 or q2[0] == 0:
        return
    f = RationalFunction(p1, q1)
    g = RationalFunction(p2, q2)
    depth = 6
    fs, gs = f.series(depth), g.series(depth)
    convolution = [
        sum(fs[j] * gs[k - j] for j in range(k + 1)) for k in range(depth + 1)
    ]
    assert (f * g).series(depth) == convolution


def test_solve_identity():
    eye = [[RationalFunction(1), RationalFunction(0)], [RationalFunction(0), RationalFunction(1)]]
    b = [rf([0, 1], [1, -1]), RationalFunction(7)]
    assert solve_linear(eye, b) == b


def test_solve_single_equation():
    assert solve_linear([[rf([1, -1])]], [RationalFunction(1)]) == [rf([1], [1, -1])]


def test_solve_loop_automaton_equation():
    # one state with 2m-1 = 3 loops: (1 - 3s) x = 1 at s = t/3
    matrix = [[RationalFunction(1) - 3 * rf([0, Fraction(1, 3)])]]
    assert solve_linear(matrix, [RationalFunction(1)]) == [rf([1], [1, -1])]


def test_solve_singular_matrix():
    row = [RationalFunction(1), RationalFunction(1)]
    with pytest.raises(SingularMatrixError):
        solve_linear([row, row], [RationalFunction(0), RationalFunction(1)])


@given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=2, max_size=2), st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_solve_then_multiply_back(entries, rhs_consts):
    # entries give linear polynomials c + c't on a 2x2 system
    matrix = [
        [RationalFunction(Polynomial([entries[i][j], i + j])) for j in range(2)]
        for i in range(2)
    ]
    rhs = [RationalFunction(c) for c in rhs_consts]
    try:
        solution = solve_linear(matrix, rhs)
    except SingularMatrixError:
        return
    for i in range(2):
        acc = RationalFunction(0)
        for j in range(2):
            acc = acc + matrix[i][j] * solution[j]
        assert acc == rhs[i]


def test_solve_shared_denominator_matches_solve_linear():
    matrix_polys = [[Polynomial([2, -1]), Polynomial([1])], [Polynomial([0]), Polynomial([1, 1])]]
    rhs_polys = [Polynomial([1]), Polynomial([0, 1])]
    numerators, den = solve_shared_denominator(matrix_polys, rhs_polys)
    wrapped = solve_linear(
        [[RationalFunction(p) for p in row] for row in matrix_polys],
        [RationalFunction(p) for p in rhs_polys],
    )
    assert [RationalFunction(n, den) for n in numerators] == wrapped


def test_format_and_parse_roundtrip():
    samples = [
        rf([1], [1, -1]),
        rf([0, 0, 3], [18, 0, -4]),
        RationalFunction(0),
        RationalFunction(1),
        rf([0, 1]),
        rf([0, 0, 1], [12, -12]),
        rf([-1, 0, 2], [5]),
    ]
    for f in samples:
        assert parse_rational_function(str(f)) == f
    assert parse_polynomial("18 - 4*t^2") == Polynomial([18, 0, -4])
    assert parse_polynomial("- t + 1") == Polynomial([1, -1])
    with pytest.raises(ValueError):
        parse_polynomial("t^^2")
    with pytest.raises(ValueError):
        parse_polynomial("")
