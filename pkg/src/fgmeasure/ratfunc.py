"""Exact univariate arithmetic in the indeterminate t.

Polynomials carry arbitrary-precision rational coefficients; rational
functions are kept in a unique canonical form (coprime integer-coefficient
numerator and denominator, denominator's lowest-order coefficient positive),
so equality of values is equality of representations.  The linear solver is
fraction-free: rows are cleared to integer polynomials and eliminated by the
Bareiss determinant recurrence, which keeps every intermediate value a minor
of the input matrix.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    HigherOrderPoleError,
    PoleAtPointError,
    PoleAtZeroError,
    SingularMatrixError,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Polynomial:
    """Dense polynomial over exact rationals, coefficients indexed by power."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] | Polynomial = ()) -> None:
        if isinstance(coeffs, Polynomial):
            self.coeffs = coeffs.coeffs
            return
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def t(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Fraction | int) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, c: Fraction | int, power: int) -> "Polynomial":
        return cls((0,) * power + (c,))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return _ZERO

    def __iter__(self):
        return iter(self.coeffs)

    def __call__(self, point: Fraction | int) -> Fraction:
        value = _ZERO
        for c in reversed(self.coeffs):
            value = value * point + c
        return value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Polynomial":
        if power < 0:
            raise ValueError("negative power")
        out = Polynomial.one()
        for _ in range(power):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.coeffs[-1]
        quot = [_ZERO] * max(0, len(rem) - dd)
        for k in range(len(rem) - dd - 1, -1, -1):
            c = rem[k + dd] / lead
            if c:
                quot[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        if a.is_zero:
            return a
        return a * (1 / a.coeffs[-1])

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Render with ascending powers, e.g. ``18 - 4*t^2``."""
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for power, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = _format_coeff(mag)
        else:
            var = "t" if power == 1 else f"t^{power}"
            body = var if mag == 1 else f"{_format_coeff(mag)}*{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TERM = re.compile(
    r"""^
        (?P<coeff>[0-9]+(?:/[0-9]+)?)?
        (?P<star>\*)?
        (?P<var>t(?:\^(?P<power>[0-9]+))?)?
    $""",
    re.VERBOSE,
)


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of :func:`format_polynomial`."""
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty polynomial text")
    if compact == "0":
        return Polynomial.zero()
    pieces = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(pieces) != compact:
        raise ValueError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, Fraction] = {}
    for piece in pieces:
        sign = 1
        body = piece
        if body[0] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        match = _TERM.match(body)
        if match is None or (match.group("coeff") is None and match.group("var") is None):
            raise ValueError(f"cannot parse term {piece!r} in {text!r}")
        coeff = Fraction(match.group("coeff")) if match.group("coeff") else _ONE
        if match.group("var") is None:
            power = 0
        else:
            power = int(match.group("power")) if match.group("power") else 1
        coeffs[power] = coeffs.get(power, _ZERO) + sign * coeff
    out = [_ZERO] * (max(coeffs) + 1)
    for power, c in coeffs.items():
        out[power] = c
    return Polynomial(out)


_T_MINUS_ONE = Polynomial((-1, 1))


class RationalFunction:
    """Quotient of polynomials in t, stored canonically.

    The canonical form has coprime numerator and denominator with integer
    coefficients whose contents are coprime, and the lowest-order nonzero
    coefficient of the denominator is positive.  Two equal functions are
    therefore structurally identical.
    """

    __slots__ = ("num", "den")

    def __init__(
        self,
        num: "Polynomial | RationalFunction | Fraction | int" = 0,
        den: "Polynomial | Fraction | int" = 1,
    ) -> None:
        if isinstance(num, RationalFunction):
            if den != 1:
                raise ValueError("cannot re-divide a rational function literal")
            self.num, self.den = num.num, num.den
            return
        p = num if isinstance(num, Polynomial) else Polynomial.constant(num)
        q = den if isinstance(den, Polynomial) else Polynomial.constant(den)
        self.num, self.den = _canonical(p, q)

    @classmethod
    def t(cls) -> "RationalFunction":
        return cls(Polynomial.t())

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls()

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(1)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Polynomial)):
            return self == RationalFunction(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def _coerce(self, other: object) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Polynomial)):
            return RationalFunction(other)
        return None

    def __add__(self, other: object) -> "RationalFunction":
        rf = self._coerce(other)
        if rf is None:
            return NotImplemented
        return RationalFunction(
            self.num * rf.den + rf.num * self.den, self.den * rf.den
        )

    __radd__ = __add__

    def __sub__(self, other: object) -> "RationalFunction":
        rf = self._coerce(other)
        if rf is None:
            return NotImplemented
        return self + (-rf)

    def __rsub__(self, other: object) -> "RationalFunction":
        rf = self._coerce(other)
        if rf is None:
            return NotImplemented
        return rf - self

    def __mul__(self, other: object) -> "RationalFunction":
        rf = self._coerce(other)
        if rf is None:
            return NotImplemented
        return RationalFunction(self.num * rf.num, self.den * rf.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RationalFunction":
        rf = self._coerce(other)
        if rf is None:
            return NotImplemented
        if rf.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * rf.den, self.den * rf.num)

    def __rtruediv__(self, other: object) -> "RationalFunction":
        rf = self._coerce(other)
        if rf is None:
            return NotImplemented
        return rf / self

    def __pow__(self, power: int) -> "RationalFunction":
        if power < 0:
            return RationalFunction.one() / self ** (-power)
        out = RationalFunction.one()
        for _ in range(power):
            out = out * self
        return out

    def __call__(self, point: Fraction | int) -> Fraction:
        bottom = self.den(point)
        if bottom == 0:
            raise PoleAtPointError(f"pole at t = {point}")
        return self.num(point) / bottom

    def series(self, depth: int) -> list[Fraction]:
        """Taylor coefficients c_0..c_depth of the expansion at t = 0."""
        q0 = self.den[0]
        if q0 == 0:
            raise PoleAtZeroError("denominator vanishes at t = 0")
        out: list[Fraction] = []
        for k in range(depth + 1):
            acc = self.num[k]
            for j in range(1, k + 1):
                qj = self.den[j]
                if qj:
                    acc -= qj * out[k - j]
            out.append(acc / q0)
        return out

    def pole_order_at_one(self) -> int:
        """Multiplicity of t = 1 as a root of the denominator."""
        order = 0
        den = self.den
        while not den.is_zero and den(1) == 0:
            den = den // _T_MINUS_ONE
            order += 1
        return order

    def residue_at_one(self) -> Fraction:
        """lim (t-1) f(t) at t = 1; zero when analytic there."""
        order = self.pole_order_at_one()
        if order > 1:
            raise HigherOrderPoleError(f"pole of order {order} at t = 1")
        if order == 0:
            return _ZERO
        reduced = self.den // _T_MINUS_ONE
        return self.num(1) / reduced(1)

    def __str__(self) -> str:
        if self.den == Polynomial.one():
            return format_polynomial(self.num)
        den_text = format_polynomial(self.den)
        if self.den.degree > 0:
            den_text = f"({den_text})"
        return f"{format_polynomial(self.num)} / {den_text}"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def _canonical(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    if num.is_zero:
        return Polynomial.zero(), Polynomial.one()
    g = num.gcd(den)
    if g.degree > 0:
        num, den = num // g, den // g
    # clear all coefficient denominators, then strip the shared integer content
    scale = 1
    for c in num.coeffs + den.coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    num, den = num * scale, den * scale
    content = 0
    for c in num.coeffs + den.coeffs:
        content = math.gcd(content, int(c))
    if content > 1:
        inv = Fraction(1, content)
        num, den = num * inv, den * inv
    low = next(c for c in den.coeffs if c != 0)
    if low < 0:
        num, den = -num, -den
    return num, den


def parse_rational_function(text: str) -> RationalFunction:
    """Parse the canonical rendering ``P`` or ``P / (Q)``."""
    if " / " in text:
        num_text, den_text = text.split(" / ", 1)
        den_text = den_text.strip()
        if den_text.startswith("(") and den_text.endswith(")"):
            den_text = den_text[1:-1]
        return RationalFunction(parse_polynomial(num_text), parse_polynomial(den_text))
    return RationalFunction(parse_polynomial(text))


# -- fraction-free linear algebra -------------------------------------------
#
# Integer polynomials are handled below as bare coefficient lists to keep the
# elimination inner loop fast; the Bareiss recurrence guarantees every
# division in sight is exact over Z[t].

_IntPoly = list[int]


def _ip_trim(a: _IntPoly) -> _IntPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ip_mul(a: _IntPoly, b: _IntPoly) -> _IntPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _ip_trim(out)

def _ip_sub(a: _IntPoly, b: _IntPoly) -> _IntPoly:
    out = list(a) + [0] * (len(b) - len(a))
    for i, cb in enumerate(b):
        out[i] -= cb
    return _ip_trim(out)


def _ip_div_exact(a: _IntPoly, b: _IntPoly) -> _IntPoly:
    if not b:
        raise ZeroDivisionError("integer polynomial division by zero")
    if not a:
        return []
    rem = list(a)
    db, lead = len(b) - 1, b[-1]
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - db - 1, -1, -1):
        c, r = divmod(rem[k + db], lead)
        if r:
            raise ArithmeticError("inexact division in fraction-free elimination")
        if c:
            quot[k] = c
            for j, cb in enumerate(b):
                rem[k + j] -= c * cb
    if _ip_trim(rem):
        raise ArithmeticError("inexact division in fraction-free elimination")
    return _ip_trim(quot)


def _to_int_rows(
    matrix: Sequence[Sequence[Polynomial]], rhs: Sequence[Polynomial]
) -> list[list[_IntPoly]]:
    rows = []
    for row, b in zip(matrix, rhs):
        scale = 1
        for p in (*row, b):
            for c in p.coeffs:
                scale = scale * c.denominator // math.gcd(scale, c.denominator)
        out = []
        for p in (*row, b):
            out.append(_ip_trim([int(c * scale) for c in p.coeffs]))
        rows.append(out)
    return rows


def solve_shared_denominator(
    matrix: Sequence[Sequence[Polynomial]], rhs: Sequence[Polynomial]
) -> tuple[list[Polynomial], Polynomial]:
    """Solve M x = b over polynomials, returning numerators and one shared
    denominator (the Bareiss determinant); nothing is reduced to lowest terms.
    """
    n = len(matrix)
    if n == 0:
        return [], Polynomial.one()
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("matrix must be square and match the right-hand side")
    aug = _to_int_rows(matrix, rhs)
    prev: _IntPoly = [1]
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if aug[r][k]), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        pivot = aug[k][k]
        for i in range(k + 1, n):
            row, lead = aug[i], aug[i][k]
            for j in range(k + 1, n + 1):
                row[j] = _ip_div_exact(
                    _ip_sub(_ip_mul(pivot, row[j]), _ip_mul(lead, aug[k][j])), prev
                )
            row[k] = []
        prev = pivot
    det = aug[n - 1][n - 1]
    numerators: list[_IntPoly] = [[] for _ in range(n)]
    for i in range(n - 1, -1, -1):
        acc = _ip_mul(aug[i][n], det)
        for j in range(i + 1, n):
            acc = _ip_sub(acc, _ip_mul(aug[i][j], numerators[j]))
        numerators[i] = _ip_div_exact(acc, aug[i][i])
    return [Polynomial(nu) for nu in numerators], Polynomial(det)


def solve_linear(
    matrix: Sequence[Sequence[RationalFunction]], rhs: Sequence[RationalFunction]
) -> list[RationalFunction]:
    """Exact solution of M x = b over rational functions, in canonical form."""
    n = len(matrix)
    poly_rows: list[list[Polynomial]] = []
    poly_rhs: list[Polynomial] = []
    for row, b in zip(matrix, rhs):
        if len(row) != n or len(rhs) != n:
            raise ValueError("matrix must be square and match the right-hand side")
        common = Polynomial.one()
        for entry in (*row, b):
            g = common.gcd(entry.den)
            common = common * (entry.den // g)
        poly_rows.append([entry.num * (common // entry.den) for entry in row])
        poly_rhs.append(b.num * (common // b.den))
    numerators, den = solve_shared_denominator(poly_rows, poly_rhs)
    return [RationalFunction(nu, den) for nu in numerators]
