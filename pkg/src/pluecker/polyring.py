"""Exact polynomials in a single formal symbol ``d`` over the rationals.

Every symbolic integral in the package lands in this ring: coefficients are
:class:`fractions.Fraction` and nothing is ever rounded.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction]

#: Degree reported for the zero polynomial.
ZERO_DEGREE = -1


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class FormalPolynomial:
    """Polynomial in ``d`` stored as a tuple of coefficients, index = power.

    Instances are immutable and kept in canonical form (no trailing zeros),
    so structural equality is polynomial equality.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, value: Scalar) -> "FormalPolynomial":
        return cls((value,))

    @classmethod
    def symbol(cls) -> "FormalPolynomial":
        return cls((0, 1))

    @classmethod
    def coerce(cls, value: Union["FormalPolynomial", Scalar]) -> "FormalPolynomial":
        if isinstance(value, FormalPolynomial):
            return value
        return cls.constant(value)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1 if self._coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    def __getitem__(self, power: int) -> Fraction:
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return Fraction(0)

    # ring arithmetic -----------------------------------------------------
    def __add__(self, other):
        try:
            other = FormalPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return FormalPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return FormalPolynomial(-c for c in self._coeffs)

    def __sub__(self, other):
        try:
            other = FormalPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = FormalPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return FormalPolynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return FormalPolynomial(out)

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "FormalPolynomial":
        f = _as_fraction(factor)
        return FormalPolynomial(c * f for c in self._coeffs)

    def __truediv__(self, other):
        # Division by scalars only; no polynomial division in this ring.
        if isinstance(other, FormalPolynomial):
            if not other.is_constant() or other.is_zero():
                return NotImplemented
            other = other[0]
        return self.scale(1 / _as_fraction(other))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = FormalPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FormalPolynomial):
            return self._coeffs == other._coeffs
        try:
            return self._coeffs == FormalPolynomial.coerce(other)._coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __call__(self, at: Scalar) -> Fraction:
        return evaluate(self, at)

    def __repr__(self):
        return f"FormalPolynomial({render(self)!r})"

    def __str__(self):
        return render(self)


def add(p: FormalPolynomial, q: Union[FormalPolynomial, Scalar]) -> FormalPolynomial:
    return p + q


def mul(p: FormalPolynomial, q: Union[FormalPolynomial, Scalar]) -> FormalPolynomial:
    return p * q


def neg(p: FormalPolynomial) -> FormalPolynomial:
    return -p


def scale(p: FormalPolynomial, factor: Scalar) -> FormalPolynomial:
    return p.scale(factor)


def evaluate(p: FormalPolynomial, at: Scalar) -> Fraction:
    """Horner evaluation at an exact rational point."""
    x = _as_fraction(at)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def product(factors: Iterable[FormalPolynomial]) -> FormalPolynomial:
    return reduce(lambda a, b: a * b, factors, FormalPolynomial.constant(1))


def equals_expansion(factored: Sequence[FormalPolynomial], expanded: FormalPolynomial) -> bool:
    """True iff the product of ``factored`` is exactly ``expanded``."""
    return product(factored) == expanded


def _render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render(p: FormalPolynomial, symbol: str = "d") -> str:
    """Render in decreasing degree, e.g. ``d^4 - 2*d^3 - 9*d^2 + 18*d``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for power in range(p.degree, -1, -1):
        c = p[power]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if power == 0:
            body = _render_rational(mag)
        else:
            mono = symbol if power == 1 else f"{symbol}^{power}"
            body = mono if mag == 1 else f"{_render_rational(mag)}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def render_factored(factors: Sequence[FormalPolynomial], symbol: str = "d") -> str:
    """Juxtapose factors, parenthesising the non-monomial ones: ``d(d-2)(d+3)``."""
    out = []
    for f in factors:
        text = render(f, symbol)
        out.append(text if len(f.coeffs) - sum(c == 0 for c in f.coeffs) == 1 else "(" + text.replace(" ", "") + ")")
    return "".join(out)


d = FormalPolynomial.symbol()
