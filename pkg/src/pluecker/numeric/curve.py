"""Homogeneous plane curves with exact rational coefficients."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping

import numpy as np

Monomial = tuple[int, int, int]
VARIABLES = "xyz"


class CurveError(ValueError):
    """Invalid curve input."""


class CurveSyntaxError(CurveError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")


# --------------------------------------------------------------------------
# exact trivariate polynomials (dict monomial -> Fraction)

Poly = dict[Monomial, Fraction]


def poly_add(p: Mapping[Monomial, Fraction], q: Mapping[Monomial, Fraction], sign: int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, Fraction(0)) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_mul(p: Mapping[Monomial, Fraction], q: Mapping[Monomial, Fraction]) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            out[m] = out.get(m, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c}


def poly_diff(p: Mapping[Monomial, Fraction], var: int) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        if m[var]:
            e = list(m)
            e[var] -= 1
            out[tuple(e)] = c * m[var]
    return out


def _det3(a):
    return poly_add(
        poly_add(
            poly_mul(a[0][0], poly_add(poly_mul(a[1][1], a[2][2]), poly_mul(a[1][2], a[2][1]), -1)),
            poly_mul(a[0][1], poly_add(poly_mul(a[1][0], a[2][2]), poly_mul(a[1][2], a[2][0]), -1)),
            -1,
        ),
        poly_mul(a[0][2], poly_add(poly_mul(a[1][0], a[2][1]), poly_mul(a[1][1], a[2][0]), -1)),
    )


class FloatPoly:
    """Vectorised complex evaluation of a homogeneous trivariate polynomial."""

    def __init__(self, poly: Mapping[Monomial, Fraction], degree: int):
        self.degree = degree
        items = sorted(poly.items())
        self.exps = np.array([m for m, _ in items], dtype=np.int64).reshape(-1, 3)
        self.coefs = np.array([complex(c) for _, c in items], dtype=np.complex128)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at ``points`` of shape (..., 3)."""
        pts = np.asarray(points, dtype=np.complex128)
        if len(self.coefs) == 0:
            return np.zeros(pts.shape[:-1], dtype=np.complex128)
        k = np.arange(self.degree + 1)
        powers = pts[..., :, None] ** k  # (..., 3, degree+1)
        terms = (
            powers[..., 0, self.exps[:, 0]]
            * powers[..., 1, self.exps[:, 1]]
            * powers[..., 2, self.exps[:, 2]]
        )
        # Accumulate term by term: both ``terms @ coefs`` and ``np.sum`` choose
        # their summation order from the batch shape, which would make results
        # depend on how starts are chunked.
        out = terms[..., 0] * self.coefs[0]
        for j in range(1, len(self.coefs)):
            out = out + terms[..., j] * self.coefs[j]
        return out

    def restrict(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Coefficients (index = power of t) of ``f(A + t B)`` for batched A, B of shape (N, 3).

        Samples at the roots of unity and inverts with an FFT, which is
        unitary and therefore well conditioned.
        """
        return restrict_batch([self], [None], A, B)


def _roots_of_unity(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def restrict_batch(polys, weights, A, B, degree: int | None = None) -> np.ndarray:
    """Coefficients of ``sum_i w_i * polys[i](A + t B)`` with per-row weights ``w_i`` (N,) or None."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    d = degree if degree is not None else max(p.degree for p in polys)
    roots = _roots_of_unity(d + 1)
    pts = A[:, None, :] + roots[None, :, None] * B[:, None, :]
    vals = np.zeros(pts.shape[:2], dtype=np.complex128)
    for p, w in zip(polys, weights):
        v = p(pts)
        vals += v if w is None else w[:, None] * v
    return np.fft.fft(vals, axis=1) / (d + 1)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneCurve:
    """``f(x, y, z) = 0`` for a nonzero homogeneous ``f`` with rational coefficients."""

    degree: int
    coefficients: Mapping[Monomial, Fraction]

    def __post_init__(self):
        if self.degree < 1:
            raise CurveError("degree must be positive")
        coeffs = {tuple(m): Fraction(c) for m, c in self.coefficients.items() if c}
        if not coeffs:
            raise CurveError("zero polynomial does not define a curve")
        for m in coeffs:
            if len(m) != 3 or min(m) < 0 or sum(m) != self.degree:
                raise CurveError(f"monomial {m} is not of degree {self.degree}")
        object.__setattr__(self, "coefficients", dict(sorted(coeffs.items(), reverse=True)))

    @classmethod
    def from_poly(cls, poly: Mapping[Monomial, Fraction]) -> "PlaneCurve":
        degrees = {sum(m) for m, c in poly.items() if c}
        if not degrees:
            raise CurveError("zero polynomial does not define a curve")
        if len(degrees) > 1:
            raise CurveError(f"polynomial is not homogeneous (term degrees {sorted(degrees)})")
        return cls(degrees.pop(), poly)

    @cached_property
    def scale(self) -> Fraction:
        """Largest coefficient magnitude; floating-point work uses ``f / scale``."""
        return max(abs(c) for c in self.coefficients.values())

    @cached_property
    def normalized(self) -> Poly:
        s = self.scale
        return {m: c / s for m, c in self.coefficients.items()}

    def is_real(self) -> bool:
        return True  # rational coefficients

    def gradient(self) -> list[Poly]:
        return [poly_diff(self.normalized, v) for v in range(3)]

    def hessian(self) -> list[list[Poly]]:
        g = self.gradient()
        return [[poly_diff(g[i], j) for j in range(3)] for i in range(3)]

    @cached_property
    def hessian_determinant(self) -> Poly:
        """Exact det of the Hessian of ``f / scale``, rescaled to unit max coefficient."""
        det = _det3(self.hessian())
        if not det:
            return {}
        s = max(abs(c) for c in det.values())
        return {m: c / s for m, c in det.items()}

    @cached_property
    def float_poly(self) -> FloatPoly:
        return FloatPoly(self.normalized, self.degree)

    @cached_property
    def float_gradient(self) -> list[FloatPoly]:
        return [FloatPoly(g, self.degree - 1) for g in self.gradient()]

    def evaluate_exact(self, point) -> Fraction:
        x, y, z = (Fraction(v) for v in point)
        return sum((c * x**i * y**j * z**k for (i, j, k), c in self.coefficients.items()), Fraction(0))

    def __str__(self):
        return render_curve(self)


def render_curve(curve: PlaneCurve) -> str:
    parts = []
    for (i, j, k), c in curve.coefficients.items():
        mono = "".join(
            v if p == 1 else f"{v}^{p}" for v, p in zip(VARIABLES, (i, j, k)) if p
        )
        mag = abs(c)
        cstr = "" if mag == 1 else (f"{mag.numerator}" if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}") + "*"
        sign = "-" if c < 0 else "+"
        body = cstr + mono
        parts.append(("-" + body) if (not parts and c < 0) else body if not parts else f"{sign} {body}")
    return " ".join(parts)


# --------------------------------------------------------------------------
# parsing

_NUMBER = re.compile(r"\d+(?:\.\d+)?(?:/\d+)?")


def parse_curve(text: str) -> PlaneCurve:
    """Parse e.g. ``"144x^4 + 144y^4 - 225x^2z^2 + 3/2*x*y^3"``.

    Grammar: a signed sum of terms; a term is an optional rational
    coefficient (integer, decimal or ``p/q``), an optional ``*``, and a
    product of ``x``, ``y``, ``z`` each with an optional ``^`` exponent.
    Whitespace is ignored.
    """
    poly: Poly = {}
    pos = 0
    n = len(text)

    def skip_ws(p: int) -> int:
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    if pos == n:
        raise CurveSyntaxError("empty input", text, pos)
    first = True
    while True:
        pos = skip_ws(pos)
        sign = 1
        if pos < n and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = skip_ws(pos + 1)
        elif not first:
            raise CurveSyntaxError("expected '+' or '-'", text, pos)
        first = False

        coeff = Fraction(1)
        have_coeff = False
        m = _NUMBER.match(text, pos)
        if m:
            try:
                coeff = Fraction(m.group())
            except ZeroDivisionError:
                raise CurveSyntaxError("zero denominator", text, pos) from None
            have_coeff = True
            pos = skip_ws(m.end())
            if pos < n and text[pos] == "*":
                pos = skip_ws(pos + 1)
                if pos >= n or text[pos] not in VARIABLES:
                    raise CurveSyntaxError("expected variable after '*'", text, pos)

        exps = [0, 0, 0]
        have_var = False
        while pos < n and text[pos] in VARIABLES:
            var = VARIABLES.index(text[pos])
            pos = skip_ws(pos + 1)
            power = 1
            if pos < n and text[pos] == "^":
                pos = skip_ws(pos + 1)
                m = re.compile(r"\d+").match(text, pos)
                if not m or int(m.group()) == 0:
                    raise CurveSyntaxError("expected positive integer exponent", text, pos)
                power = int(m.group())
                pos = skip_ws(m.end())
            exps[var] += power
            have_var = True
            if pos < n and text[pos] == "*":
                nxt = skip_ws(pos + 1)
                if nxt < n and text[nxt] in VARIABLES:
                    pos = nxt
                else:
                    raise CurveSyntaxError("expected variable after '*'", text, nxt)
        if not have_var and not have_coeff:
            raise CurveSyntaxError("expected a term", text, pos)
        key = tuple(exps)
        poly[key] = poly.get(key, Fraction(0)) + sign * coeff
        if not poly[key]:
            del poly[key]
        pos = skip_ws(pos)
        if pos >= n:
            break
        if text[pos] not in "+-":
            raise CurveSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
    return PlaneCurve.from_poly(poly)


def as_curve(curve) -> PlaneCurve:
    """Accept a :class:`PlaneCurve` or curve text."""
    if isinstance(curve, PlaneCurve):
        return curve
    if isinstance(curve, str):
        return parse_curve(curve)
    raise TypeError(f"expected PlaneCurve or str, got {type(curve).__name__}")


def random_curve(degree: int, seed: int, magnitude: int = 10) -> PlaneCurve:
    """Curve with independent uniform integer coefficients in [-magnitude, magnitude]."""
    rng = np.random.default_rng(seed)
    poly = {}
    for i in range(degree, -1, -1):
        for j in range(degree - i, -1, -1):
            c = int(rng.integers(-magnitude, magnitude + 1))
            if c:
                poly[(i, j, degree - i - j)] = Fraction(c)
    return PlaneCurve.from_poly(poly)


TROTT = "144x^4 + 144y^4 - 225x^2z^2 - 225y^2z^2 + 350x^2y^2 + 81z^4"
FERMAT_QUARTIC = "x^4 + y^4 + z^4"
