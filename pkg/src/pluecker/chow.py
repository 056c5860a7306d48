"""Chow rings of P^n and of the spaces of one- and two-pointed lines in P^2.

Classes are kept as *free* polynomials in degree-one generators with
:class:`~pluecker.polyring.FormalPolynomial` coefficients.  Nothing is
rewritten modulo relations: relations only show up through the integral
table, and equality is tested by pairing against every monomial of
complementary degree.  Rewriting ``eta*iota -> eta^2 + iota^2`` does not
terminate, pairing does.

Spaces
------
``projective_space(n)``
    generator ``H``; ``H^(n+1) = 0``; ``int H^n = 1``.
``X1``
    one-pointed lines in P^2, i.e. the incidence variety of (point, line).
    ``eta`` pulls back the hyperplane class from the point, ``iota`` from
    the line.
``X2``
    two-pointed lines, the blow-up of P^2 x P^2 along the diagonal.
    ``h1``/``h2`` pull back the hyperplane class from the two marks and
    ``e`` is the exceptional (boundary) divisor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .polyring import FormalPolynomial, Scalar

Exponents = tuple[int, ...]
Coefficient = Union[FormalPolynomial, Scalar]


class SpaceMismatchError(ValueError):
    """Raised when classes from two different spaces are combined."""


@dataclass(frozen=True, eq=False)
class SpaceModel:
    """A Chow ring presented by degree-one generators and a top-degree integral table.

    ``nilpotency[g] = k`` means ``g^k = 0``.  Exponent vectors missing from
    ``integral_table`` integrate to zero.
    """

    name: str
    generators: tuple[str, ...]
    dimension: int
    nilpotency: Mapping[str, int]
    integral_table: Mapping[Exponents, Fraction] = field(repr=False)

    def __post_init__(self):
        n = len(self.generators)
        for exps, value in self.integral_table.items():
            if len(exps) != n or sum(exps) != self.dimension:
                raise ValueError(f"{self.name}: table entry {exps} is not top degree")
            if self.is_nilpotent(exps) and value != 0:
                raise ValueError(f"{self.name}: nilpotent monomial {exps} has nonzero integral")

    def index(self, generator: str) -> int:
        try:
            return self.generators.index(generator)
        except ValueError:
            raise KeyError(f"{self.name} has no generator {generator!r}") from None

    def is_nilpotent(self, exps: Exponents) -> bool:
        return any(
            exps[i] >= self.nilpotency[g] for i, g in enumerate(self.generators) if g in self.nilpotency
        )

    def integral(self, exps: Exponents) -> Fraction:
        return Fraction(self.integral_table.get(tuple(exps), 0))

    def monomials(self, degree: int) -> list[Exponents]:
        """All non-nilpotent exponent vectors of a given total degree."""
        if degree < 0 or degree > self.dimension:
            return []
        out = [
            exps
            for exps in _compositions(degree, len(self.generators))
            if not self.is_nilpotent(exps)
        ]
        return sorted(out, reverse=True)

    def gen(self, name: str) -> "ChowClass":
        exps = [0] * len(self.generators)
        exps[self.index(name)] = 1
        return ChowClass(self, {tuple(exps): FormalPolynomial.constant(1)})

    def one(self) -> "ChowClass":
        return ChowClass(self, {(0,) * len(self.generators): FormalPolynomial.constant(1)})

    def zero(self) -> "ChowClass":
        return ChowClass(self, {})

    def __repr__(self):
        return f"SpaceModel({self.name!r}, generators={self.generators}, dim={self.dimension})"


def _compositions(total: int, parts: int) -> Iterator[Exponents]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class ChowClass:
    """An element of a modeled Chow ring.

    Supports ``+``, ``-``, ``*`` (by classes, rationals, or polynomials in
    ``d``) and nonnegative integer powers.  Monomials that are nilpotent or
    exceed the space dimension are dropped on construction.
    """

    __slots__ = ("space", "_terms")

    def __init__(self, space: SpaceModel, terms: Mapping[Exponents, Coefficient]):
        self.space = space
        clean: dict[Exponents, FormalPolynomial] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if sum(exps) > space.dimension or space.is_nilpotent(exps):
                continue
            coeff = FormalPolynomial.coerce(coeff)
            if coeff.is_zero():
                continue
            clean[exps] = clean.get(exps, FormalPolynomial()) + coeff
            if clean[exps].is_zero():
                del clean[exps]
        self._terms = clean

    @property
    def terms(self) -> dict[Exponents, FormalPolynomial]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs == {degree})

    def part(self, degree: int) -> "ChowClass":
        return ChowClass(self.space, {e: c for e, c in self._terms.items() if sum(e) == degree})

    def coefficient(self, exps: Exponents) -> FormalPolynomial:
        return self._terms.get(tuple(exps), FormalPolynomial())

    def _check(self, other: "ChowClass"):
        if other.space is not self.space:
            raise SpaceMismatchError(f"cannot combine classes on {self.space.name} and {other.space.name}")

    def __add__(self, other):
        if isinstance(other, ChowClass):
            self._check(other)
        elif isinstance(other, (int, Fraction, FormalPolynomial)):
            other = self.space.one() * other
        else:
            return NotImplemented
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, FormalPolynomial()) + c
        return ChowClass(self.space, merged)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.space, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FormalPolynomial)):
            if isinstance(other, bool):
                return NotImplemented
            return ChowClass(self.space, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, ChowClass):
            return NotImplemented
        self._check(other)
        out: dict[Exponents, FormalPolynomial] = {}
        dim = self.space.dimension
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) > dim or self.space.is_nilpotent(e):
                    continue
                out[e] = out.get(e, FormalPolynomial()) + c1 * c2
        return ChowClass(self.space, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.space.one()
        for _ in range(n):
            result = result * self
        return result

    def substitute(self, at: Scalar) -> "ChowClass":
        """Specialise the formal degree symbol to a number."""
        return ChowClass(
            self.space, {e: FormalPolynomial.constant(c(at)) for e, c in self._terms.items()}
        )

    def __eq__(self, other):
        # Structural (free-polynomial) equality; use classes_equal for equality in the ring.
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.space is other.space and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"ChowClass({self.space.name}: {render_class(self)})"

    def __str__(self):
        return render_class(self)


# ---------------------------------------------------------------------------
# construction, integration, equality


def class_from_terms(
    space: SpaceModel, terms: Iterable[tuple[Mapping[str, int], Coefficient]]
) -> ChowClass:
    """Build a class from ``({generator: power}, coefficient)`` pairs."""
    out: dict[Exponents, FormalPolynomial] = {}
    for powers, coeff in terms:
        exps = [0] * len(space.generators)
        for name, p in powers.items():
            if p < 0:
                raise ValueError(f"negative power for {name!r}")
            exps[space.index(name)] += p
        key = tuple(exps)
        if sum(key) > space.dimension:
            raise ValueError(f"monomial {dict(powers)} exceeds dimension {space.dimension} of {space.name}")
        out[key] = out.get(key, FormalPolynomial()) + FormalPolynomial.coerce(coeff)
    return ChowClass(space, out)


def integrate(cls: ChowClass) -> FormalPolynomial:
    """Degree of the top-dimensional part; lower-degree parts integrate to 0."""
    top = cls.space.dimension
    total = FormalPolynomial()
    for exps, coeff in cls.items():
        if sum(exps) == top:
            value = cls.space.integral(exps)
            if value:
                total = total + coeff.scale(value)
    return total


def pairing_vector(cls: ChowClass) -> dict[tuple[int, Exponents], FormalPolynomial]:
    """Integrals of each homogeneous part against all complementary monomials."""
    space = cls.space
    out = {}
    for k in range(space.dimension + 1):
        part = cls.part(k)
        for mono in space.monomials(space.dimension - k):
            out[(k, mono)] = integrate(part * _monomial(space, mono))
    return out


def _monomial(space: SpaceModel, exps: Exponents) -> ChowClass:
    return ChowClass(space, {exps: FormalPolynomial.constant(1)})


def classes_equal(a: ChowClass, b: ChowClass) -> bool:
    """Equality modulo numerical equivalence (Poincare pairing)."""
    if a.space is not b.space:
        raise SpaceMismatchError(f"cannot compare classes on {a.space.name} and {b.space.name}")
    return all(v.is_zero() for v in pairing_vector(a - b).values())


def is_numerically_zero(cls: ChowClass) -> bool:
    return classes_equal(cls, cls.space.zero())


def render_class(cls: ChowClass) -> str:
    """Terms by ascending degree, then descending lexicographic exponents.

    Constant coefficients are printed bare (``2*h1*e``), non-constant ones in
    parentheses (``(d^2)*h1^2``); a negative leading coefficient is folded
    into the joining sign.
    """
    if cls.is_zero():
        return "0"
    names = cls.space.generators
    keys = sorted(cls._terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    parts: list[str] = []
    for exps in keys:
        coeff = cls._terms[exps]
        negative = coeff.coeffs[-1] < 0
        mag = -coeff if negative else coeff
        mono = "*".join(n if p == 1 else f"{n}^{p}" for n, p in zip(names, exps) if p)
        if mag.is_constant():
            c = mag[0]
            cstr = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            if not mono:
                body = cstr
            else:
                body = mono if c == 1 else f"{cstr}*{mono}"
        else:
            body = f"({mag})" + (f"*{mono}" if mono else "")
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"{'-' if negative else '+'} {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# built-in spaces


def projective_space(n: int) -> SpaceModel:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return SpaceModel(
        name=f"P{n}",
        generators=("H",),
        dimension=n,
        nilpotency={"H": n + 1},
        integral_table={(n,): Fraction(1)},
    )


X1 = SpaceModel(
    name="X1",
    generators=("eta", "iota"),
    dimension=3,
    nilpotency={"eta": 3, "iota": 3},
    integral_table={(2, 1): Fraction(1), (1, 2): Fraction(1)},
)


def _x2_integral(a: int, b: int, c: int) -> Fraction:
    if c == 0:
        return Fraction(int(a == 2 and b == 2))
    if a >= 3 or b >= 3:
        return Fraction(0)
    return {1: Fraction(0), 2: Fraction(-1), 3: Fraction(-3), 4: Fraction(-6)}[c]


X2 = SpaceModel(
    name="X2",
    generators=("h1", "h2", "e"),
    dimension=4,
    nilpotency={"h1": 3, "h2": 3},
    integral_table={
        (a, b, c): v
        for (a, b, c) in _compositions(4, 3)
        if (v := _x2_integral(a, b, c)) != 0
    },
)

SPACES = {"X1": X1, "X2": X2}


def moduli_dim(r: int, map_degree: int, n: int) -> int:
    """Dimension r*d + r + d + n - 3 of n-pointed genus-0 maps of degree d to P^r."""
    if min(r, map_degree, n) < 0:
        raise ValueError("inputs must be nonnegative")
    return r * map_degree + r + map_degree + n - 3


# ---------------------------------------------------------------------------
# psi classes, pullback along forgetful maps, pushforward along the section


def psi(space: SpaceModel, mark: Union[str, int] = "x") -> ChowClass:
    """Cotangent-line class at a marked point.

    On X1 this is ``iota - 2 eta``.  On X2, ``psi_1 = pi_2^* psi_x + e`` and
    symmetrically, which collapses to ``h2 - h1`` and ``h1 - h2``.
    """
    if space is X1:
        if mark not in ("x", 1, "1"):
            raise ValueError(f"X1 has a single mark 'x', got {mark!r}")
        return X1.gen("iota") - 2 * X1.gen("eta")
    if space is X2:
        i = _mark(mark)
        return pullback_pi(3 - i, psi(X1)) + X2.gen("e")
    raise ValueError(f"psi classes are modeled only on X1 and X2, not {space.name}")


def _mark(mark: Union[str, int]) -> int:
    try:
        i = int(mark)
    except (TypeError, ValueError):
        raise ValueError(f"invalid mark {mark!r}; expected 1 or 2") from None
    if i not in (1, 2):
        raise ValueError(f"invalid mark {mark!r}; expected 1 or 2")
    return i


def pullback_images(forgotten: int) -> dict[str, ChowClass]:
    """Images of the X1 generators under the map forgetting mark ``forgotten``."""
    i = _mark(forgotten)
    h1, h2, e = (X2.gen(g) for g in X2.generators)
    kept = h2 if i == 1 else h1
    return {"eta": kept, "iota": h1 + h2 - e}


def pullback_pi(forgotten: int, cls: ChowClass) -> ChowClass:
    """Pull a class on X1 back to X2 along the map forgetting mark ``forgotten``."""
    if cls.space is not X1:
        raise SpaceMismatchError(f"pullback_pi expects a class on X1, got {cls.space.name}")
    images = pullback_images(forgotten)
    eta, iota = images["eta"], images["iota"]
    out = X2.zero()
    for (a, b), coeff in cls.items():
        out = out + (eta**a) * (iota**b) * coeff
    return out


def pushforward_sigma(cls: ChowClass) -> ChowClass:
    """Push forward along the common section X1 -> X2 whose image is ``e``.

    Computed as ``e * pi_2^*(cls)`` (projection formula for a section).
    """
    if cls.space is not X1:
        raise SpaceMismatchError(f"pushforward_sigma expects a class on X1, got {cls.space.name}")
    return X2.gen("e") * pullback_pi(2, cls)


def swap_marks(cls: ChowClass) -> ChowClass:
    """Involution of X2 exchanging the two marks (h1 <-> h2)."""
    if cls.space is not X2:
        raise SpaceMismatchError("swap_marks acts on X2")
    return ChowClass(X2, {(b, a, c): coeff for (a, b, c), coeff in cls.items()})


# ---------------------------------------------------------------------------
# Chern calculus


class TotalChernClass:
    """An inhomogeneous class ``1 + c_1 + c_2 + ...`` with unit constant term."""

    __slots__ = ("cls",)

    def __init__(self, cls: ChowClass):
        space = cls.space
        if cls.part(0) != space.one():
            raise ValueError("total Chern class must have degree-0 part equal to 1")
        self.cls = cls

    @property
    def space(self) -> SpaceModel:
        return self.cls.space

    def c(self, k: int) -> ChowClass:
        return self.cls.part(k)

    def __mul__(self, other: "TotalChernClass") -> "TotalChernClass":
        return chern_whitney_product(self, other)

    def __repr__(self):
        return f"TotalChernClass({self.cls})"


def line_bundle(c1: ChowClass) -> TotalChernClass:
    _require_degree_one(c1)
    return TotalChernClass(c1.space.one() + c1)


def _require_degree_one(c1: ChowClass):
    if not c1.is_homogeneous(1):
        raise ValueError("first Chern class of a line bundle must be homogeneous of degree 1")


def chern_dual_line(c1: ChowClass) -> ChowClass:
    """c_1(L^*) = -c_1(L)."""
    _require_degree_one(c1)
    return -c1


def chern_tensor_lines(*c1s: ChowClass) -> ChowClass:
    """c_1 of a tensor product of line bundles is the sum of the c_1's."""
    for c in c1s:
        _require_degree_one(c)
    out = c1s[0].space.zero()
    for c in c1s:
        out = out + c
    return out


def chern_whitney_product(a: TotalChernClass, b: TotalChernClass) -> TotalChernClass:
    """Total Chern class of an extension; truncation comes from the space dimension."""
    if a.space is not b.space:
        raise SpaceMismatchError("Whitney product of classes on different spaces")
    return TotalChernClass(a.cls * b.cls)


def jet_total_chern(c1_L: ChowClass, c1_Omega: ChowClass, k: int) -> TotalChernClass:
    """Total Chern class of the relative k-jet bundle of L along a curve fibre.

    The jet filtration has graded pieces ``L (x) Sym^j Omega``, j = 0..k, and
    on a curve ``Sym^j Omega = Omega^j``, so the answer is
    ``prod_j (1 + c1_L + j c1_Omega)``.
    """
    if c1_L.space is not c1_Omega.space:
        raise SpaceMismatchError("c1_L and c1_Omega live on different spaces")
    _require_degree_one(c1_L)
    _require_degree_one(c1_Omega)
    if k < 0:
        raise ValueError("jet order must be nonnegative")
    total = line_bundle(c1_L)
    for j in range(1, k + 1):
        total = chern_whitney_product(total, line_bundle(chern_tensor_lines(c1_L, c1_Omega * j)))
    return total


def euler_class(total: TotalChernClass, rank: int) -> ChowClass:
    return total.c(rank)


def tautological_subbundle_c1(euler_characteristic: int = 2) -> ChowClass:
    """c_1 of the tautological line S on P^1, recovered from T = Hom(S, Q).

    ``S`` and ``Q`` sit in the trivial rank-2 bundle, so Whitney gives
    ``c_1(Q) = -c_1(S)``; then ``c_1(T) = c_1(S^*) + c_1(Q) = -2 c_1(S)`` while
    ``int c_1(T)`` is the Euler characteristic of the sphere.
    """
    P1 = projective_space(1)
    H = P1.gen("H")
    c1_T = H * euler_characteristic
    # c1(S* (x) Q) as a function of an unknown c1(S) = s*H is -2s*H; solve for s.
    probe = chern_tensor_lines(chern_dual_line(H), -H)
    s = integrate(c1_T)[0] / integrate(probe)[0]
    return H * s


def segre_inverse(total: TotalChernClass) -> ChowClass:
    """Formal inverse of a total Chern class, truncated at the space dimension."""
    one = total.space.one()
    x = one - total.cls
    out = one
    term = one
    for _ in range(total.space.dimension):
        term = term * x
        out = out + term
    return out


__all__ = [
    "ChowClass",
    "SpaceMismatchError",
    "SpaceModel",
    "TotalChernClass",
    "X1",
    "X2",
    "chern_dual_line",
    "chern_tensor_lines",
    "chern_whitney_product",
    "class_from_terms",
    "classes_equal",
    "euler_class",
    "integrate",
    "is_numerically_zero",
    "jet_total_chern",
    "line_bundle",
    "moduli_dim",
    "projective_space",
    "psi",
    "pullback_images",
    "pullback_pi",
    "pushforward_sigma",
    "render_class",
    "segre_inverse",
    "swap_marks",
    "tautological_subbundle_c1",
]
