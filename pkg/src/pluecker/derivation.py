"""Bitangent count of a plane curve of degree ``d`` by intersection theory on X2.

The chain of classes:

* tangency at mark i:  ``Phi_i = d h_i (d h_i + psi_i - e)``
* tangency on X1:      ``Phi_x = d eta (d eta + psi_x)``
* flexes on X1:        ``Phi_x3 = top Chern class of the 2-jets``
* tangent at 1, through the curve at 2:
  ``Lambda(2p1 + p2) = d h2 Phi_1 - 2 sigma_* Phi_x``
* tangent at both:
  ``Lambda(2p1 + 2p2) = (d h2 + psi_2 - e) Lambda(2p1 + p2) - 2 sigma_* Phi_x3``

Halving the last integral forgets the order of the marks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import chow
from .chow import X1, X2, ChowClass, integrate, psi, pushforward_sigma
from .polyring import FormalPolynomial, equals_expansion, render, render_factored

d = FormalPolynomial.symbol()

#: Multiplicity of the boundary component sigma_* Phi_x inside eta_2(Z) Phi_1.
STEP1_BOUNDARY_MULTIPLICITY = 2
#: Multiplicity of the boundary component sigma_* Phi_x3 in step 2.
STEP2_BOUNDARY_MULTIPLICITY = 2
#: Ordered pairs of marks per unordered bitangent.
MARK_ORDERINGS = 2

FACTORED_LAMBDA = (d, d - 2, d - 3, d + 3)


def eta_of_curve(space=X1, mark: int | None = None) -> ChowClass:
    """Class of maps sending the mark into a degree-d curve: ``d`` times the hyperplane pullback."""
    if space is X1:
        return X1.gen("eta") * d
    if space is X2:
        return X2.gen(f"h{chow._mark(mark)}") * d
    raise ValueError(f"unsupported space {space.name}")


def phi(mark: int) -> ChowClass:
    """Tangency at mark ``mark`` on X2, with the boundary twig removed."""
    eta_i = eta_of_curve(X2, mark)
    return eta_i * (eta_i + psi(X2, mark) - X2.gen("e"))


def phi_x() -> ChowClass:
    """Tangency on X1, built directly."""
    eta = eta_of_curve(X1)
    return eta * (eta + psi(X1))


def phi_x_from_jets() -> ChowClass:
    """Tangency on X1 as the Euler class of the rank-2 bundle of 1-jets."""
    return chow.euler_class(chow.jet_total_chern(eta_of_curve(X1), psi(X1), 1), 2)


def phi_x3() -> ChowClass:
    """Inflection tangents on X1, built directly."""
    eta = eta_of_curve(X1)
    p = psi(X1)
    return eta * (eta + p) * (eta + p * 2)


def phi_x3_from_jets() -> ChowClass:
    return chow.euler_class(chow.jet_total_chern(eta_of_curve(X1), psi(X1), 2), 3)


def second_contact_divisor(mark: int = 2) -> ChowClass:
    """``d h_i + psi_i - e``: imposes second-order vanishing at mark i."""
    return eta_of_curve(X2, mark) + psi(X2, mark) - X2.gen("e")


def lambda_step1() -> ChowClass:
    """Maps tangent at p1 and meeting the curve at p2."""
    return eta_of_curve(X2, 2) * phi(1) - pushforward_sigma(phi_x()) * STEP1_BOUNDARY_MULTIPLICITY


def lambda_step2() -> ChowClass:
    """The zero-dimensional class of maps tangent at both marks."""
    return (
        second_contact_divisor(2) * lambda_step1()
        - pushforward_sigma(phi_x3()) * STEP2_BOUNDARY_MULTIPLICITY
    )


def lambda_step2_integral() -> FormalPolynomial:
    return integrate(lambda_step2())


def boundary_correction() -> FormalPolynomial:
    """``int sigma_* Phi_x * (d h2 + psi_2 - e)``."""
    return integrate(pushforward_sigma(phi_x()) * second_contact_divisor(2))


def bitangent_count() -> FormalPolynomial:
    return lambda_step2_integral() / MARK_ORDERINGS


def flex_count() -> FormalPolynomial:
    return integrate(phi_x3())


def _monomial(**powers: int) -> ChowClass:
    return chow.class_from_terms(X2, [(powers, 1)])


def named_monomials() -> dict[str, ChowClass]:
    """The degree-4 products evaluated by hand on the way to the count."""
    h1, h2, e = (X2.gen(g) for g in X2.generators)
    psi1, psi2 = psi(X2, 1), psi(X2, 2)
    return {
        "eta1^2.eta2^2": h1**2 * h2**2,
        "eta1^2.beta^2": h1**2 * e**2,
        "eta1.beta^3": h1 * e**3,
        "eta1^2.eta2.psi2": h1**2 * h2 * psi2,
        "eta2^2.eta1.psi1": h2**2 * h1 * psi1,
        "eta1.eta2.psi1.psi2": h1 * h2 * psi1 * psi2,
    }


@dataclass
class DerivationReport:
    phi1: ChowClass
    phi2: ChowClass
    phi_x: ChowClass
    phi_x3: ChowClass
    lambda_2p1_p2: ChowClass
    lambda_2p1_2p2_integral: FormalPolynomial
    bitangent_count: FormalPolynomial
    flex_count: FormalPolynomial
    intermediate_integrals: dict[str, FormalPolynomial] = field(default_factory=dict)
    factored: tuple[FormalPolynomial, ...] = FACTORED_LAMBDA
    factored_verified: bool = False

    def to_dict(self, sample_degrees=(2, 3, 4, 5)) -> dict[str, Any]:
        def poly(p: FormalPolynomial) -> dict[str, Any]:
            out: dict[str, Any] = {"expr": render(p), "coeffs": [_fraction_json(c) for c in p.coeffs]}
            for k in sample_degrees:
                out[f"at_{k}"] = _fraction_json(p(k))
            return out

        return {
            "schema": "pluecker.derivation/1",
            "classes": {
                "phi1": str(self.phi1),
                "phi2": str(self.phi2),
                "phi_x": str(self.phi_x),
                "phi_x3": str(self.phi_x3),
                "lambda_2p1_p2": str(self.lambda_2p1_p2),
            },
            "intermediate_integrals": {k: render(v) for k, v in self.intermediate_integrals.items()},
            "lambda_2p1_2p2_integral": poly(self.lambda_2p1_2p2_integral),
            "factored": render_factored(self.factored),
            "factored_verified": self.factored_verified,
            "bitangent_count": poly(self.bitangent_count),
            "flex_count": poly(self.flex_count),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), indent=2, **kwargs)

    def to_text(self) -> str:
        lines = ["Tangency classes"]
        for name in ("phi1", "phi2", "phi_x", "phi_x3", "lambda_2p1_p2"):
            lines.append(f"  {name} = {getattr(self, name)}")
        lines.append("Intermediate integrals")
        width = max(len(k) for k in self.intermediate_integrals)
        for k, v in self.intermediate_integrals.items():
            lines.append(f"  {k:<{width}} = {render(v)}")
        lines.append("Result")
        lines.append(f"  lambda(2p1+2p2) = {render(self.lambda_2p1_2p2_integral)}")
        check = "verified by expansion" if self.factored_verified else "EXPANSION MISMATCH"
        lines.append(f"                  = {render_factored(self.factored)}  ({check})")
        lines.append(f"  bitangents N_B(d) = {render(self.bitangent_count)}")
        lines.append(f"  flexes            = {render(self.flex_count)}")
        lines.append(
            "  N_B(2), N_B(3), N_B(4) = "
            + ", ".join(str(self.bitangent_count(k)) for k in (2, 3, 4))
        )
        return "\n".join(lines)


def _fraction_json(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def derivation_report() -> DerivationReport:
    p1, p2 = phi(1), phi(2)
    px, px3 = phi_x(), phi_x3()
    step1 = lambda_step1()
    total = lambda_step2_integral()

    inter: dict[str, FormalPolynomial] = {k: integrate(v) for k, v in named_monomials().items()}
    inter["phi1.phi2"] = integrate(p1 * p2)
    inter["boundary_correction"] = boundary_correction()
    inter["phi_x3"] = integrate(px3)
    inter["sigma_push.phi_x3"] = integrate(pushforward_sigma(px3))
    inter["lambda_2p1_2p2"] = total

    return DerivationReport(
        phi1=p1,
        phi2=p2,
        phi_x=px,
        phi_x3=px3,
        lambda_2p1_p2=step1,
        lambda_2p1_2p2_integral=total,
        bitangent_count=total / MARK_ORDERINGS,
        flex_count=integrate(px3),
        intermediate_integrals=inter,
        factored=FACTORED_LAMBDA,
        factored_verified=equals_expansion(FACTORED_LAMBDA, total),
    )
