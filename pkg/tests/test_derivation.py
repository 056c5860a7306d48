import json
import time
from fractions import Fraction

from pluecker.chow import X2, classes_equal, integrate, psi, swap_marks
from pluecker.derivation import (
    FACTORED_LAMBDA,
    boundary_correction,
    bitangent_count,
    derivation_report,
    flex_count,
    lambda_step1,
    lambda_step2,
    lambda_step2_integral,
    named_monomials,
    phi,
    phi_x3,
)
from pluecker.polyring import FormalPolynomial, d, equals_expansion, render


def test_named_monomials():
    values = {k: integrate(v) for k, v in named_monomials().items()}
    expected = {
        "eta1^2.eta2^2": 1,
        "eta1^2.beta^2": -1,
        "eta1.beta^3": -3,
        "eta1^2.eta2.psi2": -1,
        "eta2^2.eta1.psi1": -1,
        "eta1.eta2.psi1.psi2": 2,
    }
    assert values == {k: FormalPolynomial.constant(v) for k, v in expected.items()}


def test_tangency_classes():
    h1, h2, e = (X2.gen(g) for g in X2.generators)
    assert phi(1) == d * h1 * (d * h1 + psi(X2, 1) - e)
    assert integrate(phi(1) * phi(2)) == d**4 - 2 * d**3 + d**2
    assert integrate(phi_x3()) == 3 * d**2 - 6 * d


def test_boundary_correction_and_total():
    assert boundary_correction() == 2 * d**2 - 3 * d
    assert lambda_step2_integral() == d**4 - 2 * d**3 - 9 * d**2 + 18 * d
    assert equals_expansion(FACTORED_LAMBDA, lambda_step2_integral())


def test_bitangent_count():
    nb = bitangent_count()
    assert render(nb) == "1/2*d^4 - d^3 - 9/2*d^2 + 9*d"
    assert [nb(k) for k in range(2, 7)] == [0, 0, 28, 120, 324]
    assert all(isinstance(c, Fraction) for c in nb.coeffs)


def test_flex_count():
    nf = flex_count()
    assert [nf(k) for k in (2, 3, 4, 5)] == [0, 9, 24, 45]


def test_classical_pluecker_relation():
    # for smooth curves: class d(d-1) and d* = d(d-1); dual degree formula
    # d = d*(d*-1) - 2 N_B - 3 N_F must hold
    nb, nf = bitangent_count(), flex_count()
    for k in range(2, 12):
        dual = k * (k - 1)
        assert dual * (dual - 1) - 2 * nb(k) - 3 * nf(k) == k


def test_lambda_integral_is_swap_invariant():
    lam = lambda_step2()
    assert integrate(lam) == integrate(swap_marks(lam))
    assert classes_equal(phi(2), swap_marks(phi(1)))


def test_mark_swap_invariance_of_lambda():
    from pluecker.derivation import STEP2_BOUNDARY_MULTIPLICITY, second_contact_divisor, pushforward_sigma

    swapped_step1 = swap_marks(lambda_step1())
    swapped = second_contact_divisor(1) * swapped_step1 - pushforward_sigma(phi_x3()) * STEP2_BOUNDARY_MULTIPLICITY
    assert integrate(swapped) == integrate(lambda_step2())


def test_report_json_has_no_floats():
    doc = derivation_report().to_dict()

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(doc)
    assert doc["bitangent_count"]["at_4"] == 28
    assert doc["flex_count"]["at_3"] == 9
    assert doc["factored"] == "d(d-2)(d-3)(d+3)"
    assert doc["factored_verified"] is True
    assert json.loads(derivation_report().to_json()) == doc


def test_report_text():
    text = derivation_report().to_text()
    assert "d(d-2)(d-3)(d+3)" in text
    assert "1/2*d^4 - d^3 - 9/2*d^2 + 9*d" in text


def test_report_is_fast():
    t0 = time.perf_counter()
    derivation_report()
    assert time.perf_counter() - t0 < 1.0
