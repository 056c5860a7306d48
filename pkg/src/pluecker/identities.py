"""Relations among the classes on X1 and X2, each checked by Poincare pairing."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import chow
from .chow import X1, X2, classes_equal, integrate, is_numerically_zero, psi, pullback_pi, pushforward_sigma
from .derivation import phi, phi_x, phi_x3, phi_x3_from_jets, phi_x_from_jets


@dataclass(frozen=True)
class Identity:
    key: str
    statement: str
    check: Callable[[], bool]

    def run(self) -> bool:
        return bool(self.check())


def _x1():
    return X1.gen("eta"), X1.gen("iota")


def _x2():
    return tuple(X2.gen(g) for g in X2.generators)


def _check_a() -> bool:
    eta, iota = _x1()
    return integrate(iota * eta**2) == 1 and integrate(iota**2 * eta) == 1


def _check_b() -> bool:
    eta, iota = _x1()
    return classes_equal(eta * iota, eta**2 + iota**2)


def _psi_pairings() -> tuple:
    """The two numbers that pin down psi_x on X1.

    ``a = int psi eta^2``: on the fibre of lines through a point psi is
    c_1 of the dual of the tautological line, so ``a = -int c_1(S) = 1``.
    ``b = int psi iota^2``: on a fixed line psi is its canonical class, of
    degree ``-chi(P^1) = -2``.
    """
    a = -integrate(chow.tautological_subbundle_c1())
    b = -2
    return a, b


def _check_c() -> bool:
    eta, iota = _x1()
    a, b = _psi_pairings()
    # psi = alpha*eta + beta*iota pairs to beta against eta^2 and to alpha against iota^2
    rebuilt = eta * b + iota * a
    p = psi(X1)
    return (
        integrate(p * eta**2) == a
        and integrate(p * iota**2) == b
        and classes_equal(p, rebuilt)
        and classes_equal(p, iota - eta * 2)
    )


def _check_d() -> bool:
    h1, h2, _ = _x2()
    return is_numerically_zero(h1**3) and is_numerically_zero(h2**3)


def _check_e() -> bool:
    e = X2.gen("e")
    return classes_equal(psi(X2, 1), pullback_pi(2, psi(X1)) + e) and classes_equal(
        psi(X2, 2), pullback_pi(1, psi(X1)) + e
    )


def _check_f() -> bool:
    e = X2.gen("e")
    return is_numerically_zero(e * psi(X2, 1)) and is_numerically_zero(e * psi(X2, 2))


def _check_g() -> bool:
    e = X2.gen("e")
    return all(classes_equal(e**2, -(e * pullback_pi(i, psi(X1)))) for i in (1, 2))


def _check_h() -> bool:
    h1, h2, e = _x2()
    return classes_equal(e * h1, e * h2)


def _check_i() -> bool:
    e = X2.gen("e")
    push = pushforward_sigma(phi_x())
    return classes_equal(push, e * phi(1)) and classes_equal(push, e * phi(2))


def _check_j() -> bool:
    h1 = X2.gen("h1")
    eta = X1.gen("eta")
    if not classes_equal(h1, pullback_pi(2, eta)):
        return False
    for k in range(X1.dimension + 1):
        for mono in X1.monomials(k):
            alpha = chow.ChowClass(X1, {mono: 1})
            if not classes_equal(h1 * pullback_pi(2, alpha), pullback_pi(2, alpha * eta)):
                return False
    return True


def _check_pullback_convention() -> bool:
    h1, h2, _ = _x2()
    eta = X1.gen("eta")
    return pullback_pi(1, eta) == h2 and pullback_pi(2, eta) == h1


def _check_jets() -> bool:
    return classes_equal(phi_x_from_jets(), phi_x()) and phi_x_from_jets() == phi_x()


def _check_jets3() -> bool:
    return classes_equal(phi_x3_from_jets(), phi_x3()) and phi_x3_from_jets() == phi_x3()


def _check_tautological() -> bool:
    c1 = chow.tautological_subbundle_c1()
    H = c1.space.gen("H")
    return c1 == -H and integrate(c1) == -1 and chow.chern_dual_line(c1) == H


IDENTITIES: tuple[Identity, ...] = (
    Identity("a", "iota*eta^2 = iota^2*eta = 1", _check_a),
    Identity("b", "eta*iota = eta^2 + iota^2", _check_b),
    Identity("c", "psi_x = iota - 2 eta  (pairings a = 1, b = -2)", _check_c),
    Identity("d", "eta_i^3 = 0", _check_d),
    Identity("e", "psi_1 = pi_2^* psi_x + beta, psi_2 = pi_1^* psi_x + beta", _check_e),
    Identity("f", "beta*psi_i = 0", _check_f),
    Identity("g", "beta^2 = -beta*pi_i^* psi_x", _check_g),
    Identity("h", "beta*eta_1 = beta*eta_2", _check_h),
    Identity("i", "sigma_* Phi_x = beta*Phi_1 = beta*Phi_2", _check_i),
    Identity("j", "eta_1 = pi_2^* eta_x, hence eta_1*pi_2^* alpha = pi_2^*(alpha*eta_x)", _check_j),
    Identity("pi", "pi_1^* eta_x = eta_2, pi_2^* eta_x = eta_1", _check_pullback_convention),
    Identity("jet1", "c_2(J^1) = Phi_x = d eta (d eta + psi_x)", _check_jets),
    Identity("jet2", "c_3(J^2) = Phi_x3 = eta(eta + psi)(eta + 2 psi)", _check_jets3),
    Identity("taut", "c_1(S) = -H on P^1, c_1(S^*) = H", _check_tautological),
)


def run_identities() -> list[tuple[Identity, bool]]:
    return [(ident, ident.run()) for ident in IDENTITIES]
