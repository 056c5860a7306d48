"""Multistart Newton oracle for bitangents and flexes of explicit plane curves.

Bitangent system
----------------
A line is charted by two complex numbers ``(s, u)`` around a random frame
``(A0, B0, C)``: it is spanned by ``A = A0 + s C`` and ``B = B0 + u C``.
Restricting ``f`` to the line gives ``p(t) = f(A + t B)``.  The line is
bitangent with contacts at ``t1 != t2`` iff ``(t - t1)^2 (t - t2)^2`` divides
``p``, i.e. iff the four confluent divided differences

    p[t1], p[t1, t1], p[t1, t1, t2], p[t1, t1, t2, t2]

vanish.  Unlike the naive system ``p(t1) = p'(t1) = p(t2) = p'(t2) = 0``,
this one has no solution along the diagonal ``t1 = t2`` except at
hyperflexes, so Newton is not drawn into the one-parameter family of
ordinary tangents.  Divided differences of ``t^k`` are complete homogeneous
symmetric polynomials of the nodes, and differentiating in a node repeats
it, which gives the Jacobian in closed form.

Flex system
-----------
``f = 0`` and ``det Hess f = 0`` on a random affine chart of P^2.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .curve import FloatPoly, PlaneCurve, as_curve, restrict_batch

log = logging.getLogger(__name__)

STARTS_PER_SOLUTION = 400
BATCH_SIZE = 100
PATIENCE_BATCHES = 50
MAX_HALVINGS = 20
#: Contacts closer than this (chordal) are checked for being one higher-order contact.
NEAR_CONTACT = 1e-3


class OracleError(RuntimeError):
    pass


class NonGenericCurveError(OracleError):
    """The curve violates the genericity the closed-form counts assume."""


class DegenerateFrameError(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of the multistart Newton oracle.

    ``start_count=None`` means: ``400 * expected`` when an expected count is
    known, otherwise run batches of 100 starts until 50 consecutive batches
    add nothing new.
    """

    start_count: Optional[int] = None
    max_iterations: int = 100
    step_tolerance: float = 1e-12
    residual_tolerance: float = 1e-10
    dedup_distance: float = 1e-6
    separation_tolerance: float = 1e-6
    seed: int = 0
    workers: int = 1
    chunk_size: int = 2048

    def __post_init__(self):
        for name in ("step_tolerance", "residual_tolerance", "dedup_distance", "separation_tolerance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.start_count is not None and self.start_count < 1:
            raise ValueError("start_count must be positive")
        if self.max_iterations < 1 or self.workers < 1 or self.chunk_size < 1:
            raise ValueError("max_iterations, workers and chunk_size must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


# --------------------------------------------------------------------------
# value types


def normalize_projective(v: np.ndarray) -> np.ndarray:
    """Scale so the coordinate of largest modulus equals 1.

    Near-ties (within a relative 1e-6) go to the first such coordinate, so
    points like (-1, 1, 0) normalise the same way despite rounding noise.
    """
    v = np.asarray(v, dtype=np.complex128)
    mod = np.abs(v)
    k = int(np.argmax(mod >= (1 - 1e-6) * mod.max()))
    return v / v[k]


def chordal_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Fubini-Study chordal distance between two points of a projective space."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    # sin of the angle via the orthogonal component: accurate for nearby points,
    # unlike sqrt(1 - cos^2) which bottoms out near 1e-8
    return float(min(1.0, np.linalg.norm(b - np.vdot(a, b) * a)))


def line_basis(dual: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unitary basis (A, B) of the line ``{x : dual . x = 0}``."""
    dual = np.asarray(dual, dtype=np.complex128)
    n = dual / np.linalg.norm(dual)
    # points x with sum(dual * x) = 0 form the Hermitian complement of conj(dual)
    w = np.conj(n)
    k = int(np.argmin(np.abs(w)))
    e = np.zeros(3, dtype=np.complex128)
    e[k] = 1.0
    a = e - np.vdot(w, e) * w
    a /= np.linalg.norm(a)
    b = np.cross(np.conj(w), np.conj(a))  # Hermitian-orthogonal to w and a
    b /= np.linalg.norm(b)
    return a, b


@dataclass(frozen=True)
class LineFrame:
    """A line given by two spanning points; ``dual`` is normalised (max-modulus coordinate 1)."""

    A: np.ndarray
    B: np.ndarray
    dual: np.ndarray = field(init=False)

    def __post_init__(self):
        A = np.asarray(self.A, dtype=np.complex128)
        B = np.asarray(self.B, dtype=np.complex128)
        if A.shape != (3,) or B.shape != (3,):
            raise DegenerateFrameError("frame points must be 3-vectors")
        na, nb = np.linalg.norm(A), np.linalg.norm(B)
        if na == 0 or nb == 0:
            raise DegenerateFrameError("frame point is zero")
        cross = np.cross(A / na, B / nb)
        if np.linalg.norm(cross) <= 1e-8:
            raise DegenerateFrameError("frame points are linearly dependent")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "dual", normalize_projective(cross))

    @classmethod
    def from_dual(cls, dual) -> "LineFrame":
        a, b = line_basis(dual)
        return cls(a, b)

    def point(self, t: complex) -> np.ndarray:
        return self.A + t * self.B


@dataclass(frozen=True)
class TangencySolution:
    line: LineFrame
    t1: complex
    t2: complex
    residual: float
    is_real: bool
    start_index: int = -1

    @property
    def dual(self) -> np.ndarray:
        return self.line.dual

    @property
    def contact_points(self) -> tuple[np.ndarray, np.ndarray]:
        return self.line.point(self.t1), self.line.point(self.t2)

    @property
    def separation(self) -> float:
        p1, p2 = self.contact_points
        return chordal_distance(p1, p2)

    def to_dict(self) -> dict:
        return {
            "dual": [[float(c.real), float(c.imag)] for c in self.dual],
            "t1": [float(self.t1.real), float(self.t1.imag)],
            "t2": [float(self.t2.real), float(self.t2.imag)],
            "residual": float(self.residual),
            "is_real": bool(self.is_real),
        }


@dataclass(frozen=True)
class FlexPoint:
    point: np.ndarray
    tangent: np.ndarray
    contact_order: int
    residual: float
    is_real: bool
    start_index: int = -1

    @property
    def weight(self) -> int:
        """Intersection multiplicity of the curve with its Hessian here."""
        return max(self.contact_order - 2, 0)

    def to_dict(self) -> dict:
        return {
            "point": [[float(c.real), float(c.imag)] for c in self.point],
            "tangent": [[float(c.real), float(c.imag)] for c in self.tangent],
            "contact_order": int(self.contact_order),
            "weight": self.weight,
            "residual": float(self.residual),
            "is_real": bool(self.is_real),
        }


def realness(solution, tol: float = 1e-8) -> bool:
    """Whether projective coordinates can be phase-rotated to be real.

    Accepts a :class:`TangencySolution`, :class:`FlexPoint` or a raw
    coordinate vector.
    """
    if isinstance(solution, TangencySolution):
        v = solution.dual
    elif isinstance(solution, FlexPoint):
        v = solution.point
    else:
        v = np.asarray(solution, dtype=np.complex128)
    w = normalize_projective(v)
    return bool(np.all(np.abs(w.imag) < tol))


# --------------------------------------------------------------------------
# exact restriction to a line


def _to_gaussian(z: complex) -> tuple[Fraction, Fraction]:
    return Fraction(float(z.real)), Fraction(float(z.imag))


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def restrict_exact(poly, degree: int, A, B) -> list[complex]:
    """Coefficients of ``poly(A + t B)``, expanded in exact Gaussian rationals, then rounded."""
    A = [_to_gaussian(complex(v)) for v in A]
    B = [_to_gaussian(complex(v)) for v in B]
    zero = (Fraction(0), Fraction(0))
    one = (Fraction(1), Fraction(0))
    # powers[v][k] = coefficient list of (A_v + t B_v)^k
    powers = []
    for v in range(3):
        pw = [[one]]
        for _ in range(degree):
            prev = pw[-1]
            nxt = [zero] * (len(prev) + 1)
            for i, c in enumerate(prev):
                nxt[i] = _gadd(nxt[i], _gmul(c, A[v]))
                nxt[i + 1] = _gadd(nxt[i + 1], _gmul(c, B[v]))
            pw.append(nxt)
        powers.append(pw)

    def conv(p, q):
        out = [zero] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] = _gadd(out[i + j], _gmul(a, b))
        return out

    total = [zero] * (degree + 1)
    for (i, j, k), c in poly.items():
        term = conv(conv(powers[0][i], powers[1][j]), powers[2][k])
        for n, v in enumerate(term):
            total[n] = _gadd(total[n], (v[0] * c, v[1] * c))
    return [complex(float(re), float(im)) for re, im in total]


def restrict_to_line(curve, frame: LineFrame, normalized: bool = False) -> np.ndarray:
    """Coefficients (index = power of t) of ``f(A + t B)``.

    Raises ``ValueError`` when the line lies inside the curve.
    """
    curve = as_curve(curve)
    poly = curve.normalized if normalized else curve.coefficients
    coeffs = np.array(restrict_exact(poly, curve.degree, frame.A, frame.B))
    if not np.any(coeffs):
        raise ValueError("line is contained in the curve")
    return coeffs


def _binary_form_residual(coeffs: np.ndarray, sigma: complex, tau: complex) -> float:
    """max(|p|, |dp/dsigma|, |dp/dtau|) for the binary form sum c_k sigma^(d-k) tau^k."""
    d = len(coeffs) - 1
    k = np.arange(d + 1)
    mon = sigma ** (d - k) * tau**k
    val = np.sum(coeffs * mon)
    dsig = np.sum(coeffs * (d - k) * np.where(d - k > 0, sigma ** np.maximum(d - k - 1, 0), 0) * tau**k)
    dtau = np.sum(coeffs * k * sigma ** (d - k) * np.where(k > 0, tau ** np.maximum(k - 1, 0), 0))
    return float(max(abs(val), abs(dsig), abs(dtau)))


def certify_bitangent(curve: PlaneCurve, dual, p1, p2) -> tuple[float, complex, complex, LineFrame]:
    """Residual of the tangency conditions, recomputed from exact coefficients.

    The line gets a fresh unitary frame; contact points are unit vectors
    written as ``sigma A + tau B``.  Returns (residual, t1, t2, frame).
    """
    frame = LineFrame.from_dual(dual)
    coeffs = restrict_to_line(curve, frame, normalized=True)
    residual = 0.0
    ts = []
    for p in (p1, p2):
        p = np.asarray(p, dtype=np.complex128)
        sigma, tau = np.vdot(frame.A, p), np.vdot(frame.B, p)
        r = math.hypot(abs(sigma), abs(tau))
        sigma, tau = sigma / r, tau / r
        residual = max(residual, _binary_form_residual(coeffs, sigma, tau))
        ts.append(tau / sigma if sigma != 0 else complex(math.inf))
    return residual, ts[0], ts[1], frame


# --------------------------------------------------------------------------
# batched Newton machinery


def _start_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(seed ^ index)


def _cgauss(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal(2 * n)
    return (x[:n] + 1j * x[n:]) / math.sqrt(2.0)


def _complete_homogeneous(nodes: Sequence[np.ndarray], degree: int) -> np.ndarray:
    """W[:, k] = h_{k-m}(nodes) (zero for k < m): divided differences of t^k, m = len(nodes)-1."""
    n = nodes[0].shape[0]
    h = np.zeros((n, degree + 1), dtype=np.complex128)
    h[:, 0] = 1.0
    for x in nodes:
        for j in range(1, degree + 1):
            h[:, j] = h[:, j] + x * h[:, j - 1]
    m = len(nodes) - 1
    out = np.zeros_like(h)
    if m <= degree:
        out[:, m:] = h[:, : degree + 1 - m]
    return out


def _dd(coeffs: np.ndarray, nodes: Sequence[np.ndarray]) -> np.ndarray:
    return _rowsum(coeffs * _complete_homogeneous(nodes, coeffs.shape[1] - 1))


class _BitangentSystem:
    def __init__(self, curve: PlaneCurve):
        self.f = curve.float_poly
        self.grad = curve.float_gradient
        self.degree = curve.degree

    def line(self, frames, z):
        A0, B0, C = frames
        A = A0 + z[:, 0:1] * C
        B = B0 + z[:, 1:2] * C
        return A, B

    def residual(self, frames, z) -> np.ndarray:
        A, B = self.line(frames, z)
        c = self.f.restrict(A, B)
        t1, t2 = z[:, 2], z[:, 3]
        F = np.stack(
            [
                _dd(c, [t1]),
                _dd(c, [t1, t1]),
                _dd(c, [t1, t1, t2]),
                _dd(c, [t1, t1, t2, t2]),
            ],
            axis=1,
        )
        return F

    def residual_and_jacobian(self, frames, z):
        A, B = self.line(frames, z)
        C = frames[2]
        c = self.f.restrict(A, B)
        # d/ds p(t) = grad f(A + tB) . C ; d/du p(t) = t * that
        r_full = restrict_batch(self.grad, [C[:, v] for v in range(3)], A, B, self.degree)
        tr = np.zeros_like(c)
        tr[:, 1:] = r_full[:, :-1]
        t1, t2 = z[:, 2], z[:, 3]
        d = self.degree
        node_sets = [[t1], [t1, t1], [t1, t1, t2], [t1, t1, t2, t2]]
        F = np.empty((len(t1), 4), dtype=np.complex128)
        J = np.zeros((len(t1), 4, 4), dtype=np.complex128)
        for row, nodes in enumerate(node_sets):
            W = _complete_homogeneous(nodes, d)
            F[:, row] = _rowsum(c * W)
            J[:, row, 0] = _rowsum(r_full * W)
            J[:, row, 1] = _rowsum(tr * W)
            n1 = sum(1 for x in nodes if x is t1)
            n2 = len(nodes) - n1
            if n1:
                J[:, row, 2] = n1 * _dd(c, nodes + [t1])
            if n2:
                J[:, row, 3] = n2 * _dd(c, nodes + [t2])
        return F, J


class _FlexSystem:
    def __init__(self, curve: PlaneCurve):
        hess = curve.hessian_determinant
        self.f = curve.float_poly
        self.fg = curve.float_gradient
        hdeg = 3 * (curve.degree - 2)
        self.h = FloatPoly(hess, hdeg)
        from .curve import poly_diff

        self.hg = [FloatPoly(poly_diff(hess, v), max(hdeg - 1, 0)) for v in range(3)]

    def point(self, frames, z):
        P0, V1, V2 = frames
        return P0 + z[:, 0:1] * V1 + z[:, 1:2] * V2

    def residual(self, frames, z):
        P = self.point(frames, z)
        return np.stack([self.f(P), self.h(P)], axis=1)

    def residual_and_jacobian(self, frames, z):
        P = self.point(frames, z)
        _, V1, V2 = frames
        F = np.stack([self.f(P), self.h(P)], axis=1)
        gf = np.stack([g(P) for g in self.fg], axis=1)
        gh = np.stack([g(P) for g in self.hg], axis=1)
        J = np.empty((len(P), 2, 2), dtype=np.complex128)
        J[:, 0, 0] = _rowsum(gf * V1)
        J[:, 0, 1] = _rowsum(gf * V2)
        J[:, 1, 0] = _rowsum(gh * V1)
        J[:, 1, 1] = _rowsum(gh * V2)
        return F, J


def _rowsum(a: np.ndarray) -> np.ndarray:
    """Sum over the last axis in a fixed left-to-right order.

    ``np.sum`` picks its reduction order from the array shape, so the same
    row could round differently in batches of different sizes.
    """
    out = a[..., 0].copy()
    for j in range(1, a.shape[-1]):
        out += a[..., j]
    return out


def _norm(F: np.ndarray) -> np.ndarray:
    return np.max(np.abs(F), axis=1)


def _safe_solve(J: np.ndarray, F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Solve J x = F row-wise; rows with singular J are flagged instead of raising.

    Rows and columns are equilibrated first so the singularity test does not
    depend on the chart scaling (a contact far out in the chart inflates one
    column by |t|^d).
    """
    with np.errstate(all="ignore"):
        rs = np.max(np.abs(J), axis=2, keepdims=True)
        rs = np.where(rs > 0, rs, 1.0)
        Jr = J / rs
        cs = np.max(np.abs(Jr), axis=1, keepdims=True)
        cs = np.where(cs > 0, cs, 1.0)
        Js = Jr / cs
        det = np.linalg.det(Js)
    ok = np.isfinite(det) & (np.abs(det) > 1e-13)
    x = np.zeros_like(F)
    if ok.any():
        y = np.linalg.solve(Js[ok], (F[ok] / rs[ok, :, 0])[..., None])[..., 0]
        x[ok] = y / cs[ok, 0, :]
    ok &= np.all(np.isfinite(x), axis=1)
    return x, ok


def damped_newton(system, frames, z0: np.ndarray, config: SolverConfig):
    """Vectorised damped Newton; returns (z, residual_norm, converged_mask).

    Each row evolves independently of the others, so results do not depend
    on how starts are grouped into batches.
    """
    z = z0.copy()
    n = z.shape[0]
    active = np.ones(n, dtype=bool)
    converged = np.zeros(n, dtype=bool)
    res = np.full(n, np.inf)
    for _ in range(config.max_iterations):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        fr = tuple(f[idx] for f in frames)
        zi = z[idx]
        F, J = system.residual_and_jacobian(fr, zi)
        r0 = _norm(F)
        res[idx] = r0
        step, ok = _safe_solve(J, -F)
        done_now = ~ok & (r0 <= config.residual_tolerance)
        converged[idx[done_now]] = True
        active[idx[~ok]] = False
        lam = np.ones(idx.size)
        accepted = np.zeros(idx.size, dtype=bool)
        pending = ok.copy()
        znew = zi.copy()
        rnew = r0.copy()
        for _h in range(MAX_HALVINGS + 1):
            p = np.nonzero(pending)[0]
            if p.size == 0:
                break
            cand = zi[p] + lam[p, None] * step[p]
            with np.errstate(all="ignore"):
                rc = _norm(system.residual(tuple(f[p] for f in fr), cand))
            good = np.isfinite(rc) & (rc < r0[p])
            gp = p[good]
            znew[gp] = cand[good]
            rnew[gp] = rc[good]
            accepted[gp] = True
            pending[gp] = False
            lam[pending] *= 0.5
        step_len = np.max(np.abs(lam[:, None] * step), axis=1)
        z[idx] = znew
        res[idx] = rnew
        # no decrease possible: at the noise floor if small, otherwise diverged
        stalled = ok & ~accepted
        converged[idx[stalled & (r0 <= config.residual_tolerance)]] = True
        active[idx[stalled]] = False
        zscale = 1.0 + np.max(np.abs(znew), axis=1)
        tiny = accepted & (step_len <= config.step_tolerance * zscale) & (rnew <= config.residual_tolerance)
        converged[idx[tiny]] = True
        active[idx[tiny]] = False
        blown = ~np.all(np.isfinite(znew), axis=1) | (np.max(np.abs(znew), axis=1) > 1e8)
        active[idx[blown]] = False
    converged |= active & (res <= config.residual_tolerance)
    converged &= np.all(np.isfinite(z), axis=1)
    return z, res, converged


# --------------------------------------------------------------------------
# per-start setup


def _bitangent_starts(seed: int, indices: np.ndarray):
    A0 = np.empty((len(indices), 3), dtype=np.complex128)
    B0 = np.empty_like(A0)
    C = np.empty_like(A0)
    z = np.empty((len(indices), 4), dtype=np.complex128)
    for row, i in enumerate(indices):
        rng = _start_rng(seed, int(i))
        A0[row] = _cgauss(rng, 3)
        B0[row] = _cgauss(rng, 3)
        C[row] = _cgauss(rng, 3)
        z[row] = _cgauss(rng, 4)
    return (A0, B0, C), z


def _flex_starts(seed: int, indices: np.ndarray):
    P0 = np.empty((len(indices), 3), dtype=np.complex128)
    V1 = np.empty_like(P0)
    V2 = np.empty_like(P0)
    z = np.empty((len(indices), 2), dtype=np.complex128)
    for row, i in enumerate(indices):
        rng = _start_rng(seed, int(i))
        P0[row] = _cgauss(rng, 3)
        V1[row] = _cgauss(rng, 3)
        V2[row] = _cgauss(rng, 3)
        z[row] = _cgauss(rng, 2)
    return (P0, V1, V2), z


def _polish_frames_bitangent(duals, p1s, p2s):
    """Well-conditioned chart around each candidate: unitary basis of the line plus its normal."""
    n = len(duals)
    A0 = np.empty((n, 3), dtype=np.complex128)
    B0 = np.empty_like(A0)
    C = np.empty_like(A0)
    z = np.zeros((n, 4), dtype=np.complex128)
    for k in range(n):
        a, b = line_basis(duals[k])
        A0[k], B0[k] = a, b
        C[k] = np.conj(duals[k]) / np.linalg.norm(duals[k])
        for j, p in enumerate((p1s[k], p2s[k])):
            sigma, tau = np.vdot(a, p), np.vdot(b, p)
            z[k, 2 + j] = tau / sigma if abs(sigma) > 1e-12 else 1e12
    return (A0, B0, C), z


# --------------------------------------------------------------------------
# public drivers


def _map_chunks(fn: Callable, indices: np.ndarray, config: SolverConfig) -> list:
    chunks = [indices[i : i + config.chunk_size] for i in range(0, len(indices), config.chunk_size)]
    if config.workers == 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(fn, chunks))


def _bitangent_candidates(system: _BitangentSystem, config: SolverConfig, indices: np.ndarray):
    def run(chunk):
        frames, z0 = _bitangent_starts(config.seed, chunk)
        z, res, conv = damped_newton(system, frames, z0, config)
        A, B = system.line(frames, z)
        out = []
        for k in np.nonzero(conv)[0]:
            cross = np.cross(A[k], B[k])
            if not np.all(np.isfinite(cross)) or np.linalg.norm(cross) == 0:
                continue
            p1 = A[k] + z[k, 2] * B[k]
            p2 = A[k] + z[k, 3] * B[k]
            if not (np.isfinite(p1).all() and np.isfinite(p2).all()):
                continue
            out.append((int(chunk[k]), normalize_projective(cross), p1, p2))
        return out

    return [c for part in _map_chunks(run, indices, config) for c in part]


def _dedup_key(v: np.ndarray) -> tuple:
    w = normalize_projective(v)
    return tuple(round(float(x), 6) for c in w for x in (c.real, c.imag))


def _dedup(items: list, coord: Callable, distance: float, better: Callable) -> list:
    """Greedy clustering in a fixed (sorted) order; keeps the ``better`` representative."""
    items = sorted(items, key=lambda it: (_dedup_key(coord(it)), it[0]))
    reps: list = []
    for it in items:
        for j, r in enumerate(reps):
            if chordal_distance(coord(it), coord(r)) < distance:
                if better(it, r):
                    reps[j] = it
                break
        else:
            reps.append(it)
    return sorted(reps, key=lambda it: _dedup_key(coord(it)))


@dataclass
class BitangentResult:
    curve: PlaneCurve
    solutions: list[TangencySolution]
    higher_order: list[TangencySolution]
    expected: Optional[int]
    starts: int
    warnings: list[str] = field(default_factory=list)

    @property
    def found(self) -> int:
        return len(self.solutions)

    @property
    def agrees(self) -> bool:
        return self.expected is not None and self.found == self.expected

    def summary(self) -> dict:
        return {
            "kind": "bitangents",
            "degree": self.curve.degree,
            "expected": self.expected,
            "found": self.found,
            "agrees": self.agrees,
            "real": sum(s.is_real for s in self.solutions),
            "higher_order_contacts": len(self.higher_order),
            "starts": self.starts,
            "warnings": list(self.warnings),
        }


def _symbolic_expected_bitangents(degree: int) -> int:
    from ..derivation import bitangent_count

    return int(bitangent_count()(degree))


def _symbolic_expected_flexes(degree: int) -> int:
    from ..derivation import flex_count

    return int(flex_count()(degree))


def solve_bitangents(
    curve, config: SolverConfig = SolverConfig(), expected: Optional[int] = "auto", honest: bool = False
) -> BitangentResult:
    """Run the oracle and return solutions plus diagnostics.

    ``expected="auto"`` takes the count from the closed formula.  Unless
    ``honest`` is set (or ``expected`` is None) it also sizes the start
    budget; in honest mode starts run in batches until they stop producing
    new lines, and ``expected`` is only used for the final comparison.
    """
    curve = as_curve(curve)
    if expected == "auto":
        expected = _symbolic_expected_bitangents(curve.degree)
    system = _BitangentSystem(curve)
    if curve.degree < 4:
        # a line meets a cubic in three points, so two double contacts are impossible
        return BitangentResult(curve, [], [], expected, 0)

    raw: list = []

    def process(indices):
        cands = _bitangent_candidates(system, config, indices)
        raw.extend(cands)

    if config.start_count is not None or (expected and not honest):
        total = config.start_count or STARTS_PER_SOLUTION * expected
        process(np.arange(total, dtype=np.uint64))
        starts = total
        sols, high = _finalize_bitangents(curve, system, raw, config)
    else:
        starts = 0
        idle = 0
        sols, high = [], []
        known = 0
        while idle < PATIENCE_BATCHES:
            process(np.arange(starts, starts + BATCH_SIZE, dtype=np.uint64))
            starts += BATCH_SIZE
            raw = _dedup(raw, lambda it: it[1], config.dedup_distance, lambda a, b: False)
            if len(raw) > known:
                known = len(raw)
                idle = 0
            else:
                idle += 1
        sols, high = _finalize_bitangents(curve, system, raw, config)

    result = BitangentResult(curve, sols, high, expected, starts)
    if high:
        result.warnings.append(
            f"{len(high)} line(s) with a single contact of order >= 4 (hyperflex); curve is not generic"
        )
    if expected is not None and result.found > expected:
        raise NonGenericCurveError(
            f"found {result.found} bitangents, more than the {expected} a generic curve of degree {curve.degree} has"
        )
    return result


def _finalize_bitangents(curve, system, raw, config):
    if not raw:
        return [], []
    pre = _dedup(raw, lambda it: it[1], config.dedup_distance * 10, lambda a, b: False)
    idx = np.array([it[0] for it in pre])
    frames, z0 = _polish_frames_bitangent([it[1] for it in pre], [it[2] for it in pre], [it[3] for it in pre])
    z, res, conv = damped_newton(system, frames, z0, config)
    A, B = system.line(frames, z)
    polished = []
    for k in range(len(pre)):
        if conv[k]:
            dual = normalize_projective(np.cross(A[k], B[k]))
            p1 = A[k] + z[k, 2] * B[k]
            p2 = A[k] + z[k, 3] * B[k]
        else:
            _, dual, p1, p2 = pre[k]
        if not (np.isfinite(dual).all() and np.isfinite(p1).all() and np.isfinite(p2).all()):
            continue
        polished.append((int(idx[k]), dual, p1, p2))
    merged = _dedup(polished, lambda it: it[1], config.dedup_distance, lambda a, b: False)

    sols, high = [], []
    for start, dual, p1, p2 in merged:
        residual, t1, t2, frame = certify_bitangent(curve, dual, p1, p2)
        if residual > 10 * config.residual_tolerance:
            log.debug("discarding candidate from start %d with certified residual %.3g", start, residual)
            continue
        if _sort_key_t(t2) < _sort_key_t(t1):
            t1, t2 = t2, t1
        sol = TangencySolution(frame, complex(t1), complex(t2), residual, realness(dual), start)
        if sol.separation < config.separation_tolerance or (
            sol.separation < NEAR_CONTACT and _merged_contact_order(curve, sol) >= 4
        ):
            high.append(sol)
        else:
            sols.append(sol)
    return sols, high


def _merged_contact_order(curve: PlaneCurve, sol: TangencySolution, tol: float = 1e-6) -> int:
    """Contact order at the midpoint of two nearby contacts.

    A hyperflex is a double solution of the bitangent system, so Newton only
    resolves its two contacts to about the square root of machine precision;
    order >= 4 at the midpoint identifies it regardless.
    """
    p1, p2 = sol.contact_points
    mid = p1 / np.linalg.norm(p1) + p2 / np.linalg.norm(p2) * np.exp(-1j * np.angle(np.vdot(p1, p2)))
    mid = mid / np.linalg.norm(mid)
    other = sol.line.B if abs(np.vdot(sol.line.B, mid)) < abs(np.vdot(sol.line.A, mid)) else sol.line.A
    other = other - np.vdot(mid, other) * mid
    other = other / np.linalg.norm(other)
    coeffs = restrict_to_line(curve, LineFrame(mid, other), normalized=True)
    ref = np.max(np.abs(coeffs))
    order = 0
    while order < len(coeffs) and abs(coeffs[order]) <= tol * ref:
        order += 1
    return order


def _sort_key_t(t: complex):
    return (round(t.real, 9), round(t.imag, 9))


def find_bitangents(curve, config: SolverConfig = SolverConfig(), expected: Optional[int] = "auto") -> list[TangencySolution]:
    """Every bitangent with two distinct contact points, each returned once."""
    return solve_bitangents(curve, config, expected).solutions


# --------------------------------------------------------------------------
# flexes


@dataclass
class FlexResult:
    curve: PlaneCurve
    points: list[FlexPoint]
    expected: Optional[int]
    starts: int
    warnings: list[str] = field(default_factory=list)

    @property
    def found(self) -> int:
        return len(self.points)

    @property
    def weighted(self) -> int:
        return sum(p.weight for p in self.points)

    @property
    def agrees(self) -> bool:
        return self.expected is not None and self.weighted == self.expected

    def summary(self) -> dict:
        return {
            "kind": "flexes",
            "degree": self.curve.degree,
            "expected": self.expected,
            "found": self.found,
            "weighted": self.weighted,
            "agrees": self.agrees,
            "real": sum(p.is_real for p in self.points),
            "starts": self.starts,
            "warnings": list(self.warnings),
        }


def contact_order(curve: PlaneCurve, point: np.ndarray, tol: float = 1e-6) -> tuple[int, np.ndarray]:
    """Order of contact of the tangent line at ``point`` and that line's dual vector."""
    grad = np.array([g(point) for g in curve.float_gradient])
    if np.linalg.norm(grad) < tol:
        raise NonGenericCurveError("singular point on the curve")
    frame = LineFrame.from_dual(grad)
    p = np.asarray(point, dtype=np.complex128)
    p = p / np.linalg.norm(p)
    other = frame.B if abs(np.vdot(frame.B, p)) < abs(np.vdot(frame.A, p)) else frame.A
    other = other - np.vdot(p, other) * p
    other /= np.linalg.norm(other)
    coeffs = restrict_to_line(curve, LineFrame(p, other), normalized=True)
    ref = np.max(np.abs(coeffs))
    order = 0
    while order < len(coeffs) and abs(coeffs[order]) <= tol * ref:
        order += 1
    return order, normalize_projective(grad)


def solve_flexes(
    curve, config: SolverConfig = SolverConfig(), expected: Optional[int] = "auto", honest: bool = False
) -> FlexResult:
    curve = as_curve(curve)
    if expected == "auto":
        expected = _symbolic_expected_flexes(curve.degree) if curve.degree >= 2 else 0
    if curve.degree < 2:
        return FlexResult(curve, [], expected, 0)
    hess = curve.hessian_determinant
    if not hess:
        raise NonGenericCurveError("Hessian vanishes identically (curve contains a line)")
    if all(sum(m) == 0 for m in hess) or curve.degree == 2:
        # smooth conic: constant nonzero Hessian never meets the curve
        return FlexResult(curve, [], expected, 0)
    system = _FlexSystem(curve)

    raw: list = []

    def run(chunk):
        frames, z0 = _flex_starts(config.seed, chunk)
        z, res, conv = damped_newton(system, frames, z0, config)
        P = system.point(frames, z)
        return [(int(chunk[k]), normalize_projective(P[k])) for k in np.nonzero(conv)[0] if np.isfinite(P[k]).all()]

    def process(indices):
        raw.extend(c for part in _map_chunks(run, indices, config) for c in part)

    if config.start_count is not None or (expected and not honest):
        total = config.start_count or STARTS_PER_SOLUTION * expected
        process(np.arange(total, dtype=np.uint64))
        starts = total
    else:
        starts, idle, known = 0, 0, 0
        while idle < PATIENCE_BATCHES:
            process(np.arange(starts, starts + BATCH_SIZE, dtype=np.uint64))
            starts += BATCH_SIZE
            raw[:] = _dedup(raw, lambda it: it[1], config.dedup_distance, lambda a, b: False)
            if len(raw) > known:
                known, idle = len(raw), 0
            else:
                idle += 1

    points = _finalize_flexes(curve, system, raw, config)
    result = FlexResult(curve, points, expected, starts)
    if any(p.weight > 1 for p in points):
        result.warnings.append("higher-order flexes present; counts are weighted by contact order - 2")
    if expected is not None and result.weighted > expected:
        raise NonGenericCurveError(f"found {result.weighted} weighted flexes, more than {expected}")
    return result


def _finalize_flexes(curve, system, raw, config):
    if not raw:
        return []
    pre = _dedup(raw, lambda it: it[1], config.dedup_distance * 10, lambda a, b: False)
    n = len(pre)
    P0 = np.array([it[1] / np.linalg.norm(it[1]) for it in pre])
    V1 = np.empty_like(P0)
    V2 = np.empty_like(P0)
    for k in range(n):
        a, b = line_basis(np.conj(P0[k]))
        V1[k], V2[k] = a, b
    z, res, conv = damped_newton(system, (P0, V1, V2), np.zeros((n, 2), dtype=np.complex128), config)
    P = system.point((P0, V1, V2), z)
    polished = [
        (pre[k][0], normalize_projective(P[k] if np.isfinite(P[k]).all() else pre[k][1])) for k in range(n)
    ]
    merged = _dedup(polished, lambda it: it[1], config.dedup_distance, lambda a, b: False)
    out = []
    for start, pt in merged:
        unit = pt / np.linalg.norm(pt)
        fval = abs(complex(restrict_exact(curve.normalized, curve.degree, unit, np.zeros(3))[0]))
        hval = abs(system.h(unit[None, :])[0])
        residual = max(fval, float(hval))
        if residual > 10 * config.residual_tolerance:
            continue
        order, tangent = contact_order(curve, unit)
        out.append(FlexPoint(pt, tangent, order, residual, realness(pt), start))
    return out


def find_flexes(curve, config: SolverConfig = SolverConfig(), expected: Optional[int] = "auto") -> list[FlexPoint]:
    return solve_flexes(curve, config, expected).points
