import numpy as np
import pytest

from conftest import flexes_of, random_quartic_text
from pluecker.numeric.curve import parse_curve
from pluecker.numeric.solver import (
    DegenerateFrameError,
    LineFrame,
    NonGenericCurveError,
    SolverConfig,
    _BitangentSystem,
    _merged_contact_order,
    _polish_frames_bitangent,
    certify_bitangent,
    chordal_distance,
    damped_newton,
    find_bitangents,
    find_flexes,
    line_basis,
    normalize_projective,
    realness,
    restrict_to_line,
    solve_bitangents,
    solve_flexes,
)

CUBIC = "x^3 + y^3 + z^3 + 1/2*x*y*z"
CONIC = "x^2 + y^2 - z^2"


# ---------------------------------------------------------------------------
# geometry helpers


def test_restrict_conic_to_tangent_line():
    frame = LineFrame(np.array([1, 0, 1]), np.array([0, 1, 0]))
    np.testing.assert_allclose(restrict_to_line(CONIC, frame), [0, 0, 1])


def test_restrict_line_inside_curve_is_an_error():
    frame = LineFrame(np.array([0, 1, 0]), np.array([0, 0, 1]))
    with pytest.raises(ValueError, match="contained"):
        restrict_to_line("x*y*z", frame)


def test_degenerate_frames():
    with pytest.raises(DegenerateFrameError):
        LineFrame(np.array([1, 2, 3]), np.array([2, 4, 6]))
    with pytest.raises(DegenerateFrameError):
        LineFrame(np.zeros(3), np.array([1, 0, 0]))


@pytest.mark.parametrize("dual", [[1, 2, 3], [1j, 0.5, -2], [0, 0, 1], [1, 1j, 0]])
def test_line_basis_is_unitary_and_on_the_line(dual):
    dual = np.array(dual, dtype=complex)
    a, b = line_basis(dual)
    assert abs(np.dot(dual, a)) < 1e-14 and abs(np.dot(dual, b)) < 1e-14
    assert abs(np.vdot(a, b)) < 1e-14
    assert np.linalg.norm(a) == pytest.approx(1) and np.linalg.norm(b) == pytest.approx(1)
    assert chordal_distance(LineFrame(a, b).dual, dual) < 1e-12


def test_chordal_distance():
    assert chordal_distance(np.array([1, 2, 3]), np.array([2j, 4j, 6j])) < 1e-12
    assert chordal_distance(np.array([1, 0, 0]), np.array([0, 1, 0])) == pytest.approx(1)


def test_normalize_projective():
    np.testing.assert_allclose(normalize_projective(np.array([2j, 4j, 1j])), [0.5, 1, 0.25])


@pytest.mark.parametrize(
    "coords, expected",
    [([0, 0, 1], True), ([1, 1j, 0], False), ([1j, 2j, 3j], True), ([1 + 1j, 2 + 2j, 0], True)],
)
def test_realness(coords, expected):
    assert realness(np.array(coords, dtype=complex)) is expected


# ---------------------------------------------------------------------------
# low degrees


def test_conic_and_cubic_have_no_bitangents():
    assert find_bitangents(CONIC) == []
    assert find_bitangents(CUBIC) == []
    assert solve_bitangents(CONIC).agrees


def test_conic_has_no_flexes():
    result = solve_flexes(CONIC)
    assert result.points == [] and result.agrees


def test_cubic_flexes():
    result = solve_flexes(CUBIC, SolverConfig(seed=3))
    assert result.found == 9 and result.weighted == 9 and result.agrees
    assert all(p.contact_order == 3 for p in result.points)
    assert all(p.residual < 1e-9 for p in result.points)


def test_fermat_cubic_real_flexes():
    # x^3 + y^3 + z^3 has exactly three real flexes, on the line x + y + z = 0
    result = solve_flexes("x^3 + y^3 + z^3")
    assert result.found == 9
    real = [p for p in result.points if p.is_real]
    assert len(real) == 3
    for p in real:
        assert abs(np.sum(p.point)) < 1e-9


def test_reducible_curve_flexes_refused():
    with pytest.raises(NonGenericCurveError):
        solve_flexes("x^2 - y^2")


def test_honest_flexes():
    result = solve_flexes(CUBIC, SolverConfig(seed=1), honest=True)
    assert result.found == 9


# ---------------------------------------------------------------------------
# a generic quartic


def test_quartic_count_and_certificates(quartic_bitangents):
    result = quartic_bitangents
    assert result.found == 28 and result.agrees
    assert not result.higher_order and not result.warnings
    curve = result.curve
    for s in result.solutions:
        p1, p2 = s.contact_points
        residual, *_ = certify_bitangent(curve, s.dual, p1, p2)
        assert residual <= 10 * SolverConfig().residual_tolerance
        assert abs(s.t1 - s.t2) > 1e-6
    duals = [s.dual for s in result.solutions]
    for i in range(len(duals)):
        for j in range(i):
            assert chordal_distance(duals[i], duals[j]) > 1e-6


def test_real_bitangents_come_in_real_form(quartic_bitangents):
    for s in quartic_bitangents.solutions:
        if s.is_real:
            assert np.all(np.abs(normalize_projective(s.dual).imag) < 1e-8)


def test_swap_symmetry(quartic_bitangents):
    """Newton from the swapped start (t2, t1) returns the same line."""
    sols = quartic_bitangents.solutions
    system = _BitangentSystem(quartic_bitangents.curve)
    duals = [s.dual for s in sols]
    p1s = [s.contact_points[1] for s in sols]
    p2s = [s.contact_points[0] for s in sols]
    frames, z0 = _polish_frames_bitangent(duals, p1s, p2s)
    rng = np.random.default_rng(0)
    # relative perturbation: a contact far out in the chart (|t| ~ 30) is sensitive in absolute terms
    z0 = z0 + 1e-4 * (1 + np.abs(z0)) * (rng.standard_normal(z0.shape) + 1j * rng.standard_normal(z0.shape))
    z, _, conv = damped_newton(system, frames, z0, SolverConfig())
    assert conv.all()
    A, B = system.line(frames, z)
    for k, s in enumerate(sols):
        assert chordal_distance(np.cross(A[k], B[k]), s.dual) < SolverConfig().dedup_distance


def test_chart_independence(quartic_bitangents):
    """A different seed draws different random charts but finds the same lines."""
    other = solve_bitangents(quartic_bitangents.curve, SolverConfig(seed=11))
    assert other.found == 28
    for s in quartic_bitangents.solutions:
        assert min(chordal_distance(s.dual, o.dual) for o in other.solutions) < SolverConfig().dedup_distance


def test_determinism_across_workers_and_chunks():
    curve = random_quartic_text(2)
    runs = [
        solve_bitangents(curve, SolverConfig(start_count=1500, workers=w, chunk_size=c))
        for w, c in ((1, 2048), (3, 200), (4, 377))
    ]
    dumps = [[s.to_dict() for s in r.solutions] for r in runs]
    assert dumps[0] and dumps[0] == dumps[1] == dumps[2]


@pytest.mark.parametrize("workers, chunk_size", [(4, 100), (2, 37), (1, 1)])
def test_flex_determinism_across_workers(workers, chunk_size):
    base = solve_flexes(CUBIC, SolverConfig(start_count=600))
    other = solve_flexes(CUBIC, SolverConfig(start_count=600, workers=workers, chunk_size=chunk_size))
    assert [p.to_dict() for p in base.points] == [p.to_dict() for p in other.points]


def test_normalize_projective_breaks_ties_stably():
    a = normalize_projective(np.array([-1.0, 1.0 + 1e-15, 0.0]))
    b = normalize_projective(np.array([-1.0, 1.0 - 1e-15, 0.0]))
    np.testing.assert_allclose(a, b, atol=1e-12)
    assert a[0] == 1


def test_honest_mode_quartic():
    result = solve_bitangents(random_quartic_text(1), SolverConfig(), honest=True)
    assert result.found == 28
    assert result.starts % 100 == 0 and result.starts >= 5000


def test_count_exceeding_formula_raises():
    with pytest.raises(NonGenericCurveError):
        solve_bitangents(random_quartic_text(1), SolverConfig(start_count=2000), expected=3)


def test_find_flexes_quartic():
    assert len(find_flexes("x^4 + y^4 + z^4 + 2*x^2*y*z", SolverConfig(seed=1))) == 24
    assert flexes_of(random_quartic_text(3)).found == 24


# ---------------------------------------------------------------------------
# the Fermat quartic is not generic


def test_fermat_quartic_hyperflexes(fermat_bitangents):
    """Twelve hyperflex lines (e.g. x = zeta y) absorb two bitangents each."""
    result = fermat_bitangents
    assert result.found == 16
    assert len(result.higher_order) == 12
    assert result.found + len(result.higher_order) == 28
    assert result.warnings
    curve = parse_curve("x^4 + y^4 + z^4")
    for s in result.higher_order:
        assert s.separation < 1e-3
        assert _merged_contact_order(curve, s) >= 4
    # every hyperflex line passes through a coordinate point, i.e. one dual coordinate vanishes
    for s in result.higher_order:
        assert np.min(np.abs(normalize_projective(s.dual))) < 1e-6


def test_fermat_quartic_flexes():
    result = flexes_of("x^4 + y^4 + z^4")
    assert result.found == 12
    assert all(p.contact_order == 4 and p.weight == 2 for p in result.points)
    assert result.weighted == 24 and result.agrees


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(dedup_distance=0)
    with pytest.raises(ValueError):
        SolverConfig(start_count=0)
    with pytest.raises(ValueError):
        SolverConfig(workers=0)
