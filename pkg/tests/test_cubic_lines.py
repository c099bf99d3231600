"""
Unit tests for the 27 lines: direct solve, pencil growth, blow-up model and double-sixes.

Run: python -m pytest tests/test_cubic_lines.py -v
"""
from fractions import Fraction

import numpy as np
import pytest

from rdlab.constants import LINE_RESIDUAL_TOL
from rdlab.cubic_lines import (
    CubicSurface,
    ProjLine,
    blowup_cubic,
    clebsch_cubic,
    double_sixes,
    fermat_cubic,
    label_configuration_from_double_six,
    lines_from_one,
    lines_on_cubic,
    pentahedral_surface,
    restriction_residual,
    sixers,
    validate_configuration,
)
from rdlab.errors import DegenerateInputError, InvalidInputError
from rdlab.groups import combinatorial_adjacency, line_labels
from rdlab.linalg import projective_distance

SIX_POINTS = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]]
FERMAT_LINE = ProjLine.from_points([1, -1, 0, 0], [0, 0, 1, -1])


@pytest.fixture(scope="module")
def fermat_lines():
    return lines_on_cubic(fermat_cubic(), seed=0)


@pytest.fixture(scope="module")
def blowup():
    return blowup_cubic(SIX_POINTS, seed=0)


def test_surface_needs_twenty_nonzero_coefficients():
    """Test that short or zero coefficient vectors are rejected."""
    with pytest.raises(InvalidInputError):
        CubicSurface((1,) * 19)
    with pytest.raises(InvalidInputError):
        CubicSurface((0,) * 20)


def test_pentahedral_with_one_zero_weight_is_fermat():
    """Test that dropping X_4 from the pentahedral form leaves the Fermat cubic."""
    assert pentahedral_surface([1, 1, 1, 1, 0]).coeffs == fermat_cubic().coeffs


def test_plucker_relation_holds_for_lines_from_points():
    """Test that a line through two points satisfies the Plücker relation."""
    line = ProjLine.from_points([1, 2, 0, 1], [0, 1, 3, -1])
    assert abs(line.relation()) < 1e-12, f"Plücker relation fails: {line.relation()}"
    assert max(abs(c) for c in line.plucker) == pytest.approx(1.0), "Largest coordinate should be 1"


def test_known_fermat_line_is_on_surface():
    """Test the restriction residual of x0 = -x1, x2 = -x3."""
    assert restriction_residual(fermat_cubic(), FERMAT_LINE) < 1e-12


def test_fermat_has_27_lines(fermat_lines):
    """Test that the direct solve finds 27 lines forming the Schläfli graph."""
    assert len(fermat_lines) == 27, f"Expected 27 lines, got {len(fermat_lines)}"
    assert validate_configuration(fermat_lines.adjacency) == [], "Meeting graph is not the 27-line pattern"
    worst = max(restriction_residual(fermat_cubic(), line) for line in fermat_lines.lines)
    assert worst < LINE_RESIDUAL_TOL, f"Line residual too large: {worst}"


def test_fermat_lines_include_known_line(fermat_lines):
    """Test that x0 = -x1, x2 = -x3 is among the found lines."""
    assert any(projective_distance(FERMAT_LINE.vector, l.vector) < 1e-8 for l in fermat_lines.lines)


def test_clebsch_has_27_lines():
    """Test the direct solve on the Clebsch diagonal surface."""
    cfg = lines_on_cubic(clebsch_cubic(), seed=1)
    assert len(cfg) == 27 and validate_configuration(cfg.adjacency) == []


def test_lines_from_one_matches_direct_solve(fermat_lines):
    """Test that growing from one line recovers the same 27 lines."""
    grown = lines_from_one(fermat_cubic(), FERMAT_LINE, seed=0)
    assert len(grown) == 27, f"Expected 27 lines, got {len(grown)}"
    assert grown.diagnostics["first_pass"] == 11, "One pencil adds the 10 lines meeting the seed line"
    for line in grown.lines:
        assert any(projective_distance(line.vector, l.vector) < 1e-7 for l in fermat_lines.lines), f"{line} not found directly"


def test_lines_from_one_rejects_line_off_surface():
    """Test that a seed line not on the surface is rejected."""
    with pytest.raises(InvalidInputError):
        lines_from_one(fermat_cubic(), ProjLine.from_points([1, 0, 0, 0], [0, 1, 0, 0]))


def test_sixers_and_double_sixes(fermat_lines):
    """Test the 72 sixers and 36 double-sixes."""
    assert len(sixers(fermat_lines)) == 72, "Expected 72 sets of six skew lines"
    assert len(double_sixes(fermat_lines)) == 36, "Expected 36 double-sixes"


def test_blowup_is_exact_and_labeled(blowup):
    """Test that rational points give exact incidences matching the label rules."""
    surface, cfg = blowup
    assert cfg.diagnostics["exact"], "Rational points should keep the pipeline exact"
    assert cfg.labels == line_labels()
    assert np.array_equal(cfg.adjacency, combinatorial_adjacency()), "Exact incidences differ from the label rules"
    assert all(isinstance(c, Fraction) for c in surface.coeffs), "Exact pipeline should give rational coefficients"


def test_blowup_lines_lie_on_fitted_surface(blowup):
    """Test every labeled line against the fitted cubic."""
    surface, cfg = blowup
    worst = max(restriction_residual(surface, line) for line in cfg.lines)
    assert worst < LINE_RESIDUAL_TOL, f"Worst residual {worst}"


def test_relabel_from_double_six(blowup):
    """Test that any double-six induces the blow-up incidence pattern."""
    _, cfg = blowup
    six = double_sixes(cfg)[5]
    relabeled = label_configuration_from_double_six(cfg, six)
    assert np.array_equal(relabeled.adjacency, combinatorial_adjacency())


def test_blowup_rejects_collinear_points():
    """Test that three collinear points are a degenerate input."""
    points = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3], [2, -1, 5]]
    with pytest.raises(DegenerateInputError):
        blowup_cubic(points)


def test_blowup_rejects_points_on_a_conic():
    """Test that six points on xy = z^2 are a degenerate input."""
    points = [[1, 1, 1], [1, 4, 2], [4, 1, 2], [1, 9, 3], [9, 1, 3], [4, 9, 6]]
    with pytest.raises(DegenerateInputError):
        blowup_cubic(points)


def test_blowup_needs_six_points():
    """Test that five points are rejected."""
    with pytest.raises(InvalidInputError):
        blowup_cubic(SIX_POINTS[:5])


# (1, 3, 3) = (0, 1, 0) + (1, 2, 3): a conic through the last five points reached from
# (0, 1, 0) along (1, 2, 3) lands on a base point of the cubic system.
BASE_POINT_TRAP = [[1, 0, 0], [0, 1, 0], [1, 3, 3], [0, 0, 1], [1, 1, 2], [2, -1, 5]]


def test_blowup_handles_conic_directions_through_a_base_point():
    """Test that a point placed on a convenient conic direction still gives 27 labeled lines."""
    surface, cfg = blowup_cubic(BASE_POINT_TRAP, seed=0)
    assert cfg.diagnostics["exact"]
    assert np.array_equal(cfg.adjacency, combinatorial_adjacency()), "Exact incidences differ from the label rules"
    worst = max(restriction_residual(surface, line) for line in cfg.lines)
    assert worst < LINE_RESIDUAL_TOL, f"Worst residual {worst}"


@pytest.mark.parametrize("seed", [1, 7, 42])
def test_blowup_lines_do_not_depend_on_the_seed(blowup, seed):
    """Test that the random conic and chord points only change the representatives, not the lines."""
    _, base_cfg = blowup
    _, cfg = blowup_cubic(SIX_POINTS, seed=seed)
    for label, a, b in zip(line_labels(), base_cfg.lines, cfg.lines):
        assert projective_distance(a.vector, b.vector) < 1e-6, f"Line {label} moved with the seed"
