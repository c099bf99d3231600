"""
Unit tests for enumerative counts, fiber matching and numerical monodromy certificates.

Run: python -m pytest tests/test_monodromy.py -v
"""
import math

import numpy as np
import pytest

from rdlab.errors import InvalidInputError
from rdlab.formats import dumps
from rdlab.homotopy import ParametricSystem
from rdlab.monodromy import (
    LOOP_ACCEPTED,
    LOOP_AMBIGUOUS,
    LOOP_NOT_BIJECTIVE,
    bezout_count,
    bezout_system,
    family_from_spec,
    flex_count,
    flex_system,
    hexahedral_degrees,
    kontsevich_nd,
    loop_waypoints,
    match_fiber,
    monodromy_group,
)
from rdlab.multipoly import MultiPoly
from rdlab.rng import SeedTree


def _kontsevich_reference(d: int) -> int:
    """N_d = sum over d1 + d2 = d of N_d1 N_d2 d1^2 d2 (d2 C(3d-4, 3d1-2) - d1 C(3d-4, 3d1-1))."""
    values = {1: 1}
    for e in range(2, d + 1):
        values[e] = sum(
            values[a] * values[e - a] * a * a * (e - a)
            * ((e - a) * math.comb(3 * e - 4, 3 * a - 2) - a * math.comb(3 * e - 4, 3 * a - 1))
            for a in range(1, e)
        )
    return values[d]


def test_kontsevich_known_values():
    """Test the first Kontsevich numbers."""
    assert [kontsevich_nd(d) for d in range(1, 6)] == [1, 1, 12, 620, 87304]


def test_kontsevich_matches_reference():
    """Test the recursion against an independently arranged formula up to degree 10."""
    for d in range(1, 11):
        assert kontsevich_nd(d) == _kontsevich_reference(d), f"Mismatch at d={d}"


def test_kontsevich_rejects_zero():
    """Test that degree 0 is rejected."""
    with pytest.raises(InvalidInputError):
        kontsevich_nd(0)


def test_counts():
    """Test the flex, Bezout and hexahedral counts."""
    assert flex_count(3) == 9 and flex_count(4) == 24
    assert bezout_count(2, 3) == 6
    degrees = hexahedral_degrees()
    assert math.prod(degrees.values()) == 51840, f"Cover degrees {degrees} should multiply to |W(E6)|"
    with pytest.raises(InvalidInputError):
        flex_count(2)


def test_family_parsing():
    """Test family specs and the malformed ones."""
    assert family_from_spec("bezout:2,3").system.fiber_degree == 6
    assert family_from_spec("flex:3").target_order is None
    assert family_from_spec("lines27").target_order == 51840
    for bad in ("bezout:2", "flex:x", "lines27:1", "cubic"):
        with pytest.raises(InvalidInputError):
            family_from_spec(bad)


def test_bezout_system_shape():
    """Test unknowns and parameters of the Bezout family."""
    system = bezout_system(2, 2)
    assert system.n_unknowns == 2 and system.n_params == 12, f"Unexpected shape {system.n_unknowns}, {system.n_params}"


def test_match_fiber():
    """Test accepted, ambiguous and non-bijective matches."""
    fiber = np.array([[0.0], [1.0], [2.0]], dtype=complex)
    images, status = match_fiber(np.array([[1.0], [2.0], [0.0]]), fiber)
    assert status == LOOP_ACCEPTED and images == [1, 2, 0]
    _, status = match_fiber(np.array([[0.5], [2.0], [0.0]]), fiber)
    assert status == LOOP_AMBIGUOUS, "Endpoint between two fiber points is ambiguous"
    _, status = match_fiber(np.array([[1.0], [1.0], [0.0]]), fiber)
    assert status == LOOP_NOT_BIJECTIVE


def test_loop_waypoints_are_closed():
    """Test that loops start and end at the basepoint with 4 waypoints in between."""
    base = np.array([1.0 + 0j, 2.0])
    pts = loop_waypoints(base, 1.0, SeedTree(0).child("w").generator())
    assert len(pts) == 6 and np.array_equal(pts[0], base) and np.array_equal(pts[-1], base)


def test_square_root_cover_has_order_two():
    """Test the monodromy of x^2 = s around s = 0."""
    x, s = MultiPoly.variable(0, 2), MultiPoly.variable(1, 2)
    system = ParametricSystem([x * x - s], 1, 1, fiber_degree=2, name="sqrt")
    cert = monodromy_group(
        system, basepoint=[1.0], fiber=np.array([[1.0], [-1.0]]), loops=30, seed=0, target=2, radius=2.0
    )
    assert cert.order == 2 and cert.reached_target, f"Expected order 2, got {cert.order}"
    assert cert.stop_reason == "target-reached"


def test_bezout_2_2_is_symmetric_group():
    """Test that two conics give the full S4 on their 4 intersections."""
    cert = monodromy_group(family_from_spec("bezout:2,2"), loops=60, seed=0)
    assert len(cert.fiber) == 4 and cert.complete, "Fiber should have 4 points"
    assert cert.order == 24 and cert.reached_target, f"Expected S4, got order {cert.order}"
    assert cert.solvable, "S4 is solvable"
    out = cert.to_dict()
    assert out["group"]["order"] == 24 and out["family"] == "bezout:2,2"
    assert all(loop["status"] == LOOP_ACCEPTED for loop in out["loops"] if "permutation" in loop)


def test_bezout_2_3_is_symmetric_group():
    """Test that a conic and a cubic give the full S6 on their 6 intersections."""
    cert = monodromy_group(family_from_spec("bezout:2,3"), loops=120, seed=0)
    assert len(cert.fiber) == 6 and cert.complete, "Fiber should have 6 points"
    assert cert.order == 720 and cert.reached_target, f"Expected S6, got order {cert.order}"
    assert not cert.solvable, "S6 is not solvable"
    assert cert.stop_reason == "target-reached"


@pytest.mark.slow
def test_lines27_is_weyl_e6():
    """Test that the 27 lines of a moving cubic surface have monodromy of order 51840."""
    cert = monodromy_group(family_from_spec("lines27"), loops=200, seed=0)
    assert len(cert.fiber) == 27, f"Expected 27 lines, got {len(cert.fiber)}"
    assert cert.order == 51840 and cert.reached_target, f"Expected W(E6), got order {cert.order}"
    assert not cert.solvable


def test_flex_3_group_is_solvable():
    """Test that the flexes of a plane cubic have solvable monodromy."""
    cert = monodromy_group(family_from_spec("flex:3"), loops=40, seed=0)
    assert len(cert.fiber) == 9, f"Expected 9 flexes, got {len(cert.fiber)}"
    assert cert.solvable, f"Flex group of order {cert.order} should be solvable"
    assert 216 % cert.order == 0, f"Order {cert.order} should divide 216"


def test_certificate_independent_of_threads():
    """Test that 1 and 2 worker threads give byte-identical certificates."""
    one = dumps(monodromy_group(family_from_spec("bezout:2,2"), loops=8, seed=3, threads=1).to_dict())
    two = dumps(monodromy_group(family_from_spec("bezout:2,2"), loops=8, seed=3, threads=2).to_dict())
    assert one == two, "Certificates differ between thread counts"


def test_flex_system_vanishes_at_a_fermat_flex():
    """Test that (-1, 0) is a flex of x^3 + y^3 + z^3 in the chart z = 1 and (-2^(1/3), 1) is not."""
    system = flex_system(3)
    assert (system.n_unknowns, system.n_params, system.fiber_degree) == (2, 10, 9)
    fermat = np.zeros(10, dtype=complex)
    fermat[[0, 6, 9]] = 1.0
    assert system.residual([[-1.0, 0.0]], fermat)[0] < 1e-12, "(-1, 0) is a flex of the Fermat cubic"
    assert system.residual([[-(2.0 ** (1 / 3)), 1.0]], fermat)[0] > 1e-3, "An ordinary point is not a flex"
