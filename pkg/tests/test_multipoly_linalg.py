"""
Unit tests for sparse multivariate forms and the exact/numeric linear algebra helpers.

Run: python -m pytest tests/test_multipoly_linalg.py -v
"""
from fractions import Fraction

import numpy as np
import pytest

from rdlab.linalg import (
    decide_rank_drop,
    exact_nullspace,
    exact_rank,
    nullspace,
    numeric_rank,
    projective_distance,
    rref,
    split_degenerate_conic,
)
from rdlab.multipoly import (
    CompiledForm,
    MultiPoly,
    binary_restriction,
    coeffs_of_form,
    form_from_coeffs,
    monomials,
    pullback,
)


def _xy():
    return MultiPoly.variable(0, 2), MultiPoly.variable(1, 2)


def test_monomials_decreasing_lex():
    """Test that ternary quadratic monomials come in decreasing lexicographic order."""
    expected = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert monomials(3, 2) == expected, f"Unexpected order {monomials(3, 2)}"
    assert len(monomials(4, 3)) == 20, "Cubic surfaces have 20 coefficients"
    assert len(monomials(3, 4)) == 15, "Plane quartics have 15 coefficients"


def test_form_coefficients_round_trip():
    """Test that form_from_coeffs and coeffs_of_form are inverse."""
    coeffs = list(range(1, 16))
    form = form_from_coeffs(coeffs, 3, 4)
    assert coeffs_of_form(form, 4) == coeffs, "Coefficient vector changed through a MultiPoly"


def test_multipoly_arithmetic_drops_zero_terms():
    """Test that (x + y)(x - y) = x^2 - y^2 with no cross term stored."""
    x, y = _xy()
    prod = (x + y) * (x - y)
    assert prod.terms == {(2, 0): 1, (0, 2): -1}, f"Unexpected terms {prod.terms}"


def test_diff_and_evaluate():
    """Test partial derivatives and evaluation."""
    x, y = _xy()
    f = x**3 * y + y * 2
    assert f.diff(0).terms == {(2, 1): 3}, f"d/dx wrong: {f.diff(0).terms}"
    assert f.evaluate([2, 3]) == 30, f"f(2, 3) should be 30, got {f.evaluate([2, 3])}"


def test_substitute_keeps_variable_order():
    """Test that substitute fixes variables and reindexes the kept ones."""
    f = MultiPoly(3, {(1, 1, 0): 1, (0, 0, 2): 5})
    g = f.substitute({2: 2}, [1, 0])
    assert g.terms == {(1, 1): 1, (0, 0): 20}, f"Unexpected substitution {g.terms}"


def test_pullback_of_product():
    """Test that x*y pulled back by (y0 + y1, y0 - y1) is y0^2 - y1^2."""
    x, y = _xy()
    g = pullback(x * y, np.array([[1, 1], [1, -1]]))
    assert g.terms == {(2, 0): 1, (0, 2): -1}, f"Unexpected pullback {g.terms}"


def test_compiled_form_gradient_and_hessian():
    """Test vectorized evaluation of value, gradient and Hessian."""
    x, y = _xy()
    form = CompiledForm(x * x * y)
    pt = np.array([[1.0, 2.0]])
    assert abs(form(pt)[0] - 2) < 1e-14, "f(1, 2) should be 2"
    assert np.allclose(form.gradient(pt)[0], [4, 1]), f"Gradient wrong: {form.gradient(pt)[0]}"
    assert np.allclose(form.hessian(pt)[0], [[4, 2], [2, 0]]), f"Hessian wrong: {form.hessian(pt)[0]}"


def test_binary_restriction_orders_s_first():
    """Test that restriction to a line returns coefficients s^d first."""
    x, y = _xy()
    form = CompiledForm(x * x * y)
    coeffs = binary_restriction(form, 3, np.array([1, 0]), np.array([0, 1]))
    assert np.allclose(coeffs, [0, 1, 0, 0], atol=1e-12), f"s^2 t expected, got {coeffs}"


def test_rref_and_exact_rank():
    """Test exact row reduction on a rank-2 matrix."""
    rows = [[1, 2, 3], [2, 4, 7], [3, 6, 10]]
    reduced, pivots = rref(rows)
    assert pivots == [0, 2], f"Unexpected pivots {pivots}"
    assert exact_rank(rows) == 2, "Matrix has rank 2"
    assert reduced[0] == [1, 2, 0], f"Unexpected first row {reduced[0]}"


def test_exact_nullspace_is_annihilated():
    """Test that every exact nullspace vector is killed by the matrix."""
    rows = [[1, 2, 3], [2, 4, 6]]
    basis = exact_nullspace(rows)
    assert len(basis) == 2, f"Nullspace should be 2-dimensional, got {len(basis)}"
    for v in basis:
        for row in rows:
            assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0, f"{v} not in the nullspace"


def test_numeric_nullspace_and_rank():
    """Test the SVD nullspace of a rank-deficient complex matrix."""
    m = np.array([[1, 1j, 0], [2, 2j, 0]], dtype=complex)
    assert numeric_rank(m) == 1, "Second row is a multiple of the first"
    for v in nullspace(m, 2):
        assert np.linalg.norm(m @ v) < 1e-12, f"M v should vanish for {v}"


def test_rank_decision_thresholds():
    """Test deficient, full and flagged singular-value decisions."""
    drop = decide_rank_drop(np.diag([1.0, 1e-12]))
    assert drop.deficient and not drop.flagged, "1e-12 relative singular value is a rank drop"
    full = decide_rank_drop(np.diag([1.0, 1e-3]))
    assert not full.deficient and not full.flagged, "1e-3 relative singular value is full rank"
    middle = decide_rank_drop(np.diag([1.0, 1e-6]))
    assert middle.flagged, "Values between the thresholds must be flagged"


def test_split_degenerate_conic_recovers_lines():
    """Test that a line pair g h^T + h g^T splits back into g and h."""
    g = np.array([1, 2, 3], dtype=complex)
    h = np.array([0, 1, -1], dtype=complex)
    a = np.outer(g, h) + np.outer(h, g)
    l1, l2 = split_degenerate_conic(a)
    found = sorted([min(projective_distance(l, g), projective_distance(l, h)) for l in (l1, l2)])
    assert found[-1] < 1e-10, f"Split lines do not match g and h: {l1}, {l2}"
    assert projective_distance(l1, l2) > 1e-3, "The two lines should be distinct"


def test_split_degenerate_conic_rejects_double_line():
    """Test that a double line cannot be split."""
    g = np.array([1, 0, 0], dtype=complex)
    with pytest.raises(ValueError):
        split_degenerate_conic(2 * np.outer(g, g))
