"""
Unit tests for Tschirnhaus maps, reduction towers and root recovery.

Run: python -m pytest tests/test_tschirnhaus.py -v
"""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdlab.constants import (
    NORMALIZE_EQUAL_TAIL,
    NORMALIZE_UNIT_CONSTANT,
    STEP_AUXILIARY_CUBIC,
    STEP_LINEAR_SHIFT,
    STEP_RADICAL,
    STEP_TSCHIRNHAUS,
)
from rdlab.errors import DegenerateInputError, InvalidInputError
from rdlab.poly import MODE_COMPLEX, MODE_RATIONAL, Polynomial, backward_error, multiset_distance, random_rational_poly, roots
from rdlab.rng import SeedTree
from rdlab.tschirnhaus import (
    NormalFormTarget,
    TschirnhausMap,
    _equal_tail_scaling,
    apply,
    bring_hamilton_reduce,
    depress,
    depress_tower,
    identity_tower,
    kill_two,
    recover_root,
    solve_via_tower,
)

QUINTIC = Polynomial((1, 2, -3, 1, -5, 7), MODE_RATIONAL)
SEXTIC = Polynomial((1, -1, 2, 3, -4, 1, 5), MODE_RATIONAL)

REDUCTIONS = {
    "depress": depress_tower,
    "kill-two": lambda p: kill_two(p)[1],
    "bring-hamilton": lambda p: bring_hamilton_reduce(p)[1],
    "unit-constant": lambda p: bring_hamilton_reduce(p, NORMALIZE_UNIT_CONSTANT)[1],
}


@st.composite
def _polynomial_and_map(draw):
    n = draw(st.integers(min_value=3, max_value=8))
    tail = draw(st.lists(st.integers(min_value=-4, max_value=4), min_size=n, max_size=n))
    b = draw(st.lists(st.integers(min_value=-3, max_value=3), min_size=n, max_size=n).filter(any))
    return Polynomial((1, *tail), MODE_RATIONAL), TschirnhausMap(n, tuple(b))


def test_identity_map_leaves_polynomial_unchanged():
    """Test that applying T(x) = x returns the same polynomial exactly."""
    p = Polynomial.from_roots([1, 2, 3])
    assert apply(p, TschirnhausMap.identity(3)) == p, "Identity substitution changed p"


def test_apply_shift_map_moves_roots():
    """Test that T(x) = x + 1 sends roots 1, 2, 3 to 2, 3, 4 exactly."""
    p = Polynomial.from_roots([1, 2, 3])
    image = apply(p, TschirnhausMap(3, (0, 1, 1)))
    assert image == Polynomial.from_roots([2, 3, 4]), f"Unexpected image {image}"
    assert image.is_exact, "Rational input should give an exact image"


def test_map_needs_n_coefficients():
    """Test that a map with the wrong coefficient count is rejected."""
    with pytest.raises(InvalidInputError):
        TschirnhausMap(3, (1, 0))


def test_normal_form_rejects_contradictory_pattern():
    """Test that an index cannot be both zero and one."""
    with pytest.raises(InvalidInputError):
        NormalFormTarget(zero=frozenset({2}), unit=frozenset({2}))


def test_depress_tower_is_exact():
    """Test that depressing (x-1)(x-2)(x-3) gives (x+1)x(x-1)."""
    tower = depress_tower(Polynomial.from_roots([1, 2, 3]))
    assert tower.target == Polynomial.from_roots([-1, 0, 1]), f"Unexpected target {tower.target}"
    assert tower.census()[(STEP_LINEAR_SHIFT, None)] == 1, "Depressing is a single shift"
    assert tower.normal_form.matches(tower.target), "Target should have a_1 = 0"


def test_depressed_tower_solves_back():
    """Test that roots pulled back through a shift are the original ones."""
    rs = solve_via_tower(depress_tower(Polynomial.from_roots([1, 2, 3])))
    assert multiset_distance(rs.roots, [1, 2, 3]) < 1e-10, f"Recovered roots off: {rs.roots}"


def test_kill_two_on_cubic():
    """Test that kill_two reaches x^3 + c with one square root."""
    p = Polynomial.from_roots([1, 2, 4])
    target, tower = kill_two(p)
    assert NormalFormTarget.two_killed().matches(target, 1e-9), f"a_1, a_2 not killed: {target}"
    census = tower.census()
    assert census[(STEP_RADICAL, 2)] == 1, f"Expected one square root, got {census}"
    assert census[(STEP_TSCHIRNHAUS, None)] == 1, "Expected one Tschirnhaus substitution"
    rs = solve_via_tower(tower)
    assert multiset_distance(rs.roots, [1, 2, 4]) < 1e-8, f"Recovered roots off: {rs.roots}"


def test_kill_two_skips_already_reduced():
    """Test that a polynomial with a_1 = a_2 = 0 yields an empty tower."""
    p = Polynomial((1, 0, 0, 5), MODE_RATIONAL)
    target, tower = kill_two(p)
    assert target == p and tower.steps == (), "Nothing should be done"


def test_kill_two_requires_degree_three():
    """Test that kill_two rejects quadratics."""
    with pytest.raises(InvalidInputError):
        kill_two(Polynomial.from_roots([1, 2]))


def test_bring_hamilton_census_on_quintic():
    """Test the four square roots and one cubic of a quintic reduction."""
    target, tower = bring_hamilton_reduce(QUINTIC)
    census = tower.census()
    assert census[(STEP_RADICAL, 2)] == 4, f"Expected 4 square roots, got {census}"
    assert census[(STEP_AUXILIARY_CUBIC, 3)] == 1, f"Expected one auxiliary cubic, got {census}"
    assert tower.radical_degrees() == [2, 2, 2, 2], f"Unexpected radicals {tower.radical_degrees()}"
    assert NormalFormTarget.bring_hamilton(5).matches(target, 1e-8), f"Target not in normal form: {target}"


def test_bring_hamilton_roots_recover():
    """Test that tower roots of the quintic agree with direct roots."""
    _, tower = bring_hamilton_reduce(QUINTIC)
    rs = solve_via_tower(tower, tol=1e-8)
    assert rs.max_residual < 1e-8, f"Residual too large: {rs.max_residual}"
    assert multiset_distance(rs.roots, roots(QUINTIC).roots) < 1e-6, "Tower and direct roots disagree"


def test_bring_hamilton_on_sextic():
    """Test that a degree-6 reduction keeps the same radical census."""
    target, tower = bring_hamilton_reduce(SEXTIC)
    assert target.degree == 6, "Degree is preserved"
    assert tower.census()[(STEP_RADICAL, 2)] == 4, "Degree 6 uses the same four square roots"
    assert NormalFormTarget.bring_hamilton(6).matches(target, 1e-8), f"Target not in normal form: {target}"


def test_bring_hamilton_unit_constant():
    """Test that the unit-constant normalization adjoins an n-th root and makes a_n = 1."""
    target, tower = bring_hamilton_reduce(QUINTIC, NORMALIZE_UNIT_CONSTANT)
    assert abs(complex(target.coeffs[5]) - 1) < 1e-12, f"Constant term should be 1: {target}"
    assert tower.census()[(STEP_RADICAL, 5)] == 1, "Expected one fifth root"
    rs = solve_via_tower(tower, tol=1e-8)
    assert multiset_distance(rs.roots, roots(QUINTIC).roots) < 1e-6, "Unit-constant tower roots disagree"


def test_bring_hamilton_rejections():
    """Test that low degree, non-monic input and unknown normalizations are rejected."""
    with pytest.raises(InvalidInputError):
        bring_hamilton_reduce(Polynomial.from_roots([1, 2, 3, 4]))
    with pytest.raises(InvalidInputError):
        bring_hamilton_reduce(Polynomial((2, 0, 0, 0, 1, 1), MODE_RATIONAL))
    with pytest.raises(InvalidInputError):
        bring_hamilton_reduce(QUINTIC, "sideways")


def test_identity_tower_solves_directly():
    """Test that an empty tower just finds the roots."""
    rs = solve_via_tower(identity_tower(Polynomial.from_roots([5])))
    assert abs(rs.roots[0] - 5) < 1e-12, f"Expected root 5, got {rs.roots}"


def test_depress_returns_shift_step():
    """Test the single-step depression and its inverse recipe."""
    target, step = depress(Polynomial.from_roots([1, 2, 3]))
    assert target == Polynomial.from_roots([-1, 0, 1]), f"Unexpected target {target}"
    assert step.kind == STEP_LINEAR_SHIFT
    assert step.pull(0) == 2, "Root 0 of the target pulls back to 2"


def test_depress_rejects_linear_and_non_monic():
    """Test the degree and monic preconditions."""
    with pytest.raises(InvalidInputError):
        depress(Polynomial((1, 5), MODE_RATIONAL))
    with pytest.raises(InvalidInputError):
        depress(Polynomial((2, 0, 1), MODE_RATIONAL))


def test_recover_root_exact():
    """Test that T(x) = x^2 sends 4 back to the root 2 of (x-1)(x-2)(x-3)."""
    rec = recover_root(Polynomial.from_roots([1, 2, 3]), TschirnhausMap(3, (1, 0, 0)), 4)
    assert not rec.degenerate and abs(rec.root - 2) < 1e-12, f"Unexpected recovery {rec}"


def test_recover_root_flags_fiber_with_two_points():
    """Test that T(x) = (x-2)^2 identifies the roots 1 and 3."""
    rec = recover_root(Polynomial.from_roots([1, 2, 3]), TschirnhausMap(3, (1, -4, 4)), 1)
    assert rec.degenerate, "Roots 1 and 3 share the image 1"
    assert sorted(round(z.real, 9) for z in rec.fiber) == [1.0, 3.0]


def test_recover_root_rejects_non_root():
    """Test that a value outside the transformed roots is rejected."""
    with pytest.raises(InvalidInputError):
        recover_root(Polynomial.from_roots([1, 2, 3]), TschirnhausMap(3, (1, 0, 0)), 5)


def test_apply_shift_on_x_squared_plus_one():
    """Test that T(x) = x + c sends x^2 + 1 to x^2 - 2c x + (c^2 + 1)."""
    c = Fraction(3, 2)
    image = apply(Polynomial((1, 0, 1), MODE_RATIONAL), TschirnhausMap(2, (1, c)))
    assert image == Polynomial((1, -2 * c, c * c + 1), MODE_RATIONAL), f"Unexpected image {image}"


@settings(max_examples=50, deadline=None)
@given(_polynomial_and_map())
def test_apply_matches_mapped_roots(data):
    """Test apply against the roots of p mapped through T and multiplied out again."""
    p, tmap = data
    found = np.roots(p.as_array())
    images = np.polyval(np.array(tmap.b, dtype=complex), found)
    expected = np.poly(images)
    scale = float(np.prod(1.0 + np.abs(images)))
    gap = float(np.max(np.abs(apply(p, tmap).as_array() - expected)))
    assert gap <= 1e-9 * scale, f"apply off by {gap} (scale {scale}) for {p}, {tmap.b}"


def test_kill_two_when_every_parameter_works():
    """Test that (x-1)^3, where S_2 vanishes for every u, takes u = 0 and adjoins nothing."""
    p = Polynomial.from_roots([1, 1, 1])
    target, tower = kill_two(p)
    assert all(abs(complex(c)) < 1e-12 for c in target.coeffs[1:]), f"Target should be x^3, got {target}"
    assert tower.census()[(STEP_RADICAL, 2)] == 0, "No square root is needed"
    assert tower.steps[-1].forward["map"] == [1, 0, -1], f"Expected T = x^2 - 1, got {tower.steps[-1].forward}"
    rs = solve_via_tower(tower)
    assert multiset_distance(rs.roots, [1, 1, 1]) < 1e-4, f"Recovered roots off: {rs.roots}"
    assert all(rs.flags), "All three roots come from one repeated fiber"


@pytest.mark.parametrize("normalize", [NORMALIZE_EQUAL_TAIL, NORMALIZE_UNIT_CONSTANT])
def test_septic_reaches_hamilton_normal_form(normalize):
    """Test the septic pattern x^7 + a x^3 + b x^2 + c x + d with d = c, or d = 1 after a seventh root."""
    reduced = 0
    for seed in range(3):
        p = random_rational_poly(7, SeedTree(seed).child("septic").generator())
        try:
            target, tower = bring_hamilton_reduce(p, normalize)
        except DegenerateInputError:
            continue
        assert target.degree == 7
        assert all(abs(complex(target.coeffs[k])) <= 1e-8 for k in (1, 2, 3)), f"a_1..a_3 not killed: {target}"
        if normalize == NORMALIZE_UNIT_CONSTANT:
            assert abs(complex(target.coeffs[7]) - 1) <= 1e-12, f"Constant term should be 1: {target}"
        else:
            a6, a7 = complex(target.coeffs[6]), complex(target.coeffs[7])
            assert abs(a6 - a7) <= 1e-8 * (1 + abs(a7)), f"a_6 and a_7 differ: {target}"
        assert tower.census()[(STEP_RADICAL, 2)] == 4 and tower.census()[(STEP_AUXILIARY_CUBIC, 3)] == 1
        rs = solve_via_tower(tower, tol=1e-8)
        assert len(rs) == 7 and rs.max_residual < 1e-8, f"Residual too large: {rs.max_residual}"
        reduced += 1
    assert reduced >= 2, f"Only {reduced} of 3 septics reduced"


@pytest.mark.parametrize("kind", sorted(REDUCTIONS))
def test_target_roots_pull_back_to_source_roots(kind):
    """Test that every root of the target pulls back to a root of the source with |p(x)| < 1e-8."""
    built = 0
    for seed in range(6):
        p = random_rational_poly(5, SeedTree(seed).child("pull-back", kind).generator())
        try:
            tower = REDUCTIONS[kind](p)
        except DegenerateInputError:
            continue
        rs = solve_via_tower(tower, tol=1e-8)
        assert len(rs) == 5, f"seed {seed}: {len(rs)} roots"
        assert rs.max_residual < 1e-8, f"seed {seed}: residual {rs.max_residual}"
        assert multiset_distance(rs.roots, roots(p).roots) < 1e-6, f"seed {seed}: tower and direct roots disagree"
        built += 1
    assert built >= 5, f"Only {built} of 6 towers built for {kind}"


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=5, max_value=7).flatmap(
        lambda n: st.lists(st.integers(min_value=-5, max_value=5), min_size=n - 2, max_size=n - 2)
    ),
    st.integers(min_value=-5, max_value=5).filter(lambda v: v != 0),
    st.integers(min_value=-5, max_value=5).filter(lambda v: v != 0),
    st.sampled_from([2, -3, 0.5, 1 + 1j, -2j]),
)
def test_equal_tail_scaling_ignores_root_scale(body, c1, c0, mu):
    """Test that scaling the roots by mu before the equal-tail step gives the same target."""
    q = Polynomial(tuple(complex(v) for v in (1, *body, c1, c0)), MODE_COMPLEX)
    target, step = _equal_tail_scaling(q)
    moved, _ = _equal_tail_scaling(q.scale_roots(mu))
    a, b = target.as_array(), moved.as_array()
    assert float(np.max(np.abs(a - b))) <= 1e-9 * max(1.0, float(np.max(np.abs(a)))), f"{a} != {b}"
    assert a[-1] == a[-2], "Last two coefficients should be equal"
    for y in roots(target).roots:
        assert backward_error(q, step.pull(y)) < 1e-10, f"{step.pull(y)} is not a root of {q}"
