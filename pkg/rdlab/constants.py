# -*- coding: utf-8 -*-
"""
Constants for tolerances, exit codes, tower step kinds and group labels.
"""
from __future__ import annotations

# CLI exit codes
EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_USAGE = 64

# Default tolerances
DEFAULT_ROOT_TOL = 1e-10
LINE_RESIDUAL_TOL = 1e-9
LINE_DEDUP_TOL = 1e-6
BITANGENT_RESIDUAL_TOL = 1e-8
POINT_ON_SURFACE_TOL = 1e-10
# Random conic directions / chord points tried per labeled line of the blow-up model
BLOWUP_RETRIES = 8
FIBER_MATCH_RATIO = 10.0

# Rank decisions: relative smallest singular value below RANK_DROP_TOL means
# rank-deficient, above RANK_FULL_TOL means full rank; the ratio is the
# confidence gap and values in between are flagged.
RANK_DROP_TOL = 1e-8
RANK_FULL_TOL = 1e-5

# Budgets
GROUP_ORDER_BUDGET = 10**7
TRIPLE_LOOKUP_BUDGET = 10**8
SIMPLICITY_SAMPLES = 48

# Tower step kinds (stored in TowerStep.kind)
STEP_LINEAR_SHIFT = "linear-shift"
STEP_RADICAL = "radical-adjunction"
STEP_LINEAR_SECTION = "linear-section"
STEP_QUADRIC_DIAGONALIZATION = "quadric-diagonalization"
STEP_LINE_ON_QUADRIC = "line-on-quadric"
STEP_AUXILIARY_CUBIC = "auxiliary-cubic"
STEP_TSCHIRNHAUS = "tschirnhaus-substitution"
STEP_SCALING = "coefficient-scaling"

# Normal-form variants for bring_hamilton_reduce
NORMALIZE_EQUAL_TAIL = "equal-tail"
NORMALIZE_UNIT_CONSTANT = "unit-constant"

# Simple-group labels of the closed catalogue (order -> label)
LABEL_PSL27 = "PSL(2,7)"
LABEL_WE6_PLUS = "W(E6)+"
LABEL_WE7_PLUS = "W(E7)+"
ORDER_WE6 = 51840
ORDER_WE6_PLUS = 25920
ORDER_WE7 = 2903040
ORDER_WE7_PLUS = 1451520

# Monodromy defaults
DEFAULT_LOOP_RADIUS = 1.0
STABILIZATION_LOOPS = 25
