# -*- coding: utf-8 -*-
"""
JSON encode/decode helpers for every record the CLI reads or writes.

Scalars: rationals are "p/q" strings (integers as "p"), complex numbers are
[re, im] pairs, real floats (residuals, tolerances) are plain numbers and
non-finite floats become null. Plain JSON numbers are accepted on input. Output is dumped
with sorted keys so identical runs give byte-identical files. FORMATS.md
documents each record.
"""
from __future__ import annotations

import json
import math
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from rdlab.cubic_lines import CubicSurface, LineConfiguration, ProjLine
from rdlab.errors import InvalidInputError
from rdlab.poly import MODE_COMPLEX, MODE_RATIONAL, Polynomial, RootSet, to_fraction
from rdlab.quartic_bitangents import Bitangent, PlaneQuartic, make_bitangent
from rdlab.tschirnhaus import NormalFormTarget, SolutionTower

# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


def _float(x: float) -> Optional[float]:
    x = float(x)
    return x if math.isfinite(x) else None


def encode_scalar(value) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, Fraction)):
        f = Fraction(value)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    if isinstance(value, (complex, np.complexfloating)):
        return [_float(value.real), _float(value.imag)]
    if isinstance(value, (float, np.floating)):
        return _float(value)
    if isinstance(value, np.integer):
        return str(int(value))
    raise InvalidInputError(f"cannot encode scalar {value!r}")


def decode_scalar(raw, exact: bool = True):
    """'p/q' strings and ints decode to Fraction (or complex when exact=False); [re, im] to complex."""
    if isinstance(raw, bool):
        raise InvalidInputError(f"not a scalar: {raw!r}")
    if isinstance(raw, list):
        if len(raw) != 2 or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw):
            raise InvalidInputError(f"complex scalars are [re, im] pairs, got {raw!r}")
        return complex(raw[0], raw[1])
    if isinstance(raw, (str, int)):
        value = to_fraction(raw)
        return value if exact else complex(float(value))
    if isinstance(raw, float):
        return complex(raw)
    raise InvalidInputError(f"not a scalar: {raw!r}")


def encode_value(value) -> Any:
    """Recursive encoding of dicts, sequences and scalars (recipe and step data)."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [encode_value(v) for v in value]
    return encode_scalar(value)


def _complex_vector(values: Sequence) -> list:
    return [encode_scalar(complex(v)) for v in values]


def _decode_vector(raw, length: int, name: str, exact: bool = True) -> list:
    if not isinstance(raw, list) or len(raw) != length:
        raise InvalidInputError(f"{name} must be a list of {length} scalars")
    return [decode_scalar(v, exact) for v in raw]


# ---------------------------------------------------------------------------
# Polynomials and towers
# ---------------------------------------------------------------------------


def encode_polynomial(p: Polynomial) -> dict:
    return {"mode": p.mode, "coeffs": [encode_scalar(c) for c in p.coeffs]}


def decode_polynomial(obj: Any) -> Polynomial:
    if not isinstance(obj, dict) or not isinstance(obj.get("coeffs"), list):
        raise InvalidInputError('polynomial must be an object with a "coeffs" list')
    mode = obj.get("mode")
    raw = obj["coeffs"]
    if mode is None:
        mode = MODE_COMPLEX if any(isinstance(v, (list, float)) for v in raw) else MODE_RATIONAL
    if mode not in (MODE_RATIONAL, MODE_COMPLEX):
        raise InvalidInputError(f"unknown polynomial mode {mode!r}")
    coeffs = [decode_scalar(v, exact=mode == MODE_RATIONAL) for v in raw]
    if mode == MODE_RATIONAL and any(isinstance(c, complex) for c in coeffs):
        raise InvalidInputError("rational polynomial with a complex coefficient")
    if len(coeffs) < 2:
        raise InvalidInputError("polynomial must have degree >= 1")
    p = Polynomial(tuple(coeffs), mode)
    if p.degree < 1:
        raise InvalidInputError("polynomial must have degree >= 1")
    return p


def encode_normal_form(target: NormalFormTarget) -> dict:
    return {
        "zero": sorted(target.zero),
        "equal": sorted([list(pair) for pair in target.equal]),
        "unit": sorted(target.unit),
    }


def encode_tower(tower: SolutionTower) -> dict:
    census = [
        {"kind": kind, "degree": degree, "count": count}
        for (kind, degree), count in sorted(tower.census().items(), key=lambda kv: (kv[0][0], kv[0][1] or 0))
    ]
    return {
        "source": encode_polynomial(tower.source),
        "target": encode_polynomial(tower.target),
        "normal_form": encode_normal_form(tower.normal_form),
        "steps": [
            {
                "kind": step.kind,
                "degree": step.degree,
                "branch": step.branch,
                "forward": encode_value(step.forward),
                "inverse": encode_value(step.inverse),
            }
            for step in tower.steps
        ],
        "census": census,
    }


def encode_rootset(rs: RootSet) -> dict:
    return {
        "roots": [encode_scalar(complex(z)) for z in rs.roots],
        "residuals": [_float(r) for r in rs.residuals],
        "backward_errors": [_float(e) for e in rs.backward_errors],
        "tolerance": rs.tolerance,
        "flags": list(rs.flags),
    }


# ---------------------------------------------------------------------------
# Surfaces and lines
# ---------------------------------------------------------------------------


def decode_surface(obj: Any) -> CubicSurface:
    if not isinstance(obj, dict) or "coeffs20" not in obj:
        raise InvalidInputError('surface must be an object with "coeffs20"')
    return CubicSurface(tuple(_decode_vector(obj["coeffs20"], 20, "coeffs20")))


def encode_surface(surface: CubicSurface) -> dict:
    return {"coeffs20": [encode_scalar(c) for c in surface.coeffs]}


def encode_line(line: ProjLine) -> list:
    return _complex_vector(line.plucker)


def decode_line(obj: Any) -> ProjLine:
    """{"plucker": [6 scalars]} or {"points": [[4 scalars], [4 scalars]]}."""
    if isinstance(obj, dict) and "plucker" in obj:
        coords = _decode_vector(obj["plucker"], 6, "plucker", exact=False)
        return ProjLine.from_plucker(coords)
    if isinstance(obj, dict) and "points" in obj:
        pts = obj["points"]
        if not isinstance(pts, list) or len(pts) != 2:
            raise InvalidInputError("a line needs exactly 2 points")
        p, q = (_decode_vector(x, 4, "point", exact=False) for x in pts)
        return ProjLine.from_points(p, q)
    raise InvalidInputError('line must be an object with "plucker" or "points"')


def encode_line_configuration(cfg: LineConfiguration) -> dict:
    return {
        "lines": [encode_line(line) for line in cfg.lines],
        "labels": list(cfg.labels) if cfg.labels is not None else None,
        "adjacency": np.asarray(cfg.adjacency, dtype=int).tolist(),
        "diagnostics": encode_value(cfg.diagnostics),
    }


def decode_points(obj: Any, count: int, dim: int) -> list[list]:
    """{"points": [[dim scalars] x count]}; exact entries stay Fractions."""
    if not isinstance(obj, dict) or not isinstance(obj.get("points"), list):
        raise InvalidInputError('expected an object with a "points" list')
    pts = obj["points"]
    if len(pts) != count:
        raise InvalidInputError(f"expected {count} points, got {len(pts)}")
    return [_decode_vector(p, dim, "point") for p in pts]


def decode_point(obj: Any, dim: int) -> list[complex]:
    if not isinstance(obj, dict) or "point" not in obj:
        raise InvalidInputError('expected an object with a "point"')
    return [complex(v) for v in _decode_vector(obj["point"], dim, "point", exact=False)]


# ---------------------------------------------------------------------------
# Quartics and bitangents
# ---------------------------------------------------------------------------


def decode_quartic(obj: Any) -> PlaneQuartic:
    if not isinstance(obj, dict) or "coeffs15" not in obj:
        raise InvalidInputError('quartic must be an object with "coeffs15"')
    return PlaneQuartic(tuple(_decode_vector(obj["coeffs15"], 15, "coeffs15")))


def encode_quartic(quartic: PlaneQuartic) -> dict:
    return {"coeffs15": [encode_scalar(c) for c in quartic.coeffs]}


def encode_bitangent(b: Bitangent) -> dict:
    return {
        "line": _complex_vector(b.line),
        "contacts": [_complex_vector(x) for x in b.contacts],
        "witness": _complex_vector(b.witness),
        "residual": _float(b.residual),
    }


def decode_bitangent(obj: Any, quartic: PlaneQuartic) -> Bitangent:
    """Only "line" is read; witness and contacts are recomputed against the quartic."""
    if not isinstance(obj, dict) or "line" not in obj:
        raise InvalidInputError('bitangent must be an object with a "line"')
    line = np.array(_decode_vector(obj["line"], 3, "line", exact=False), dtype=complex)
    if not np.any(line):
        raise InvalidInputError("bitangent line is the zero covector")
    return make_bitangent(quartic.compiled, line)


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InvalidInputError(f"file not found: {path}")
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_output(obj: Any, out: Optional[str] = None) -> None:
    """JSON to `out` when given, otherwise to stdout."""
    text = dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
