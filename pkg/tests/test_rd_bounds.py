"""
Unit tests for resolvent-degree bounds and the bound catalogue.

Run: python -m pytest tests/test_rd_bounds.py -v
"""
import json

import pytest

from rdlab.errors import InvalidInputError, NoBoundError, UnsupportedError
from rdlab.groups import PermGroup, cyclic_group, symmetric_group
from rdlab.rd_bounds import (
    best_classical_bound,
    brauer_bound,
    brauer_r,
    bring_hamilton_bound,
    group_rd_bound,
    hamilton_H,
    load_catalogue,
)
from rdlab.repos import CatalogueRepo
from rdlab.repos.catalogue_repo import LOCATION


def _write_catalogue(tmp_path, entries) -> str:
    path = tmp_path / "catalogue.json"
    path.write_text(json.dumps({"version": 1, "entries": entries}), encoding="utf-8")
    return str(path)


def test_small_degree_bounds():
    """Test the best classical bound for n = 5..9."""
    got = [best_classical_bound(n).bound for n in range(5, 10)]
    assert got == [1, 2, 3, 4, 5], f"Unexpected bounds {got}"


def test_low_degrees_are_exact():
    """Test that degrees up to 5 are flagged exact with bound 1."""
    for n in range(2, 6):
        report = best_classical_bound(n)
        assert report.bound == 1 and report.exact, f"n={n} should be exactly 1"
    assert not best_classical_bound(6).exact, "n=6 is only an upper bound"


def test_bring_hamilton_schedule():
    """Test n - 4 beyond the quintic and rejection of n < 2."""
    assert bring_hamilton_bound(5) == 1
    assert bring_hamilton_bound(12) == 8
    with pytest.raises(InvalidInputError):
        bring_hamilton_bound(1)


def test_brauer_schedule():
    """Test r* and the Brauer bound at the factorial thresholds."""
    assert brauer_r(7) == 4, "(4-1)! + 1 = 7"
    assert brauer_r(25) == 5, "(5-1)! + 1 = 25"
    assert brauer_bound(25) == 20
    with pytest.raises(InvalidInputError):
        brauer_bound(3)


def test_brauer_first_beats_bring_hamilton_at_25():
    """Test that Brauer is strictly better first at n = 25 and never before."""
    first = next(n for n in range(4, 200) if brauer_bound(n) < bring_hamilton_bound(n))
    assert first == 25, f"Expected first strict improvement at 25, got {first}"
    report = best_classical_bound(25)
    assert report.bound == 20 and report.provenance[0].startswith("brauer"), f"Unexpected report {report}"
    assert best_classical_bound(24).provenance[0].startswith("bring-hamilton"), "Ties go to Bring-Hamilton"


def test_hamilton_table():
    """Test tabulated H(r) values and the unsupported range."""
    assert hamilton_H(4) == 5
    assert hamilton_H(5) == 11
    assert hamilton_H(6) == 47
    assert hamilton_H(7) == 923
    with pytest.raises(UnsupportedError):
        hamilton_H(10)


def test_bound_report_to_dict():
    """Test the JSON shape of a bound report."""
    out = best_classical_bound(7).to_dict()
    assert out["subject"] == "n=7" and out["bound"] == 3, f"Unexpected report {out}"
    assert isinstance(out["provenance"], list) and out["provenance"], "Provenance should be a non-empty list"


def test_catalogued_labels():
    """Test direct label lookups."""
    assert group_rd_bound("A5").bound == 1
    assert group_rd_bound("W(E6)").bound == 3
    assert group_rd_bound("W(E7)+").bound == best_classical_bound(28).bound
    assert group_rd_bound("S9").bound == 5, "S_n falls back to the classical bound"
    assert group_rd_bound("C7").exact, "Cyclic factors are exact"


def test_unknown_label_has_no_bound():
    """Test that an uncatalogued label raises NoBoundError."""
    with pytest.raises(NoBoundError):
        group_rd_bound("M11")


def test_group_bounds():
    """Test Jordan-Hölder bounds of solvable and non-solvable groups."""
    s4 = group_rd_bound(symmetric_group(4))
    assert s4.bound == 1 and s4.exact, "S4 is solvable"
    s5 = group_rd_bound(symmetric_group(5))
    assert s5.bound == 1 and s5.factors == ("C2", "A5"), f"Unexpected S5 report {s5}"
    s7 = group_rd_bound(symmetric_group(7))
    assert s7.bound == 3, f"A7 factor should give 3, got {s7.bound}"
    assert group_rd_bound(cyclic_group(12)).factors == ("C2", "C2", "C3")


def test_group_bound_from_generators():
    """Test the bound of a group given by image lists."""
    group = PermGroup.from_images([[1, 2, 3, 4, 5, 0], [1, 0, 2, 3, 4, 5]])
    report = group_rd_bound(group)
    assert report.factors == ("C2", "A6") and report.bound == 2, f"S6 should give 2, got {report}"


def test_bundled_catalogue_loads():
    """Test that the bundled catalogue parses and carries the key entries."""
    catalogue = load_catalogue()
    for label in ("C", "A5", "A_n", "S_n", "W(E6)", "W(E7)"):
        assert label in catalogue, f"Missing catalogue entry {label}"


def test_custom_catalogue_overrides(tmp_path):
    """Test that a custom catalogue path is used for lookups."""
    path = _write_catalogue(tmp_path, {"A5": {"bound": 2, "citation": "test value, Thm 9.9"}})
    report = group_rd_bound("A5", CatalogueRepo(path).load())
    assert report.bound == 2 and "test value" in report.provenance[0], f"Unexpected report {report}"


@pytest.mark.parametrize(
    "entry",
    [
        {"bound": 1},
        {"citation": "Cor. 3.5, no bound or rule"},
        {"bound": 0, "citation": "§1.1 zero"},
        {"rule": "guess", "citation": "Thm 3.3 bad rule"},
        {"rule": "classical-degree", "degree": 1, "citation": "§7.3 bad degree"},
        "not an object",
    ],
)
def test_corrupted_entry_is_named(tmp_path, entry):
    """Test that every malformed entry is rejected with its label in the message."""
    path = _write_catalogue(tmp_path, {"BROKEN": entry})
    with pytest.raises(InvalidInputError) as info:
        CatalogueRepo(path).load()
    assert "BROKEN" in str(info.value), f"Error should name the entry: {info.value}"


def test_missing_and_invalid_catalogue_files(tmp_path):
    """Test missing files and invalid JSON."""
    with pytest.raises(InvalidInputError):
        CatalogueRepo(str(tmp_path / "absent.json")).load()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        CatalogueRepo(str(bad)).load()


@pytest.mark.parametrize("citation", ["Klein, icosahedral resolvent", "see the literature", "Theorem of Brauer"])
def test_citation_without_location_is_rejected(tmp_path, citation):
    """Test that a citation naming no section, theorem or corollary is refused."""
    path = _write_catalogue(tmp_path, {"A5": {"bound": 1, "citation": citation}})
    with pytest.raises(InvalidInputError) as info:
        CatalogueRepo(path).load()
    assert "A5" in str(info.value), f"Error should name the entry: {info.value}"


@pytest.mark.parametrize("citation", ["Cor. 3.5", "§3.1 footnote", "Thm 4.2", "Thm 4.6(1)", "Theorem 7.2 (Brauer)"])
def test_citation_with_location_is_accepted(tmp_path, citation):
    """Test the accepted location forms."""
    path = _write_catalogue(tmp_path, {"A5": {"bound": 1, "citation": citation}})
    assert CatalogueRepo(path).load().get("A5").citation == citation


def test_bundled_citations_name_locations():
    """Test that every bundled entry points at a section, theorem or corollary."""
    catalogue = load_catalogue()
    for label in ("C", "A5", "PSL(2,7)", "S7", "W(E6)", "W(D5)"):
        assert LOCATION.search(catalogue.get(label).citation), f"{label} cites no location"
    assert "Cor. 3.5" in catalogue.get("A5").citation
    assert "§3.1 footnote" in catalogue.get("PSL(2,7)").citation
    assert "Thm 4.2" in catalogue.get("W(E6)").citation
    assert "Thm 4.6(1)" in catalogue.get("W(D5)").citation
