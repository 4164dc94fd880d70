"""Modular set verification, the family table, block expansion, search."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stanley import (
    BudgetExceededError,
    NotModularError,
    expand_modular,
    family_modulus,
    family_set,
    family_table,
    generate,
    search_near_modular,
    verify_modular,
    verify_near_modular,
    zero_sequence_value,
)

from .naive import naive_is_modular, naive_is_near_modular, naive_search


def test_zero_sequence_closed_form():
    # value n spells n's binary digits in ternary
    assert [zero_sequence_value(n) for n in range(8)] == [0, 1, 3, 4, 9, 10, 12, 13]
    assert zero_sequence_value(2**10) == 3**10
    assert zero_sequence_value(0b1011) == 3**3 + 3**1 + 3**0


def test_known_modular_sets():
    assert verify_modular([0], 1).verdict == "modular"
    assert verify_modular([0, 1], 3).verdict == "modular"
    assert verify_modular([0, 2, 5, 6], 9).verdict == "modular"


def test_near_modular_vocabulary():
    report = verify_near_modular([0, 4, 10, 12], 9)
    assert report.verdict == "near-modular-only"
    assert report.ok
    assert verify_near_modular([0, 2, 5, 6], 9).verdict == "modular"
    out_of_range = verify_modular([0, 4, 10, 12], 9)
    assert out_of_range.verdict == "invalid"
    assert out_of_range.violation.kind == "out-of-range"
    assert not out_of_range.ok


def test_violation_kinds():
    assert verify_modular([1, 2], 3).violation.kind == "missing-zero"
    ap = verify_near_modular([0, 1, 2, 4], 9)
    assert ap.verdict == "invalid" and ap.violation.kind == "mod-ap"
    x, y, z = ap.violation.details
    assert (x - (2 * y - z)) % 9 == 0
    gap = verify_near_modular([0, 1], 9)
    assert gap.verdict == "invalid" and gap.violation.kind == "uncovered-residue"


def test_duplicate_residues_rejected():
    # distinct integers, equal residues: x = 2y - y (mod N) nontrivially
    report = verify_near_modular([0, 2, 5, 11], 9)
    assert report.verdict == "invalid"
    assert report.violation.kind == "mod-ap"


@given(st.sets(st.integers(0, 40), min_size=1, max_size=8), st.integers(2, 30))
@settings(max_examples=150, deadline=None)
def test_near_modular_matches_naive(elements, modulus):
    elements = {0} | elements
    report = verify_near_modular(sorted(elements), modulus)
    assert report.ok == naive_is_near_modular(sorted(elements), modulus)


@given(st.sets(st.integers(0, 26), min_size=1, max_size=8), st.integers(2, 27))
@settings(max_examples=150, deadline=None)
def test_modular_matches_naive(elements, modulus):
    elements = {0} | elements
    report = verify_modular(sorted(elements), modulus)
    assert (report.verdict == "modular") == naive_is_modular(sorted(elements), modulus)


def test_family_table_contents():
    table = family_table()
    assert len(table) == 8
    for entry in table:
        assert entry.modulus == 3 ** (entry.index + 1)
        assert len(entry.elements) == 2 ** (entry.index + 1)
        expected_max = (2 if entry.side == "A" else 4) * 3**entry.index
        assert entry.elements[-1] == expected_max
        assert verify_near_modular(entry.elements, entry.modulus).ok


@pytest.mark.parametrize("index", [1, 2, 3, 4])
@pytest.mark.parametrize("side", ["A", "B"])
@pytest.mark.parametrize("shift", [0, 1, 2, 3])
def test_shifted_families_stay_near_modular(index, side, shift):
    elements = family_set(index, side, shift)
    modulus = family_modulus(index)
    base = family_set(index, side, 0)
    # only the largest element moves, by shift * modulus
    assert elements[:-1] == base[:-1]
    assert elements[-1] == base[-1] + shift * modulus
    assert verify_near_modular(elements, modulus).ok


def test_family_set_validation():
    with pytest.raises(ValueError):
        family_set(5, "A")
    with pytest.raises(ValueError):
        family_set(1, "C")
    with pytest.raises(ValueError):
        family_set(1, "A", -1)


def test_expand_modular_matches_greedy():
    for elements, modulus in [((0,), 1), ((0, 1), 3), ((0, 2, 5, 6), 9)]:
        expanded = expand_modular(elements, modulus, count=200)
        assert expanded == list(generate(elements, count=200).terms)


def test_expand_modular_limit():
    vals = expand_modular((0, 2, 5, 6), 9, limit=100)
    assert vals == [v for v in expand_modular((0, 2, 5, 6), 9, count=60) if v <= 100]
    assert expand_modular((0, 2, 5, 6), 9, count=4, limit=10**6) == [0, 2, 5, 6]


def test_expand_modular_rejects_non_modular():
    with pytest.raises(NotModularError):
        expand_modular((0, 4, 10, 12), 9, count=10)
    with pytest.raises(ValueError):
        expand_modular((0, 2, 5, 6), 9)


def test_search_recovers_known_sets():
    found6 = search_near_modular(1, 6)
    assert [s.elements for s in found6] == [(0, 2, 5, 6)]
    assert found6[0].verdict == "modular"
    found12 = [s.elements for s in search_near_modular(1, 12)]
    assert (0, 4, 10, 12) in found12
    found18 = [s.elements for s in search_near_modular(2, 18)]
    assert family_set(2, "A") in found18


@pytest.mark.parametrize("max_element", [6, 9, 12])
def test_search_matches_naive(max_element):
    got = [s.elements for s in search_near_modular(1, max_element)]
    assert got == naive_search(1, max_element)


def test_search_worker_counts_agree():
    solo = search_near_modular(2, 18, workers=1)
    multi = search_near_modular(2, 18, workers=3)
    assert solo == multi


def test_search_first_only():
    all_sets = search_near_modular(1, 12)
    first = search_near_modular(1, 12, first_only=True)
    assert first == [min(all_sets, key=lambda s: s.elements)]


def test_search_budget_enforced():
    with pytest.raises(BudgetExceededError):
        search_near_modular(2, 18, budget=50)


def test_search_degenerate_bounds():
    assert search_near_modular(1, 2) == []
    with pytest.raises(ValueError):
        search_near_modular(0, 6)


def test_search_results_are_verified_sets():
    for s in search_near_modular(1, 12):
        assert verify_near_modular(s.elements, s.modulus).ok
        assert s.elements[0] == 0 and s.elements[-1] == 12
