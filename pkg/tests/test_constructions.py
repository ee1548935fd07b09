from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from rainbowlab import constructions as C
from rainbowlab.ecgraph import color_number
from rainbowlab.errors import InvalidParams


def test_spec_layouts():
    spec = C.construction_spec("G2", 9, 3)
    assert spec.part_sizes() == {"X": 3, "Y1": 4, "Y2": 2}
    assert spec.centers == (0, 1, 2)
    g1 = C.construction_spec("G1", 11, 3)
    assert g1.part_sizes() == {"X": 1, "Y1": 5, "Y2": 5}
    assert C.construction_spec("G3", 10, 3).part_sizes() == {"X": 3, "Y": 7}
    assert C.construction_spec("G4", 10, 3).part_sizes() == {"X": 8, "Y": 2}
    for fam in C.FAMILIES:
        spec = C.construction_spec(fam, 15, 4)
        flat = [v for vs in spec.parts.values() for v in vs]
        assert flat == list(range(15))


@pytest.mark.parametrize(
    "family, n, k",
    [("G1", 5, 2), ("G1", 9, 1), ("G2", 5, 2), ("G2", 20, 7), ("G3", 8, 3), ("G4", 4, 2), ("G4", 5, 0), ("G5", 9, 3)],
)
def test_invalid_parameters(family, n, k):
    assert not C.is_valid(family, n, k)
    with pytest.raises(InvalidParams):
        C.build_construction(family, n, k)
    with pytest.raises(InvalidParams):
        C.color_count_formula(family, n, k)


def test_g2_validity_rule():
    # k < (n+7)/4, i.e. n >= 4k-6; this implies |Y2| >= 0 (the converse fails
    # for odd n = 4k-7, where |Y2| = 0 but the family is still rejected)
    for k in range(2, 12):
        for n in range(3 * k, 6 * k):
            assert C.is_valid("G2", n, k) == (4 * k < n + 7)
            if C.is_valid("G2", n, k):
                assert (n + 1) // 2 - (2 * k - 3) >= 0
    assert not C.is_valid("G2", 21, 7)


def test_build_examples():
    assert color_number(C.build_construction("G4", 6, 2)) == 11
    assert color_number(C.build_construction("G1", 10, 2)) == 26
    assert color_number(C.build_construction("G2", 9, 3)) == comb(3, 2) + 81 // 4 + 1 == 24


def test_constructions_are_complete_graphs():
    for fam in C.FAMILIES:
        g = C.build_construction(fam, 12, 3)
        assert g.num_edges == comb(12, 2)


def test_g4_edge_colors_follow_later_vertex():
    g = C.build_construction("G4", 9, 2)
    x = 5
    for y in range(x, 9):
        cols = {g.color(u, y) for u in range(y)}
        assert len(cols) == 1
    later = {g.color(0, y) for y in range(x, 9)}
    assert len(later) == 9 - x


def test_formula_examples():
    assert C.color_count_formula("G3", 34, 10) == comb(17, 2) + 17 * 17 + 1 == 426
    assert C.color_count_formula("G4", 15, 5) == comb(14, 2) + 1 == 92
    for n in range(6, 30):
        assert C.color_count_formula("G1", n, 2) == n * n // 4 + 1


def test_formula_matches_generated_graph_small_grid():
    for k in range(1, 6):
        for n in range(max(3, 3 * k - 1), 3 * k + 12):
            for fam in C.FAMILIES:
                if C.is_valid(fam, n, k):
                    assert color_number(C.build_construction(fam, n, k)) == C.color_count_formula(fam, n, k)


def test_best_construction_examples():
    assert C.best_construction(30, 10) == ("G4", comb(29, 2) + 1) == ("G4", 407)
    assert C.best_construction(120, 10) == ("G1", comb(8, 2) + 8 * 112 + 112 * 112 // 4 + 1) == ("G1", 4061)
    # c(G2) = 537 here, but c(G1) = 541 is larger
    assert C.color_count_formula("G2", 40, 10) == 537
    assert C.best_construction(40, 10) == ("G1", 541)


def test_best_construction_tie_order():
    # c(G3) = c(G2) = 426 at n = 4k-6
    assert C.maximizing_families(34, 10) == {"G2", "G3"}
    assert C.best_construction(34, 10) == ("G3", 426)
    assert C.maximizing_families(39, 10) == {"G1", "G2"}
    assert C.best_construction(39, 10) == ("G2", 517)


def test_conjecture1_examples():
    assert C.conjecture1_value(34, 10) == 411
    assert C.conjecture1_value(6, 2) == 11
    assert C.conjecture1_value(15, 5) == 92


def test_conjecture1_is_max_of_g4_g1():
    for k in range(2, 15):
        for n in range(3 * k, 8 * k):
            assert C.conjecture1_value(n, k) == max(
                C.color_count_formula("G4", n, k), C.color_count_formula("G1", n, k)
            )


def test_counterexample_rows():
    row = C.counterexample_report(10, [34])[0]
    assert (row.best_value, row.conjecture1, row.violated) == (426, 411, True)
    assert not C.counterexample_report(10, [120])[0].violated
    assert not any(r.violated for r in C.counterexample_report(2, range(6, 61)))


def test_k10_violated_interval():
    rows = C.counterexample_report(10, range(30, 80))
    assert [r.n for r in rows if r.violated] == list(range(34, 39))


def test_strictly_between_boundaries_is_violated_where_derived_table_says():
    # between the G4 boundary and the derived G2/G1 boundary every integer n violates
    for k in range(7, 30):
        lo = C.exact_transition_table(k)[0].n_high
        hi = C.exact_transition_table(k)[2].n_high
        for n in range(3 * k, 8 * k):
            if lo < n < hi:
                assert C.report_row(n, k).violated, (n, k)


def test_transition_table_published_values():
    rows = C.transition_table(10)
    assert [r.family for r in rows] == ["G4", "G3", "G2", "G1"]
    assert rows[0].n_high == Fraction(1058, 32) == Fraction(529, 16)
    assert float(rows[0].n_high) == 33.0625
    assert rows[1].n_high == 34
    assert rows[2].n_high == Fraction(105, 2)
    assert rows[3].n_high is None
    with pytest.raises(InvalidParams):
        C.transition_table(2)


def test_exact_table_tiles_and_matches_argmax():
    for k in range(7, 40):
        rows = C.exact_transition_table(k)
        for a, b in zip(rows, rows[1:]):
            assert a.n_high == b.n_low
        for n in range(3 * k, 10 * k):
            best = C.maximizing_families(n, k)
            owners = {r.family for r in rows if r.contains(n)}
            assert best & owners, (n, k, best, owners)


def test_argmax_runs_k10():
    assert C.argmax_runs(10, 45) == [("G4", 30, 33), ("G3", 34, 35), ("G2", 36, 39), ("G1", 40, 45)]


def test_g2_dominates_g3_where_defined():
    for k in range(3, 30):
        for n in range(4 * k - 6, 10 * k):
            if n >= 3 * k:
                assert C.color_count_formula("G2", n, k) >= C.color_count_formula("G3", n, k)


def test_lu_luo_ma_examples():
    assert C.lu_luo_ma_value(177, 10) == 8437
    assert C.lu_luo_ma_value(57, 2) == 785
    assert C.color_count_formula("G1", 177, 10) == 8521
    assert C.color_count_formula("G1", 177, 10) - C.lu_luo_ma_value(177, 10) == 84
    with pytest.raises(InvalidParams):
        C.lu_luo_ma_value(100, 10)


def test_figure5_rows():
    rows = {r[0]: r for r in C.figure5_curves(10, 60)}
    n, c1, c2, c3, c4 = rows[33]
    assert c2 is None  # G2 needs n >= 34
    assert c4 == 410 and c4 == max(c1, c3, c4)
    assert rows[35][2] == rows[35][3] == 443
    assert rows[53][1] > max(rows[53][2:])
    assert list(rows) == list(range(30, 61))
