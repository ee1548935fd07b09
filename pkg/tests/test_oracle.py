from __future__ import annotations

from math import comb

import pytest

from oracles import bell, naive_has_packing
from rainbowlab import constructions as C
from rainbowlab.ecgraph import color_number, rainbow_complete
from rainbowlab.errors import BudgetExceeded, InvalidParams
from rainbowlab.oracle import brute_force_ar, disjoint_triangle_families, verify_freeness


def test_small_values():
    assert brute_force_ar(3, 1).value == 2
    assert brute_force_ar(4, 1).value == 3
    assert brute_force_ar(5, 1).value == 4


def test_n6_k2():
    res = brute_force_ar(6, 2)
    assert res.completed and res.value == 11 == comb(5, 2) + 1
    assert color_number(res.witness) == 11
    assert res.value == C.best_construction(6, 2)[1]
    cert = verify_freeness(res.witness, 2)
    assert cert.free_at_k


def test_n6_k1():
    assert brute_force_ar(6, 1).value == 5


def test_pruning_is_sound():
    for n in (3, 4, 5):
        base = brute_force_ar(n, 1, rainbow_prune=False, bound_prune=False).value
        assert brute_force_ar(n, 1, rainbow_prune=False).value == base
        assert brute_force_ar(n, 1, bound_prune=False).value == base
        assert brute_force_ar(n, 1).value == base == n - 1


def test_bell_count():
    res = brute_force_ar(4, 1, rainbow_prune=False, bound_prune=False)
    assert res.leaves == bell(6) == 203
    assert brute_force_ar(3, 1, rainbow_prune=False, bound_prune=False).leaves == bell(3)


def test_witness_is_free():
    for n, k in ((4, 1), (5, 1), (6, 1)):
        res = brute_force_ar(n, k)
        assert color_number(res.witness) == res.value
        assert not naive_has_packing(res.witness, k, "global")


def test_budget_exceeded_carries_best():
    with pytest.raises(BudgetExceeded) as info:
        brute_force_ar(6, 2, budget=1000)
    best = info.value.best
    assert not best.completed and best.value <= 11


def test_workers_give_same_value():
    res = brute_force_ar(6, 2, workers=2, split_depth=3)
    assert res.completed and res.value == 11


def test_invalid():
    with pytest.raises(InvalidParams):
        brute_force_ar(5, 2)
    with pytest.raises(InvalidParams):
        brute_force_ar(4, 0)


def test_disjoint_families_count():
    assert len(disjoint_triangle_families(6, 2)) == 10
    assert len(disjoint_triangle_families(9, 3)) == 280


def test_freeness_examples():
    cert = verify_freeness(C.build_construction("G3", 10, 3), 3)
    assert cert.free_at_k and cert.has_k_minus_1 and cert.verdict == "CERTIFIED"
    cert = verify_freeness(C.build_construction("G1", 8, 2), 2)
    assert cert.verdict == "CERTIFIED"
    cert = verify_freeness(rainbow_complete(6), 2)
    assert not cert.free_at_k and cert.verdict == "NotExtremal"
    d = cert.to_dict()
    assert d["verdict"] == "NotExtremal" and d["at_k"] == "FOUND"


def test_freeness_k1():
    cert = verify_freeness(C.build_construction("G4", 5, 1), 1)
    assert cert.verdict == "CERTIFIED"
