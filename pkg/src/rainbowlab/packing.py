"""Exact search for vertex-disjoint rainbow triangles.

Two notions of "k disjoint rainbow triangles" are supported:

``EACH_RAINBOW``
    every triangle is rainbow on its own; colors may repeat across triangles.
``GLOBALLY_RAINBOW``
    all ``3k`` edges carry pairwise distinct colors (a rainbow ``kC3``).

The solver is a complete backtracking search.  The lowest-index undecided
vertex is either covered by one of the candidate triangles whose minimum it
is, or discarded; this rule enumerates every packing, so a NONE answer is a
certificate of absence.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .ecgraph import EdgeColoredGraph, is_rainbow_triple, min_color_degree
from .errors import BudgetExceeded, InvalidParams, InvalidPacking


class PackingMode(str, Enum):
    EACH_RAINBOW = "each"
    GLOBALLY_RAINBOW = "global"


class Status(str, Enum):
    FOUND = "FOUND"
    NONE = "NONE"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


Triple = tuple[int, int, int]


@dataclass(frozen=True)
class TrianglePacking:
    triples: tuple[Triple, ...]
    mode: PackingMode
    colors: tuple[tuple[int, int, int], ...]

    def __len__(self) -> int:
        return len(self.triples)

    def to_dict(self) -> dict:
        return {
            "triples": [list(t) for t in self.triples],
            "mode": self.mode.value,
            "colors": [list(c) for c in self.colors],
        }


@dataclass(frozen=True)
class SearchResult:
    status: Status
    witness: Optional[TrianglePacking]
    nodes_explored: int

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


def _triple_colors(g: EdgeColoredGraph, t: Sequence[int]) -> tuple[int, int, int]:
    a, b, c = t
    return (g.color(a, b), g.color(a, c), g.color(b, c))


def make_packing(g: EdgeColoredGraph, triples, mode: PackingMode) -> TrianglePacking:
    ts = tuple(tuple(sorted(t)) for t in triples)
    return TrianglePacking(ts, PackingMode(mode), tuple(_triple_colors(g, t) for t in ts))


def validate_packing(g: EdgeColoredGraph, triples, mode: PackingMode) -> None:
    """Raise InvalidPacking unless ``triples`` is a valid packing under ``mode``."""
    mode = PackingMode(mode)
    seen: set[int] = set()
    used_colors: set[int] = set()
    for t in triples:
        if len(t) != 3 or len(set(t)) != 3:
            raise InvalidPacking(f"{t!r} is not three distinct vertices")
        for v in t:
            if not (0 <= v < g.n):
                raise InvalidPacking(f"vertex {v} outside 0..{g.n - 1}")
        if seen & set(t):
            raise InvalidPacking(f"triple {tuple(t)} overlaps an earlier triple")
        seen |= set(t)
        if not is_rainbow_triple(g, *t):
            raise InvalidPacking(f"triple {tuple(t)} is not a rainbow triangle")
        if mode is PackingMode.GLOBALLY_RAINBOW:
            cols = set(_triple_colors(g, t))
            if cols & used_colors:
                raise InvalidPacking(f"triple {tuple(t)} repeats a color used earlier")
            used_colors |= cols


def is_valid_packing(g: EdgeColoredGraph, triples, mode: PackingMode) -> bool:
    try:
        validate_packing(g, triples, mode)
    except InvalidPacking:
        return False
    return True


class _OutOfBudget(Exception):
    pass


class _Solver:
    """Backtracking state for one search; not shared between threads."""

    def __init__(self, g: EdgeColoredGraph, mode: PackingMode, budget: Optional[int],
                 triples: Optional[list[Triple]] = None, greedy_bound: bool = True):
        self.mode = PackingMode(mode)
        self.budget = budget
        self.greedy_bound = greedy_bound
        self.nodes = 0
        mat = g.color_matrix()
        cands = triples if triples is not None else g.rainbow_triangles()
        self.cands = cands
        self.masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in cands]
        self.colsets = [frozenset((mat[a][b], mat[a][c], mat[b][c])) for a, b, c in cands]
        by_min: list[list[int]] = [[] for _ in range(g.n)]
        for i, t in enumerate(cands):
            by_min[min(t)].append(i)
        self.by_min = by_min
        cover = 0
        for m in self.masks:
            cover |= m
        self.cover = cover

    def _upper_bound(self, free: int, used: set) -> int:
        # Any packing inside ``free`` meets the vertex set of a maximal one,
        # so it has at most 3 * |maximal| triangles.
        taken = 0
        count = 0
        global_mode = self.mode is PackingMode.GLOBALLY_RAINBOW
        for i, m in enumerate(self.masks):
            if m & free == m and not m & taken:
                if global_mode and not self.colsets[i].isdisjoint(used):
                    continue
                taken |= m
                count += 1
        return 3 * count

    def search(self, free: int, need: int, chosen: list[int], used: set) -> bool:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _OutOfBudget
        if need == 0:
            return True
        if free.bit_count() < 3 * need:
            return False
        if self.greedy_bound and need > 1 and self._upper_bound(free, used) < need:
            return False
        low = free & -free
        v = low.bit_length() - 1
        masks = self.masks
        colsets = self.colsets
        global_mode = self.mode is PackingMode.GLOBALLY_RAINBOW
        for i in self.by_min[v]:
            m = masks[i]
            if m & free != m:
                continue
            if global_mode:
                cs = colsets[i]
                if not cs.isdisjoint(used):
                    continue
                chosen.append(i)
                if self.search(free & ~m, need - 1, chosen, used | cs):
                    return True
            else:
                chosen.append(i)
                if self.search(free & ~m, need - 1, chosen, used):
                    return True
            chosen.pop()
        return self.search(free & ~low, need, chosen, used)

    def branches(self, need: int) -> list[tuple[int, list[int], frozenset]]:
        """First-level subproblems ``(free, chosen, used)`` in search order."""
        free = self.cover
        if not free:
            return [(0, [], frozenset())]
        low = free & -free
        v = low.bit_length() - 1
        out = []
        for i in self.by_min[v]:
            m = self.masks[i]
            out.append((free & ~m, [i], self.colsets[i] if self.mode is PackingMode.GLOBALLY_RAINBOW else frozenset()))
        out.append((free & ~low, [], frozenset()))
        return out


def _run_branch(args):
    g, k, mode, budget, greedy, triples, free, chosen, used = args
    solver = _Solver(g, mode, budget, triples, greedy)
    picked = list(chosen)
    try:
        ok = solver.search(free, k - len(chosen), picked, set(used))
    except _OutOfBudget:
        return "budget", None, solver.nodes
    if ok:
        return "found", [solver.cands[i] for i in picked], solver.nodes
    return "none", None, solver.nodes


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("RAINBOWLAB_WORKERS", "1")))
    except ValueError:
        return 1


def find_packing(
    g: EdgeColoredGraph,
    k: int,
    mode: PackingMode | str = PackingMode.EACH_RAINBOW,
    budget: Optional[int] = None,
    *,
    workers: int = 1,
    greedy_bound: bool = True,
    triples: Optional[list[Triple]] = None,
) -> SearchResult:
    """Decide whether ``g`` has ``k`` disjoint rainbow triangles under ``mode``.

    ``budget`` caps the number of search nodes (None = unlimited).  With
    ``workers > 1`` the first branching level is farmed out to processes,
    each branch getting the full budget; the witness matches the
    single-worker one and node counts are summed over the branches run.
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidParams(f"k must be a positive integer, got {k!r}")
    mode = PackingMode(mode)
    solver = _Solver(g, mode, budget, triples, greedy_bound)
    if workers <= 1:
        chosen: list[int] = []
        try:
            ok = solver.search(solver.cover, k, chosen, set())
        except _OutOfBudget:
            return SearchResult(Status.BUDGET_EXCEEDED, None, solver.nodes)
        if ok:
            packing = make_packing(g, [solver.cands[i] for i in chosen], mode)
            return SearchResult(Status.FOUND, packing, solver.nodes)
        return SearchResult(Status.NONE, None, solver.nodes)

    tasks = [
        (g, k, mode, budget, greedy_bound, solver.cands, free, ch, used)
        for free, ch, used in solver.branches(k)
    ]
    total = 1
    exceeded = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for status, found, nodes in pool.map(_run_branch, tasks):
            total += nodes
            if status == "found":
                return SearchResult(Status.FOUND, make_packing(g, found, mode), total)
            if status == "budget":
                exceeded = True
    if exceeded:
        return SearchResult(Status.BUDGET_EXCEEDED, None, total)
    return SearchResult(Status.NONE, None, total)


def max_packing(
    g: EdgeColoredGraph,
    mode: PackingMode | str = PackingMode.EACH_RAINBOW,
    budget: Optional[int] = None,
) -> tuple[int, Optional[TrianglePacking]]:
    """Largest ``k`` with a packing, found by linear ascent.

    Raises BudgetExceeded (``best`` = ``(k, witness)`` proved so far) if some
    level cannot be decided within ``budget`` nodes.
    """
    mode = PackingMode(mode)
    triples = g.rainbow_triangles()
    best: tuple[int, Optional[TrianglePacking]] = (0, None)
    for k in range(1, g.n // 3 + 1):
        res = find_packing(g, k, mode, budget, triples=triples)
        if res.status is Status.FOUND:
            best = (k, res.witness)
        elif res.status is Status.NONE:
            return best
        else:
            raise BudgetExceeded(f"level {k} undecided within {budget} nodes", best=best)
    return best


@dataclass(frozen=True)
class DiracReport:
    n: int
    k: int
    min_color_degree: int
    color_degree_ok: bool  # 2 * min color degree >= n + k
    order_ok: bool  # n >= 42.5k + 48
    result: SearchResult

    @property
    def hypotheses_hold(self) -> bool:
        return self.color_degree_ok and self.order_ok

    @property
    def theorem_violation(self) -> bool:
        return self.hypotheses_hold and self.result.status is Status.NONE

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "min_color_degree": self.min_color_degree,
            "color_degree_hypothesis": self.color_degree_ok,
            "order_hypothesis": self.order_ok,
            "status": self.result.status.value,
            "nodes": self.result.nodes_explored,
            "witness": self.result.witness.to_dict() if self.result.witness else None,
            "theorem_violation": self.theorem_violation,
        }


def dirac_rainbow_check(g: EdgeColoredGraph, k: int, budget: Optional[int] = None) -> DiracReport:
    """Check the rainbow Dirac-type statement on one graph.

    Hypotheses are reported separately and the search runs regardless.
    """
    dc = min_color_degree(g)
    res = find_packing(g, k, PackingMode.EACH_RAINBOW, budget)
    return DiracReport(
        n=g.n,
        k=k,
        min_color_degree=dc,
        color_degree_ok=2 * dc >= g.n + k,
        order_ok=2 * g.n >= 85 * k + 96,
        result=res,
    )
