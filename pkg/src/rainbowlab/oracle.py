"""Brute-force anti-Ramsey numbers ar(n, kC3) for very small n.

Colorings of K_n are enumerated up to renaming of colors as restricted
growth strings over the lexicographic edge order: edge ``i`` gets a color
in ``1..m+1`` where ``m`` is the largest color used on edges ``< i``.

Two prunes keep n = 6 tractable:

* a partial coloring whose colored edges already contain a rainbow kC3 is
  abandoned (colors never change once assigned, so every completion
  contains it too);
* a branch whose color count plus the number of uncolored edges cannot
  exceed the best complete coloring found so far is abandoned.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .ecgraph import EdgeColoredGraph
from .errors import BudgetExceeded, InvalidParams
from .packing import PackingMode, SearchResult, Status, TrianglePacking, find_packing

DEFAULT_BUDGET = 10 ** 9


@dataclass
class OracleResult:
    n: int
    k: int
    value: int
    witness: Optional[EdgeColoredGraph]
    completed: bool
    nodes: int
    leaves: int


def edge_order(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def disjoint_triangle_families(n: int, k: int) -> list[tuple[tuple[int, int, int], ...]]:
    """Every set of ``k`` pairwise vertex-disjoint triangles of K_n (sorted)."""
    tris = list(combinations(range(n), 3))
    out = []

    def rec(start: int, used: int, acc: list):
        if len(acc) == k:
            out.append(tuple(acc))
            return
        for i in range(start, len(tris)):
            t = tris[i]
            m = (1 << t[0]) | (1 << t[1]) | (1 << t[2])
            if m & used:
                continue
            acc.append(t)
            rec(i + 1, used | m, acc)
            acc.pop()

    rec(0, 0, [])
    return out


class _ColoringSearch:
    def __init__(self, n: int, k: int, budget: Optional[int], rainbow_prune: bool, bound_prune: bool):
        self.n, self.k = n, k
        self.edges = edge_order(n)
        index = {e: i for i, e in enumerate(self.edges)}
        fams = []
        for fam in disjoint_triangle_families(n, k):
            idx = []
            for a, b, c in fam:
                idx += [index[(a, b)], index[(a, c)], index[(b, c)]]
            fams.append(tuple(sorted(idx)))
        self.families = fams
        self.completing: list[list[tuple[int, ...]]] = [[] for _ in self.edges]
        for f in fams:
            self.completing[f[-1]].append(f)
        self.budget = budget
        self.rainbow_prune = rainbow_prune
        self.bound_prune = bound_prune
        self.size = 3 * k
        self.nodes = 0
        self.leaves = 0
        self.best = -1
        self.best_rgs: Optional[list[int]] = None

    def _has_rainbow(self, col: list[int], fams) -> bool:
        size = self.size
        for f in fams:
            if len({col[i] for i in f}) == size:
                return True
        return False

    def run(self, prefix: list[int]) -> None:
        """Explore every completion of ``prefix`` (assumed already admissible)."""
        E = len(self.edges)
        col = list(prefix) + [0] * (E - len(prefix))
        if len(prefix) == E:
            self._leaf(col, max(col, default=0))
            return
        self._dfs(col, len(prefix), max(prefix, default=0))

    def _leaf(self, col: list[int], m: int) -> None:
        self.leaves += 1
        if not self.rainbow_prune and self._has_rainbow(col, self.families):
            return
        if m > self.best:
            self.best = m
            self.best_rgs = list(col)

    def _dfs(self, col: list[int], i: int, m: int) -> None:
        E = len(self.edges)
        remaining = E - i - 1
        completing = self.completing[i]
        for c in range(m + 1, 0, -1):
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise BudgetExceeded("oracle node budget exhausted")
            m2 = m + 1 if c == m + 1 else m
            if self.bound_prune and m2 + remaining <= self.best:
                # fewer colors only lowers the bound further
                break
            col[i] = c
            if self.rainbow_prune and completing and self._has_rainbow(col, completing):
                continue
            if remaining == 0:
                self._leaf(col, m2)
            else:
                self._dfs(col, i + 1, m2)
        col[i] = 0

    def prefixes(self, depth: int) -> list[list[int]]:
        """Admissible restricted-growth prefixes of length ``depth``."""
        out = []

        def rec(col: list[int], m: int):
            i = len(col)
            if i == depth:
                out.append(list(col))
                return
            for c in range(m + 1, 0, -1):
                col.append(c)
                full = col + [0] * (len(self.edges) - len(col))
                if not (self.rainbow_prune and self._has_rainbow(full, self.completing[i])):
                    rec(col, max(m, c))
                col.pop()

        rec([], 0)
        return out

    def witness(self) -> Optional[EdgeColoredGraph]:
        if self.best_rgs is None:
            return None
        return EdgeColoredGraph(self.n, {e: c for e, c in zip(self.edges, self.best_rgs)})


def _run_prefix(args):
    n, k, budget, rp, bp, prefix = args
    s = _ColoringSearch(n, k, budget, rp, bp)
    try:
        s.run(prefix)
    except BudgetExceeded:
        return s.best, s.best_rgs, s.nodes, s.leaves, False
    return s.best, s.best_rgs, s.nodes, s.leaves, True


def brute_force_ar(
    n: int,
    k: int,
    budget: Optional[int] = DEFAULT_BUDGET,
    *,
    rainbow_prune: bool = True,
    bound_prune: bool = True,
    workers: int = 1,
    split_depth: int = 4,
) -> OracleResult:
    """Exact ar(n, kC3): the most colors on K_n with no rainbow kC3.

    Raises BudgetExceeded when ``budget`` DFS nodes do not suffice; the
    exception's ``best`` holds an OracleResult with ``completed=False`` and
    the best lower bound found.  With ``workers > 1`` the search is split at
    ``split_depth`` edges and every subtree starts from an empty incumbent,
    so the value and witness do not depend on the worker count.
    """
    if not isinstance(n, int) or not isinstance(k, int) or k < 1:
        raise InvalidParams("n and k must be integers with k >= 1")
    if n < 3 * k:
        raise InvalidParams(f"need n >= 3k (n={n}, k={k})")
    if n < 3:
        raise InvalidParams("need n >= 3")
    search = _ColoringSearch(n, k, budget, rainbow_prune, bound_prune)
    if workers <= 1:
        try:
            search.run([])
        except BudgetExceeded:
            partial = OracleResult(n, k, search.best, search.witness(), False, search.nodes, search.leaves)
            raise BudgetExceeded(f"budget of {budget} nodes exhausted; best so far {search.best}",
                                 best=partial) from None
        return OracleResult(n, k, search.best, search.witness(), True, search.nodes, search.leaves)

    depth = min(split_depth, len(search.edges))
    tasks = [(n, k, budget, rainbow_prune, bound_prune, p) for p in search.prefixes(depth)]
    best, best_rgs, nodes, leaves, complete = -1, None, 0, 0, True
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for b, rgs, nd, lv, ok in pool.map(_run_prefix, tasks):
            nodes += nd
            leaves += lv
            complete &= ok
            if b > best:
                best, best_rgs = b, rgs
    search.best, search.best_rgs = best, best_rgs
    result = OracleResult(n, k, best, search.witness(), complete, nodes, leaves)
    if not complete:
        raise BudgetExceeded(f"a subtree exhausted its budget; best so far {best}", best=result)
    return result


@dataclass(frozen=True)
class FreenessCertificate:
    k: int
    at_k: SearchResult
    at_k_minus_1: SearchResult

    @property
    def free_at_k(self) -> bool:
        return self.at_k.status is Status.NONE

    @property
    def has_k_minus_1(self) -> bool:
        return self.at_k_minus_1.status is Status.FOUND

    @property
    def extremal(self) -> bool:
        """No rainbow kC3 (exhaustive) and a rainbow (k-1)C3 witness."""
        return self.free_at_k and self.has_k_minus_1

    @property
    def verdict(self) -> str:
        return "CERTIFIED" if self.extremal else "NotExtremal"

    def to_dict(self) -> dict:
        w = self.at_k_minus_1.witness
        return {
            "k": self.k,
            "verdict": self.verdict,
            "at_k": self.at_k.status.value,
            "at_k_nodes": self.at_k.nodes_explored,
            "at_k_minus_1": self.at_k_minus_1.status.value,
            "witness": w.to_dict() if w else None,
        }


def verify_freeness(g: EdgeColoredGraph, k: int, budget: Optional[int] = None) -> FreenessCertificate:
    """Certify that ``g`` has a rainbow (k-1)C3 but no rainbow kC3."""
    if not isinstance(k, int) or k < 1:
        raise InvalidParams(f"k must be a positive integer, got {k!r}")
    triples = g.rainbow_triangles()
    at_k = find_packing(g, k, PackingMode.GLOBALLY_RAINBOW, budget, triples=triples)
    if k == 1:
        empty = TrianglePacking((), PackingMode.GLOBALLY_RAINBOW, ())
        below = SearchResult(Status.FOUND, empty, 0)
    else:
        below = find_packing(g, k - 1, PackingMode.GLOBALLY_RAINBOW, budget, triples=triples)
    if Status.BUDGET_EXCEEDED in (at_k.status, below.status):
        raise BudgetExceeded(f"freeness undecided within {budget} nodes")
    return FreenessCertificate(k, at_k, below)
