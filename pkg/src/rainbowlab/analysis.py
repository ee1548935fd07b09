"""Rainbow-triangle counting and the bookkeeping behind the packing argument.

Given a packing of ``k-1`` disjoint rainbow triangles ``T_1..T_{k-1}`` with
vertex union ``V0`` (and ``V1`` the rest), the counts are

* ``rt(v)`` / ``rt(e)``: rainbow triangles through a vertex / edge;
* ``rt1(v)`` for ``v`` in ``V0``: rainbow triangles through ``v`` whose
  other two vertices lie in ``V1``;
* ``rt2(e)`` for an edge of ``G[V0]``: rainbow triangles through ``e``
  whose third vertex lies in ``V1``.

Some triangles ``T_i`` may be extended to hourglasses: a center ``c`` in
``T_i`` plus a pair of "wings" in ``V1`` forming a second rainbow triangle
with ``c``.  :class:`PackingContext` records this structure.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt
from typing import Iterable, Optional, Sequence

import networkx as nx

from .ecgraph import EdgeColoredGraph, RainbowTriple, _key, color_degree, is_rainbow_triple, min_color_degree
from .errors import (
    BudgetExceeded,
    DegreeTooLow,
    InvalidPacking,
    InvalidParams,
    InvariantViolation,
    NoSuchEdge,
    NotInV0,
    OutOfRange,
)
from .packing import PackingMode, Status, find_packing, validate_packing

Triple = tuple[int, int, int]
Edge = tuple[int, int]


# -- plain counts -------------------------------------------------------------


def enumerate_rainbow_triangles(g: EdgeColoredGraph) -> list[RainbowTriple]:
    mat = g.color_matrix()
    return [
        RainbowTriple((u, v, w), (mat[u][v], mat[u][w], mat[v][w]))
        for u, v, w in g.rainbow_triangles()
    ]


def rt_total(g: EdgeColoredGraph) -> int:
    return len(g.rainbow_triangles())


def rt_counts(g: EdgeColoredGraph) -> tuple[list[int], dict[Edge, int]]:
    """Per-vertex and per-edge rainbow-triangle counts in one pass."""
    per_vertex = [0] * g.n
    per_edge: dict[Edge, int] = {(u, v): 0 for u, v, _ in g.edges()}
    for u, v, w in g.rainbow_triangles():
        per_vertex[u] += 1
        per_vertex[v] += 1
        per_vertex[w] += 1
        per_edge[(u, v)] += 1
        per_edge[(u, w)] += 1
        per_edge[(v, w)] += 1
    return per_vertex, per_edge


def rt_vertex(g: EdgeColoredGraph, v: int) -> int:
    """Number of rainbow triangles containing ``v``."""
    mat = g.color_matrix()
    if not 0 <= v < g.n:
        raise OutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    nb = g.neighbors(v)
    row = mat[v]
    count = 0
    for a, b in combinations(nb, 2):
        cab = mat[a][b]
        if cab is not None and row[a] != row[b] and cab != row[a] and cab != row[b]:
            count += 1
    return count


def rt_edge(g: EdgeColoredGraph, u: int, v: int) -> int:
    """Number of rainbow triangles containing edge ``uv``."""
    c = g.color(u, v)
    if c is None:
        raise NoSuchEdge(f"no edge {_key(u, v)}")
    mat = g.color_matrix()
    common = g.neighbor_mask(u) & g.neighbor_mask(v)
    count = 0
    for w in range(g.n):
        if common >> w & 1:
            a, b = mat[u][w], mat[v][w]
            if a != b and a != c and b != c:
                count += 1
    return count


def link_graph(g: EdgeColoredGraph, v: int) -> nx.Graph:
    """Graph on ``N(v)`` whose edges ``ab`` make ``vab`` a rainbow triangle."""
    if not 0 <= v < g.n:
        raise OutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    mat = g.color_matrix()
    nb = g.neighbors(v)
    row = mat[v]
    link = nx.Graph()
    link.add_nodes_from(nb)
    for a, b in combinations(nb, 2):
        cab = mat[a][b]
        if cab is not None and row[a] != row[b] and cab != row[a] and cab != row[b]:
            link.add_edge(a, b)
    return link


def max_friendship(
    g: EdgeColoredGraph, v: int, restrict: Optional[Iterable[int]] = None
) -> tuple[int, list[Edge]]:
    """Largest ``s`` such that ``s`` rainbow triangles meet exactly at ``v``.

    Equivalent to a maximum matching in the link graph of ``v`` (restricted
    to ``restrict`` when given).  Returns ``s`` and the matching edges.
    """
    link = link_graph(g, v)
    if restrict is not None:
        keep = set(restrict)
        if v in keep:
            raise InvalidParams("restrict set must not contain the center vertex")
        link = link.subgraph(keep & set(link.nodes))
    matching = nx.max_weight_matching(link, maxcardinality=True)
    pairs = sorted(_key(a, b) for a, b in matching)
    return len(pairs), pairs


# -- packing context ----------------------------------------------------------


@dataclass(frozen=True)
class PackingContext:
    """``k-1`` disjoint rainbow triangles, the first ``t`` of them hourglasses.

    ``centers[i]`` lies in ``triples[i]`` and ``wings[i]`` is the pair of
    ``V1`` vertices completing the second triangle at that center.
    """

    n: int
    triples: tuple[Triple, ...]
    centers: tuple[int, ...] = ()
    wings: tuple[Edge, ...] = ()

    @classmethod
    def create(cls, n: int, triples, centers=(), wings=()) -> "PackingContext":
        """Normalize input order: hourglass triangles first, in center order."""
        triples = [tuple(sorted(int(x) for x in t)) for t in triples]
        centers = [int(c) for c in centers]
        wings = [tuple(sorted(int(x) for x in w)) for w in wings]
        if len(centers) != len(wings):
            raise InvalidPacking("centers and wings must have equal length")
        if any(len(t) != 3 for t in triples) or any(len(w) != 2 for w in wings):
            raise InvalidPacking("triples need 3 vertices and wings 2")
        head = []
        for c in centers:
            owners = [t for t in triples if c in t]
            if len(owners) != 1:
                raise InvalidPacking(f"center {c} must lie in exactly one packing triple")
            if owners[0] in head:
                raise InvalidPacking(f"two centers in triple {owners[0]}")
            head.append(owners[0])
        tail = [t for t in triples if t not in head]
        return cls(n, tuple(head + tail), tuple(centers), tuple(wings))

    @classmethod
    def from_dict(cls, n: int, data: dict) -> "PackingContext":
        try:
            return cls.create(n, data["triples"], data.get("centers", []), data.get("wings", []))
        except (TypeError, ValueError, KeyError) as exc:
            if isinstance(exc, InvalidPacking):
                raise
            raise InvalidPacking(f"malformed packing context: {exc}") from None

    def to_dict(self) -> dict:
        return {
            "triples": [list(t) for t in self.triples],
            "centers": list(self.centers),
            "wings": [list(w) for w in self.wings],
        }

    @property
    def k(self) -> int:
        return len(self.triples) + 1

    @property
    def t(self) -> int:
        return len(self.centers)

    @property
    def V0(self) -> frozenset[int]:
        return frozenset(v for tr in self.triples for v in tr)

    @property
    def V1(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.V0

    def validate(self, g: EdgeColoredGraph) -> None:
        if g.n != self.n:
            raise InvalidPacking(f"context built for n={self.n}, graph has n={g.n}")
        if not self.triples:
            raise InvalidPacking("packing must contain at least one triangle")
        validate_packing(g, self.triples, PackingMode.EACH_RAINBOW)
        v0 = self.V0
        seen: set[int] = set()
        for i, (c, w) in enumerate(zip(self.centers, self.wings)):
            if c not in self.triples[i]:
                raise InvalidPacking(f"center {c} not in triangle {self.triples[i]}")
            if set(w) & v0:
                raise InvalidPacking(f"wings {w} intersect V0")
            if set(w) & seen or w[0] == w[1]:
                raise InvalidPacking(f"wings {w} overlap other wings")
            seen |= set(w)
            if not is_rainbow_triple(g, c, *w):
                raise InvalidPacking(f"center {c} with wings {w} is not a rainbow triangle")


def rt1_vertex(g: EdgeColoredGraph, ctx: PackingContext, v: int) -> int:
    if v not in ctx.V0:
        raise NotInV0(f"vertex {v} is not in V0")
    v1 = ctx.V1
    mat = g.color_matrix()
    row = mat[v]
    nb = [a for a in g.neighbors(v) if a in v1]
    count = 0
    for a, b in combinations(nb, 2):
        cab = mat[a][b]
        if cab is not None and row[a] != row[b] and cab != row[a] and cab != row[b]:
            count += 1
    return count


def rt2_edge(g: EdgeColoredGraph, ctx: PackingContext, u: int, v: int) -> int:
    v0 = ctx.V0
    if u not in v0 or v not in v0:
        raise NotInV0(f"edge {_key(u, v)} is not inside V0")
    c = g.color(u, v)
    if c is None:
        raise NoSuchEdge(f"no edge {_key(u, v)}")
    mat = g.color_matrix()
    count = 0
    for w in ctx.V1:
        a, b = mat[u][w], mat[v][w]
        if a is not None and b is not None and a != b and a != c and b != c:
            count += 1
    return count


def restricted_counts(g: EdgeColoredGraph, ctx: PackingContext) -> tuple[dict[int, int], dict[Edge, int], int]:
    """``rt1`` for every V0 vertex, ``rt2`` for every edge of ``G[V0]``, and the
    number of rainbow triangles inside ``V0``."""
    v0 = ctx.V0
    rt1 = {v: 0 for v in v0}
    rt2 = {(u, v): 0 for u, v, _ in g.edges() if u in v0 and v in v0}
    inside = 0
    for tri in g.rainbow_triangles():
        ins = [x for x in tri if x in v0]
        if len(ins) == 1:
            rt1[ins[0]] += 1
        elif len(ins) == 2:
            rt2[(ins[0], ins[1])] += 1
        elif len(ins) == 3:
            inside += 1
    return rt1, rt2, inside


# -- hourglass extension ------------------------------------------------------


def max_RF21(g: EdgeColoredGraph, packing: Sequence[Sequence[int]]) -> tuple[int, PackingContext]:
    """Extend as many packing triangles as possible to hourglasses.

    Each triangle may pick any of its three vertices as center; wings are
    disjoint pairs in ``V1``.  Exact branch and bound over
    (triangle, center, wing pair) choices.
    """
    ctx0 = PackingContext.create(g.n, packing)
    ctx0.validate(g)
    triples = list(ctx0.triples)
    v1 = sorted(ctx0.V1)
    mat = g.color_matrix()

    options: list[list[tuple[int, Edge]]] = []
    for tri in triples:
        opts = []
        for c in tri:
            row = mat[c]
            for a, b in combinations(v1, 2):
                cab = mat[a][b]
                if row[a] is None or row[b] is None or cab is None:
                    continue
                if row[a] != row[b] and cab != row[a] and cab != row[b]:
                    opts.append((c, (a, b)))
        options.append(opts)

    order = [i for i in range(len(triples)) if options[i]]
    best: list = [0, {}]

    def rec(pos: int, used: int, chosen: dict[int, tuple[int, Edge]]) -> None:
        if len(chosen) > best[0]:
            best[0] = len(chosen)
            best[1] = dict(chosen)
        if best[0] == len(order):
            return
        if len(chosen) + (len(order) - pos) <= best[0]:
            return
        if pos == len(order):
            return
        i = order[pos]
        for c, (a, b) in options[i]:
            m = (1 << a) | (1 << b)
            if used & m:
                continue
            chosen[i] = (c, (a, b))
            rec(pos + 1, used | m, chosen)
            del chosen[i]
            if best[0] == len(order):
                return
        rec(pos + 1, used, chosen)

    rec(0, 0, {})
    picked = best[1]
    hour = [i for i in range(len(triples)) if i in picked]
    rest = [i for i in range(len(triples)) if i not in picked]
    ctx = PackingContext(
        g.n,
        tuple(triples[i] for i in hour + rest),
        tuple(picked[i][0] for i in hour),
        tuple(picked[i][1] for i in hour),
    )
    ctx.validate(g)
    return ctx.t, ctx


# -- edge-minimal spanning subgraph --------------------------------------------


def minimal_color_degree_subgraph(g: EdgeColoredGraph, d: int) -> EdgeColoredGraph:
    """Spanning subgraph with min color degree >= d that is edge-minimal.

    Edges are scanned in lexicographic order, repeatedly, and dropped when
    no endpoint would fall below ``d`` colors.
    """
    if d > 0 and min_color_degree(g) < d:
        raise DegreeTooLow(f"min color degree {min_color_degree(g)} < {d}")
    colors = g.edge_colors()
    mult: list[dict[int, int]] = [defaultdict(int) for _ in range(g.n)]
    for (u, v), c in colors.items():
        mult[u][c] += 1
        mult[v][c] += 1
    removed = True
    while removed:
        removed = False
        for (u, v) in sorted(colors):
            c = colors[(u, v)]
            ok_u = mult[u][c] > 1 or len(mult[u]) > d
            ok_v = mult[v][c] > 1 or len(mult[v]) > d
            if ok_u and ok_v:
                del colors[(u, v)]
                for x in (u, v):
                    mult[x][c] -= 1
                    if mult[x][c] == 0:
                        del mult[x][c]
                removed = True
    return EdgeColoredGraph(g.n, colors)


def is_edge_minimal(g: EdgeColoredGraph, d: int) -> bool:
    """True iff min color degree >= d and deleting any one edge breaks it."""
    if min_color_degree(g) < d:
        return False
    for u, v, _ in g.edges():
        h = g.remove_edge(u, v)
        if color_degree(h, u) >= d and color_degree(h, v) >= d:
            return False
    return True


# -- lemma checks -------------------------------------------------------------


@dataclass
class LemmaReport:
    n: int
    k: int
    edges: int
    min_color_degree: int
    rt: int
    # edge-density bound on the graph reduced at its own min color degree
    lemma2_hypothesis: bool
    reduced_edges: int
    reduced_rt: int
    lemma2_edge_bound: Fraction
    lemma2_degree_bound: Fraction
    # triangle bound at min color degree >= (n+k)/2
    lemma3_hypothesis: bool
    lemma3_bound: Fraction
    lemma3_reduced_rt: Optional[int] = None

    @property
    def lemma2_ok(self) -> Optional[bool]:
        if not self.lemma2_hypothesis:
            return None
        return self.reduced_rt >= self.lemma2_edge_bound >= self.lemma2_degree_bound

    @property
    def lemma3_ok(self) -> Optional[bool]:
        if not self.lemma3_hypothesis:
            return None
        return self.rt >= self.lemma3_bound

    def to_dict(self) -> dict:
        def q(x):
            return str(x) if isinstance(x, Fraction) else x

        out = {key: q(val) for key, val in self.__dict__.items()}
        out["lemma2_ok"] = self.lemma2_ok
        out["lemma3_ok"] = self.lemma3_ok
        return out


def lemma_bounds_check(g: EdgeColoredGraph, k: int) -> LemmaReport:
    """Evaluate both triangle-count lower bounds on ``g``.

    Unmet hypotheses are reported through the ``*_hypothesis`` flags;
    the corresponding ``*_ok`` property is then None.
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidParams(f"k must be a positive integer, got {k!r}")
    n = g.n
    dc = min_color_degree(g)
    rt = rt_total(g)
    reduced = minimal_color_degree_subgraph(g, dc)
    d_red = min_color_degree(reduced)
    if d_red != dc and reduced.num_edges:
        raise InvariantViolation(f"reduction changed min color degree {dc} -> {d_red}")
    h2 = 2 * dc >= n + 1
    report = LemmaReport(
        n=n,
        k=k,
        edges=g.num_edges,
        min_color_degree=dc,
        rt=rt,
        lemma2_hypothesis=h2,
        reduced_edges=reduced.num_edges,
        reduced_rt=rt_total(reduced),
        lemma2_edge_bound=Fraction(reduced.num_edges * (2 * dc - n), 3),
        lemma2_degree_bound=Fraction(dc * (2 * dc - n) * n, 6),
        lemma3_hypothesis=2 * dc >= n + k,
        lemma3_bound=Fraction(k * n * (n + k), 12),
    )
    if report.lemma3_hypothesis:
        floor_deg = (n + k + 1) // 2
        report.lemma3_reduced_rt = rt_total(minimal_color_degree_subgraph(g, floor_deg))
    return report


# -- E1..E5 -------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeClassification:
    E1: frozenset[Edge]
    E2: frozenset[Edge]
    E3: frozenset[Edge]
    E4: frozenset[Edge]
    E5: frozenset[Edge]

    def classes(self) -> tuple[frozenset[Edge], ...]:
        return (self.E1, self.E2, self.E3, self.E4, self.E5)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes())


def classify_V0_edges(g: EdgeColoredGraph, ctx: PackingContext) -> EdgeClassification:
    ctx.validate(g)
    t = ctx.t
    owner = {v: i for i, tri in enumerate(ctx.triples) for v in tri}
    center = set(ctx.centers)
    buckets: list[set[Edge]] = [set() for _ in range(5)]
    v0 = ctx.V0
    for u, v, _ in g.edges():
        if u not in v0 or v not in v0:
            continue
        i, j = owner[u], owner[v]
        if i == j:
            buckets[3].add((u, v))
            continue
        if u in center or v in center:
            buckets[0].add((u, v))
        elif i < t and j < t:
            buckets[4].add((u, v))
        elif i < t or j < t:
            buckets[1].add((u, v))
        else:
            buckets[2].add((u, v))
    cls = EdgeClassification(*(frozenset(b) for b in buckets))
    total = sum(cls.sizes())
    union = set().union(*cls.classes())
    expected = {(u, v) for u, v, _ in g.edges() if u in v0 and v in v0}
    if total != len(union) or union != expected:
        raise InvariantViolation("E1..E5 do not partition the edges of G[V0]")
    return cls


# -- claim audit --------------------------------------------------------------


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass
class ClaimResult:
    name: str
    verdict: Verdict
    lhs: Optional[int] = None
    bound: Optional[int] = None
    note: str = ""

    def to_dict(self) -> dict:
        return {"claim": self.name, "verdict": self.verdict.value, "lhs": self.lhs,
                "bound": self.bound, "note": self.note}


def _judge(name: str, lhs: int, bound: int, note: str = "") -> ClaimResult:
    return ClaimResult(name, Verdict.PASS if lhs <= bound else Verdict.FAIL, lhs, bound, note)


@dataclass
class ProofStatistics:
    rt_total: int
    rt_vertex: list[int]
    rt1: dict[int, int]
    rt2: dict[Edge, int]
    rt_inside_V0: int
    s_max: dict[int, int]
    classification: EdgeClassification
    t_max: int
    claims: list[ClaimResult] = field(default_factory=list)
    applicable: bool = True
    A1: int = 0
    A2: int = 0
    lemma3_bound: Fraction = Fraction(0)

    def verdicts(self) -> dict[str, Verdict]:
        return {c.name: c.verdict for c in self.claims}

    def all_passed(self) -> bool:
        return all(c.verdict is not Verdict.FAIL for c in self.claims)

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "rt_total": self.rt_total,
            "rt_inside_V0": self.rt_inside_V0,
            "t_max": self.t_max,
            "class_sizes": list(self.classification.sizes()),
            "A1": self.A1,
            "A2": self.A2,
            "lemma3_bound": str(self.lemma3_bound),
            "claims": [c.to_dict() for c in self.claims],
        }


def claim_audit(g: EdgeColoredGraph, ctx: PackingContext, budget: Optional[int] = None) -> ProofStatistics:
    """Evaluate every counting claim of the packing argument on ``g``.

    The claims presuppose that ``g`` has no ``k`` disjoint rainbow triangles
    (``k = len(ctx.triples) + 1``); this is checked by exhaustive search and,
    if it fails, every claim is NOT_APPLICABLE.  Claims that rely on further
    facts record NOT_APPLICABLE with the missing fact in ``note``:

    * the friendship bounds at ``v`` need ``G - v`` to contain ``k-1``
      disjoint rainbow triangles;
    * the per-center bound needs those at every center and ``n >= 3k+1``;
    * the bound for non-hourglass triangles needs ``t`` to be maximal.
    """
    ctx.validate(g)
    n, k, t = g.n, ctx.k, ctx.t
    N1 = n - 3 * k + 2  # |V1| - 1
    N = n - 3 * k + 3  # |V1|
    per_vertex, _ = rt_counts(g)
    rt1, rt2, inside = restricted_counts(g, ctx)
    cls = classify_V0_edges(g, ctx)
    t_max, _ = max_RF21(g, ctx.triples)
    stats = ProofStatistics(
        rt_total=sum(per_vertex) // 3,
        rt_vertex=per_vertex,
        rt1=rt1,
        rt2=rt2,
        rt_inside_V0=inside,
        s_max={v: max_friendship(g, v)[0] for v in range(n)},
        classification=cls,
        t_max=t_max,
        lemma3_bound=Fraction(k * n * (n + k), 12),
    )
    if 3 * stats.rt_total != sum(per_vertex):
        raise InvariantViolation("vertex counts are not three times the triangle count")

    full = find_packing(g, k, PackingMode.EACH_RAINBOW, budget)
    if full.status is Status.BUDGET_EXCEEDED:
        raise BudgetExceeded(f"could not decide a {k}-packing within {budget} nodes")
    if full.status is Status.FOUND:
        stats.applicable = False
        stats.claims = [ClaimResult(name, Verdict.NOT_APPLICABLE, note=f"G has {k} disjoint rainbow triangles")
                        for name in ("claim2", "claim3", "claim4", "claim5", "claim6", "claim7", "claim8")]
        return stats

    claims: list[ClaimResult] = []

    # friendship bounds, per vertex
    induction_ok: dict[int, bool] = {}
    for v in range(n):
        sub = g.delete_vertex(v)
        res = find_packing(sub, k - 1, PackingMode.EACH_RAINBOW, budget) if k > 1 else None
        induction_ok[v] = res is None or res.status is Status.FOUND
    bad: list[str] = []
    checked = [v for v in range(n) if induction_ok[v]]
    for v in checked:
        if stats.s_max[v] > 3 * k - 3:
            bad.append(f"s_max({v})={stats.s_max[v]}")
        if per_vertex[v] > (3 * k - 3) * (n - 1):
            bad.append(f"rt({v})={per_vertex[v]}")
        if v in rt1 and rt1[v] > (3 * k - 3) * N1:
            bad.append(f"rt1({v})={rt1[v]}")
    if not checked:
        claims.append(ClaimResult("claim2", Verdict.NOT_APPLICABLE,
                                  note="no vertex v with k-1 disjoint rainbow triangles in G - v"))
    else:
        lhs = max(per_vertex[v] for v in checked)
        skipped = n - len(checked)
        note = "; ".join(bad) or (f"{skipped} vertices skipped (G - v lacks k-1 triangles)" if skipped else "")
        claims.append(ClaimResult("claim2", Verdict.FAIL if bad else Verdict.PASS, lhs,
                                  (3 * k - 3) * (n - 1), note))

    # two vertices of one packing triangle
    bad = []
    for tri in ctx.triples:
        for u1, u2 in ((a, b) for a in tri for b in tri if a != b):
            if rt1[u1] > N1 and rt1[u2] > 4:
                bad.append(f"rt1({u1})={rt1[u1]} > {N1} but rt1({u2})={rt1[u2]} > 4")
            if 1 <= rt1[u1] <= N1 and rt1[u2] > 2 * N1:
                bad.append(f"rt1({u1})={rt1[u1]} but rt1({u2})={rt1[u2]} > {2 * N1}")
    claims.append(ClaimResult("claim3", Verdict.FAIL if bad else Verdict.PASS, note="; ".join(bad)))

    # hourglass triangles together with E1
    lhs4 = sum(rt1[v] for tri in ctx.triples[:t] for v in tri) + sum(rt2[e] for e in cls.E1)
    bound4 = t * (3 * k * n - 12 * k + 9)
    missing = [c for c in ctx.centers if not induction_ok[c]]
    if missing:
        claims.append(ClaimResult("claim4", Verdict.NOT_APPLICABLE, lhs4, bound4,
                                  f"centers {missing}: G - v lacks k-1 disjoint rainbow triangles"))
    elif n < 3 * k + 1:
        claims.append(ClaimResult("claim4", Verdict.NOT_APPLICABLE, lhs4, bound4, "needs n >= 3k+1"))
    else:
        claims.append(_judge("claim4", lhs4, bound4))

    # non-hourglass triangles
    per_tri_bound = max(2 * t * N1 + 8, 3 * N1)
    lhs5 = sum(rt1[v] for tri in ctx.triples[t:] for v in tri)
    bound5 = max((k - 1 - t) * (2 * t * N1 + 8), 3 * (k - 1 - t) * N1)
    if t < t_max:
        claims.append(ClaimResult("claim5", Verdict.NOT_APPLICABLE, lhs5, bound5,
                                  f"t={t} is not maximal (max is {t_max})"))
    else:
        over = [tri for tri in ctx.triples[t:] if sum(rt1[v] for v in tri) > per_tri_bound]
        res = _judge("claim5", lhs5, bound5)
        if over:
            res.verdict = Verdict.FAIL
            res.note = f"triangles over per-triangle bound {per_tri_bound}: {over}"
        claims.append(res)

    lhs6, bound6 = sum(rt2[e] for e in cls.E3), 6 * comb(k - 1 - t, 2) * N
    if N < 3:
        # the per-triple bound max{2|V1|, 6} only collapses to 2|V1| when |V1| >= 3
        claims.append(ClaimResult("claim6", Verdict.NOT_APPLICABLE, lhs6, bound6, "needs |V1| >= 3 (n >= 3k)"))
    else:
        claims.append(_judge("claim6", lhs6, bound6))
    claims.append(_judge("claim7", sum(rt2[e] for e in cls.E2), t * (k - 1 - t) * (3 * N + 9)))
    claims.append(_judge("claim8", sum(rt2[e] for e in cls.E5), 16 * comb(t, 2)))
    claims.append(_judge("E4", sum(rt2[e] for e in cls.E4), (3 * k - 3) * N))
    claims.append(_judge("inside_V0", inside, comb(3 * k - 3, 3)))

    stats.claims = claims
    stats.A1 = sum(rt1.values()) + sum(rt2.values()) + comb(3 * k - 3, 3)
    stats.A2 = (
        bound5
        + t * (3 * k * n - 12 * k + 9)
        + 3 * t * (k - 1 - t) * (N + 3)
        + 6 * comb(k - 1 - t, 2) * N
        + (3 * k - 3) * N
        + 16 * comb(t, 2)
        + comb(3 * k - 3, 3)
    )
    if stats.rt_total != sum(rt1.values()) + sum(rt2.values()) + inside:
        raise InvariantViolation("a rainbow triangle avoids V0 although no k-packing exists")
    return stats


# -- proof constants ------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def _sqrt_interval(D: int, bits: int) -> tuple[int, int]:
    """Integers ``(lo, hi)`` with ``lo / 2^bits <= sqrt(D) <= hi / 2^bits``."""
    s = isqrt(D << (2 * bits))
    return s, s if s * s == D << (2 * bits) else s + 1


def _root_interval(a: int, D: int, k: int, bits: int) -> Interval:
    if D < 0:
        raise InvalidParams(f"negative radicand for k={k}")
    lo, hi = _sqrt_interval(D, bits)
    scale = 1 << bits
    return Interval(Fraction(a * scale + lo, 2 * k * scale), Fraction(a * scale + hi, 2 * k * scale))


def _n0_terms(k: int) -> tuple[int, int]:
    a = 41 * k * k + 36 * k
    return a, a * a + 4 * k * (54 * k ** 3 - 156 * k * k)


def _n1_terms(k: int) -> tuple[int, int]:
    a = 35 * k * k + 72 * k
    return a, a * a - 4 * k * (54 * k ** 3 + 24 * k * k)


@dataclass(frozen=True)
class ProofThresholds:
    k: int
    n0: Interval
    n1: Interval
    hypothesis_bound: Fraction  # 42.5k + 48

    @property
    def margin_ok(self) -> bool:
        return self.hypothesis_bound > max(self.n0.hi, self.n1.hi)


def proof_thresholds(k: int, bits: int = 96) -> ProofThresholds:
    """The two root thresholds of the counting argument as certified intervals.

    ``bits`` is the binary precision of the square-root enclosure (>= 64).
    """
    if not isinstance(k, int) or k < 3:
        raise InvalidParams(f"thresholds need k >= 3 (k={k})")
    if bits < 64:
        raise InvalidParams("use at least 64 bits of precision")
    a0, d0 = _n0_terms(k)
    a1, d1 = _n1_terms(k)
    return ProofThresholds(
        k,
        _root_interval(a0, d0, k, bits),
        _root_interval(a1, d1, k, bits),
        Fraction(85 * k + 96, 2),
    )


def hypothesis_exceeds_thresholds(k: int, bits: int = 64) -> bool:
    """Integer-only form of ``42.5k+48 > max(n0, n1)`` using upper enclosures."""
    target = 85 * k * k + 96 * k  # 2k * (42.5k + 48)
    for a, D in (_n0_terms(k), _n1_terms(k)):
        if D < 0:
            return False
        _, hi = _sqrt_interval(D, bits)
        if a * (1 << bits) + hi >= target * (1 << bits):
            return False
    return True
