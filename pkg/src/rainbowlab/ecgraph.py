"""Edge-colored simple graphs.

Vertices are dense integers ``0..n-1``.  An absent edge is ``None``; a
present edge carries a positive integer color.  Graph values never change
after construction, so one instance can be shared by any number of search
workers.
"""

from __future__ import annotations

import json
import os
import random
import tempfile
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import BadColor, DuplicateEdge, InvalidParams, NoSuchEdge, OutOfRange, SelfLoop

Edge = tuple[int, int]


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class RainbowTriple:
    vertices: tuple[int, int, int]
    colors: tuple[int, int, int]


class EdgeColoredGraph:
    """Immutable edge-colored graph on ``n`` vertices.

    Use :func:`build` (or :meth:`from_edges`) to construct one; the
    constructor trusts its input and is meant for internal use.
    """

    __slots__ = ("n", "_colors", "_nbr", "_m", "_mat")

    def __init__(self, n: int, colors: dict[Edge, int]):
        self.n = n
        self._colors = colors
        self._nbr = None  # adjacency bitmasks, built on first use
        self._m = len(colors)
        self._mat = None

    def _masks(self) -> tuple[int, ...]:
        if self._nbr is None:
            nbr = [0] * self.n
            for u, v in self._colors:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
            self._nbr = tuple(nbr)
        return self._nbr

    @classmethod
    def from_edges(cls, n: int, edge_list: Iterable[Sequence[int]]) -> "EdgeColoredGraph":
        if not isinstance(n, int) or n < 1:
            raise OutOfRange(f"vertex count must be a positive integer, got {n!r}")
        colors: dict[Edge, int] = {}
        for item in edge_list:
            u, v, c = (int(x) for x in item)
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if c < 1:
                raise BadColor(f"color must be >= 1, got {c} on ({u}, {v})")
            key = _key(u, v)
            if key in colors:
                raise DuplicateEdge(f"pair {key} listed twice")
            colors[key] = c
        return cls(n, colors)

    # -- basic queries -------------------------------------------------

    def __repr__(self) -> str:
        return f"EdgeColoredGraph(n={self.n}, e={self._m}, colors={self.color_number()})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoredGraph):
            return NotImplemented
        return self.n == other.n and self._colors == other._colors

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._colors.items())))

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise OutOfRange(f"vertex {v} outside 0..{self.n - 1}")

    @property
    def num_edges(self) -> int:
        return self._m

    def color(self, u: int, v: int) -> Optional[int]:
        """Color of edge uv, or None when the pair is not an edge."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return None
        return self._colors.get(_key(u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return self.color(u, v) is not None

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Edges as ``(u, v, color)`` with ``u < v``, lexicographically sorted."""
        for (u, v) in sorted(self._colors):
            yield u, v, self._colors[(u, v)]

    def edge_colors(self) -> dict[Edge, int]:
        return dict(self._colors)

    def neighbor_mask(self, v: int) -> int:
        self._check_vertex(v)
        return self._masks()[v]

    def neighbors(self, v: int) -> list[int]:
        mask = self.neighbor_mask(v)
        return [u for u in range(self.n) if mask >> u & 1]

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def colors_at(self, v: int) -> set[int]:
        self._check_vertex(v)
        col = self._colors
        return {col[_key(u, v)] for u in self.neighbors(v)}

    def color_number(self) -> int:
        return len(set(self._colors.values()))

    def color_matrix(self) -> list[list[Optional[int]]]:
        """Dense ``n x n`` color table (None for non-edges); built once, do not mutate."""
        if self._mat is None:
            mat: list[list[Optional[int]]] = [[None] * self.n for _ in range(self.n)]
            for (u, v), c in self._colors.items():
                mat[u][v] = mat[v][u] = c
            self._mat = mat
        return self._mat

    def rainbow_triangles(self) -> list[tuple[int, int, int]]:
        """All rainbow triangles ``(u, v, w)``, ``u < v < w``, in lexicographic order."""
        mat = self.color_matrix()
        nbr = self._masks()
        out = []
        for u in range(self.n):
            row = mat[u]
            higher = nbr[u] >> (u + 1) << (u + 1)
            rest = higher
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                cuv = row[v]
                common = higher & nbr[v] & ~((low << 1) - 1)
                rowv = mat[v]
                while common:
                    lw = common & -common
                    w = lw.bit_length() - 1
                    common ^= lw
                    cuw = row[w]
                    cvw = rowv[w]
                    if cuv != cuw and cuv != cvw and cuw != cvw:
                        out.append((u, v, w))
        return out

    # -- derived graphs ------------------------------------------------

    def remove_edge(self, u: int, v: int) -> "EdgeColoredGraph":
        self._check_vertex(u)
        self._check_vertex(v)
        key = _key(u, v)
        if u == v or key not in self._colors:
            raise NoSuchEdge(f"no edge {key}")
        colors = dict(self._colors)
        del colors[key]
        return EdgeColoredGraph(self.n, colors)

    def induced_subgraph(self, vertices: Iterable[int]) -> "EdgeColoredGraph":
        """Subgraph induced by ``vertices``, renumbered in ascending order."""
        keep = sorted(set(vertices))
        if not keep:
            raise InvalidParams("induced subgraph on an empty vertex set")
        for v in keep:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(keep)}
        colors = {
            (index[u], index[v]): c
            for (u, v), c in self._colors.items()
            if u in index and v in index
        }
        return EdgeColoredGraph(len(keep), colors)

    def delete_vertex(self, v: int) -> "EdgeColoredGraph":
        self._check_vertex(v)
        if self.n == 1:
            raise InvalidParams("cannot delete the only vertex")
        return self.induced_subgraph(u for u in range(self.n) if u != v)

    def relabel_colors(self) -> "EdgeColoredGraph":
        """Rename colors to ``1..c(G)`` by first appearance in sorted edge order."""
        mapping: dict[int, int] = {}
        colors = {}
        for u, v, c in self.edges():
            colors[(u, v)] = mapping.setdefault(c, len(mapping) + 1)
        return EdgeColoredGraph(self.n, colors)

    # -- serialization -------------------------------------------------

    def to_dict(self, canonical: bool = True) -> dict:
        g = self.relabel_colors() if canonical else self
        return {"n": g.n, "edges": [[u, v, c] for u, v, c in g.edges()]}

    @classmethod
    def from_dict(cls, data: dict) -> "EdgeColoredGraph":
        try:
            n = data["n"]
            edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise InvalidParams(f"graph JSON needs 'n' and 'edges': {exc}") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise InvalidParams(f"'n' must be an integer, got {n!r}")
        if not isinstance(edges, list):
            raise InvalidParams("'edges' must be a list")
        for item in edges:
            if not isinstance(item, list) or len(item) != 3 or not all(isinstance(x, int) and not isinstance(x, bool) for x in item):
                raise InvalidParams(f"edge entries must be [u, v, color] integers, got {item!r}")
        return cls.from_edges(n, edges)


def build(n: int, edge_list: Iterable[Sequence[int]]) -> EdgeColoredGraph:
    """Build a graph from ``(u, v, color)`` triples; duplicate pairs are errors."""
    return EdgeColoredGraph.from_edges(n, edge_list)


def color_degree(g: EdgeColoredGraph, v: int) -> int:
    return len(g.colors_at(v))


def min_color_degree(g: EdgeColoredGraph) -> int:
    return min(color_degree(g, v) for v in range(g.n))


def color_number(g: EdgeColoredGraph) -> int:
    return g.color_number()


def is_rainbow_triple(g: EdgeColoredGraph, u: int, v: int, w: int) -> bool:
    if len({u, v, w}) != 3:
        raise InvalidParams(f"triple ({u}, {v}, {w}) has repeated vertices")
    a, b, c = g.color(u, v), g.color(u, w), g.color(v, w)
    if a is None or b is None or c is None:
        return False
    return a != b and a != c and b != c


def remove_edge(g: EdgeColoredGraph, u: int, v: int) -> EdgeColoredGraph:
    return g.remove_edge(u, v)


def induced_subgraph(g: EdgeColoredGraph, vertices: Iterable[int]) -> EdgeColoredGraph:
    return g.induced_subgraph(vertices)


# -- common colorings ----------------------------------------------------


def complete_graph(n: int, coloring: Callable[[int, int], int]) -> EdgeColoredGraph:
    """K_n with edge ``(u, v)``, ``u < v``, colored ``coloring(u, v)``."""
    return build(n, ((u, v, coloring(u, v)) for u, v in combinations(range(n), 2)))


def rainbow_complete(n: int) -> EdgeColoredGraph:
    edges = [(u, v, i + 1) for i, (u, v) in enumerate(combinations(range(n), 2))]
    return build(n, edges)


def monochromatic_complete(n: int) -> EdgeColoredGraph:
    return complete_graph(n, lambda u, v: 1)


def edgeless(n: int) -> EdgeColoredGraph:
    return build(n, [])


def proper_complete_bipartite(m: int) -> EdgeColoredGraph:
    """Properly colored K_{m,m}: parts ``0..m-1`` and ``m..2m-1``, color of
    ``(i, m + j)`` is ``1 + (i + j) mod m`` (a Latin square)."""
    return build(2 * m, [(i, m + j, 1 + (i + j) % m) for i in range(m) for j in range(m)])


def random_coloring(
    n: int,
    palette: int,
    rng: random.Random,
    density: float = 1.0,
) -> EdgeColoredGraph:
    """Random coloring of a random subgraph of K_n.

    Each pair is kept with probability ``density`` and colored uniformly
    from ``1..palette``.
    """
    edges = []
    for u, v in combinations(range(n), 2):
        if density >= 1.0 or rng.random() < density:
            edges.append((u, v, rng.randint(1, palette)))
    return build(n, edges)


# -- file I/O ----------------------------------------------------------------


def dumps(g: EdgeColoredGraph, canonical: bool = True) -> str:
    return json.dumps(g.to_dict(canonical=canonical))


def loads(text: str) -> EdgeColoredGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParams(f"malformed graph JSON: {exc}") from None
    return EdgeColoredGraph.from_dict(data)


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` through a temp file and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_graph(path: str | os.PathLike) -> EdgeColoredGraph:
    return loads(Path(path).read_text())


def write_graph(g: EdgeColoredGraph, path: str | os.PathLike) -> None:
    write_atomic(path, dumps(g) + "\n")
