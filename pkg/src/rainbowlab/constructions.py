"""Extremal colorings of K_n with no rainbow kC3, and their color counts.

Four families are generated.  In each, a "rainbow part" of K_n receives
pairwise distinct colors and the remaining edges are colored sparingly:

* ``G1``: ``X`` (``k-2`` vertices) joined to a balanced complete bipartite
  graph on ``Y1 | Y2``; edges inside ``Y1`` or inside ``Y2`` share one color.
* ``G2``: ``Y1`` (``floor(n/2)`` vertices) joined to ``K_X`` plus the
  independent set ``Y2``; ``|X| = 2k-3``.
* ``G3``: ``X`` (``2k-3`` vertices) joined to an independent set ``Y``.
* ``G4``: a rainbow ``K_{3k-1}`` on ``X``; vertex ``y_j`` of ``Y`` uses one
  new color on every edge to ``X`` and to earlier ``Y`` vertices.

All arithmetic here is exact (``int`` / ``Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, count
from math import comb
from typing import Optional

from .ecgraph import EdgeColoredGraph
from .errors import InvalidParams

FAMILIES = ("G1", "G2", "G3", "G4")
# reading order of Table-style transitions; earlier wins ties
TIE_ORDER = ("G4", "G3", "G2", "G1")


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    n: int
    k: int
    parts: dict[str, tuple[int, ...]] = field(compare=False)
    centers: tuple[int, ...] = ()

    def part_sizes(self) -> dict[str, int]:
        return {name: len(vs) for name, vs in self.parts.items()}


@dataclass(frozen=True)
class TransitionRow:
    family: str
    n_low: Fraction
    n_high: Optional[Fraction]  # None means unbounded

    def contains(self, n: int) -> bool:
        return self.n_low <= n and (self.n_high is None or n <= self.n_high)


@dataclass(frozen=True)
class ReportRow:
    n: int
    k: int
    counts: dict[str, Optional[int]]
    conjecture1: int
    best_family: str
    best_value: int

    @property
    def violated(self) -> bool:
        return self.best_value > self.conjecture1


def _part_sizes(family: str, n: int, k: int) -> dict[str, int]:
    if family == "G1":
        return {"X": k - 2, "Y1": (n - k + 2) // 2, "Y2": (n - k + 3) // 2}
    if family == "G2":
        return {"X": 2 * k - 3, "Y1": n // 2, "Y2": (n + 1) // 2 - (2 * k - 3)}
    if family == "G3":
        return {"X": 2 * k - 3, "Y": n - 2 * k + 3}
    if family == "G4":
        return {"X": 3 * k - 1, "Y": n - 3 * k + 1}
    raise InvalidParams(f"unknown family {family!r}; expected one of {FAMILIES}")


def validate(family: str, n: int, k: int) -> None:
    """Raise InvalidParams naming the first violated requirement."""
    if family not in FAMILIES:
        raise InvalidParams(f"unknown family {family!r}; expected one of {FAMILIES}")
    if not isinstance(n, int) or not isinstance(k, int):
        raise InvalidParams("n and k must be integers")
    if family == "G4":
        if k < 1:
            raise InvalidParams(f"G4 requires k >= 1 (k={k})")
        if n < 3 * k - 1:
            raise InvalidParams(f"G4 requires n >= 3k-1 (n={n}, k={k})")
        return
    if k < 2:
        raise InvalidParams(f"{family} requires k >= 2 (k={k})")
    if n < 3 * k:
        raise InvalidParams(f"{family} requires n >= 3k (n={n}, k={k})")
    if family == "G2" and n < 4 * k - 6:
        raise InvalidParams(f"G2 requires n >= 4k-6 so that |Y2| >= 0 (n={n}, k={k})")


def is_valid(family: str, n: int, k: int) -> bool:
    try:
        validate(family, n, k)
    except InvalidParams:
        return False
    return True


def construction_spec(family: str, n: int, k: int) -> ConstructionSpec:
    validate(family, n, k)
    sizes = _part_sizes(family, n, k)
    parts: dict[str, tuple[int, ...]] = {}
    start = 0
    for name, size in sizes.items():
        parts[name] = tuple(range(start, start + size))
        start += size
    assert start == n
    return ConstructionSpec(family, n, k, parts, centers=parts["X"] if family != "G4" else ())


# pairs of parts whose edges all receive distinct colors; every other pair
# of parts (and every part with itself) shares a single extra color
_RAINBOW_BLOCKS = {
    "G1": {("X", "X"), ("X", "Y1"), ("X", "Y2"), ("Y1", "Y2")},
    "G2": {("X", "X"), ("X", "Y1"), ("Y1", "Y2")},
    "G3": {("X", "X"), ("X", "Y")},
}


_PAIR_CACHE_LIMIT = 320
_pair_table: tuple[list, list] = ([], [])


def _pairs(n: int) -> tuple[list, list]:
    """Row and column views of the pair tuples of ``range(n)``.

    ``rows[u][v] == cols[v][u] == (u, v)``.  The same tuple objects are
    reused by every construction up to a moderate order, which keeps large
    parameter sweeps from allocating (and garbage-collecting) millions of
    small tuples.
    """
    rows, _ = _pair_table
    if len(rows) >= n:
        return _pair_table
    table = ([[(u, v) for v in range(n)] for u in range(n)], [])
    table[1].extend([table[0][u][v] for u in range(n)] for v in range(n))
    if n <= _PAIR_CACHE_LIMIT:
        globals()["_pair_table"] = table
    return table


def _block_pairs(rows: list, a: tuple[int, ...], b: tuple[int, ...], same: bool):
    """Pairs ``(u, v)``, ``u < v``, inside part ``a`` or between parts ``a < b``."""
    if not a or not b:
        return iter(())
    if same:
        end = a[-1] + 1
        return chain.from_iterable(rows[u][u + 1:end] for u in a)
    return chain.from_iterable(rows[u][b[0]:b[-1] + 1] for u in a)


def build_construction(family: str, n: int, k: int) -> EdgeColoredGraph:
    """The coloring ``family(n, k)`` on vertices laid out as in construction_spec.

    Colors are assigned block by block (parts in layout order), so the
    raw color ids are deterministic; canonical serialization renames them.
    """
    spec = construction_spec(family, n, k)
    rows, cols = _pairs(n)
    colors: dict[tuple[int, int], int] = {}
    if family == "G4":
        xs = spec.parts["X"]
        colors.update(zip(_block_pairs(rows, xs, xs, True), count(1)))
        next_color = len(colors) + 1
        for y in spec.parts["Y"]:
            colors.update(dict.fromkeys(cols[y][:y], next_color))
            next_color += 1
        return EdgeColoredGraph(n, colors)

    names = list(spec.parts)
    rainbow = _RAINBOW_BLOCKS[family]
    fresh = count(1)
    shared = []
    for i, a in enumerate(names):
        for b in names[i:]:
            pairs = _block_pairs(rows, spec.parts[a], spec.parts[b], a == b)
            if (a, b) in rainbow:
                colors.update(zip(pairs, fresh))
            else:
                shared.append(pairs)
    extra = len(colors) + 1
    for pairs in shared:
        colors.update(dict.fromkeys(pairs, extra))
    return EdgeColoredGraph(n, colors)


def color_count_formula(family: str, n: int, k: int) -> int:
    validate(family, n, k)
    if family == "G1":
        m = n - k + 2
        return comb(k - 2, 2) + (k - 2) * m + m * m // 4 + 1
    if family == "G2":
        return comb(2 * k - 3, 2) + n * n // 4 + 1
    if family == "G3":
        return comb(2 * k - 3, 2) + (n - 2 * k + 3) * (2 * k - 3) + 1
    return comb(3 * k - 1, 2) + n - 3 * k + 1


def family_counts(n: int, k: int) -> dict[str, Optional[int]]:
    """Closed-form color count of every family valid at ``(n, k)``; None otherwise."""
    return {f: color_count_formula(f, n, k) if is_valid(f, n, k) else None for f in FAMILIES}


def _require_range(n: int, k: int, kmin: int = 2) -> None:
    if not isinstance(n, int) or not isinstance(k, int):
        raise InvalidParams("n and k must be integers")
    if k < kmin:
        raise InvalidParams(f"requires k >= {kmin} (k={k})")
    if n < 3 * k:
        raise InvalidParams(f"requires n >= 3k (n={n}, k={k})")


def best_construction(n: int, k: int) -> tuple[str, int]:
    """Family with the largest color count at ``(n, k)`` and that count.

    Ties go to the family appearing first in G4, G3, G2, G1 order.
    """
    _require_range(n, k)
    counts = family_counts(n, k)
    best = max(v for v in counts.values() if v is not None)
    for f in TIE_ORDER:
        if counts[f] == best:
            return f, best
    raise AssertionError("unreachable")


def conjecture1_value(n: int, k: int) -> int:
    _require_range(n, k)
    m = n - k + 2
    return max(comb(3 * k - 1, 2) + n - 3 * k + 1, m * m // 4 + (k - 2) * m + comb(k - 2, 2) + 1)


def lu_luo_ma_value(n: int, k: int) -> int:
    if not isinstance(n, int) or not isinstance(k, int):
        raise InvalidParams("n and k must be integers")
    if k < 2:
        raise InvalidParams(f"requires k >= 2 (k={k})")
    if n < 15 * k + 27:
        raise InvalidParams(f"requires n >= 15k+27 (n={n}, k={k})")
    return (n - k + 1) ** 2 // 4 + (k - 2) * (n - k + 2) + comb(k - 2, 2) + 1


def report_row(n: int, k: int) -> ReportRow:
    family, value = best_construction(n, k)
    return ReportRow(n, k, family_counts(n, k), conjecture1_value(n, k), family, value)


def counterexample_report(k: int, n_range) -> list[ReportRow]:
    """One row per ``n``: best construction against the conjectured value."""
    rows = [report_row(n, k) for n in n_range]
    return rows


def transition_table(k: int) -> list[TransitionRow]:
    """The published transition ranges, with exact rational boundaries.

    These are the boundaries as printed; :func:`argmax_runs` gives the
    ranges actually implied by :func:`color_count_formula`.
    """
    if not isinstance(k, int) or k < 3:
        raise InvalidParams(f"transition table needs k >= 3 (k={k})")
    g4_g3 = Fraction(13 * k * k - 25 * k + 8, 4 * k - 8)
    g3_g2 = Fraction(4 * k - 6)
    g2_g1 = Fraction(9 * k * k - 6 * k, 2 * k - 4)
    return [
        TransitionRow("G4", Fraction(3 * k), g4_g3),
        TransitionRow("G3", g4_g3, g3_g2),
        TransitionRow("G2", g3_g2, g2_g1),
        TransitionRow("G1", g2_g1, None),
    ]


def exact_transition_table(k: int) -> list[TransitionRow]:
    """Transition ranges derived directly from the closed-form counts.

    ``c(G4) = c(G3)`` at ``(13k^2-25k+8)/(4k-8)``; ``c(G2) >= c(G3)`` wherever
    G2 exists (from ``4k-6``); ``c(G1) - c(G2) = (k-2)(2n-9k+12)/4`` up to
    floor effects, so G1 overtakes G2 at ``(9k-12)/2``.  When a range would
    be empty (small k) the row is still emitted with ``n_low > n_high``.
    """
    if not isinstance(k, int) or k < 3:
        raise InvalidParams(f"transition table needs k >= 3 (k={k})")
    g4_g3 = Fraction(13 * k * k - 25 * k + 8, 4 * k - 8)
    g3_g2 = Fraction(4 * k - 6)
    g2_g1 = Fraction(9 * k - 12, 2)
    return [
        TransitionRow("G4", Fraction(3 * k), g4_g3),
        TransitionRow("G3", g4_g3, g3_g2),
        TransitionRow("G2", g3_g2, g2_g1),
        TransitionRow("G1", g2_g1, None),
    ]


def argmax_runs(k: int, n_max: int) -> list[tuple[str, int, int]]:
    """Maximal runs ``(family, n_first, n_last)`` of the best family over
    integers ``3k <= n <= n_max`` (ties resolved as in best_construction)."""
    runs: list[tuple[str, int, int]] = []
    for n in range(3 * k, n_max + 1):
        fam, _ = best_construction(n, k)
        if runs and runs[-1][0] == fam:
            runs[-1] = (fam, runs[-1][1], n)
        else:
            runs.append((fam, n, n))
    return runs


def maximizing_families(n: int, k: int) -> set[str]:
    counts = family_counts(n, k)
    best = max(v for v in counts.values() if v is not None)
    return {f for f, v in counts.items() if v == best}


def figure5_curves(k: int, n_max: int) -> list[tuple[int, Optional[int], Optional[int], Optional[int], Optional[int]]]:
    """Rows ``(n, c(G1), c(G2), c(G3), c(G4))`` for ``3k <= n <= n_max``."""
    if not isinstance(k, int) or k < 3:
        raise InvalidParams(f"curves need k >= 3 (k={k})")
    if n_max < 3 * k:
        raise InvalidParams(f"n_max must be >= 3k (n_max={n_max}, k={k})")
    rows = []
    for n in range(3 * k, n_max + 1):
        c = family_counts(n, k)
        rows.append((n, c["G1"], c["G2"], c["G3"], c["G4"]))
    return rows
