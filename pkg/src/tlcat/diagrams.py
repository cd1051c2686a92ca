"""Planar (Temperley-Lieb) diagrams and their calculus.

Conventions (used everywhere in the package):

* A diagram in Hom(m, n) has ``bot = m`` points on the bottom row and
  ``top = n`` points on the top row, each row numbered 1, 2, ... left to right.
* Points are stored as integers: bottom point ``i`` is ``i - 1`` and top point
  ``j`` is ``bot + j - 1``. ``match[p]`` is the partner of point ``p``.
* The cyclic (clockwise) order around the rectangle is B1, ..., B_bot,
  T_top, ..., T1. Planarity means no two arcs interleave in this order.
* ``compose(f, g)`` places ``g`` on top of ``f`` (f's top row glued to g's
  bottom row). The algebra product ``mul(a, b)`` stacks ``a`` on top of ``b``,
  so ``mul(a, b) == compose(b, a)``; modules are left modules for ``mul``.
* ``juxtapose(f, g)`` puts ``g`` to the right of ``f``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .coeffring import GENERIC, Field

Endpoint = tuple[str, int]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class PlanarDiagram:
    bot: int
    top: int
    match: tuple[int, ...]

    def __post_init__(self):
        n = self.bot + self.top
        if len(self.match) != n:
            raise DiagramError(f"matching has {len(self.match)} points, expected {n}")
        if n % 2:
            raise DiagramError("odd number of boundary points")
        for p, q in enumerate(self.match):
            if not 0 <= q < n or q == p or self.match[q] != p:
                raise DiagramError(f"not a perfect matching at point {p}")
        if not _noncrossing(self._cyclic_pairs()):
            raise DiagramError("arcs cross")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_arcs(cls, bot: int, top: int, arcs) -> "PlanarDiagram":
        match = [-1] * (bot + top)
        for a, b in arcs:
            p, q = _point(bot, top, a), _point(bot, top, b)
            if match[p] != -1 or match[q] != -1:
                raise DiagramError("point used twice")
            match[p], match[q] = q, p
        if -1 in match:
            raise DiagramError("unmatched point")
        return cls(bot, top, tuple(match))

    @classmethod
    def identity(cls, n: int) -> "PlanarDiagram":
        return _identity(n)

    @classmethod
    def generator(cls, n: int, i: int) -> "PlanarDiagram":
        """The TL generator e_i on n strands (cup-cap on positions i, i+1)."""
        if not 1 <= i < n:
            raise DiagramError(f"e_{i} undefined on {n} strands")
        return _generator(n, i)

    @classmethod
    def cup(cls) -> "PlanarDiagram":
        return cls(0, 2, (1, 0))

    @classmethod
    def cap(cls) -> "PlanarDiagram":
        return cls(2, 0, (1, 0))

    # -- views ------------------------------------------------------------

    def endpoint(self, p: int) -> Endpoint:
        return ("B", p + 1) if p < self.bot else ("T", p - self.bot + 1)

    @property
    def arcs(self) -> tuple[tuple[Endpoint, Endpoint], ...]:
        """Canonical arcs: endpoints sorted by (side, index), arcs sorted."""
        out = []
        for p, q in enumerate(self.match):
            if p < q:
                out.append(tuple(sorted((self.endpoint(p), self.endpoint(q)))))
        return tuple(sorted(out))

    def cyclic_position(self, p: int) -> int:
        if p < self.bot:
            return p
        j = p - self.bot + 1
        return self.bot + self.top - j

    def _cyclic_pairs(self):
        return [
            (self.cyclic_position(p), self.cyclic_position(q))
            for p, q in enumerate(self.match)
            if p < q
        ]

    @property
    def through(self) -> int:
        """Number of strands joining the bottom row to the top row."""
        return sum(1 for p in range(self.bot) if self.match[p] >= self.bot)

    def is_endomorphism(self) -> bool:
        return self.bot == self.top

    def __str__(self) -> str:
        parts = [f"{a[0]}{a[1]}-{b[0]}{b[1]}" for a, b in self.arcs]
        return f"<{self.bot}->{self.top}: {' '.join(parts)}>"

    def to_json(self) -> dict:
        return {
            "bot": self.bot,
            "top": self.top,
            "arcs": [[list(a), list(b)] for a, b in self.arcs],
        }

    @classmethod
    def from_json(cls, obj) -> "PlanarDiagram":
        if isinstance(obj, str):
            obj = json.loads(obj)
        arcs = [(tuple(a), tuple(b)) for a, b in obj["arcs"]]
        return cls.from_arcs(obj["bot"], obj["top"], arcs)


def _point(bot: int, top: int, end) -> int:
    side, idx = end
    if side == "B" and 1 <= idx <= bot:
        return idx - 1
    if side == "T" and 1 <= idx <= top:
        return bot + idx - 1
    raise DiagramError(f"bad endpoint {end!r}")


def _noncrossing(pairs) -> bool:
    # bracket test on the cyclic order
    n = 2 * len(pairs)
    partner = [0] * n
    for a, b in pairs:
        partner[a], partner[b] = b, a
    stack = []
    for i in range(n):
        if i < partner[i]:
            stack.append(i)
        elif not stack or stack.pop() != partner[i]:
            return False
    return True


@lru_cache(maxsize=None)
def _identity(n: int) -> PlanarDiagram:
    return PlanarDiagram(n, n, tuple(list(range(n, 2 * n)) + list(range(n))))


@lru_cache(maxsize=None)
def _generator(n: int, i: int) -> PlanarDiagram:
    match = list(_identity(n).match)
    a, b = i - 1, i
    match[a], match[b] = b, a
    match[n + a], match[n + b] = n + b, n + a
    return PlanarDiagram(n, n, tuple(match))


def identity(n: int) -> PlanarDiagram:
    return _identity(n)


def generators(n: int) -> list[PlanarDiagram]:
    """e_1, ..., e_{n-1}: together with the identity these generate TL_n."""
    return [_generator(n, i) for i in range(1, n)]


# -- enumeration --------------------------------------------------------------


def _noncrossing_matchings(n: int) -> Iterator[tuple[int, ...]]:
    """All non-crossing perfect matchings of positions 0..n-1 on a circle."""
    if n % 2:
        return
    seq = [-1] * n

    def fill(lo: int, hi: int) -> Iterator[None]:
        if lo >= hi:
            yield
            return
        for k in range(lo + 1, hi, 2):
            seq[lo], seq[k] = k, lo
            for _ in fill(lo + 1, k):
                yield from fill(k + 1, hi)

    for _ in fill(0, n):
        yield tuple(seq)


@lru_cache(maxsize=None)
def _enumerate(bot: int, top: int) -> tuple[PlanarDiagram, ...]:
    n = bot + top
    # cyclic position -> point index
    pos_to_point = list(range(bot)) + [bot + (n - c) - 1 for c in range(bot, n)]
    out = []
    for cyc in _noncrossing_matchings(n):
        match = [0] * n
        for c, d in enumerate(cyc):
            match[pos_to_point[c]] = pos_to_point[d]
        out.append(PlanarDiagram(bot, top, tuple(match)))
    return tuple(out)


def enumerate_diagrams(bot: int, top: int) -> list[PlanarDiagram]:
    """Basis of Hom(bot, top); empty when ``bot + top`` is odd."""
    if bot < 0 or top < 0:
        raise DiagramError("negative point count")
    if (bot + top) % 2:
        return []
    return list(_enumerate(bot, top))


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


# -- composition --------------------------------------------------------------


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass(frozen=True)
class ScaledDiagram:
    """δ^power · diagram."""

    power: int
    diagram: PlanarDiagram

    def coefficient(self, field: Field = GENERIC):
        return field.delta_pow(self.power)


def compose(f: PlanarDiagram, g: PlanarDiagram) -> ScaledDiagram:
    """Glue ``g`` on top of ``f``; closed loops become powers of δ."""
    if f.top != g.bot:
        raise DiagramError(f"non-composable: {f.bot}->{f.top} then {g.bot}->{g.top}")
    return _compose(f, g)


@lru_cache(maxsize=200_000)
def _compose(f: PlanarDiagram, g: PlanarDiagram) -> ScaledDiagram:
    m, n, p = f.bot, f.top, g.top
    off = m + n
    size = off + n + p
    uf = _UnionFind(size)
    for a, b in enumerate(f.match):
        if a < b:
            uf.union(a, b)
    for a, b in enumerate(g.match):
        if a < b:
            uf.union(off + a, off + b)
    for j in range(n):
        uf.union(m + j, off + j)
    # outer points: f's bottom row, then g's top row
    outer = list(range(m)) + list(range(off + n, size))
    root_to_outer: dict[int, list[int]] = {}
    for k, x in enumerate(outer):
        root_to_outer.setdefault(uf.find(x), []).append(k)
    match = [0] * (m + p)
    for a, b in root_to_outer.values():
        match[a], match[b] = b, a
    inner_roots = {uf.find(x) for x in range(m, off)}
    loops = len(inner_roots - root_to_outer.keys())
    return ScaledDiagram(loops, PlanarDiagram(m, p, tuple(match)))


def mul(a: PlanarDiagram, b: PlanarDiagram) -> ScaledDiagram:
    """Algebra product a·b: ``a`` stacked on top of ``b``."""
    return compose(b, a)


def involution(f: PlanarDiagram) -> PlanarDiagram:
    """Vertical flip: Hom(m, n) -> Hom(n, m)."""
    m, n = f.bot, f.top

    def flip(p: int) -> int:
        return p + n if p < m else p - m

    match = [0] * (m + n)
    for p, q in enumerate(f.match):
        match[flip(p)] = flip(q)
    return PlanarDiagram(n, m, tuple(match))


def juxtapose(f: PlanarDiagram, g: PlanarDiagram) -> PlanarDiagram:
    """Place ``g`` to the right of ``f``."""
    return _juxtapose(f, g)


@lru_cache(maxsize=100_000)
def _juxtapose(f: PlanarDiagram, g: PlanarDiagram) -> PlanarDiagram:
    bot = f.bot + g.bot
    top = f.top + g.top

    def from_f(p: int) -> int:
        return p if p < f.bot else bot + (p - f.bot)

    def from_g(p: int) -> int:
        return f.bot + p if p < g.bot else bot + f.top + (p - g.bot)

    match = [0] * (bot + top)
    for p, q in enumerate(f.match):
        match[from_f(p)] = from_f(q)
    for p, q in enumerate(g.match):
        match[from_g(p)] = from_g(q)
    return PlanarDiagram(bot, top, tuple(match))


def all_pairs(diagrams):
    return itertools.product(diagrams, repeat=2)


# -- rendering ----------------------------------------------------------------


def _nest_depths(arcs: list[tuple[int, int]]) -> dict[tuple[int, int], int]:
    """Depth of each arc: 0 for innermost, 1 + max depth of enclosed arcs."""
    depth = {}
    for a, b in sorted(arcs, key=lambda ab: ab[1] - ab[0]):
        inner = [depth[c] for c in depth if a < c[0] and c[1] < b]
        depth[(a, b)] = 1 + max(inner) if inner else 0
    return depth


def _arc_rows(width: int, arcs, legs: list[int], left: str, right: str) -> list[list[str]]:
    """Rows drawing ``arcs`` (column pairs) nested innermost first, with
    vertical bars at columns in ``legs`` on every row."""
    depth = _nest_depths(arcs)
    nrows = 1 + max(depth.values()) if depth else 0
    rows = [[" "] * width for _ in range(nrows)]
    for (a, b), d in depth.items():
        for r in range(d):
            rows[r][a] = rows[r][b] = "|"
        rows[d][a], rows[d][b] = left, right
        for x in range(a + 1, b):
            rows[d][x] = "─"
    for r in rows:
        for x in legs:
            r[x] = "|"
    return rows


def render_ascii(d: PlanarDiagram) -> str:
    """Monospace picture: top row at the top, one column pair per point."""
    width = max(2 * max(d.bot, d.top) - 1, 1)
    top_arcs, bot_arcs, strands = [], [], []
    for p, q in enumerate(d.match):
        if p >= q:
            continue
        if p < d.bot and q < d.bot:
            bot_arcs.append((2 * p, 2 * q))
        elif p >= d.bot and q >= d.bot:
            top_arcs.append((2 * (p - d.bot), 2 * (q - d.bot)))
        else:
            strands.append((2 * (q - d.bot), 2 * p))  # (top column, bottom column)
    strands.sort()

    upper = _arc_rows(width, top_arcs, [t for t, _ in strands], "└", "┘")
    # bottom arcs: innermost nearest the bottom row
    lower = _arc_rows(width, bot_arcs, [b for _, b in strands], "┌", "┐")[::-1]

    middle = []
    if strands:
        pos = [t for t, _ in strands]
        steps = max(abs(t - b) // 2 for t, b in strands)
        for _ in range(max(steps, 1)):
            row = [" "] * width
            for k, (_, b) in enumerate(strands):
                x = pos[k]
                if x < b:
                    row[x + 1] = "\\"
                    pos[k] = x + 2
                elif x > b:
                    row[x - 1] = "/"
                    pos[k] = x - 2
                else:
                    row[x] = "|"
            middle.append(row)
    lines = ["".join(r).rstrip() for r in upper + middle + lower]
    return "\n".join(lines)
