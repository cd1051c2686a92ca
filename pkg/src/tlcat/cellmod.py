"""Cell modules of TL_n on cap diagrams, the cell bilinear form and its Gram data.

Cell labels are cap counts: Δ_n(r) has the (n, r)-cap diagrams as basis, with
``n - 2r`` defects. A cap diagram is drawn with its points on top and caps
hanging below, so it sits underneath a diagram acting on it. More caps means a
lower cell; the action truncates any result whose cap count rises.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Optional

from .coeffring import (
    GENERIC,
    ONE_POLY,
    ZERO_POLY,
    DeltaPoly,
    Field,
    GenericField,
    SpecializedField,
    make_field,
    scalar_to_json,
    specialize,
)
from .diagrams import DiagramError, PlanarDiagram, _arc_rows
from .linalg import Matrix, matrix_rank, poly_det, rational_det


@dataclass(frozen=True)
class CapDiagram:
    n: int
    partner: tuple[int, ...]  # 0-based partner index, -1 for a defect

    def __post_init__(self):
        if len(self.partner) != self.n:
            raise DiagramError("wrong number of points")
        stack = []
        depth_defect = False
        for i, j in enumerate(self.partner):
            if j == -1:
                if stack:
                    depth_defect = True
                continue
            if not 0 <= j < self.n or j == i or self.partner[j] != i:
                raise DiagramError(f"bad cap at point {i + 1}")
            if i < j:
                stack.append(j)
            elif not stack or stack.pop() != i:
                raise DiagramError("caps cross")
        if depth_defect:
            raise DiagramError("a defect is enclosed by a cap")

    @classmethod
    def from_caps(cls, n: int, caps) -> "CapDiagram":
        partner = [-1] * n
        for i, j in caps:
            i, j = sorted((i, j))
            if not 1 <= i < j <= n or partner[i - 1] != -1 or partner[j - 1] != -1:
                raise DiagramError(f"bad cap {(i, j)}")
            partner[i - 1], partner[j - 1] = j - 1, i - 1
        return cls(n, tuple(partner))

    @classmethod
    def all_defects(cls, n: int) -> "CapDiagram":
        return cls(n, (-1,) * n)

    @property
    def caps(self) -> tuple[tuple[int, int], ...]:
        return tuple((i + 1, j + 1) for i, j in enumerate(self.partner) if i < j)

    @property
    def r(self) -> int:
        return sum(1 for i, j in enumerate(self.partner) if i < j)

    @property
    def defects(self) -> tuple[int, ...]:
        """1-based positions of the defects."""
        return tuple(i + 1 for i, j in enumerate(self.partner) if j == -1)

    def sort_key(self):
        return self.caps

    def __str__(self) -> str:
        return "{" + ",".join(f"{{{i},{j}}}" for i, j in self.caps) + "}" + f"/{self.n}"

    def to_json(self) -> dict:
        return {"n": self.n, "caps": [list(c) for c in self.caps]}


def defects(n: int, r: int) -> int:
    """Through-strand label of the cap label r."""
    return n - 2 * r


def cell_dim(n: int, r: int) -> int:
    """C(n, r) - C(n, r-1), or 0 when 2r > n."""
    if r < 0 or 2 * r > n:
        return 0
    return comb(n, r) - (comb(n, r - 1) if r > 0 else 0)


def cell_labels(n: int) -> range:
    return range(n // 2 + 1)


def _partial_matchings(n: int, r: int) -> Iterator[tuple[int, ...]]:
    # defects only at nesting depth 0
    partner = [-1] * n

    def place(i: int, open_stack: list, caps_left: int) -> Iterator[None]:
        remaining = n - i
        if i == n:
            if not open_stack and caps_left == 0:
                yield
            return
        # close the innermost open cap
        if open_stack:
            j = open_stack.pop()
            partner[i], partner[j] = j, i
            yield from place(i + 1, open_stack, caps_left)
            partner[i] = partner[j] = -1
            open_stack.append(j)
        # open a new cap
        if caps_left > 0 and remaining - 1 >= len(open_stack) + 1:
            open_stack.append(i)
            yield from place(i + 1, open_stack, caps_left - 1)
            open_stack.pop()
        # defect, only outside every cap
        if not open_stack:
            yield from place(i + 1, open_stack, caps_left)

    for _ in place(0, [], r):
        yield tuple(partner)


@lru_cache(maxsize=None)
def _caps(n: int, r: int) -> tuple[CapDiagram, ...]:
    out = [CapDiagram(n, p) for p in _partial_matchings(n, r)]
    out.sort(key=CapDiagram.sort_key)
    return tuple(out)


def enumerate_caps(n: int, r: int) -> list[CapDiagram]:
    """Basis of Δ_n(r) in canonical order (lexicographic on sorted caps)."""
    if r < 0 or 2 * r > n:
        return []
    return list(_caps(n, r))


@lru_cache(maxsize=None)
def cap_index(n: int, r: int) -> dict[CapDiagram, int]:
    return {x: i for i, x in enumerate(_caps(n, r))}


# -- action -------------------------------------------------------------------


def act_basis(a: PlanarDiagram, x: CapDiagram) -> Optional[tuple[int, CapDiagram]]:
    """Glue ``x`` under ``a``. Returns (loops, result) or None when the defect
    count drops (the result lies in a lower cell).

    ``a`` may be rectangular (bot = x.n, any top); the defect count is kept.
    """
    if a.bot != x.n:
        raise DiagramError(f"arity mismatch: diagram has {a.bot} bottom points, cap diagram {x.n}")
    return _act(a, x)


def glue(a: PlanarDiagram, x: CapDiagram) -> tuple[int, CapDiagram, int]:
    """Glue ``x`` under ``a`` with no truncation.

    Returns (loops, top half, number of defect pairs of x joined to each other).
    A nonzero last entry means the result lies in a lower cell.
    """
    if a.bot != x.n:
        raise DiagramError(f"arity mismatch: diagram has {a.bot} bottom points, cap diagram {x.n}")
    return _glue(a, x)


@lru_cache(maxsize=500_000)
def _glue(a: PlanarDiagram, x: CapDiagram) -> tuple[int, CapDiagram, int]:
    bot, top = a.bot, a.top
    am, xp = a.match, x.partner
    visited = [False] * bot
    partner = [-1] * top
    for t in range(top):
        if partner[t] != -1:
            continue
        p = am[bot + t]
        while True:
            if p >= bot:  # back on the top row
                q = p - bot
                partner[t], partner[q] = q, t
                break
            visited[p] = True
            j = xp[p]
            if j == -1:  # ran into a defect of x
                partner[t] = -2
                break
            visited[j] = True
            p = am[j]
    # defects of x not reached from the top are joined to each other
    joined = 0
    for i in range(bot):
        if xp[i] == -1 and not visited[i]:
            joined += 1
            p = i
            while True:
                visited[p] = True
                q = am[p]
                visited[q] = True
                if xp[q] == -1:
                    break
                visited[xp[q]] = True
                p = xp[q]
    loops = 0
    for i in range(bot):
        if visited[i]:
            continue
        # a closed loop alternating arcs of a and caps of x
        loops += 1
        p = i
        while not visited[p]:
            visited[p] = True
            q = am[p]
            visited[q] = True
            p = xp[q]
    result = tuple(-1 if v == -2 else v for v in partner)
    return loops, CapDiagram(top, result), joined


def _act(a: PlanarDiagram, x: CapDiagram) -> Optional[tuple[int, CapDiagram]]:
    loops, y, joined = _glue(a, x)
    if joined:
        return None
    return loops, y


@dataclass
class CellVector:
    n: int
    r: int
    coeffs: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}
        for k in self.coeffs:
            if k.n != self.n or k.r != self.r:
                raise ValueError(f"basis element {k} not in Δ_{self.n}({self.r})")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "CellVector") -> "CellVector":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return CellVector(self.n, self.r, out)

    def scale(self, c) -> "CellVector":
        return CellVector(self.n, self.r, {k: v * c for k, v in self.coeffs.items()})


def act(a: PlanarDiagram, x: CapDiagram, field: Field = GENERIC) -> CellVector:
    """a · C_x in Δ_n(r), computed modulo lower cells."""
    if a.bot != a.top:
        raise DiagramError("act needs an endomorphism diagram")
    res = act_basis(a, x)
    if res is None:
        return CellVector(x.n, x.r)
    loops, y = res
    return CellVector(x.n, x.r, {y: field.delta_pow(loops)})


def act_vector(a: PlanarDiagram, v: CellVector, field: Field = GENERIC) -> CellVector:
    out = CellVector(v.n, v.r)
    for x, c in v.coeffs.items():
        out = out + act(a, x, field).scale(c)
    return out


# -- cellular basis -----------------------------------------------------------


def assemble(S: CapDiagram, T: CapDiagram) -> PlanarDiagram:
    """C_{S,T}: ``S`` is the top half, ``T`` the (flipped) bottom half, defects
    joined in order. Then C_{S,T} · C_U = φ(T, U) C_S."""
    ds, dt = S.defects, T.defects
    if len(ds) != len(dt):
        raise DiagramError("defect counts differ")
    bot, top = T.n, S.n
    match = [0] * (bot + top)
    for i, j in enumerate(T.partner):
        if j >= 0:
            match[i] = j
    for i, j in enumerate(S.partner):
        if j >= 0:
            match[bot + i] = bot + j
    for b, t in zip(dt, ds):
        match[b - 1] = bot + t - 1
        match[bot + t - 1] = b - 1
    return PlanarDiagram(bot, top, tuple(match))


def decompose(d: PlanarDiagram) -> tuple[CapDiagram, CapDiagram, int]:
    """Inverse of :func:`assemble`: returns (S, T, r) with r the cap count of S."""
    bot = d.bot
    tpart = tuple(j if j < bot else -1 for j in d.match[:bot])
    spart = tuple(j - bot if j >= bot else -1 for j in d.match[bot:])
    S = CapDiagram(d.top, spart)
    T = CapDiagram(bot, tpart)
    return S, T, S.r


# -- bilinear form ------------------------------------------------------------


def gram_pair_power(T: CapDiagram, X: CapDiagram) -> Optional[int]:
    """Loop count of the pairing, or None when the pairing vanishes."""
    if T.n != X.n:
        raise DiagramError("cap diagrams of different sizes")
    if T.r != X.r:
        raise DiagramError("cap diagrams with different cap counts")
    return _pair(T, X)


@lru_cache(maxsize=500_000)
def _pair(T: CapDiagram, X: CapDiagram) -> Optional[int]:
    n = T.n
    tp, xp = T.partner, X.partner
    seen = [False] * n
    through = 0
    # walk from each defect of T (flipped above X)
    for i in range(n):
        if tp[i] != -1 or seen[i]:
            continue
        p = i
        seen[p] = True
        while True:
            q = xp[p]
            if q == -1:  # reached a defect of X
                through += 1
                break
            seen[q] = True
            p = tp[q]
            if p == -1:  # came back up into another defect of T
                break
            seen[p] = True
    if through != n - 2 * T.r:
        return None
    loops = 0
    for i in range(n):
        if seen[i]:
            continue
        loops += 1
        p = i
        while not seen[p]:
            seen[p] = True
            q = xp[p]
            seen[q] = True
            p = tp[q]
    return loops


def gram_pair(T: CapDiagram, X: CapDiagram, field: Field = GENERIC):
    """φ(T, X): δ^loops when every defect passes through, else 0."""
    k = gram_pair_power(T, X)
    return field.zero if k is None else field.delta_pow(k)


def gram_matrix(n: int, r: int, field: Field = GENERIC) -> Matrix:
    basis = enumerate_caps(n, r)
    rows = []
    for T in basis:
        row = {}
        for j, X in enumerate(basis):
            k = _pair(T, X)
            if k is not None:
                row[j] = field.delta_pow(k)
        rows.append(row)
    return Matrix(len(basis), len(basis), rows)


def _gram_poly_dense(n: int, r: int) -> list[list[DeltaPoly]]:
    basis = enumerate_caps(n, r)
    out = []
    for T in basis:
        row = []
        for X in basis:
            k = _pair(T, X)
            row.append(ZERO_POLY if k is None else DeltaPoly.monomial(k))
        out.append(row)
    return out


@lru_cache(maxsize=None)
def gram_det(n: int, r: int) -> DeltaPoly:
    """Determinant of the Gram matrix of Δ_n(r) as a polynomial in δ."""
    if r < 0 or 2 * r > n:
        raise ValueError(f"no cell Δ_{n}({r})")
    return poly_det(_gram_poly_dense(n, r))


def gram_det_at(n: int, r: int, q) -> Fraction:
    """Determinant of the Gram matrix specialized at δ = q (computed directly)."""
    field = SpecializedField(q)
    return rational_det(gram_matrix(n, r, field).to_dense(field.zero))


def radical_dim(n: int, r: int, q) -> int:
    """Corank of the Gram matrix of Δ_n(r) at δ = q."""
    field = SpecializedField(q)
    g = gram_matrix(n, r, field)
    return g.nrows - matrix_rank(g, field)


# -- certificates -------------------------------------------------------------


@dataclass
class Certificate:
    property: str
    n: int
    mode: str
    holds: bool
    entries: list[dict]
    witness: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "n": self.n,
            "mode": self.mode,
            "holds": self.holds,
            "witness": self.witness,
            "entries": self.entries,
        }


def _mode_field(mode) -> Field:
    if isinstance(mode, (GenericField, SpecializedField)):
        return mode
    return make_field(mode)


def is_semisimple(n: int, mode=None) -> Certificate:
    """TL_n is semisimple iff every Gram determinant is nonzero."""
    field = _mode_field(mode)
    entries = []
    witness = None
    for r in cell_labels(n):
        if field.generic:
            det = gram_det(n, r)
            nonzero = not det.is_zero()
            entries.append({"r": r, "det": str(det), "nonzero": nonzero})
        else:
            det = gram_det_at(n, r, field.q)
            nonzero = det != 0
            entries.append({"r": r, "det": str(det), "nonzero": nonzero})
        if not nonzero and witness is None:
            witness = r
    return Certificate("semisimple", n, field.label, witness is None, entries, witness)


def is_quasi_hereditary(n: int, mode=None) -> Certificate:
    """TL_n is quasi-hereditary iff no cell form vanishes identically."""
    field = _mode_field(mode)
    entries = []
    witness = None
    for r in cell_labels(n):
        g = gram_matrix(n, r, field)
        nonzero = not g.is_zero()
        entries.append({"r": r, "form_nonzero": nonzero})
        if not nonzero and witness is None:
            witness = r
    return Certificate("quasi_hereditary", n, field.label, witness is None, entries, witness)


def gram_to_json(n: int, r: int, field: Field = GENERIC) -> dict:
    g = gram_matrix(n, r, field)
    return {
        "n": n,
        "r": r,
        "mode": field.label,
        "basis": [x.to_json()["caps"] for x in enumerate_caps(n, r)],
        "matrix": [[scalar_to_json(v) for v in row] for row in g.to_dense(field.zero)],
    }


def render_caps(x: CapDiagram, wall: Optional[int] = None) -> str:
    """Points as 'o' on the first line, caps hanging below, defects as '|'.

    ``wall`` draws a dotted separator after that many points."""

    def col(i: int) -> int:
        c = 2 * i
        if wall is not None and i >= wall:
            c += 2
        return c

    width = col(x.n - 1) + 1 if x.n else 1
    head = [" "] * width
    for i in range(x.n):
        head[col(i)] = "o"
    arcs = [(col(i - 1), col(j - 1)) for i, j in x.caps]
    legs = [col(i - 1) for i in x.defects]
    rows = _arc_rows(width, arcs, legs, "└", "┘")
    if not rows and legs:
        rows = [[" "] * width]
        for c in legs:
            rows[0][c] = "|"
    lines = [head] + rows
    if wall is not None:
        wc = col(wall) - 2 + 1
        for r in lines:
            if r[wc] == " ":
                r[wc] = "┊"
    return "\n".join("".join(r).rstrip() for r in lines)
