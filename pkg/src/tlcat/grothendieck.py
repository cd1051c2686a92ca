"""Grothendieck groups of the TL tower at generic δ.

Classes [Δ_n(r)] are keyed ``(n, r)``. Product comes from induction along
TL_m ⊗ TL_n ⊂ TL_{m+n} (juxtaposition), coproduct from restriction.

A walled cap diagram is an (m+n, r)-cap diagram with a wall after point m.
Each cap is a left cap, a right cap, or a through string crossing the wall;
the counts form the triple (s, l_m, l_n).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Optional

from .cellmod import CapDiagram, act_basis, glue, cell_dim, cell_labels, enumerate_caps, render_caps
from .coeffring import GENERIC, Field
from .diagrams import PlanarDiagram, enumerate_diagrams, generators, identity, juxtapose
from .errors import InvariantViolation
from .homsolve import cell_rep, hom_dim, restrict_rep, tensor_rep


# -- G0 vectors and tensors -----------------------------------------------------------

Key = tuple[int, int]  # (grade, label)


def _clean(terms: dict) -> dict:
    return {k: v for k, v in sorted(terms.items()) if v}


@dataclass(frozen=True)
class G0Vector:
    """Integer combination of classes [Δ_n(r)], stored as sorted ((n, r), k) pairs."""

    terms: tuple[tuple[Key, int], ...] = ()

    @classmethod
    def of(cls, terms) -> "G0Vector":
        acc: dict = defaultdict(int)
        items = terms.items() if isinstance(terms, dict) else terms
        for (n, r), k in items:
            if r < 0 or 2 * r > n:
                raise ValueError(f"no cell module Δ_{n}({r})")
            acc[(n, r)] += k
        return cls(tuple(_clean(acc).items()))

    @classmethod
    def cell(cls, n: int, r: int, mult: int = 1) -> "G0Vector":
        return cls.of({(n, r): mult})

    def as_dict(self) -> dict[Key, int]:
        return dict(self.terms)

    def __getitem__(self, key: Key) -> int:
        return self.as_dict().get(key, 0)

    def __add__(self, other: "G0Vector") -> "G0Vector":
        acc = defaultdict(int, self.as_dict())
        for k, v in other.terms:
            acc[k] += v
        return G0Vector(tuple(_clean(acc).items()))

    def __sub__(self, other: "G0Vector") -> "G0Vector":
        return self + other.scale(-1)

    def scale(self, c: int) -> "G0Vector":
        return G0Vector(tuple((k, v * c) for k, v in self.terms if v * c))

    def grades(self) -> set[int]:
        return {n for (n, _), _ in self.terms}

    def dim(self) -> int:
        return sum(k * cell_dim(n, r) for (n, r), k in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (n, r), k in self.terms:
            parts.append(("" if k == 1 else f"{k}") + f"[Δ_{n}({r})]")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"terms": [{"grade": n, "label": r, "mult": k} for (n, r), k in self.terms]}


@dataclass(frozen=True)
class G0Tensor:
    """Element of G0 ⊗ ... ⊗ G0: sorted (tuple of keys, multiplicity) pairs."""

    terms: tuple[tuple[tuple[Key, ...], int], ...] = ()

    @classmethod
    def of(cls, terms: dict) -> "G0Tensor":
        return cls(tuple(_clean(terms).items()))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "G0Tensor") -> "G0Tensor":
        acc = defaultdict(int, self.as_dict())
        for k, v in other.terms:
            acc[k] += v
        return G0Tensor.of(acc)

    def __sub__(self, other: "G0Tensor") -> "G0Tensor":
        return self + G0Tensor(tuple((k, -v) for k, v in other.terms))

    def component(self, grades: tuple[int, ...]) -> "G0Tensor":
        return G0Tensor(tuple((k, v) for k, v in self.terms if tuple(g for g, _ in k) == grades))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for keys, k in self.terms:
            body = "⊗".join(f"[Δ_{n}({r})]" for n, r in keys)
            parts.append(("" if k == 1 else f"{k}") + body)
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"factors": [{"grade": n, "label": r} for n, r in keys], "mult": k}
                for keys, k in self.terms
            ]
        }


# -- walled cap diagrams ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class TripleIndex:
    s: int
    l_m: int
    l_n: int

    @property
    def r(self) -> int:
        return self.s + self.l_m + self.l_n

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.s, self.l_m, self.l_n)

    def __str__(self) -> str:
        return f"({self.s},{self.l_m},{self.l_n})"


class FiltrationIndexOrder:
    """Lexicographic: s increasing, then l_m and l_n each decreasing."""

    @staticmethod
    def key(t: TripleIndex) -> tuple[int, int, int]:
        return (t.s, -t.l_m, -t.l_n)

    @classmethod
    def le(cls, a: TripleIndex, b: TripleIndex) -> bool:
        return cls.key(a) <= cls.key(b)

    @classmethod
    def sort(cls, triples: Iterable[TripleIndex]) -> list[TripleIndex]:
        return sorted(triples, key=cls.key)


@dataclass(frozen=True)
class WalledCapDiagram:
    m: int
    n: int
    caps: CapDiagram

    def __post_init__(self):
        if self.caps.n != self.m + self.n:
            raise ValueError("cap diagram size differs from m + n")

    @property
    def triple(self) -> TripleIndex:
        s = lm = ln = 0
        for i, j in self.caps.caps:
            if j <= self.m:
                lm += 1
            elif i > self.m:
                ln += 1
            else:
                s += 1
        return TripleIndex(s, lm, ln)

    def render(self) -> str:
        return render_caps(self.caps, wall=self.m)

    def to_json(self) -> dict:
        t = self.triple
        return {"m": self.m, "n": self.n, "caps": [list(c) for c in self.caps.caps], "triple": list(t.as_tuple())}


def enumerate_walled(m: int, n: int, r: int) -> list[tuple[WalledCapDiagram, TripleIndex]]:
    out = []
    for x in enumerate_caps(m + n, r):
        w = WalledCapDiagram(m, n, x)
        out.append((w, w.triple))
    return out


@lru_cache(maxsize=None)
def walled_triples(m: int, n: int, r: int) -> dict[TripleIndex, int]:
    """Number of (m|n, r)-walled cap diagrams carrying each triple."""
    counts: dict[TripleIndex, int] = defaultdict(int)
    for _, t in enumerate_walled(m, n, r):
        counts[t] += 1
    return dict(counts)


def walled_action(
    a: PlanarDiagram,
    b: PlanarDiagram,
    w: WalledCapDiagram,
    field: Field = GENERIC,
    truncate: bool = True,
) -> dict:
    """(a ⊗ b) · w as {WalledCapDiagram: coefficient}.

    With ``truncate`` (the module action) a result with fewer defects is zero.
    Without it the plain concatenation is returned, possibly with more caps.
    """
    if a.bot != a.top or b.bot != b.top or a.bot != w.m or b.bot != w.n:
        raise ValueError("arity mismatch between (a, b) and the walled diagram")
    if not truncate:
        loops, y, _ = glue(juxtapose(a, b), w.caps)
        return {WalledCapDiagram(w.m, w.n, y): field.delta_pow(loops)}
    res = act_basis(juxtapose(a, b), w.caps)
    if res is None:
        return {}
    loops, y = res
    return {WalledCapDiagram(w.m, w.n, y): field.delta_pow(loops)}


def sigma_add_through(u: CapDiagram, v: CapDiagram, s: int) -> WalledCapDiagram:
    """Juxtapose u and v, then join the s rightmost defects of u to the s
    leftmost defects of v with nested strings."""
    du, dv = u.defects, v.defects
    if s < 0 or s > len(du) or s > len(dv):
        raise ValueError("cannot add through strings")
    m = u.n
    caps = list(u.caps) + [(i + m, j + m) for i, j in v.caps]
    for k in range(s):
        caps.append((du[len(du) - 1 - k], dv[k] + m))
    return WalledCapDiagram(m, v.n, CapDiagram.from_caps(m + v.n, caps))


def split_walled(w: WalledCapDiagram) -> tuple[CapDiagram, CapDiagram, int]:
    """Inverse of :func:`sigma_add_through`: cut the through strings at the wall."""
    m = w.m
    left, right, s = [], [], 0
    for i, j in w.caps.caps:
        if j <= m:
            left.append((i, j))
        elif i > m:
            right.append((i - m, j - m))
        else:
            s += 1
    return CapDiagram.from_caps(m, left), CapDiagram.from_caps(w.n, right), s


@dataclass(frozen=True)
class SeriesLayer:
    triple: TripleIndex
    layer_dim: int
    diagrams: tuple[WalledCapDiagram, ...]

    def to_json(self) -> dict:
        return {"triple": list(self.triple.as_tuple()), "dim": self.layer_dim}


def composition_series(m: int, n: int, r: int) -> list[SeriesLayer]:
    """Layers W(t)/W(t') of Res Δ_{m+n}(r) to TL_m ⊗ TL_n, bottom first."""
    if r < 0 or 2 * r > m + n:
        raise ValueError(f"invalid cell label {r} for {m + n} points")
    by_triple: dict[TripleIndex, list[WalledCapDiagram]] = defaultdict(list)
    for w, t in enumerate_walled(m, n, r):
        by_triple[t].append(w)
    layers = []
    for t in FiltrationIndexOrder.sort(by_triple):
        dim = cell_dim(m, t.l_m) * cell_dim(n, t.l_n)
        if dim != len(by_triple[t]):
            raise InvariantViolation(
                f"layer {t} has {len(by_triple[t])} diagrams, expected {dim}",
                witness={"m": m, "n": n, "r": r, "triple": t.as_tuple()},
            )
        layers.append(SeriesLayer(t, dim, tuple(by_triple[t])))
    return layers


# -- structure constants ------------------------------------------------------------


def _labels_valid(m: int, n: int, p: int, q: int, r: int) -> bool:
    return 0 <= 2 * p <= m and 0 <= 2 * q <= n and 0 <= 2 * r <= m + n


def struct_const_closed(m: int, n: int, p: int, q: int, r: int) -> int:
    if not _labels_valid(m, n, p, q, r):
        return 0
    s = r - p - q
    return int(s >= 0 and m - s >= 2 * p and n - s >= 2 * q)


def struct_const_printed(m: int, n: int, p: int, q: int, r: int) -> int:
    """The variant with m - s ≥ 2q in place of n - s ≥ 2q; known to be wrong
    (m=1, n=3, p=0, q=1, r=1). Kept as a mutation for the verifier."""
    if not _labels_valid(m, n, p, q, r):
        return 0
    s = r - p - q
    return int(s >= 0 and m - s >= 2 * p and m - s >= 2 * q)


def struct_const_walled(m: int, n: int, p: int, q: int, r: int) -> int:
    if not _labels_valid(m, n, p, q, r):
        return 0
    s = r - p - q
    return int(s >= 0 and TripleIndex(s, p, q) in walled_triples(m, n, r))


def struct_const_hom(m: int, n: int, p: int, q: int, r: int, field: Field = GENERIC) -> int:
    """dim hom over TL_m ⊗ TL_n from Δ_m(p) ⊗ Δ_n(q) to Res Δ_{m+n}(r)."""
    if not _labels_valid(m, n, p, q, r):
        return 0
    src = tensor_rep(cell_rep(m, p, field), cell_rep(n, q, field))
    tgt = restrict_rep(cell_rep(m + n, r, field), m, n)
    return hom_dim(src, tgt)


METHODS = {
    "closed": struct_const_closed,
    "walled": struct_const_walled,
    "hom": struct_const_hom,
    "printed": struct_const_printed,
}


def struct_const(m: int, n: int, p: int, q: int, r: int, method: str = "walled") -> int:
    """a^{(m|n)}_{(p,q,r)}. ``method="all"`` runs closed, walled and hom and
    raises :class:`InvariantViolation` if they differ."""
    if method == "all":
        vals = {k: METHODS[k](m, n, p, q, r) for k in ("closed", "walled", "hom")}
        if len(set(vals.values())) != 1:
            raise InvariantViolation(
                "structure-constant methods disagree",
                witness={"m": m, "n": n, "p": p, "q": q, "r": r, **vals},
            )
        return vals["walled"]
    try:
        fn = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    return fn(m, n, p, q, r)


# -- product, coproduct, unit, counit ---------------------------------------------------


def unit() -> G0Vector:
    return G0Vector.cell(0, 0)


def counit(x: G0Vector) -> int:
    return x[(0, 0)]


def product(x: G0Vector, y: G0Vector, method: str = "walled") -> G0Vector:
    acc: dict = defaultdict(int)
    for (m, p), a in x.terms:
        for (n, q), b in y.terms:
            for r in cell_labels(m + n):
                c = struct_const(m, n, p, q, r, method)
                if c:
                    acc[(m + n, r)] += a * b * c
    return G0Vector.of(acc)


def restriction_terms(n: int, r: int, k: int) -> dict[tuple[Key, Key], int]:
    """[Res Δ_n(r)] to TL_k ⊗ TL_{n-k}: one term per realizable triple."""
    out = {}
    for t in walled_triples(k, n - k, r):
        out[((k, t.l_m), (n - k, t.l_n))] = 1
    return out


def coproduct(x: G0Vector) -> G0Tensor:
    acc: dict = defaultdict(int)
    for (n, r), a in x.terms:
        for k in range(n + 1):
            for key, c in restriction_terms(n, r, k).items():
                acc[key] += a * c
    return G0Tensor.of(acc)


def coproduct_component(x: G0Vector, k: int) -> G0Tensor:
    acc: dict = defaultdict(int)
    for (n, r), a in x.terms:
        if 0 <= k <= n:
            for key, c in restriction_terms(n, r, k).items():
                acc[key] += a * c
    return G0Tensor.of(acc)


def _tensor_product(x: G0Tensor, y: G0Tensor, method: str = "walled") -> G0Tensor:
    """Factorwise product (a ⊗ b)(c ⊗ d) = ac ⊗ bd."""
    acc: dict = defaultdict(int)
    for keys_x, a in x.terms:
        for keys_y, b in y.terms:
            factors = [product(G0Vector.cell(*kx), G0Vector.cell(*ky), method) for kx, ky in zip(keys_x, keys_y)]
            for combo in iproduct(*(f.terms for f in factors)):
                mult = a * b
                for _, c in combo:
                    mult *= c
                acc[tuple(k for k, _ in combo)] += mult
    return G0Tensor.of(acc)


def all_classes(max_grade: int) -> list[G0Vector]:
    return [G0Vector.cell(n, r) for n in range(max_grade + 1) for r in cell_labels(n)]


def check_associativity(max_grade: int = 4) -> Optional[tuple]:
    """First triple (x, y, z) with (xy)z ≠ x(yz), or None."""
    cls = all_classes(max_grade)
    for x in cls:
        for y in cls:
            xy = product(x, y)
            for z in cls:
                if product(xy, z) != product(x, product(y, z)):
                    return (x, y, z)
    return None


def _apply_coproduct(t: G0Tensor, slot: int) -> G0Tensor:
    acc: dict = defaultdict(int)
    for keys, a in t.terms:
        for (k1, k2), c in coproduct(G0Vector.cell(*keys[slot])).terms:
            new = keys[:slot] + (k1, k2) + keys[slot + 1 :]
            acc[new] += a * c
    return G0Tensor.of(acc)


def check_coassociativity(max_grade: int = 4) -> Optional[G0Vector]:
    """First class x with (Δ ⊗ 1)Δx ≠ (1 ⊗ Δ)Δx, or None."""
    for x in all_classes(max_grade):
        cx = coproduct(x)
        if _apply_coproduct(cx, 0) != _apply_coproduct(cx, 1):
            return x
    return None


def check_unit_counit(max_grade: int = 4) -> Optional[G0Vector]:
    """First class failing x·1 = 1·x = x or (ε ⊗ 1)Δx = (1 ⊗ ε)Δx = x."""
    one = unit()
    for x in all_classes(max_grade):
        if product(x, one) != x or product(one, x) != x:
            return x
        left: dict = defaultdict(int)
        right: dict = defaultdict(int)
        for (k1, k2), c in coproduct(x).terms:
            if k1 == (0, 0):
                left[k2] += c
            if k2 == (0, 0):
                right[k1] += c
        if G0Vector.of(left) != x or G0Vector.of(right) != x:
            return x
    return None


def restriction_dimension_check(m: int, n: int, r: int, method: str = "closed") -> tuple[int, int]:
    """(Σ_{p,q} a·dim Δ_m(p)·dim Δ_n(q), dim Δ_{m+n}(r))."""
    total = 0
    for p in cell_labels(m):
        for q in cell_labels(n):
            if struct_const(m, n, p, q, r, method):
                total += cell_dim(m, p) * cell_dim(n, q)
    return total, cell_dim(m + n, r)


# -- the failure of the compatibility of product and coproduct ------------------------


@dataclass
class MackeyResult:
    n: int
    p: int
    k: int
    left: G0Tensor
    right: G0Tensor

    @property
    def equal(self) -> bool:
        return self.left == self.right

    @property
    def difference(self) -> G0Tensor:
        return self.right - self.left

    def pattern(self, side: str) -> tuple[int, int, int]:
        """Coefficients of Δ_n(p+1), Δ_n(p), Δ_n(p-1) after dropping the Δ_1(0) factor."""
        t = self.left if side == "left" else self.right
        flat: dict = defaultdict(int)
        for keys, c in t.terms:
            rest = list(keys)
            if (1, 0) not in rest:
                continue
            rest.remove((1, 0))
            ((g, lab),) = rest
            if g == self.n:
                flat[lab] += c
        return (flat[self.p + 1], flat[self.p], flat[self.p - 1])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "k": self.k,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "left_pattern": list(self.pattern("left")),
            "right_pattern": list(self.pattern("right")),
            "difference": self.difference.to_json(),
            "equal": self.equal,
        }


def mackey_sides(M: G0Vector, N: G0Vector, k: int) -> tuple[G0Tensor, G0Tensor]:
    """Both sides of the compatibility between product and the (k, ·) part of
    the coproduct, for homogeneous M and N.

    left  = Res_{k, m+n-k} (M · N)
    right = Σ_{t+s=k} (Res_{t, m-t} M) ⋆ (Res_{s, n-s} N), with ⋆ the factorwise product.
    """
    (m,) = M.grades()
    (n,) = N.grades()
    left = coproduct_component(product(M, N), k)
    right = G0Tensor()
    for t in range(0, min(k, m) + 1):
        s = k - t
        if s > n:
            continue
        right = right + _tensor_product(coproduct_component(M, t), coproduct_component(N, s))
    return left, right


def mackey_check(n: int, p: int, k: Optional[int] = None) -> MackeyResult:
    """Compare the two sides for M = Δ_n(p), N = Δ_1(0); ``k`` defaults to n."""
    if p < 0 or 2 * p > n:
        raise ValueError(f"invalid cell label {p} for n={n}")
    k = n if k is None else k
    left, right = mackey_sides(G0Vector.cell(n, p), G0Vector.cell(1, 0), k)
    return MackeyResult(n, p, k, left, right)


# -- checks on the walled action ----------------------------------------------------------


def _tensor_basis_pairs(m: int, n: int) -> list[tuple[PlanarDiagram, PlanarDiagram]]:
    return [(a, b) for a in enumerate_diagrams(m, m) for b in enumerate_diagrams(n, n)]


def check_monotonicity(m: int, n: int, r: int) -> Optional[dict]:
    """Every (a ⊗ b)·w has s' ≤ s, l_m' ≥ l_m, l_n' ≥ l_n. Returns a witness or None."""
    pairs = _tensor_basis_pairs(m, n)
    for w, t in enumerate_walled(m, n, r):
        for a, b in pairs:
            for w2 in walled_action(a, b, w):
                t2 = w2.triple
                if not (t2.s <= t.s and t2.l_m >= t.l_m and t2.l_n >= t.l_n):
                    return {"walled": w.to_json(), "a": a.to_json(), "b": b.to_json(), "result": w2.to_json()}
    return None


def check_filtration_closure(m: int, n: int, r: int) -> Optional[dict]:
    """W(t) is stable: images never have a larger index in the filtration order."""
    pairs = _tensor_basis_pairs(m, n)
    for w, t in enumerate_walled(m, n, r):
        for a, b in pairs:
            for w2 in walled_action(a, b, w):
                if not FiltrationIndexOrder.le(w2.triple, t):
                    return {"walled": w.to_json(), "a": a.to_json(), "b": b.to_json(), "result": w2.to_json()}
    return None


def check_layer_isomorphism(m: int, n: int, r: int, field: Field = GENERIC) -> Optional[dict]:
    """σ: Δ_m(l_m) ⊗ Δ_n(l_n) -> layer (s, l_m, l_n) is bijective and
    intertwines the generators of TL_m ⊗ TL_n (modulo lower layers)."""
    idm, idn = identity(m), identity(n)
    gens = [(g, idn) for g in generators(m)] + [(idm, g) for g in generators(n)]
    for t, count in walled_triples(m, n, r).items():
        us = enumerate_caps(m, t.l_m)
        vs = enumerate_caps(n, t.l_n)
        image = {sigma_add_through(u, v, t.s) for u in us for v in vs}
        layer = {w for w, t2 in enumerate_walled(m, n, r) if t2 == t}
        if image != layer or len(image) != len(us) * len(vs):
            return {"triple": t.as_tuple(), "reason": "sigma is not a bijection onto the layer"}
        for u in us:
            for v in vs:
                w = sigma_add_through(u, v, t.s)
                for a, b in gens:
                    got = {x: c for x, c in walled_action(a, b, w, field).items() if x.triple == t}
                    want = {}
                    ru = act_basis(a, u)
                    rv = act_basis(b, v)
                    if ru is not None and rv is not None:
                        want[sigma_add_through(ru[1], rv[1], t.s)] = field.delta_pow(ru[0] + rv[0])
                    if got != want:
                        return {
                            "triple": t.as_tuple(),
                            "u": u.to_json(),
                            "v": v.to_json(),
                            "a": a.to_json(),
                            "b": b.to_json(),
                        }
    return None
