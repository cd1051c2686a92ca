"""Module representations of TL algebras and exact intertwiner solving.

A representation stores its action lazily: ``rep.action(a)`` builds the
matrix of a basis element on first use. Matrices act on column vectors, so
column ``j`` of ``rep.action(a)`` is the image of basis vector ``j``.

Hom spaces are computed from the generators of the algebra only. An
intertwiner for a generating set intertwines every product of generators, so
this is the same space as the one cut out by the full basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Callable, Hashable, Optional

from .cellmod import act_basis, cap_index, cell_dim, enumerate_caps
from .coeffring import GENERIC, Field
from .diagrams import (
    PlanarDiagram,
    catalan,
    enumerate_diagrams,
    generators,
    identity,
    juxtapose,
    mul,
)
from .linalg import Echelon, Matrix


class HomSolveError(ValueError):
    pass


# -- algebras -----------------------------------------------------------------


@dataclass(frozen=True)
class TLAlgebra:
    """TL_n = End(n) with its diagram basis."""

    n: int

    @property
    def key(self) -> Hashable:
        return ("TL", self.n)

    @property
    def dim(self) -> int:
        return catalan(self.n)

    def basis(self) -> list[PlanarDiagram]:
        return enumerate_diagrams(self.n, self.n)

    def generators(self) -> list[PlanarDiagram]:
        return generators(self.n)

    @property
    def one(self) -> PlanarDiagram:
        return identity(self.n)

    def mul(self, a: PlanarDiagram, b: PlanarDiagram) -> tuple[int, PlanarDiagram]:
        sd = mul(a, b)
        return sd.power, sd.diagram

    def __str__(self) -> str:
        return f"TL_{self.n}"


@dataclass(frozen=True)
class TensorAlgebra:
    """A ⊗ B with basis the pairs (a, b) and componentwise product."""

    left: "Algebra"
    right: "Algebra"

    @property
    def key(self) -> Hashable:
        return ("tensor", self.left.key, self.right.key)

    @property
    def dim(self) -> int:
        return self.left.dim * self.right.dim

    def basis(self) -> list[tuple]:
        return [(a, b) for a in self.left.basis() for b in self.right.basis()]

    def generators(self) -> list[tuple]:
        lo, ro = self.left.one, self.right.one
        return [(g, ro) for g in self.left.generators()] + [
            (lo, g) for g in self.right.generators()
        ]

    @property
    def one(self) -> tuple:
        return (self.left.one, self.right.one)

    def mul(self, x: tuple, y: tuple) -> tuple[int, tuple]:
        pa, a = self.left.mul(x[0], y[0])
        pb, b = self.right.mul(x[1], y[1])
        return pa + pb, (a, b)

    def __str__(self) -> str:
        return f"{self.left}⊗{self.right}"


Algebra = TLAlgebra | TensorAlgebra


def _trivial(alg: Algebra) -> bool:
    return isinstance(alg, TLAlgebra) and alg.n <= 1


def tensor_algebra(left: Algebra, right: Algebra) -> Algebra:
    """A ⊗ B, collapsing a factor TL_0 or TL_1 (both equal to the ground field)."""
    if _trivial(right):
        return left
    if _trivial(left):
        return right
    return TensorAlgebra(left, right)


# -- representations ----------------------------------------------------------


@dataclass(eq=False)
class ModuleRep:
    algebra: Algebra
    dim: int
    field: Field
    label: str
    # builds the matrix of one basis element of ``algebra``
    build: Callable[[object], Matrix] = dc_field(repr=False)
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def action(self, a) -> Matrix:
        m = self._cache.get(a)
        if m is None:
            m = self._cache[a] = self.build(a)
        return m

    def generator_matrices(self) -> list[Matrix]:
        return [self.action(g) for g in self.algebra.generators()]

    def __str__(self) -> str:
        return self.label


def cell_rep(n: int, r: int, field: Field = GENERIC) -> ModuleRep:
    """Δ_n(r) as a TL_n-module."""
    basis = enumerate_caps(n, r)
    if not basis:
        raise HomSolveError(f"no cell module Δ_{n}({r})")
    index = cap_index(n, r)

    def build(a: PlanarDiagram) -> Matrix:
        rows = [{} for _ in basis]
        for j, x in enumerate(basis):
            res = act_basis(a, x)
            if res is not None:
                loops, y = res
                rows[index[y]][j] = field.delta_pow(loops)
        return Matrix(len(basis), len(basis), rows)

    return ModuleRep(TLAlgebra(n), len(basis), field, f"cell:{n}:{r}", build)


def reg_rep(n: int, field: Field = GENERIC) -> ModuleRep:
    """TL_n acting on itself by left multiplication."""
    basis = enumerate_diagrams(n, n)
    index = {d: i for i, d in enumerate(basis)}

    def build(a: PlanarDiagram) -> Matrix:
        rows = [{} for _ in basis]
        for j, d in enumerate(basis):
            sd = mul(a, d)
            rows[index[sd.diagram]][j] = field.delta_pow(sd.power)
        return Matrix(len(basis), len(basis), rows)

    return ModuleRep(TLAlgebra(n), len(basis), field, f"reg:{n}", build)


def tensor_rep(M: ModuleRep, N: ModuleRep) -> ModuleRep:
    """M ⊗ N over A ⊗ B; basis index ``i * dim N + j``."""
    if M.field != N.field:
        raise HomSolveError("modules over different coefficient fields")
    alg = tensor_algebra(M.algebra, N.algebra)
    one_m = M.algebra.one
    one_n = N.algebra.one

    if alg is M.algebra:
        def split(a):
            return a, one_n
    elif alg is N.algebra:
        def split(a):
            return one_m, a
    else:
        def split(a):
            return a

    def build(a) -> Matrix:
        x, y = split(a)
        return M.action(x).kron(N.action(y))

    return ModuleRep(alg, M.dim * N.dim, M.field, f"tensor({M.label},{N.label})", build)


def restrict_rep(M: ModuleRep, k: int, l: int) -> ModuleRep:
    """Res to TL_k ⊗ TL_l, embedded in TL_{k+l} by juxtaposition."""
    if not isinstance(M.algebra, TLAlgebra):
        raise HomSolveError("restriction needs a TL_n-module")
    if k < 0 or l < 0 or k + l != M.algebra.n:
        raise HomSolveError(f"cannot restrict a TL_{M.algebra.n}-module to TL_{k}⊗TL_{l}")
    A, B = TLAlgebra(k), TLAlgebra(l)
    alg = tensor_algebra(A, B)
    if alg is A:
        idl = identity(l)

        def embed(a):
            return juxtapose(a, idl)
    elif alg is B:
        idk = identity(k)

        def embed(b):
            return juxtapose(idk, b)
    else:
        def embed(ab):
            return juxtapose(ab[0], ab[1])

    return ModuleRep(alg, M.dim, M.field, f"res({M.label},{k},{l})", lambda a: M.action(embed(a)))


def restrict_tower(M: ModuleRep) -> ModuleRep:
    """Res from TL_n to TL_{n-1} (strand added on the right)."""
    return restrict_rep(M, M.algebra.n - 1, 1)


@dataclass(eq=False)
class BalancedTensor:
    """B ⊗_A M for a space B spanned by diagrams with a right A-action.

    The tensor product is the quotient of span{d ⊗ v} by d·g ⊗ v - d ⊗ g·v for
    the generators g of A. Pure tensors are indexed ``d_index * dim M + v``;
    the quotient basis is the set of non-pivot columns of the relation echelon.
    """

    basis: list[PlanarDiagram]
    module: ModuleRep
    relations: Echelon
    free: list[int]

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, vec: dict) -> dict:
        """Normal form of a vector of pure tensors, supported on free columns."""
        return self.relations.reduce(vec)


def balanced_tensor(
    basis: list[PlanarDiagram], right_gens: list[PlanarDiagram], M: ModuleRep
) -> BalancedTensor:
    """Build B ⊗_A M where ``right_gens[i]`` is the diagram by which the i-th
    generator of M's algebra multiplies B on the right."""
    field = M.field
    dimM = M.dim
    index = {d: i for i, d in enumerate(basis)}
    ech = Echelon(len(basis) * dimM, field)
    for g, gd in zip(M.algebra.generators(), right_gens):
        cols = M.action(g).transpose().rows  # cols[j] = g · v_j
        for d in basis:
            sd = mul(d, gd)
            base_l = index[sd.diagram] * dimM
            base_r = index[d] * dimM
            c = field.delta_pow(sd.power)
            for j in range(dimM):
                row = {base_l + j: c}
                for i, v in cols[j].items():
                    key = base_r + i
                    row[key] = row.get(key, field.zero) - v
                ech.add(row)
    free = [j for j in range(len(basis) * dimM) if j not in ech.pivots]
    return BalancedTensor(basis, M, ech, free)


def tensor_module(T: BalancedTensor, algebra: TLAlgebra, label: str) -> ModuleRep:
    """The quotient ``T`` as a module for diagrams multiplying B on the left."""
    field = T.module.field
    dimM = T.module.dim
    index = {d: i for i, d in enumerate(T.basis)}
    findex = {c: i for i, c in enumerate(T.free)}

    def build(a: PlanarDiagram) -> Matrix:
        rows = [{} for _ in T.free]
        for jj, col in enumerate(T.free):
            d, v = divmod(col, dimM)
            sd = mul(a, T.basis[d])
            image = T.reduce({index[sd.diagram] * dimM + v: field.delta_pow(sd.power)})
            for c, val in image.items():
                rows[findex[c]][jj] = val
        return Matrix(T.dim, T.dim, rows)

    return ModuleRep(algebra, T.dim, field, label, build)


def induce_rep(M: ModuleRep) -> ModuleRep:
    """Ind from TL_n to TL_{n+1}, i.e. TL_{n+1} ⊗_{TL_n} M."""
    if not isinstance(M.algebra, TLAlgebra):
        raise HomSolveError("induction needs a TL_n-module")
    n = M.algebra.n
    idr = identity(1)
    T = balanced_tensor(
        enumerate_diagrams(n + 1, n + 1), [juxtapose(g, idr) for g in generators(n)], M
    )
    return tensor_module(T, TLAlgebra(n + 1), f"ind({M.label})")


# -- hom spaces ---------------------------------------------------------------


@dataclass
class HomSpace:
    source: ModuleRep
    target: ModuleRep
    basis: list[Matrix]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _check_compatible(M: ModuleRep, N: ModuleRep) -> None:
    if M.algebra.key != N.algebra.key:
        raise HomSolveError(f"modules over different algebras: {M.algebra} and {N.algebra}")
    if M.field != N.field:
        raise HomSolveError("modules over different coefficient fields")


def _intertwiner_system(M: ModuleRep, N: ModuleRep) -> Echelon:
    # unknown H[i][j] (i < dim N, j < dim M) sits in column i * dim M + j
    dm, dn = M.dim, N.dim
    ech = Echelon(dm * dn, M.field)
    for g in M.algebra.generators():
        A = M.action(g)
        B = N.action(g)
        At = A.transpose().rows  # At[j] = column j of A
        for i in range(dn):
            brow = B.rows[i]
            for j in range(dm):
                row: dict = {}
                for k, v in brow.items():  # (B H)[i][j] = Σ_k B[i][k] H[k][j]
                    row[k * dm + j] = v
                for k, v in At[j].items():  # (H A)[i][j] = Σ_k H[i][k] A[k][j]
                    key = i * dm + k
                    row[key] = row.get(key, M.field.zero) - v
                if any(row.values()):
                    ech.add(row)
    return ech


def hom_space(M: ModuleRep, N: ModuleRep) -> HomSpace:
    """All module maps M -> N, as dim N × dim M matrices."""
    _check_compatible(M, N)
    dm, dn = M.dim, N.dim
    basis = []
    for vec in _intertwiner_system(M, N).nullspace():
        rows = [{} for _ in range(dn)]
        for c, v in vec.items():
            i, j = divmod(c, dm)
            rows[i][j] = v
        basis.append(Matrix(dn, dm, rows))
    return HomSpace(M, N, basis)


def hom_dim(M: ModuleRep, N: ModuleRep) -> int:
    _check_compatible(M, N)
    return M.dim * N.dim - _intertwiner_system(M, N).rank


def is_intertwiner(H: Matrix, M: ModuleRep, N: ModuleRep, elements=None) -> bool:
    """Check ρ_N(a) H = H ρ_M(a) for the given elements (default: full basis)."""
    elements = M.algebra.basis() if elements is None else elements
    return all(N.action(a) @ H == H @ M.action(a) for a in elements)


def audit_action(M: ModuleRep, elements=None) -> Optional[tuple]:
    """Return a pair (a, b) with ρ(ab) ≠ ρ(a)ρ(b), or None. Also checks ρ(1) = 1."""
    alg = M.algebra
    if M.action(alg.one) != Matrix.identity(M.dim, M.field):
        return (alg.one, alg.one)
    elements = alg.basis() if elements is None else elements
    for a in elements:
        for b in elements:
            p, ab = alg.mul(a, b)
            lhs = M.action(ab).scale(M.field.delta_pow(p))
            if lhs != M.action(a) @ M.action(b):
                return (a, b)
    return None


def decompose_semisimple(M: ModuleRep, simples: list[ModuleRep]) -> dict[str, int]:
    """Nonzero multiplicity of each simple in M, read off as dim hom(simple, M).

    Raises when the multiplicities do not account for all of M.
    """
    mult = {S.label: hom_dim(S, M) for S in simples}
    total = sum(mult[S.label] * S.dim for S in simples)
    if total != M.dim:
        raise HomSolveError("not semisimple or incomplete simple list")
    return {k: v for k, v in mult.items() if v}


def cell_simples(n: int, field: Field = GENERIC) -> list[ModuleRep]:
    return [cell_rep(n, r, field) for r in range(n // 2 + 1)]


# -- module spec mini-language ---------------------------------------------------

_TOKEN = re.compile(r"\s*([A-Za-z]+|\d+|[(),:])")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise HomSolveError(f"bad module spec near {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_spec(text: str, field: Field = GENERIC) -> ModuleRep:
    """Parse ``cell:n:r``, ``reg:n``, ``tensor(S1,S2)`` or ``res(S,k,l)``."""
    toks = _tokenize(text)
    pos = 0

    def take(expected: Optional[str] = None) -> str:
        nonlocal pos
        if pos >= len(toks):
            raise HomSolveError(f"unexpected end of module spec {text!r}")
        t = toks[pos]
        if expected is not None and t != expected:
            raise HomSolveError(f"expected {expected!r} in module spec {text!r}, got {t!r}")
        pos += 1
        return t

    def number() -> int:
        t = take()
        if not t.isdigit():
            raise HomSolveError(f"expected a number in module spec {text!r}, got {t!r}")
        return int(t)

    def expr() -> ModuleRep:
        head = take()
        if head == "cell":
            take(":")
            n = number()
            take(":")
            r = number()
            if 2 * r > n:
                raise HomSolveError(f"cell label {r} out of range for n={n}")
            return cell_rep(n, r, field)
        if head == "reg":
            take(":")
            return reg_rep(number(), field)
        if head == "tensor":
            take("(")
            a = expr()
            take(",")
            b = expr()
            take(")")
            return tensor_rep(a, b)
        if head == "res":
            take("(")
            a = expr()
            take(",")
            k = number()
            take(",")
            l = number()
            take(")")
            return restrict_rep(a, k, l)
        raise HomSolveError(f"unknown module constructor {head!r}")

    rep = expr()
    if pos != len(toks):
        raise HomSolveError(f"trailing input in module spec {text!r}")
    return rep


__all__ = [
    "HomSolveError",
    "TLAlgebra",
    "TensorAlgebra",
    "tensor_algebra",
    "ModuleRep",
    "cell_rep",
    "reg_rep",
    "tensor_rep",
    "restrict_rep",
    "restrict_tower",
    "induce_rep",
    "BalancedTensor",
    "balanced_tensor",
    "tensor_module",
    "HomSpace",
    "hom_space",
    "hom_dim",
    "is_intertwiner",
    "audit_action",
    "decompose_semisimple",
    "cell_simples",
    "parse_spec",
    "cell_dim",
]
