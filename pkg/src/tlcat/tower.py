"""Restriction and induction along TL_0 ⊂ TL_1 ⊂ TL_2 ⊂ ..., and checks of the
tower axioms on the concrete TL category.

TL_n sits inside TL_{n+1} as ``juxtapose(a, identity(1))``. Labels are cap
counts throughout; a label that falls outside ``0..n//2`` is dropped.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

from .cellmod import act_basis, cap_index, cell_dim, cell_labels, defects, enumerate_caps
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
from .errors import InvariantViolation
from .homsolve import (
    ModuleRep,
    TLAlgebra,
    balanced_tensor,
    cell_rep,
    cell_simples,
    decompose_semisimple,
    hom_dim,
    hom_space,
    induce_rep,
    restrict_tower,
    tensor_module,
)
from .linalg import Echelon, Matrix, matrix_rank


@dataclass(frozen=True)
class SupportSet:
    """Multiset of cell labels at level ``n``."""

    n: int
    labels: tuple[tuple[int, int], ...]  # sorted (label, multiplicity), mult > 0

    @classmethod
    def of(cls, n: int, labels) -> "SupportSet":
        """Build from an iterable of labels or a {label: mult} mapping, clipping."""
        counts = Counter(labels)
        kept = {r: k for r, k in counts.items() if k > 0 and 0 <= 2 * r <= n}
        return cls(n, tuple(sorted(kept.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.labels)

    def __contains__(self, r: int) -> bool:
        return r in self.as_dict()

    def total_dim(self) -> int:
        return sum(k * cell_dim(self.n, r) for r, k in self.labels)

    def __str__(self) -> str:
        inner = ", ".join(f"Δ_{self.n}({r})" + (f"×{k}" if k > 1 else "") for r, k in self.labels)
        return "{" + inner + "}"

    def to_json(self) -> dict:
        return {"n": self.n, "labels": [{"r": r, "mult": k} for r, k in self.labels]}


def _check_label(n: int, p: int) -> None:
    if n < 0 or p < 0 or 2 * p > n:
        raise ValueError(f"invalid cell label {p} for n={n}")


# -- branching rules ------------------------------------------------------------


def res_cell(n: int, p: int) -> SupportSet:
    """Res Δ_n(p) to TL_{n-1}: labels p and p-1."""
    _check_label(n, p)
    if n < 1:
        raise ValueError("nothing to restrict to below TL_0")
    return SupportSet.of(n - 1, [p, p - 1])


def ind_cell(n: int, p: int) -> SupportSet:
    """Ind Δ_n(p) to TL_{n+1}: labels p+1 and p."""
    _check_label(n, p)
    return SupportSet.of(n + 1, [p + 1, p])


def _decomposition(M: ModuleRep, n: int) -> SupportSet:
    mult = decompose_semisimple(M, cell_simples(n, M.field))
    return SupportSet.of(n, {int(lbl.rsplit(":", 1)[1]): k for lbl, k in mult.items()})


def res_cell_solver(n: int, p: int, field: Field = GENERIC) -> SupportSet:
    """Res Δ_n(p) decomposed with the intertwiner solver."""
    _check_label(n, p)
    return _decomposition(restrict_tower(cell_rep(n, p, field)), n - 1)


def ind_cell_solver(n: int, p: int, field: Field = GENERIC) -> SupportSet:
    """TL_{n+1} ⊗_{TL_n} Δ_n(p), built as a quotient and decomposed."""
    _check_label(n, p)
    return _decomposition(induce_rep(cell_rep(n, p, field)), n + 1)


def ind_cell_frobenius(n: int, p: int, field: Field = GENERIC) -> SupportSet:
    """Multiplicity of Δ_{n+1}(r) read as dim hom_{TL_n}(Δ_n(p), Res Δ_{n+1}(r))."""
    _check_label(n, p)
    M = cell_rep(n, p, field)
    mult = {r: hom_dim(M, restrict_tower(cell_rep(n + 1, r, field))) for r in cell_labels(n + 1)}
    return SupportSet.of(n + 1, mult)


def adjunction_check(n: int, p: int, r: int, field: Field = GENERIC) -> tuple[int, int]:
    """(dim hom(Ind Δ_n(p), Δ_{n+1}(r)), dim hom(Δ_n(p), Res Δ_{n+1}(r)))."""
    M = cell_rep(n, p, field)
    N = cell_rep(n + 1, r, field)
    return hom_dim(induce_rep(M), N), hom_dim(M, restrict_tower(N))


# -- Hom(n, m) ⊗ Δ_n and the map α --------------------------------------------------


def _target_label(m: int, n: int, r: int) -> int:
    """Cap label at level m with the same defect count as Δ_n(r)."""
    d = defects(n, r)
    if (m - d) % 2 or d > m:
        raise ValueError(f"Δ_{n}({r}) has {d} defects, impossible at level {m}")
    return (m - d) // 2


def hom_tensor(m: int, n: int, r: int, field: Field = GENERIC):
    """Hom(n, m) ⊗_{TL_n} Δ_n(r) as a balanced tensor product; diagrams have
    n bottom points glued to the cell module and m free top points."""
    _check_label(n, r)
    M = cell_rep(n, r, field)
    return balanced_tensor(enumerate_diagrams(n, m), generators(n), M)


def hom_tensor_rep(m: int, n: int, r: int, field: Field = GENERIC) -> ModuleRep:
    return tensor_module(hom_tensor(m, n, r, field), TLAlgebra(m), f"hom({n},{m})⊗cell:{n}:{r}")


@dataclass
class AlphaReport:
    m: int
    n: int
    r: int
    target_label: int
    tensor_dim: int
    cell_dim: int
    balanced: bool
    equivariant: bool
    image_rank: int
    iso_rank: int

    @property
    def holds(self) -> bool:
        return (
            self.balanced
            and self.equivariant
            and self.tensor_dim == self.cell_dim
            and self.image_rank == self.cell_dim
            and self.iso_rank == self.cell_dim
        )

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "r": self.r,
            "target_label": self.target_label,
            "tensor_dim": self.tensor_dim,
            "cell_dim": self.cell_dim,
            "balanced": self.balanced,
            "equivariant": self.equivariant,
            "image_rank": self.image_rank,
            "iso_rank": self.iso_rank,
            "holds": self.holds,
        }


def alpha_report(m: int, n: int, r: int, field: Field = GENERIC) -> AlphaReport:
    """Check that α(a ⊗ C_X) = a·C_X induces Hom(n, m) ⊗ Δ_n(r) ≅ Δ_m(r')."""
    rt = _target_label(m, n, r)
    src = enumerate_caps(n, r)
    tgt = cap_index(m, rt)
    dimM = len(src)
    T = hom_tensor(m, n, r, field)

    def alpha(col: int) -> dict:
        d, v = divmod(col, dimM)
        res = act_basis(T.basis[d], src[v])
        if res is None:
            return {}
        loops, y = res
        return {tgt[y]: field.delta_pow(loops)}

    # α kills every relation: d·g ⊗ v - d ⊗ g·v
    ncols = len(T.basis) * dimM
    balanced = True
    for rel in T.relations.pivots.values():
        acc: dict = {}
        for col, c in rel.items():
            for k, v in alpha(col).items():
                acc[k] = acc.get(k, field.zero) + c * v
        if any(acc.values()):
            balanced = False
            break

    image = Echelon(len(tgt), field)
    for col in range(ncols):
        image.add(alpha(col))
    on_free = Echelon(len(tgt), field)
    for col in T.free:
        on_free.add(alpha(col))

    # TL_m-equivariance on the quotient basis
    Q = tensor_module(T, TLAlgebra(m), "hom⊗cell")
    C = cell_rep(m, rt, field)
    A = _alpha_matrix(T, alpha, len(tgt))
    equivariant = all(C.action(g) @ A == A @ Q.action(g) for g in generators(m))
    return AlphaReport(
        m, n, r, rt, T.dim, len(tgt), balanced, equivariant, image.rank, on_free.rank
    )


def _alpha_matrix(T, alpha, nrows: int) -> Matrix:
    rows = [{} for _ in range(nrows)]
    for jj, col in enumerate(T.free):
        for k, v in alpha(col).items():
            rows[k][jj] = v
    return Matrix(nrows, T.dim, rows)


def alpha_iso_check(m: int, n: int, r: int, field: Field = GENERIC) -> bool:
    return alpha_report(m, n, r, field).holds


def eq1_route(n: int, p: int, field: Field = GENERIC, check: bool = True) -> SupportSet:
    """Ind Δ_n(p) computed as Res (Hom(n, n+2) ⊗_{TL_n} Δ_n(p)) to TL_{n+1}.

    With ``check`` the result is compared with :func:`ind_cell`.
    """
    _check_label(n, p)
    X = hom_tensor_rep(n + 2, n, p, field)
    got = _decomposition(restrict_tower(X), n + 1)
    if check and got != ind_cell(n, p):
        raise InvariantViolation(
            f"induction via Hom(n, n+2) gives {got}, expected {ind_cell(n, p)}",
            witness={"n": n, "p": p, "got": got.to_json()},
        )
    return got


# -- Morita context -----------------------------------------------------------------


def morita_rho_rank(m: int, n: int, field: Field = GENERIC) -> tuple[int, bool]:
    """Rank of composition Hom(m, n) ⊗ Hom(n, m) -> End(m) for m ≤ n.

    Every product of two diagrams is a scaled basis diagram, so the rank is the
    number of distinct diagrams reached with nonzero coefficient. Surjective
    iff the rank equals Catalan(m).
    """
    if m > n or (n - m) % 2:
        raise ValueError("need m ≤ n with n - m even")
    reached = set()
    ups = enumerate_diagrams(m, n)
    downs = enumerate_diagrams(n, m)
    for f in ups:
        for g in downs:
            sd = mul(g, f)
            if field.delta_pow(sd.power):
                reached.add(sd.diagram)
    rank = len(reached)
    return rank, rank == catalan(m)


# -- tower axioms ---------------------------------------------------------------------


@dataclass
class AxiomReport:
    axiom: str
    params: dict
    passed: bool
    detail: dict = dc_field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "params": self.params, "pass": self.passed, **self.detail}


def bend(d: PlanarDiagram) -> PlanarDiagram:
    """Move the rightmost bottom point of an (n-1, n-1)-diagram to the top-right,
    giving an (n-2 -> n)-diagram. The cyclic boundary order is unchanged."""
    k = d.bot
    if d.top != k or k < 1:
        raise ValueError("bend needs a square diagram with at least one strand")
    bot, top = k - 1, k + 1

    def new(p: int) -> int:
        if p < k - 1:
            return p
        if p == k - 1:
            return bot + top - 1
        return p - 1

    match = [0] * (bot + top)
    for p, q in enumerate(d.match):
        match[new(p)] = new(q)
    return PlanarDiagram(bot, top, tuple(match))


def check_A1(n: int) -> AxiomReport:
    """TL_n ⊂ TL_{n+1} is a unital algebra map on basis pairs."""
    idr = identity(1)
    unital = juxtapose(identity(n), idr) == identity(n + 1)
    witness = None
    basis = enumerate_diagrams(n, n)
    for a in basis:
        for b in basis:
            sd = mul(a, b)
            se = mul(juxtapose(a, idr), juxtapose(b, idr))
            if se.power != sd.power or se.diagram != juxtapose(sd.diagram, idr):
                witness = [a.to_json(), b.to_json()]
                break
        if witness:
            break
    return AxiomReport("A1", {"n": n}, unital and witness is None, {"unital": unital, "witness": witness})


def check_A2(n: int) -> AxiomReport:
    """Hom(n-2, n) ≅ TL_{n-1} as TL_{n-1}-TL_{n-2} bimodules, via :func:`bend`."""
    if n < 2:
        raise ValueError("A2 needs n ≥ 2")
    src = enumerate_diagrams(n - 1, n - 1)
    tgt = enumerate_diagrams(n - 2, n)
    image = {bend(d) for d in src}
    bijective = len(image) == len(src) == len(tgt) == catalan(n - 1) and image == set(tgt)
    idr = identity(1)
    failures = []
    for d in src:
        bd = bend(d)
        for g in generators(n - 1):
            lhs = mul(g, d)
            rhs = mul(juxtapose(g, idr), bd)
            if lhs.power != rhs.power or bend(lhs.diagram) != rhs.diagram:
                failures.append({"side": "left", "diagram": d.to_json(), "generator": g.to_json()})
        for g in generators(n - 2):
            lhs = mul(d, juxtapose(g, idr))
            rhs = mul(bd, g)
            if lhs.power != rhs.power or bend(lhs.diagram) != rhs.diagram:
                failures.append({"side": "right", "diagram": d.to_json(), "generator": g.to_json()})
    return AxiomReport(
        "A2",
        {"n": n},
        bijective and not failures,
        {"size": len(tgt), "catalan": catalan(n - 1), "bijective": bijective, "failures": failures},
    )


def check_A3(m: int, n: int, lam: int, field: Field = GENERIC) -> AxiomReport:
    """``lam`` is a cap label at level m, so its defect count is d = m - 2·lam
    and the label first appears at level d. Res Δ_n of that label must only
    involve labels with d - 1 or d + 1 defects; likewise for Ind."""
    _check_label(m, lam)
    if m > n or (n - m) % 2:
        raise ValueError("need m ≤ n with n - m even")
    d = defects(m, lam)
    r = (n - d) // 2
    allowed = {d - 1, d + 1}
    res = res_cell_solver(n, r, field) if n >= 1 else SupportSet.of(0, [])
    ind = ind_cell_solver(n, r, field)
    res_defects = sorted({defects(n - 1, x) for x, _ in res.labels})
    ind_defects = sorted({defects(n + 1, x) for x, _ in ind.labels})
    ok = set(res_defects) <= allowed and set(ind_defects) <= allowed
    return AxiomReport(
        "A3",
        {"m": m, "n": n, "lam": lam},
        ok,
        {
            "defects": d,
            "res_support": res.to_json(),
            "ind_support": ind.to_json(),
            "res_defects": res_defects,
            "ind_defects": ind_defects,
        },
    )


def check_A4(n: int, lam: int, field: Field = GENERIC) -> AxiomReport:
    """Find μ at level n-1 with Ind Δ_{n-1}(μ) -> Δ_n(lam) onto."""
    _check_label(n, lam)
    if n < 1:
        raise ValueError("A4 needs n ≥ 1")
    target = cell_rep(n, lam, field)
    for mu in cell_labels(n - 1):
        if lam not in ind_cell(n - 1, mu):
            continue
        H = hom_space(induce_rep(cell_rep(n - 1, mu, field)), target)
        onto = any(matrix_rank(h, field) == target.dim for h in H.basis)
        if onto:
            return AxiomReport(
                "A4",
                {"n": n, "lam": lam},
                True,
                {"witness_mu": mu, "hom_dim": H.dim, "new_label": lam == 0},
            )
    raise InvariantViolation("no witness", witness={"n": n, "lam": lam})


def tower_axioms(max_n: int, field: Field = GENERIC) -> dict:
    """Run every tower check for levels up to ``max_n``; JSON-ready."""
    reports: list[AxiomReport] = []
    for n in range(0, max_n + 1):
        reports.append(check_A1(n))
    for n in range(2, max_n + 1):
        reports.append(check_A2(n))
    for n in range(0, max_n + 1):
        for m in range(n % 2, n + 1, 2):
            for lam in cell_labels(m):
                reports.append(check_A3(m, n, lam, field))
    for n in range(1, max_n + 1):
        for lam in cell_labels(n):
            try:
                reports.append(check_A4(n, lam, field))
            except InvariantViolation as exc:
                reports.append(AxiomReport("A4", {"n": n, "lam": lam}, False, {"error": str(exc)}))
    for n in range(0, max_n + 1):
        for m in range(n % 2, n + 1, 2):
            rank, surj = morita_rho_rank(m, n, field)
            reports.append(
                AxiomReport("morita_rho", {"m": m, "n": n}, surj, {"rank": rank, "catalan": catalan(m)})
            )
    return {
        "max_n": max_n,
        "mode": field.label,
        "pass": all(reports),
        "reports": [r.to_json() for r in reports],
    }
