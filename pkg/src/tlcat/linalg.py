"""Exact sparse linear algebra over the coefficient fields.

Matrices are stored row-wise as dictionaries ``{column: value}`` with zero
entries absent. Everything works for both kinds of scalar (``RatFunc`` and
``Fraction``) through ordinary arithmetic operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .coeffring import DeltaPoly, Field, RatFunc


@dataclass
class Matrix:
    nrows: int
    ncols: int
    rows: list[dict] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = [{} for _ in range(self.nrows)]

    @classmethod
    def identity(cls, n: int, field: Field) -> "Matrix":
        return cls(n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "Matrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        rows = [{j: v for j, v in enumerate(r) if v} for r in dense]
        return cls(nrows, ncols, rows)

    def to_dense(self, zero) -> list[list]:
        return [[r.get(j, zero) for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j)

    def get(self, i: int, j: int, zero):
        return self.rows[i].get(j, zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        orows = other.rows
        for r in self.rows:
            acc: dict = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    v = acc.get(j)
                    acc[j] = a * b if v is None else v + a * b
            out.append({j: v for j, v in acc.items() if v})
        return Matrix(self.nrows, other.ncols, out)

    def scale(self, c) -> "Matrix":
        if not c:
            return Matrix(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols, [{j: v * c for j, v in r.items()} for r in self.rows])

    def __add__(self, other: "Matrix") -> "Matrix":
        out = []
        for a, b in zip(self.rows, other.rows):
            acc = dict(a)
            for j, v in b.items():
                w = acc.get(j)
                acc[j] = v if w is None else w + v
            out.append({j: v for j, v in acc.items() if v})
        return Matrix(self.nrows, self.ncols, out)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append(
                    {
                        ja * other.ncols + jb: a * b
                        for ja, a in ra.items()
                        for jb, b in rb.items()
                    }
                )
        return Matrix(self.nrows * other.nrows, self.ncols * other.ncols, out)

    def transpose(self) -> "Matrix":
        out = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[j][i] = v
        return Matrix(self.ncols, self.nrows, out)

    def is_zero(self) -> bool:
        return not any(self.rows)


# -- elimination --------------------------------------------------------------


def _weight(v) -> int:
    """Pivot preference: small means cheap to divide by."""
    if isinstance(v, RatFunc):
        if v.den.coeffs == (1,) and len(v.num.coeffs) == 1:
            c = v.num.coeffs[0]
            return 0 if c in (1, -1) else 1
        return 2 + len(v.num.coeffs) + len(v.den.coeffs)
    if isinstance(v, Fraction):
        return 0 if v in (1, -1) else 1 + v.numerator.bit_length() + v.denominator.bit_length()
    return 0 if v in (1, -1) else 1


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Rows are added one at a time; each pivot row has pivot entry 1 and no other
    row has a nonzero entry in its pivot column.
    """

    def __init__(self, ncols: int, field: Field):
        self.ncols = ncols
        self.field = field
        self.pivots: dict[int, dict] = {}
        # column -> set of pivot columns whose row has a nonzero entry there
        self._occ: dict[int, set] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = {j: v for j, v in row.items() if v}
        for c in [c for c in row if c in self.pivots]:
            v = row.get(c)
            if not v:
                continue
            for j, w in self.pivots[c].items():
                x = row.get(j)
                x = -(v * w) if x is None else x - v * w
                if x:
                    row[j] = x
                else:
                    row.pop(j, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True when it raised the rank."""
        row = self.reduce(row)
        if not row:
            return False
        c = min(row, key=lambda j: (_weight(row[j]), j))
        inv = self.field.one / row[c]
        row = {j: (v * inv if j != c else self.field.one) for j, v in row.items()}
        # clear column c from the existing pivot rows
        for p in list(self._occ.get(c, ())):
            prow = self.pivots[p]
            v = prow.get(c)
            if not v:
                continue
            for j, w in row.items():
                x = prow.get(j)
                x = -(v * w) if x is None else x - v * w
                if x:
                    if j not in prow:
                        self._occ.setdefault(j, set()).add(p)
                    prow[j] = x
                else:
                    prow.pop(j, None)
                    self._occ.get(j, set()).discard(p)
        self._occ.pop(c, None)
        self.pivots[c] = row
        for j in row:
            if j != c:
                self._occ.setdefault(j, set()).add(c)
        return True

    def nullspace(self) -> list[dict]:
        """Basis of the kernel of the accumulated rows, as sparse vectors."""
        one = self.field.one
        free = [j for j in range(self.ncols) if j not in self.pivots]
        basis = []
        for f in free:
            vec = {f: one}
            for p in self._occ.get(f, ()):
                vec[p] = -self.pivots[p][f]
            basis.append(vec)
        return basis


def rank(rows: Iterable[dict], ncols: int, field: Field) -> int:
    ech = Echelon(ncols, field)
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows: Iterable[dict], ncols: int, field: Field) -> list[dict]:
    ech = Echelon(ncols, field)
    for r in rows:
        ech.add(r)
    return ech.nullspace()


def matrix_rank(m: Matrix, field: Field) -> int:
    return rank(m.rows, m.ncols, field)


# -- determinants -------------------------------------------------------------


def bareiss_det(dense: Sequence[Sequence], exact_div: Callable, zero, one):
    """Fraction-free (Bareiss) determinant over an integral domain.

    ``exact_div(a, b)`` must return a / b when b divides a exactly.
    """
    n = len(dense)
    if n == 0:
        return one
    a = [list(r) for r in dense]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = akk * row_i[j] - aik * row_k[j]
                row_i[j] = exact_div(num, prev) if num else zero
            row_i[k] = zero
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def poly_det(dense: Sequence[Sequence[DeltaPoly]]) -> DeltaPoly:
    from .coeffring import ONE_POLY, ZERO_POLY

    return bareiss_det(dense, lambda x, y: x.exact_div(y), ZERO_POLY, ONE_POLY)


def rational_det(dense: Sequence[Sequence]) -> Fraction:
    return bareiss_det(
        [[Fraction(x) for x in r] for r in dense],
        lambda x, y: x / y,
        Fraction(0),
        Fraction(1),
    )
