"""Dense exact linear algebra over the rationals.

Everything in the package reduces to rank / kernel / solve questions for
small dense matrices, so this module keeps the arithmetic deliberately
boring: `fractions.Fraction` entries, Gauss-Jordan elimination with
first-nonzero pivoting, and canonical outputs.

Canonical choices, relied on by golden tests elsewhere:

* `rref` scans columns left to right and picks the first nonzero entry in
  each column as pivot, so equal inputs give equal reduced forms.
* `kernel_basis` parametrizes by the free columns in ascending order; the
  basis vector for free column f has entry 1 in slot f and zeros in the
  other free slots.
* `solve` returns the particular solution with every free variable zero.

>>> m = RatMatrix.from_rows([[1, -1]])
>>> kernel_basis(m)
[[Fraction(1, 1), Fraction(1, 1)]]
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class RatMatrix:
    """Immutable-by-convention dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("matrix data does not match declared shape")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RatMatrix":
        data = [[_frac(x) for x in row] for row in rows]
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [[_ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        data = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
        return cls(n, n, data)

    @classmethod
    def diagonal(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        data = [[_frac(values[i]) if i == j else _ZERO for j in range(n)] for i in range(n)]
        return cls(n, n, data)

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> list:
        return list(self.data[i])

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        data = [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return RatMatrix(self.cols, self.rows, data)

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch for product: {self.shape()} @ {other.shape()}"
            )
        out = [[_ZERO] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            srow = self.data[i]
            orow = out[i]
            for k in range(self.cols):
                a = srow[k]
                if not a:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b:
                        orow[j] += a * b
        return RatMatrix(self.rows, other.cols, out)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape() != other.shape():
            raise ValueError("shape mismatch for sum")
        data = [
            [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        return RatMatrix(self.rows, self.cols, data)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape() != other.shape():
            raise ValueError("shape mismatch for difference")
        data = [
            [self.data[i][j] - other.data[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        return RatMatrix(self.rows, self.cols, data)

    def scale(self, c) -> "RatMatrix":
        c = _frac(c)
        return RatMatrix(
            self.rows, self.cols, [[c * x for x in row] for row in self.data]
        )

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product, returning a plain list of Fractions."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != column count {self.cols}")
        out = []
        for i in range(self.rows):
            srow = self.data[i]
            acc = _ZERO
            for j, v in enumerate(vec):
                if v:
                    acc += srow[j] * _frac(v)
            out.append(acc)
        return out

    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __repr__(self):
        if self.rows * self.cols > 36:
            return f"RatMatrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"RatMatrix[{body}]"


class RrefResult(NamedTuple):
    matrix: RatMatrix
    rank: int
    pivot_cols: tuple


def rref(m: RatMatrix) -> RrefResult:
    """Reduced row echelon form with deterministic first-nonzero pivoting."""
    data = [list(row) for row in m.data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if data[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            data[r], data[pr] = data[pr], data[r]
        pv = data[r][c]
        if pv != _ONE:
            inv = _ONE / pv
            data[r] = [x * inv for x in data[r]]
        prow = data[r]
        for i in range(nrows):
            if i == r:
                continue
            f = data[i][c]
            if f:
                irow = data[i]
                for j in range(c, ncols):
                    if prow[j]:
                        irow[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return RrefResult(RatMatrix(nrows, ncols, data), len(pivots), tuple(pivots))


def rank(m: RatMatrix) -> int:
    return rref(m).rank


def kernel_basis(m: RatMatrix) -> list:
    """Canonical basis of the right kernel, one vector per free column."""
    red, _, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            coef = red.data[i][f]
            if coef:
                v[p] = -coef
        basis.append(v)
    return basis


def solve(a: RatMatrix, b: Sequence) -> Optional[list]:
    """One exact solution of a x = b (free variables zero), or None."""
    if len(b) != a.rows:
        raise ValueError(f"rhs length {len(b)} != row count {a.rows}")
    aug = RatMatrix.from_rows(
        [list(a.data[i]) + [_frac(b[i])] for i in range(a.rows)]
        if a.rows
        else []
    )
    if a.rows == 0:
        return [_ZERO] * a.cols
    red, _, pivots = rref(aug)
    if a.cols in pivots:
        return None
    x = [_ZERO] * a.cols
    for i, p in enumerate(pivots):
        x[p] = red.data[i][a.cols]
    return x


def vec_add(u: Sequence, v: Sequence) -> list:
    return [_frac(a) + _frac(b) for a, b in zip(u, v)]

def vec_sub(u: Sequence, v: Sequence) -> list:
    return [_frac(a) - _frac(b) for a, b in zip(u, v)]

def vec_scale(c, v: Sequence) -> list:
    c = _frac(c)
    return [c * _frac(x) for x in v]

def vec_dot(u: Sequence, v: Sequence) -> Fraction:
    acc = _ZERO
    for a, b in zip(u, v):
        if a and b:
            acc += _frac(a) * _frac(b)
    return acc

def is_zero_vec(v: Sequence) -> bool:
    return all(not x for x in v)
