"""Exact integer linear algebra: matrices over Z, Smith normal form, kernels.

Everything here is exact.  Matrix entries are Python ints, rational
intermediates are fractions.Fraction, and no floating point appears
anywhere.  Two independent computational routes are exposed on purpose:
rank/nullity via Fraction Gaussian elimination, and structure via Smith
normal form.  Higher layers cross-check one against the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotUnimodular

Vector = tuple[int, ...]


def _as_int(x: object) -> int:
    # bool is an int subclass; reject it so True/False never sneak into matrices
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"matrix entries must be plain ints, got {x!r}")
    return x


class IntMatrix:
    """Immutable matrix with integer entries, stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]]):
        rows = tuple(tuple(_as_int(x) for x in row) for row in data)
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if width == 0:
            raise ValueError("matrix needs at least one column")
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self._data = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self._data

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        body = ", ".join(repr(list(r)) for r in self._data)
        return f"IntMatrix([{body}])"

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._need_same_shape(other)
        return IntMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._data, other._data)
            ]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._need_same_shape(other)
        return IntMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._data, other._data)
            ]
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self._data])

    def __mul__(self, other: "IntMatrix | int") -> "IntMatrix":
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            cols = [other.column(j) for j in range(other.cols)]
            return IntMatrix(
                [[_dot(r, c) for c in cols] for r in self._data]
            )
        if isinstance(other, bool) or not isinstance(other, int):
            return NotImplemented
        return IntMatrix([[a * other for a in r] for r in self._data])

    def __rmul__(self, other: int) -> "IntMatrix":
        if isinstance(other, bool) or not isinstance(other, int):
            return NotImplemented
        return IntMatrix([[other * a for a in r] for r in self._data])

    def __pow__(self, n: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices have powers")
        if n < 0:
            return self.inverse_unimodular() ** (-n)
        result = IntMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def apply(self, vec: Sequence[int]) -> Vector:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != {self.cols} columns")
        return tuple(_dot(r, vec) for r in self._data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def trace(self) -> int:
        if self.rows != self.cols:
            raise ValueError("trace needs a square matrix")
        return sum(self._data[i][i] for i in range(self.rows))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination.

        All intermediate divisions are exact, so the result is an exact int
        even for matrices whose naive elimination would overflow floats.
        """
        if self.rows != self.cols:
            raise ValueError("determinant needs a square matrix")
        n = self.rows
        a = [list(r) for r in self._data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self._data[i][j] == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a matrix in GL(n, Z).

        Raises NotUnimodular when the determinant is not +1 or -1.  The
        inverse is computed with exact rational elimination and then
        certified integral; the certification cannot fail for a genuinely
        unimodular input, it guards the implementation.
        """
        if self.rows != self.cols:
            raise NotUnimodular("only square matrices can be unimodular")
        d = self.det()
        if d not in (1, -1):
            raise NotUnimodular(f"determinant {d} is not +1 or -1")
        n = self.rows
        aug = [
            [Fraction(self._data[i][j]) for j in range(n)]
            + [Fraction(1 if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            pivot = next(i for i in range(col, n) if aug[i][col] != 0)
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col] != 0:
                    factor = aug[i][col]
                    aug[i] = [x - factor * y for x, y in zip(aug[i], aug[col])]
        inv = [[x for x in row[n:]] for row in aug]
        assert all(x.denominator == 1 for row in inv for x in row)
        return IntMatrix([[int(x) for x in row] for row in inv])

    def _need_same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class SmithForm:
    """Decomposition U * M * V = D with U, V unimodular and D diagonal.

    The diagonal of D is nonnegative and each entry divides the next.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return tuple(
            self.d[i, i] for i in range(min(self.d.rows, self.d.cols))
        )


@dataclass(frozen=True)
class CokernelStructure:
    """Cokernel of an integer matrix acting on column vectors.

    free_rank counts Z summands, torsion lists the invariant factors
    greater than 1 in divisibility order.
    """

    free_rank: int
    torsion: tuple[int, ...]


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form with a deterministic pivot rule.

    The pivot is always the entry of minimal nonzero absolute value in the
    remaining block, ties broken by lowest (row, column), so repeated runs
    produce identical transforms.  Row and column reductions use least
    nonnegative remainders.  The returned triple always satisfies
    u * m * v == d, re-checked before returning.
    """
    a = [list(r) for r in m.entries()]
    nrows, ncols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, k: int) -> None:
        # row_dst += k * row_src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, k: int) -> None:
        if k:
            for row in a:
                row[dst] += k * row[src]
            for row in v:
                row[dst] += k * row[src]

    def find_pivot(t: int) -> tuple[int, int] | None:
        best: tuple[int, int, int] | None = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                val = abs(a[i][j])
                if val and (best is None or val < best[0]):
                    best = (val, i, j)
        return None if best is None else (best[1], best[2])

    for t in range(min(nrows, ncols)):
        while True:
            pos = find_pivot(t)
            if pos is None:
                break
            swap_rows(pos[0], t)
            swap_cols(pos[1], t)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    r = a[i][t] % abs(p)
                    add_row(t, i, -((a[i][t] - r) // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    r = a[t][j] % abs(p)
                    add_col(t, j, -((a[t][j] - r) // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # row and column are clear; enforce the divisibility chain
            bad = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < min(nrows, ncols) and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    um, dm, vm = IntMatrix(u), IntMatrix(a), IntMatrix(v)
    assert um * m * vm == dm
    diag = [dm[i, i] for i in range(min(nrows, ncols))]
    assert all(x >= 0 for x in diag)
    assert all(
        diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1) if diag[i]
    )
    assert all(x == 0 for x in diag[diag.index(0):]) if 0 in diag else True
    return SmithForm(um, dm, vm)


def cokernel(m: IntMatrix) -> CokernelStructure:
    """Structure of Z^rows / (column span of m)."""
    diag = smith_normal_form(m).diagonal()
    rank = sum(1 for x in diag if x)
    torsion = tuple(x for x in diag if x > 1)
    return CokernelStructure(free_rank=m.rows - rank, torsion=torsion)


def rational_rank(m: IntMatrix) -> int:
    """Rank over Q by Fraction Gaussian elimination.

    Deliberately independent of smith_normal_form so the two can serve as
    oracles for each other.
    """
    a = [[Fraction(x) for x in row] for row in m.entries()]
    nrows, ncols = m.rows, m.cols
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pv = a[rank][col]
        a[rank] = [x / pv for x in a[rank]]
        for i in range(nrows):
            if i != rank and a[i][col] != 0:
                factor = a[i][col]
                a[i] = [x - factor * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def rational_kernel_rank(m: IntMatrix) -> int:
    """Dimension of the kernel of m acting on column vectors over Q."""
    return m.cols - rational_rank(m)


def integral_kernel_basis(m: IntMatrix) -> tuple[Vector, ...]:
    """Basis of the integer kernel {x in Z^cols : m x = 0}.

    The basis vectors are the columns of the Smith transform V sitting over
    zero diagonal entries; since V is unimodular they form a primitive basis
    of the kernel lattice, each vector having coordinate gcd 1.
    """
    snf = smith_normal_form(m)
    diag = snf.diagonal()
    zero_positions = [i for i, x in enumerate(diag) if x == 0]
    zero_positions += list(range(len(diag), m.cols))
    return tuple(snf.v.column(j) for j in zero_positions)
