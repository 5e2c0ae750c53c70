"""Exact integer linear algebra: Smith normal form, cokernels, rational rank.

Everything here is carried out over Python's arbitrary-precision integers.
No floating point enters this module; transvection products and Smith
pivots overflow 64-bit words on adversarial inputs, so fixed-width
arithmetic is never used.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix, stored row-major.

    >>> IntMatrix.from_rows([[1, 2], [3, 4]]).entry(1, 0)
    3
    """

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.data) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.data)}"
            )

    @classmethod
    def from_rows(cls, rows, cols=None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def row_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.entry(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vec) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(
            sum(self.row(i)[k] * vec[k] for k in range(self.cols))
            for i in range(self.rows)
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix sum")
        return IntMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.data, other.data))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix difference")
        return IntMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.data, other.data))
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.data))

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self.entry(i, j) == int(i == j)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.data)

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        """Vertical concatenation."""
        if self.cols != other.cols:
            raise ValueError("column count mismatch in stack")
        return IntMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.row_lists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_lists(self) -> list[list[int]]:
        return self.row_lists()

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in normal form.

    ``free_rank`` copies of the integers plus cyclic factors whose orders
    form a divisor chain d_1 | d_2 | ... with every d_i >= 2.  Two groups
    are equal exactly when these data agree, so equality of normal forms
    is isomorphism.
    """

    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion orders must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion orders must form a divisor chain")

    @classmethod
    def from_diagonal(cls, diag) -> "AbelianGroup":
        """Group presented by diagonal relations d_i on independent generators.

        Entries 0 contribute free summands, entries with |d| = 1 vanish and
        the rest are renormalised into a divisor chain.
        """
        free = sum(1 for d in diag if d == 0)
        tors = sorted(abs(d) for d in diag if abs(d) >= 2)
        if any(b % a != 0 for a, b in zip(tors, tors[1:])):
            # Not already a chain: rebuild it via the Smith form of the
            # diagonal relation matrix.
            m = IntMatrix.from_rows(
                [[tors[i] if i == j else 0 for j in range(len(tors))] for i in range(len(tors))]
            )
            _, d, _ = smith_normal_form(m)
            tors = [d.entry(i, i) for i in range(len(tors)) if d.entry(i, i) >= 2]
        return cls(free, tuple(tors))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """Number of elements, or None for an infinite group."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form U * A * V = D.

    U and V are unimodular, D is diagonal with nonnegative entries
    satisfying the divisor chain d_1 | d_2 | ...  Pivots are chosen with
    smallest nonzero magnitude, ties broken by first occurrence in
    row-major order, so the decomposition is reproducible.
    """
    m, n = a.rows, a.cols
    mat = a.row_lists()
    u = IntMatrix.identity(m).row_lists()
    v = IntMatrix.identity(n).row_lists()

    def swap_rows(i, j):
        mat[i], mat[j] = mat[j], mat[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in mat:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row dst += c * row src
        mat[dst] = [x + c * y for x, y in zip(mat[dst], mat[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for r in mat:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def negate_row(i):
        mat[i] = [-x for x in mat[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # Deterministic pivot: smallest nonzero magnitude, first occurrence.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = mat[i][j]
                if e != 0 and (best is None or abs(e) < best[0]):
                    best = (abs(e), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        dirty = False
        for i in range(t + 1, m):
            if mat[i][t]:
                q = mat[i][t] // mat[t][t]
                add_row(i, t, -q)
                if mat[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if mat[t][j]:
                q = mat[t][j] // mat[t][t]
                add_col(j, t, -q)
                if mat[t][j]:
                    dirty = True
        if dirty:
            continue

        # Pivot must divide the rest of the submatrix for the chain.
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if mat[i][j] % mat[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue

        if mat[t][t] < 0:
            negate_row(t)
        t += 1

    d = IntMatrix.from_rows(mat, n) if m else IntMatrix.zeros(0, n)
    return (
        IntMatrix.from_rows(u, m) if m else IntMatrix.identity(0),
        d,
        IntMatrix.from_rows(v, n) if n else IntMatrix.identity(0),
    )


def diagonal_of(d: IntMatrix) -> list[int]:
    return [d.entry(i, i) for i in range(min(d.rows, d.cols))]


def cokernel(a: IntMatrix) -> AbelianGroup:
    """Z^cols modulo the row span of ``a``, in normal form."""
    _, d, _ = smith_normal_form(a)
    diag = diagonal_of(d)
    nonzero = [x for x in diag if x != 0]
    free = a.cols - len(nonzero)
    torsion = tuple(x for x in nonzero if x >= 2)
    return AbelianGroup(free, torsion)


def rational_rank(a: IntMatrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    mat = a.row_lists()
    m, n = a.rows, a.cols
    rank = 0
    prev = 1
    row = 0
    for col in range(n):
        piv = None
        for i in range(row, m):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        for i in range(row + 1, m):
            for j in range(col + 1, n):
                mat[i][j] = (mat[i][j] * mat[row][col] - mat[i][col] * mat[row][j]) // prev
            mat[i][col] = 0
        prev = mat[row][col]
        rank += 1
        row += 1
        if row == m:
            break
    return rank


def in_row_span(a: IntMatrix, x) -> bool:
    """Whether the integer vector ``x`` lies in the integer row span of ``a``."""
    if len(x) != a.cols:
        raise ValueError("vector length must match column count")
    _, d, v = smith_normal_form(a)
    # y*A = x  <=>  (y*U^-1)*D = x*V, so x*V must be divisible entrywise.
    w = [sum(x[k] * v.entry(k, j) for k in range(a.cols)) for j in range(a.cols)]
    diag = diagonal_of(d)
    for j, wj in enumerate(w):
        dj = diag[j] if j < len(diag) else 0
        if dj == 0:
            if wj != 0:
                return False
        elif wj % dj != 0:
            return False
    return True
