"""Small exact linear algebra over Q(i).

Matrices are immutable, stored densely as tuples of row tuples.  The sizes
appearing in this engine are tiny (the largest spaces have dimension
binomial(2n, p) for 4n at most 12), so simple Gaussian elimination with
the first nonzero entry of each column as pivot is used throughout.  That
pivot rule, together with full reduction above pivots and scaling pivots
to one, makes the reduced echelon form of a matrix canonical; subspaces
are compared and hashed through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import NotASubspace
from .scalars import ONE, ZERO, GaussianRational, ScalarLike

Row = Tuple[GaussianRational, ...]


def _coerce_entry(value: ScalarLike) -> GaussianRational:
    out = GaussianRational._coerce(value)
    if out is NotImplemented:
        raise TypeError(f"matrix entries must be scalars, got {value!r}")
    return out


@dataclass(frozen=True)
class Mat:
    """An immutable nrows x ncols matrix over Q(i).

    Zero-by-n and n-by-zero shapes are legal and show up constantly as
    boundary maps in top and bottom degrees.
    """

    nrows: int
    ncols: int
    data: Tuple[Row, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], ncols: int = -1) -> "Mat":
        data = tuple(tuple(_coerce_entry(x) for x in row) for row in rows)
        if data:
            ncols = len(data[0])
            if any(len(row) != ncols for row in data):
                raise ValueError("ragged rows")
        elif ncols < 0:
            raise ValueError("empty matrix needs an explicit column count")
        return cls(len(data), ncols, data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Mat":
        return cls(nrows, ncols, tuple((ZERO,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, tuple(
            tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
        ))

    @classmethod
    def column(cls, entries: Sequence[ScalarLike]) -> "Mat":
        return cls.from_rows([[x] for x in entries], ncols=1)

    def __getitem__(self, key: Tuple[int, int]) -> GaussianRational:
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> Row:
        return self.data[i]

    def col(self, j: int) -> Row:
        return tuple(row[j] for row in self.data)

    def columns(self) -> List[Row]:
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self) -> "Mat":
        return Mat(self.ncols, self.nrows,
                   tuple(self.col(j) for j in range(self.ncols)))

    def conj(self) -> "Mat":
        return Mat(self.nrows, self.ncols,
                   tuple(tuple(x.conjugate() for x in row) for row in self.data))

    def conj_transpose(self) -> "Mat":
        return self.transpose().conj()

    def __add__(self, other: "Mat") -> "Mat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in matrix addition")
        return Mat(self.nrows, self.ncols, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.data, other.data)
        ))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def scale(self, factor: ScalarLike) -> "Mat":
        factor = _coerce_entry(factor)
        return Mat(self.nrows, self.ncols, tuple(
            tuple(factor * x for x in row) for row in self.data
        ))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch: ({self.nrows}x{self.ncols}) @ "
                f"({other.nrows}x{other.ncols})"
            )
        # row-times-matrix accumulation, skipping zero entries; the
        # matrices here are overwhelmingly sparse
        rows = []
        for row in self.data:
            acc = [ZERO] * other.ncols
            for k, a in enumerate(row):
                if not a.is_zero():
                    for j, b in enumerate(other.data[k]):
                        if not b.is_zero():
                            acc[j] = acc[j] + a * b
            rows.append(tuple(acc))
        return Mat(self.nrows, other.ncols, tuple(rows))

    def apply(self, vector: Sequence[ScalarLike]) -> Tuple[GaussianRational, ...]:
        if len(vector) != self.ncols:
            raise ValueError("vector length does not match column count")
        vec = [_coerce_entry(x) for x in vector]
        out = []
        for row in self.data:
            acc = ZERO
            for a, b in zip(row, vec):
                if not (a.is_zero() or b.is_zero()):
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def apply_conjugated(self, vector: Sequence[ScalarLike]) -> Tuple[GaussianRational, ...]:
        """Apply to the entrywise conjugate of the vector.

        Antilinear operators are stored as a plain matrix plus the
        convention that the input is conjugated first; this is that action.
        """
        return self.apply([_coerce_entry(x).conjugate() for x in vector])

    def hstack(self, other: "Mat") -> "Mat":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Mat(self.nrows, self.ncols + other.ncols, tuple(
            ra + rb for ra, rb in zip(self.data, other.data)
        ))

    def vstack(self, other: "Mat") -> "Mat":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        return Mat(self.nrows + other.nrows, self.ncols, self.data + other.data)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.data for x in row)

    def __str__(self) -> str:
        if not self.data:
            return f"<empty {self.nrows}x{self.ncols}>"
        cells = [[str(x) for x in row] for row in self.data]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(
            "[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells
        )


def rref(matrix: Mat) -> Tuple[Mat, List[int]]:
    """Reduced row echelon form and the list of pivot columns.

    The pivot for each column is the first row with a nonzero entry there;
    no magnitude-based pivot choice is ever useful in exact arithmetic and
    keeping the rule positional makes the output reproducible entry for
    entry across runs and platforms.
    """
    rows = [list(row) for row in matrix.data]
    pivots: List[int] = []
    pivot_row = 0
    for col in range(matrix.ncols):
        found = None
        for r in range(pivot_row, len(rows)):
            if rows[r][col]:
                found = r
                break
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        inv = rows[pivot_row][col].inverse()
        rows[pivot_row] = [inv * x for x in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    reduced = Mat(matrix.nrows, matrix.ncols, tuple(tuple(r) for r in rows))
    return reduced, pivots


def rank(matrix: Mat) -> int:
    return len(rref(matrix)[1])


def right_nullspace(matrix: Mat) -> List[Tuple[GaussianRational, ...]]:
    """A basis of {v : M v = 0}, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in the other
    free columns, so the output is canonical given the pivot rule.
    """
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [j for j in range(matrix.ncols) if j not in pivot_set]
    basis = []
    for j in free:
        vec = [ZERO] * matrix.ncols
        vec[j] = ONE
        for r, pcol in enumerate(pivots):
            vec[pcol] = -reduced.data[r][j]
        basis.append(tuple(vec))
    return basis


def solve(matrix: Mat, rhs: Sequence[ScalarLike]):
    """One solution of M x = rhs, or None if the system is inconsistent."""
    rhs_col = Mat.column(list(rhs))
    if rhs_col.nrows != matrix.nrows:
        raise ValueError("right hand side length does not match row count")
    augmented = matrix.hstack(rhs_col)
    reduced, pivots = rref(augmented)
    if matrix.ncols in pivots:
        return None
    solution = [ZERO] * matrix.ncols
    for r, pcol in enumerate(pivots):
        solution[pcol] = reduced.data[r][matrix.ncols]
    return tuple(solution)


def inverse(matrix: Mat) -> Mat:
    if matrix.nrows != matrix.ncols:
        raise ValueError("only square matrices have inverses")
    n = matrix.nrows
    reduced, pivots = rref(matrix.hstack(Mat.identity(n)))
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat(n, n, tuple(row[n:] for row in reduced.data))


def det(matrix: Mat) -> GaussianRational:
    if matrix.nrows != matrix.ncols:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(row) for row in matrix.data]
    n = matrix.nrows
    result = ONE
    for col in range(n):
        found = None
        for r in range(col, n):
            if rows[r][col]:
                found = r
                break
        if found is None:
            return ZERO
        if found != col:
            rows[col], rows[found] = rows[found], rows[col]
            result = -result
        result = result * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return result


def leading_principal_minors(matrix: Mat) -> List[GaussianRational]:
    if matrix.nrows != matrix.ncols:
        raise ValueError("principal minors of a non-square matrix")
    out = []
    for k in range(1, matrix.nrows + 1):
        sub = Mat.from_rows([row[:k] for row in matrix.data[:k]], ncols=k)
        out.append(det(sub))
    return out


# ---------------------------------------------------------------------------
# Subspaces.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q(i)^n, normalized to canonical echelon row form.

    Two Subspace objects are equal exactly when they describe the same
    subspace, so they can sit in sets and serve as dictionary keys; all
    the lattice operations below preserve the normalization.
    """

    ambient_dim: int
    rows: Tuple[Row, ...]

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[ScalarLike]],
                     ambient_dim: int) -> "Subspace":
        material = [list(v) for v in vectors]
        for v in material:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        if not material:
            return cls(ambient_dim, ())
        reduced, pivots = rref(Mat.from_rows(material, ncols=ambient_dim))
        return cls(ambient_dim, reduced.data[: len(pivots)])

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(Mat.identity(ambient_dim).data, ambient_dim)

    @classmethod
    def column_space(cls, matrix: Mat) -> "Subspace":
        return cls.from_vectors(matrix.columns(), matrix.nrows)

    @classmethod
    def kernel(cls, matrix: Mat) -> "Subspace":
        return cls.from_vectors(right_nullspace(matrix), matrix.ncols)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, vector: Sequence[ScalarLike]) -> bool:
        vec = [_coerce_entry(x) for x in vector]
        if len(vec) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row in self.rows:
            pivot = next(j for j, x in enumerate(row) if x)
            if vec[pivot]:
                factor = vec[pivot]
                vec = [a - factor * b for a, b in zip(vec, row)]
        return all(x.is_zero() for x in vec)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(self.rows + other.rows, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked basis matrix.

        A vector in both spaces is U^T a = V^T b; solving the homogeneous
        system [U^T | -V^T] (a, b) = 0 and reading off U^T a gives a
        spanning set of the intersection.
        """
        self._check_ambient(other)
        if not self.rows or not other.rows:
            return Subspace.zero(self.ambient_dim)
        ut = Mat.from_rows(self.rows, ncols=self.ambient_dim).transpose()
        vt = Mat.from_rows(other.rows, ncols=self.ambient_dim).transpose()
        stacked = ut.hstack(-vt)
        vectors = []
        for null_vec in right_nullspace(stacked):
            a = null_vec[: self.dim]
            vectors.append(ut.apply(a))
        return Subspace.from_vectors(vectors, self.ambient_dim)

    def quotient_dim(self, smaller: "Subspace") -> int:
        self._check_ambient(smaller)
        if not self.contains_space(smaller):
            raise NotASubspace(
                "quotient requested by a space that is not contained in the numerator"
            )
        return self.dim - smaller.dim

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")

    def __str__(self) -> str:
        return f"<{self.dim}-dim subspace of C^{self.ambient_dim}>"


def complement_representatives(big: Subspace, small: Subspace) -> List[Row]:
    """Vectors of `big` completing a basis of `small` to one of `big`.

    Greedy over the canonical rows of `big`, so the output is deterministic.
    """
    if not big.contains_space(small):
        raise NotASubspace("complement requested inside a non-subspace")
    current = small
    out = []
    for row in big.rows:
        if not current.contains(row):
            out.append(row)
            current = current.sum(Subspace.from_vectors([row], big.ambient_dim))
    return out


# ---------------------------------------------------------------------------
# Realification.  A vector in C^n becomes (re parts, im parts) in Q^{2n};
# complex-linear and antilinear maps become real 2n x 2n block matrices.
# ---------------------------------------------------------------------------


def realify_vector(vector: Sequence[ScalarLike]) -> Tuple[GaussianRational, ...]:
    vec = [_coerce_entry(x) for x in vector]
    res = [GaussianRational(x.re) for x in vec]
    ims = [GaussianRational(x.im) for x in vec]
    return tuple(res + ims)


def complexify_vector(vector: Sequence[ScalarLike]) -> Tuple[GaussianRational, ...]:
    vec = [_coerce_entry(x) for x in vector]
    if len(vec) % 2:
        raise ValueError("realified vectors have even length")
    half = len(vec) // 2
    out = []
    for re_part, im_part in zip(vec[:half], vec[half:]):
        if re_part.im or im_part.im:
            raise ValueError("realified vectors must have real entries")
        out.append(GaussianRational(re_part.re, im_part.re))
    return tuple(out)


def _re_im_blocks(matrix: Mat) -> Tuple[List[List[GaussianRational]], List[List[GaussianRational]]]:
    re_block = [[GaussianRational(x.re) for x in row] for row in matrix.data]
    im_block = [[GaussianRational(x.im) for x in row] for row in matrix.data]
    return re_block, im_block


def realify_linear(matrix: Mat) -> Mat:
    """Real form [[Re, -Im], [Im, Re]] of a complex-linear map."""
    re_block, im_block = _re_im_blocks(matrix)
    top = [r + [-x for x in i] for r, i in zip(re_block, im_block)]
    bottom = [i + r for r, i in zip(re_block, im_block)]
    return Mat.from_rows(top + bottom, ncols=2 * matrix.ncols)


def realify_antilinear(matrix: Mat) -> Mat:
    """Real form [[Re, Im], [Im, -Re]] of v -> M conj(v)."""
    re_block, im_block = _re_im_blocks(matrix)
    top = [r + i for r, i in zip(re_block, im_block)]
    bottom = [i + [-x for x in r] for r, i in zip(re_block, im_block)]
    return Mat.from_rows(top + bottom, ncols=2 * matrix.ncols)
