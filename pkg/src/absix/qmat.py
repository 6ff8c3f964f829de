"""Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` values (always stored reduced, with
positive denominator — the stdlib guarantees that normal form).  Matrices are
immutable.  Rank-revealing computations run fraction-free: each row is first
cleared to integers, then eliminated Bareiss-style (two-row integer updates
with exact division by the previous pivot) so intermediate entries stay the
size of minors instead of exploding.  The pivot is always the first nonzero
entry in column order, which makes every echelon form — and therefore every
returned basis — deterministic and byte-reproducible.

No floating point enters anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, PairingNotPerfect

#: Exact scalar type used throughout the engine.
Scalar = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise DimensionError(f"matrix entries must be exact rationals, got {type(x).__name__}")


class Matrix:
    """Immutable matrix of Fractions; supports zero-sized shapes."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable]):
        if rows < 0 or cols < 0:
            raise DimensionError("negative matrix dimensions")
        tup = tuple(tuple(_frac(x) for x in row) for row in data)
        if len(tup) != rows or any(len(r) != cols for r in tup):
            raise DimensionError(
                f"expected {rows}x{cols} data, got rows of lengths {[len(r) for r in tup]}"
            )
        self.rows = rows
        self.cols = cols
        self._data = tup

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "Matrix":
        """Build from a list of rows (entries: int, str or Fraction)."""
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, ((_ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, ((_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, entries: Sequence) -> "Matrix":
        return cls(len(entries), 1, ((x,) for x in entries))

    # -- access ------------------------------------------------------------

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column_tuple(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def entries(self) -> tuple:
        return self._data

    def to_lists(self) -> list:
        return [list(r) for r in self._data]

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.cols
        out = []
        for i in range(self.rows):
            ri = self._data[i]
            out.append(
                tuple(
                    sum((ri[k] * other._data[k][j] for k in range(self.cols)), _ZERO)
                    for j in range(ocols)
                )
            )
        return Matrix(self.rows, ocols, out)

    def scale(self, k) -> "Matrix":
        k = _frac(k)
        return Matrix(self.rows, self.cols, ((k * x for x in r) for r in self._data))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            self.rows,
            self.cols,
            ((a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self._data, other._data)),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, zip(*self._data)) if self.rows and self.cols else Matrix(
            self.cols, self.rows, ((_ZERO,) * self.rows for _ in range(self.cols))
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionError("hstack row mismatch")
        return Matrix(self.rows, self.cols + other.cols,
                      (r1 + r2 for r1, r2 in zip(self._data, other._data)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionError("vstack column mismatch")
        return Matrix(self.rows + other.rows, self.cols, self._data + other._data)

    def take_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(len(idx), self.cols, (self._data[i] for i in idx))

    def take_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.rows, len(idx), (tuple(r[j] for j in idx) for r in self._data))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"Matrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix[{body}]"


def hstack_all(mats: Sequence[Matrix], rows: int = 0) -> Matrix:
    """Horizontal concatenation; `rows` disambiguates the empty list."""
    if not mats:
        return Matrix.zeros(rows, 0)
    out = mats[0]
    for m in mats[1:]:
        out = out.hstack(m)
    return out


def vstack_all(mats: Sequence[Matrix], cols: int = 0) -> Matrix:
    if not mats:
        return Matrix.zeros(0, cols)
    out = mats[0]
    for m in mats[1:]:
        out = out.vstack(m)
    return out


# ---------------------------------------------------------------------------
# Elimination core
# ---------------------------------------------------------------------------

def _integer_rows(m: Matrix) -> list:
    """Scale each row by the lcm of its denominators (preserves row space)."""
    out = []
    for row in m.entries():
        mult = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * mult) for x in row])
    return out


def _bareiss_echelon(work: list, cols: int) -> list:
    """In-place fraction-free echelon; returns the pivot column list.

    Division by the previous pivot is exact (entries are minors of the
    integerized input); asserted via divmod.
    """
    pivots = []
    nrows = len(work)
    r = 0
    prev = 1
    for c in range(cols):
        sel = None
        for i in range(r, nrows):
            if work[i][c]:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            work[r], work[sel] = work[sel], work[r]
        piv = work[r][c]
        for i in range(r + 1, nrows):
            wi = work[i]
            f = wi[c]
            if f == 0 and piv == prev:
                continue
            new = [0] * cols
            for k in range(c, cols):
                num = piv * wi[k] - f * work[r][k]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss exact-division invariant broken"
                new[k] = q
            work[i] = new
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple:
    """Reduced row echelon form with deterministic first-nonzero pivots.

    Returns ``(R, pivots)`` where R is the RREF as a Matrix and pivots the
    tuple of pivot column indices in order.
    """
    work = _integer_rows(m)
    pivots = _bareiss_echelon(work, m.cols)
    rank = len(pivots)
    # Normalize pivot rows to Fractions and back-substitute upward.
    rows = [[Fraction(x) for x in work[i]] for i in range(rank)]
    for i in range(rank):
        piv = rows[i][pivots[i]]
        rows[i] = [x / piv for x in rows[i]]
    for i in range(rank - 1, -1, -1):
        pc = pivots[i]
        for k in range(i):
            f = rows[k][pc]
            if f:
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[i])]
    rows += [[_ZERO] * m.cols for _ in range(m.rows - rank)]
    return Matrix(m.rows, m.cols, rows), tuple(pivots)


def rank(m: Matrix) -> int:
    """Exact rank."""
    work = _integer_rows(m)
    return len(_bareiss_echelon(work, m.cols))


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a deterministic basis of ker(m) in Q^cols.

    Free coordinates are set to 1 one at a time, in column order; pivot
    coordinates are filled from the RREF.  ``m * kernel_basis(m) = 0``.
    """
    R, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    cols = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for i, pc in enumerate(pivots):
            v[pc] = -R[i, f]
        cols.append(v)
    return Matrix(m.cols, len(cols), zip(*cols)) if cols else Matrix.zeros(m.cols, 0)


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of m — a deterministic basis of im(m)."""
    _, pivots = rref(m)
    return m.take_columns(list(pivots))


def cokernel_projection(m: Matrix) -> Matrix:
    """A surjection Q^rows -> Q^(rows-rank) whose kernel is exactly im(m).

    Rows are a deterministic basis of the left null space of m.
    """
    return kernel_basis(m.transpose()).transpose()


def solve(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """One exact solution X of m X = b (free coordinates 0), or None."""
    if b.rows != m.rows:
        raise DimensionError(f"solve: {m.shape} vs rhs {b.shape}")
    R, pivots = rref(m.hstack(b))
    if any(p >= m.cols for p in pivots):
        return None
    out = [[_ZERO] * b.cols for _ in range(m.cols)]
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            out[pc][j] = R[i, m.cols + j]
    return Matrix(m.cols, b.cols, out)


def inverse(m: Matrix) -> Optional[Matrix]:
    """Exact inverse of a square matrix, or None if singular."""
    if m.rows != m.cols:
        return None
    R, pivots = rref(m.hstack(Matrix.identity(m.rows)))
    if len(pivots) != m.rows or any(p >= m.cols for p in pivots):
        return None
    return Matrix(m.rows, m.rows, (row[m.cols:] for row in R.entries()))


def left_inverse(k: Matrix) -> Matrix:
    """Deterministic left inverse of a full-column-rank matrix.

    Uses the pivot rows (first set of rows that is invertible, in row order):
    the result s satisfies s*k = I and kills the complementary coordinate
    subspace spanned by the non-pivot rows.
    """
    if k.cols == 0:
        return Matrix.zeros(0, k.rows)
    _, pivrows = rref(k.transpose())
    sub = k.take_rows(list(pivrows))
    inv = inverse(sub)
    if inv is None:
        raise DimensionError("left_inverse: matrix does not have full column rank")
    sel = Matrix(k.cols, k.rows,
                 ((_ONE if j == pivrows[i] else _ZERO for j in range(k.rows))
                  for i in range(k.cols)))
    return inv * sel


def right_inverse(c: Matrix) -> Matrix:
    """Deterministic right inverse of a full-row-rank matrix (pivot columns)."""
    if c.rows == 0:
        return Matrix.zeros(c.cols, 0)
    _, pivots = rref(c)
    if len(pivots) != c.rows:
        raise DimensionError("right_inverse: matrix does not have full row rank")
    inv = inverse(c.take_columns(list(pivots)))
    emb = Matrix(c.cols, c.rows,
                 ((_ONE if pivots[j] == i else _ZERO for j in range(c.rows))
                  for i in range(c.cols)))
    return emb * inv


def adjoint_pushforward(r: Matrix, q_source: Matrix, q_target: Matrix) -> Matrix:
    """Adjoint g of r under two perfect pairings.

    Defining identity (exact): ``g.T * q_target == q_source * r``, i.e.
    <g a, b>_target = <a, r b>_source for all coordinate vectors a, b.
    Raises PairingNotPerfect if either pairing matrix is not square
    invertible, DimensionError on shape mismatch.
    """
    if q_source.rows != q_source.cols or q_target.rows != q_target.cols:
        raise PairingNotPerfect(
            f"pairings must be square, got {q_source.shape} and {q_target.shape}"
        )
    if q_source.cols != r.rows or q_target.rows != r.cols:
        raise DimensionError(
            f"adjoint: restriction {r.shape} incompatible with pairings "
            f"{q_source.shape}, {q_target.shape}"
        )
    if inverse(q_source) is None:
        raise PairingNotPerfect("source pairing is singular")
    qt_inv = inverse(q_target)
    if qt_inv is None:
        raise PairingNotPerfect("target pairing is singular")
    return ((q_source * r) * qt_inv).transpose()
