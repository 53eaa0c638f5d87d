"""Dense matrices over the rationals.

Entries are :class:`fractions.Fraction` values, which are always reduced with a
positive denominator, so equality between matrices is exact.  Every matrix
carries an index kind for its rows and columns (``"vertex"``, ``"edge"`` or the
generic ``"index"``) so that products between incompatibly indexed matrices are
rejected instead of silently computed.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

VERTEX = "vertex"
EDGE = "edge"
INDEX = "index"
KINDS = (VERTEX, EDGE, INDEX)


class MatrixError(ValueError):
    """Raised for dimension or index-kind mismatches."""


class SingularMatrixError(MatrixError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular: rank {rank} < {size}")
        self.rank = rank
        self.size = size


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


class RationalMatrix:
    """Immutable dense rational matrix.

    >>> a = RationalMatrix([[1, 2], [3, 4]])
    >>> (a @ RationalMatrix.identity(2)) == a
    True
    >>> a.T[0]
    (Fraction(1, 1), Fraction(3, 1))
    """

    __slots__ = ("rows", "cols", "row_kind", "col_kind", "_data")

    def __init__(
        self,
        data: Iterable[Iterable],
        row_kind: str = INDEX,
        col_kind: str = INDEX,
        *,
        shape: tuple[int, int] | None = None,
    ):
        rows = tuple(tuple(_frac(x) for x in row) for row in data)
        if shape is None:
            ncols = len(rows[0]) if rows else 0
            shape = (len(rows), ncols)
        if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
            raise MatrixError(f"ragged or mis-shaped data for a {shape[0]}x{shape[1]} matrix")
        if row_kind not in KINDS or col_kind not in KINDS:
            raise MatrixError(f"unknown index kind in ({row_kind!r}, {col_kind!r})")
        self.rows, self.cols = shape
        self.row_kind = row_kind
        self.col_kind = col_kind
        self._data = rows

    # construction helpers

    @classmethod
    def zeros(cls, rows: int, cols: int, row_kind: str = INDEX, col_kind: str = INDEX):
        zero = Fraction(0)
        return cls(([zero] * cols for _ in range(rows)), row_kind, col_kind, shape=(rows, cols))

    @classmethod
    def identity(cls, n: int, kind: str = INDEX):
        one, zero = Fraction(1), Fraction(0)
        return cls(
            ([one if i == j else zero for j in range(n)] for i in range(n)),
            kind,
            kind,
            shape=(n, n),
        )

    @classmethod
    def _from_ints(cls, nums, den: int, shape, row_kind, col_kind):
        m = cls.__new__(cls)
        m.rows, m.cols = shape
        m.row_kind, m.col_kind = row_kind, col_kind
        if den == 1:
            m._data = tuple(tuple(Fraction(v) for v in row) for row in nums)
        else:
            m._data = tuple(tuple(Fraction(v, den) for v in row) for row in nums)
        return m

    def with_kinds(self, row_kind: str, col_kind: str) -> "RationalMatrix":
        return RationalMatrix(self._data, row_kind, col_kind, shape=self.shape)

    # basic protocol

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._data[i][j]
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self._data)
        return f"RationalMatrix({self.rows}x{self.cols} {self.row_kind}/{self.col_kind}: [{body}])"

    # arithmetic

    @property
    def T(self) -> "RationalMatrix":
        return transpose(self)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return matmul(self, other)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        _check_same_shape(self, other)
        return RationalMatrix(
            ([x + y for x, y in zip(r, s)] for r, s in zip(self._data, other._data)),
            self.row_kind,
            self.col_kind,
            shape=self.shape,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        _check_same_shape(self, other)
        return RationalMatrix(
            ([x - y for x, y in zip(r, s)] for r, s in zip(self._data, other._data)),
            self.row_kind,
            self.col_kind,
            shape=self.shape,
        )

    def scale(self, c) -> "RationalMatrix":
        c = _frac(c)
        return RationalMatrix(
            ([c * x for x in r] for r in self._data), self.row_kind, self.col_kind, shape=self.shape
        )

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def common_denominator(self) -> int:
        den = 1
        for row in self._data:
            for x in row:
                if x.denominator != 1:
                    den = lcm(den, x.denominator)
        return den

    def _scaled_ints(self) -> tuple[list[list[int]], int]:
        den = self.common_denominator()
        if den == 1:
            return [[x.numerator for x in row] for row in self._data], 1
        return [[x.numerator * (den // x.denominator) for x in row] for row in self._data], den


def _check_same_shape(a: RationalMatrix, b: RationalMatrix) -> None:
    if a.shape != b.shape:
        raise MatrixError(f"shape mismatch: {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def transpose(a: RationalMatrix) -> RationalMatrix:
    data = zip(*a._data) if a.rows else [()] * a.cols
    return RationalMatrix(data, a.col_kind, a.row_kind, shape=(a.cols, a.rows))


def matmul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Exact product ``a @ b``.

    The product is formed on integer numerators over a common denominator and
    reduced once per entry at the end.
    """
    if a.cols != b.rows:
        raise MatrixError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    if a.col_kind != b.row_kind:
        raise MatrixError(f"index kind mismatch: {a.col_kind} columns against {b.row_kind} rows")
    an, ad = a._scaled_ints()
    bn, bd = b._scaled_ints()
    bt = list(zip(*bn)) if b.rows else [()] * b.cols
    out = [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in an]
    return RationalMatrix._from_ints(out, ad * bd, (a.rows, b.cols), a.row_kind, b.col_kind)


def rref(a: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form and pivot columns.

    Pivots are the first nonzero entry met in column order; no magnitude
    pivoting is needed over exact arithmetic.
    """
    m = a.tolist()
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        p = next((i for i in range(r, a.rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        pr = m[r]
        for i in range(a.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == a.rows:
            break
    return m, pivots


def rank(a: RationalMatrix) -> int:
    """Rank by fraction-free (Bareiss) elimination on the integer-scaled matrix."""
    m, _ = a._scaled_ints()
    rows, cols = a.rows, a.cols
    r = 0
    prev = 1
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, rows):
            f = m[i][c]
            m[i] = [(piv * x - f * y) // prev for x, y in zip(m[i], m[r])]
        prev = piv
        r += 1
        if r == rows:
            break
    return r


def rank_factorization(a: RationalMatrix) -> tuple[RationalMatrix, RationalMatrix]:
    """Return ``(f, g)`` with ``a == f @ g``, ``f`` of full column rank, ``g`` of full row rank.

    ``f`` is made of the pivot columns of ``a`` and ``g`` of the nonzero rows of
    its reduced row-echelon form.
    """
    m, pivots = rref(a)
    r = len(pivots)
    if r == 0:
        raise MatrixError("zero matrix has no rank factorization")
    f = RationalMatrix(
        ([a[i, c] for c in pivots] for i in range(a.rows)), a.row_kind, INDEX, shape=(a.rows, r)
    )
    g = RationalMatrix(m[:r], INDEX, a.col_kind, shape=(r, a.cols))
    return f, g


def inverse(a: RationalMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises SingularMatrixError with the rank."""
    n = a.rows
    if a.cols != n:
        raise MatrixError(f"cannot invert a non-square {a.rows}x{a.cols} matrix")
    one, zero = Fraction(1), Fraction(0)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(a._data)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise SingularMatrixError(rank(a), n)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        if piv != 1:
            aug[c] = [x / piv for x in aug[c]]
        pr = aug[c]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y if y else x for x, y in zip(aug[i], pr)]
    return RationalMatrix((row[n:] for row in aug), a.col_kind, a.row_kind, shape=(n, n))


def pseudoinverse_oracle(a: RationalMatrix) -> RationalMatrix:
    """Moore-Penrose inverse through a rank factorization ``a = f g``.

    ``a+ = g^T (g g^T)^-1 (f^T f)^-1 f^T``.  The zero matrix maps to the zero
    matrix of transposed shape.
    """
    if a.is_zero():
        return RationalMatrix.zeros(a.cols, a.rows, a.col_kind, a.row_kind)
    f, g = rank_factorization(a)
    ft = f.T
    gt = g.T
    left = gt @ inverse(g @ gt)
    right = inverse(ft @ f) @ ft
    return left @ right


@dataclass(frozen=True)
class PenroseReport:
    axa: bool
    xax: bool
    ax_symmetric: bool
    xa_symmetric: bool
    first_failure: tuple[str, int, int] | None = None

    @property
    def all_hold(self) -> bool:
        return self.axa and self.xax and self.ax_symmetric and self.xa_symmetric


def first_difference(a: RationalMatrix, b: RationalMatrix) -> tuple[int, int] | None:
    """0-based coordinates of the first entry (row-major) where ``a`` and ``b`` differ."""
    _check_same_shape(a, b)
    for i, (r, s) in enumerate(zip(a, b)):
        if r != s:
            for j, (x, y) in enumerate(zip(r, s)):
                if x != y:
                    return (i, j)
    return None


def _first_asymmetry(a: RationalMatrix) -> tuple[int, int] | None:
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j] != a[j, i]:
                return (i, j)
    return None


def penrose_check(a: RationalMatrix, x: RationalMatrix) -> PenroseReport:
    """Evaluate the four Penrose equations exactly for the candidate ``x`` of ``a``."""
    if x.shape != (a.cols, a.rows):
        raise MatrixError(f"candidate must be {a.cols}x{a.rows}, got {x.rows}x{x.cols}")
    ax = a @ x
    xa = x @ a
    checks = [
        ("AXA=A", first_difference(ax @ a, a)),
        ("XAX=X", first_difference(xa @ x, x)),
        ("(AX)^T=AX", _first_asymmetry(ax)),
        ("(XA)^T=XA", _first_asymmetry(xa)),
    ]
    failure = next(((name, *where) for name, where in checks if where is not None), None)
    return PenroseReport(*(where is None for _, where in checks), first_failure=failure)


# serialization


def format_entry(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_KIND_PLURAL = {VERTEX: "vertices", EDGE: "edges", INDEX: "index"}
_KIND_SINGULAR = {v: k for k, v in _KIND_PLURAL.items()}


def header_line(a: RationalMatrix) -> str:
    return f"rows={_KIND_PLURAL[a.row_kind]} cols={_KIND_PLURAL[a.col_kind]}"


def to_csv(a: RationalMatrix, header: bool = True) -> str:
    buf = io.StringIO()
    if header:
        buf.write(header_line(a) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    for row in a:
        w.writerow(format_entry(x) for x in row)
    return buf.getvalue()


def from_csv(text: str) -> RationalMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    row_kind = col_kind = INDEX
    if lines and lines[0].startswith("rows="):
        fields = dict(tok.split("=", 1) for tok in lines[0].split())
        row_kind = _KIND_SINGULAR[fields["rows"]]
        col_kind = _KIND_SINGULAR[fields["cols"]]
        lines = lines[1:]
    rows = list(csv.reader(lines))
    return RationalMatrix(rows, row_kind, col_kind)


def to_json(a: RationalMatrix) -> str:
    payload = {
        "rows": a.rows,
        "cols": a.cols,
        "row_kind": a.row_kind,
        "col_kind": a.col_kind,
        "entries": [[format_entry(x) for x in row] for row in a],
    }
    return json.dumps(payload) + "\n"


def from_json(text: str) -> RationalMatrix:
    obj = json.loads(text)
    return RationalMatrix(
        obj["entries"],
        obj.get("row_kind", INDEX),
        obj.get("col_kind", INDEX),
        shape=(obj["rows"], obj["cols"]),
    )


def matrix(rows: Sequence[Sequence], row_kind: str = INDEX, col_kind: str = INDEX, scale=1) -> RationalMatrix:
    """Shorthand used for literal matrices: ``matrix([[1, 2]], scale=Fraction(1, 7))``."""
    s = _frac(scale)
    return RationalMatrix(([_frac(x) * s for x in r] for r in rows), row_kind, col_kind)
