from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from mfk.errors import DimensionMismatch, NonUnitDeterminant, NotSquare
from mfk.poly import GaussRat, Poly, derivative, _as_poly

logger = logging.getLogger(__name__)

Partition = Sequence[Sequence[int]]


class PolyMatrix:
    """Rectangular matrix of Poly, row-major, every entry over one variable order."""

    __slots__ = ("rows", "cols", "entries", "vars")

    def __init__(self, rows: int, cols: int, entries: Sequence[object], vars: Sequence[str] = ()):
        if rows <= 0 or cols <= 0:
            raise DimensionMismatch(f"matrix shape must be positive, got {rows}x{cols}")
        items = [_as_poly(e) for e in entries]
        if len(items) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(items)}",
                {"rows": rows, "cols": cols, "entries": len(items)},
            )
        names: List[str] = list(vars)
        seen = set(names)
        for p in items:
            for v in p.vars:
                if v not in seen:
                    seen.add(v)
                    names.append(v)
        order = tuple(names)
        self.rows = rows
        self.cols = cols
        self.vars = order
        self.entries: Tuple[Poly, ...] = tuple(p.with_vars(order) for p in items)

    # constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], vars: Sequence[str] = ()) -> "PolyMatrix":
        if not rows or not rows[0]:
            raise DimensionMismatch("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows", {"widths": [len(r) for r in rows]})
        return cls(len(rows), width, [e for r in rows for e in r], vars)

    @classmethod
    def identity(cls, n: int, vars: Sequence[str] = ()) -> "PolyMatrix":
        return cls.scalar(Poly.const(1), n, vars)

    @classmethod
    def zeros(cls, rows: int, cols: int, vars: Sequence[str] = ()) -> "PolyMatrix":
        return cls(rows, cols, [Poly.zero()] * (rows * cols), vars)

    @classmethod
    def scalar(cls, p, n: int, vars: Sequence[str] = ()) -> "PolyMatrix":
        p = _as_poly(p)
        zero = Poly.zero()
        return cls(n, n, [p if i == j else zero for i in range(n) for j in range(n)], vars)

    # access
    def __getitem__(self, idx: Tuple[int, int]) -> Poly:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> List[Poly]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> List[List[Poly]]:
        return [self.row(i) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.entries)

    def with_vars(self, names: Sequence[str]) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [p.with_vars(names) for p in self.entries], names)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [fn(p) for p in self.entries], self.vars)

    def substitute(self, bindings: Mapping[str, object]) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [p.subs(bindings) for p in self.entries])

    def submatrix(self, rows: Sequence[int], cols: Optional[Sequence[int]] = None) -> "PolyMatrix":
        cols = rows if cols is None else cols
        return PolyMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols], self.vars)

    def trace(self) -> Poly:
        if not self.is_square():
            raise NotSquare(f"trace of a {self.rows}x{self.cols} matrix")
        acc = Poly.zero(self.vars)
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    # arithmetic
    def _same_shape(self, other: "PolyMatrix", what: str) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"cannot {what} {self.rows}x{self.cols} and {other.rows}x{other.cols}",
                {"left": [self.rows, self.cols], "right": [other.rows, other.cols]},
            )

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other, "add")
        return PolyMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other, "subtract")
        return PolyMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [-a for a in self.entries], self.vars)

    def scale(self, p) -> "PolyMatrix":
        p = _as_poly(p)
        return PolyMatrix(self.rows, self.cols, [p * a for a in self.entries])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matmul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for a, b in zip(self.entries, other.entries)
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    # rendering
    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [p.to_json() for p in self.entries]}

    @classmethod
    def from_json(cls, data: Mapping) -> "PolyMatrix":
        return cls(int(data["rows"]), int(data["cols"]), [Poly.from_json(e) for e in data["entries"]])

    def to_text(self) -> str:
        lines = ["["]
        for i in range(self.rows):
            cells = ", ".join(p.to_text() for p in self.row(i))
            tail = "," if i < self.rows - 1 else ""
            lines.append(f"  [{cells}]{tail}")
        lines.append("]")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"


# -----------------------------
# Products and determinants
# -----------------------------
def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}",
            {"left": [a.rows, a.cols], "right": [b.rows, b.cols]},
        )
    out: List[Poly] = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            acc = Poly.zero()
            for k in range(a.cols):
                x = arow[k]
                if x.is_zero():
                    continue
                y = b[k, j]
                if y.is_zero():
                    continue
                acc = acc + x * y
            out.append(acc)
    return PolyMatrix(a.rows, b.cols, out)


def determinant(a: PolyMatrix) -> Poly:
    """Laplace expansion along rows, memoized on the set of used columns.

    No division happens, so it is exact over any coefficient ring.
    """
    if not a.is_square():
        raise NotSquare(f"determinant of a {a.rows}x{a.cols} matrix", {"rows": a.rows, "cols": a.cols})
    n = a.rows
    grid = a.to_rows()
    memo: Dict[int, Poly] = {}

    def minor(mask: int) -> Poly:
        # rows 0..popcount(mask)-1 already expanded against the columns in mask
        if mask in memo:
            return memo[mask]
        row = bin(mask).count("1")
        if row == n:
            return Poly.const(1, a.vars)
        acc = Poly.zero(a.vars)
        pos = 0
        for j in range(n):
            if mask & (1 << j):
                continue
            entry = grid[row][j]
            if not entry.is_zero():
                sub = minor(mask | (1 << j))
                if not sub.is_zero():
                    term = entry * sub
                    acc = acc - term if pos % 2 else acc + term
            pos += 1
        memo[mask] = acc
        return acc

    return minor(0)


def adjugate(a: PolyMatrix) -> PolyMatrix:
    if not a.is_square():
        raise NotSquare(f"adjugate of a {a.rows}x{a.cols} matrix")
    n = a.rows
    if n == 1:
        return PolyMatrix.identity(1, a.vars)
    out: List[Poly] = []
    for i in range(n):
        for j in range(n):
            keep_rows = [r for r in range(n) if r != j]
            keep_cols = [c for c in range(n) if c != i]
            cof = determinant(a.submatrix(keep_rows, keep_cols))
            out.append(-cof if (i + j) % 2 else cof)
    return PolyMatrix(n, n, out, a.vars)


def adjugate_inverse(a: PolyMatrix) -> PolyMatrix:
    """adj(A)/det(A); only for determinants that are non-zero constants."""
    det = determinant(a)
    if det.is_zero() or not det.is_constant():
        raise NonUnitDeterminant(
            "determinant is not a unit of the polynomial ring",
            {"determinant": det.to_text(), "size": a.rows},
        )
    inv: GaussRat = det.as_constant().inverse()
    return adjugate(a).map(lambda p: p.scale(inv))


def conjugate(b: PolyMatrix, m: PolyMatrix) -> PolyMatrix:
    """B·M·B⁻¹."""
    return conj2(b, m, b)


def conj2(b_left: PolyMatrix, m: PolyMatrix, b_right: PolyMatrix) -> PolyMatrix:
    """B_left·M·B_right⁻¹."""
    return matmul(matmul(b_left, m), adjugate_inverse(b_right))


# -----------------------------
# Block structure
# -----------------------------
def _block_of(partition: Partition, n: int) -> Dict[int, int]:
    owner: Dict[int, int] = {}
    for b, idx in enumerate(partition):
        for i in idx:
            if i in owner or not 0 <= i < n:
                raise DimensionMismatch(f"partition {list(map(list, partition))} is not a partition of 0..{n - 1}")
            owner[i] = b
    if len(owner) != n:
        raise DimensionMismatch(f"partition {list(map(list, partition))} does not cover 0..{n - 1}")
    return owner


def block_violations(m: PolyMatrix, partition: Partition) -> List[Tuple[int, int]]:
    if not m.is_square():
        raise NotSquare("block structure needs a square matrix")
    owner = _block_of(partition, m.rows)
    return [
        (i, j)
        for i in range(m.rows)
        for j in range(m.cols)
        if owner[i] != owner[j] and not m[i, j].is_zero()
    ]


def block_pattern(m: PolyMatrix, partition: Partition) -> bool:
    """True when every entry linking two different blocks is zero."""
    return not block_violations(m, partition)


def blocks(m: PolyMatrix, partition: Partition) -> List[PolyMatrix]:
    return [m.submatrix(list(idx)) for idx in partition]


def direct_sum(parts: Sequence[PolyMatrix], partition: Partition) -> PolyMatrix:
    """Place square blocks at the index sets of `partition` (inverse of `blocks`)."""
    if len(parts) != len(partition):
        raise DimensionMismatch(f"{len(parts)} blocks for {len(partition)} index sets")
    n = sum(len(idx) for idx in partition)
    _block_of(partition, n)
    grid: List[List[Poly]] = [[Poly.zero() for _ in range(n)] for _ in range(n)]
    for part, idx in zip(parts, partition):
        if part.rows != len(idx) or part.cols != len(idx):
            raise DimensionMismatch(f"block {part.rows}x{part.cols} does not fit index set {list(idx)}")
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                grid[i][j] = part[a, b]
    return PolyMatrix.from_rows(grid)


def quadratic_form_matrix(q: Poly, names: Sequence[str]) -> PolyMatrix:
    """Symmetric coefficient matrix (½ of the Hessian) of a form quadratic in `names`."""
    half = GaussRat(1, 0) / 2
    out: List[Poly] = []
    for a in names:
        da = derivative(q, a)
        for b in names:
            out.append(derivative(da, b).scale(half))
    n = len(names)
    return PolyMatrix(n, n, out)
