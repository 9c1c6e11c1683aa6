"""Exact integer matrices over a poset's level order.

Every matrix produced here indexes rows and columns by ``P.level_order``
(top level first), in which the incidence matrix is lower unitriangular.
Arithmetic is exact and checked against the signed 64-bit range; leaving that
range raises :class:`CheckedOverflowError` instead of producing a value.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import CheckedOverflowError, InternalInconsistencyError
from .poset import Poset

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


def checked(value: int) -> int:
    if value > INT64_MAX or value < INT64_MIN:
        raise CheckedOverflowError(f"integer {value} leaves the signed 64-bit range")
    return value


class IntMatrix:
    """Dense immutable integer matrix, row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        data = tuple(checked(int(x)) for x in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, [0] * (rows * cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()})"

    def __str__(self) -> str:
        return format_matrix(self)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, (-x for x in self._data))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self._data, other._data)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self._data, other._data
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            for j in range(p):
                acc = 0
                for k in range(m):
                    if arow[k]:
                        acc = checked(acc + checked(arow[k] * b[k * p + j]))
                out.append(acc)
        return IntMatrix(n, p, out)

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         (self._data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.rows) if self.rows == self.cols else False

    def is_lower_unitriangular(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self[i, j] == (1 if i == j else 0)
                   for i in range(self.rows) for j in range(i, self.cols))


def vecmat(v: Sequence[int], M: IntMatrix) -> list[int]:
    """Row vector times matrix, checked."""
    if len(v) != M.rows:
        raise ValueError(f"vector of length {len(v)} against {M.shape} matrix")
    out = []
    for j in range(M.cols):
        acc = 0
        for i, x in enumerate(v):
            e = M[i, j]
            if x and e:
                acc = checked(acc + checked(x * e))
        out.append(acc)
    return out


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(u, v, strict=True):
        acc = checked(acc + checked(a * b))
    return acc


def format_matrix(M: IntMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in M.row(i)) for i in range(M.rows))


# -- poset matrices --------------------------------------------------------------

def incidence_matrix(P: Poset) -> IntMatrix:
    """Zeta matrix: entry (s, t) is 1 iff s <= t, rows/cols in level order."""
    order = P.level_order
    return IntMatrix.from_rows([[int(P.leq(s, t)) for t in order] for s in order], cols=len(order))


def incidence_restriction(P: Poset, X: Iterable[str], Y: Iterable[str]) -> IntMatrix:
    xs, ys = P.sort_level_order(X), P.sort_level_order(Y)
    return IntMatrix(len(xs), len(ys), (int(P.leq(s, t)) for s in xs for t in ys))


def frobenius_factors(P: Poset) -> list[tuple[IntMatrix, IntMatrix]]:
    """Pairs ``(F_i, F_i^-1)`` for ``i = 1 .. h-1``.

    ``F_i`` is the identity except in the row block of level ``T_i``, which
    carries the restriction of the incidence matrix to columns on levels above
    ``i``. The inverse negates that strip. ``F_{h-1} @ ... @ F_1`` equals the
    incidence matrix.
    """
    order = P.level_order
    n = len(order)
    factors = []
    for i in range(1, P.height):
        fwd = IntMatrix.identity(n).to_rows()
        inv = IntMatrix.identity(n).to_rows()
        for r, s in enumerate(order):
            if P.level_of[s] != i:
                continue
            for c, t in enumerate(order):
                if P.level_of[t] > i and P.less(s, t):
                    fwd[r][c] = 1
                    inv[r][c] = -1
        factors.append((IntMatrix.from_rows(fwd, n), IntMatrix.from_rows(inv, n)))
    return factors


def incidence_inverse(P: Poset) -> IntMatrix:
    """Exact inverse of the incidence matrix as ``F_1^-1 @ ... @ F_{h-1}^-1``."""
    n = len(P)
    result = IntMatrix.identity(n)
    for _, inv in frobenius_factors(P):
        result = result @ inv
    C = incidence_matrix(P)
    if not ((C @ result).is_identity() and (result @ C).is_identity()):
        raise InternalInconsistencyError("Frobenius product failed to invert the incidence matrix")
    return result


def mobius_matrix(P: Poset) -> IntMatrix:
    """Moebius function matrix via mu(s,s)=1, mu(s,t) = -sum_{s<=r<t} mu(s,r)."""
    order = P.level_order
    mu: dict[tuple[str, str], int] = {}
    for s in order:
        # targets above s, processed so every r in [s, t) is already known
        ups = sorted(P.up_set(s), key=lambda t: len(P.down_set(t)))
        mu[s, s] = 1
        for t in ups:
            mu[s, t] = checked(-sum(mu[s, r] for r in P.down_set(t) if r == s or P.less(s, r)))
    return IntMatrix.from_rows([[mu.get((s, t), 0) for t in order] for s in order], cols=len(order))
