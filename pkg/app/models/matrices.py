# models/matrices.py
from fractions import Fraction
from typing import Callable, List, Sequence

from app.models.rationals import RationalLike, to_rational


class MatrixQ:
    """
    Dense matrix of Fractions addressed by the row and column labels used in the formulas,
    so build_M(n)[i, j] reads m_{i,j} directly (rows start at row_start, columns at col_start).
    """

    __slots__ = ("name", "row_start", "col_start", "_rows")

    def __init__(
        self,
        rows: Sequence[Sequence[RationalLike]],
        row_start: int = 0,
        col_start: int = 0,
        name: str = "",
    ):
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            raise ValueError("Ragged matrix rows")
        self._rows = tuple(tuple(to_rational(x) for x in row) for row in rows)
        self.row_start = row_start
        self.col_start = col_start
        self.name = name

    @classmethod
    def build(
        cls,
        row_labels: range,
        col_labels: range,
        entry: Callable[[int, int], RationalLike],
        name: str = "",
    ) -> "MatrixQ":
        rows = [[entry(i, j) for j in col_labels] for i in row_labels]
        return cls(rows, row_labels.start, col_labels.start, name)

    @classmethod
    def identity(cls, n: int, start: int = 0) -> "MatrixQ":
        labels = range(start, start + n)
        return cls.build(labels, labels, lambda i, j: 1 if i == j else 0, name="I")

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    @property
    def n_cols(self) -> int:
        return len(self._rows[0]) if self._rows else 0

    @property
    def row_labels(self) -> range:
        return range(self.row_start, self.row_start + self.n_rows)

    @property
    def col_labels(self) -> range:
        return range(self.col_start, self.col_start + self.n_cols)

    def __getitem__(self, key) -> Fraction:
        i, j = key
        if i not in self.row_labels or j not in self.col_labels:
            raise IndexError(f"({i}, {j}) is outside the truncation of {self.name or 'matrix'}")
        return self._rows[i - self.row_start][j - self.col_start]

    def row(self, i: int) -> List[Fraction]:
        return list(self._rows[i - self.row_start])

    def rows(self) -> List[List[Fraction]]:
        return [list(row) for row in self._rows]

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.n_cols != other.n_rows:
            raise ValueError(f"Shape mismatch: {self.n_rows}x{self.n_cols} @ {other.n_rows}x{other.n_cols}")
        rows = [
            [sum((a * other._rows[k][j] for k, a in enumerate(row) if a), Fraction(0)) for j in range(other.n_cols)]
            for row in self._rows
        ]
        return MatrixQ(rows, self.row_start, other.col_start)

    def apply(self, vector: Sequence[RationalLike]) -> List[Fraction]:
        if len(vector) != self.n_cols:
            raise ValueError("Vector length does not match the column count")
        values = [to_rational(v) for v in vector]
        return [sum((a * v for a, v in zip(row, values)), Fraction(0)) for row in self._rows]

    def is_identity(self) -> bool:
        return self.n_rows == self.n_cols and all(
            x == (1 if r == c else 0) for r, row in enumerate(self._rows) for c, x in enumerate(row)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return (self._rows, self.row_start, self.col_start) == (other._rows, other.row_start, other.col_start)

    def __hash__(self) -> int:
        return hash((self._rows, self.row_start, self.col_start))

    def __repr__(self) -> str:
        return f"MatrixQ({self.name or '?'}, {self.n_rows}x{self.n_cols}, rows from {self.row_start}, cols from {self.col_start})"
