"""Dense matrices over F_q: weight, rank, reduced row echelon form, CR factorization.

Matrices are immutable values (entries held in a flat row-major tuple of
element indices), so they hash, compare, and share across tasks safely.
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .gf import Field, field_for_order


class Matrix:
    """An m-by-n matrix over a finite field."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field: Field, nrows: int, ncols: int, entries: Iterable[int]):
        if nrows < 1 or ncols < 1:
            raise ValueError("matrix dimensions must be positive")
        entries = tuple(entries)
        if len(entries) != nrows * ncols:
            raise ValueError(f"expected {nrows * ncols} entries, got {len(entries)}")
        q = field.q
        for v in entries:
            if not 0 <= v < q:
                raise ValueError(f"entry {v} is not an element index of F_{q}")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.entries = entries

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, nrows, ncols, [v for r in rows for v in r])

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence[int]]) -> "Matrix":
        ncols = len(cols)
        nrows = len(cols[0]) if cols else 0
        if any(len(c) != nrows for c in cols):
            raise ValueError("ragged columns")
        return cls(field, nrows, ncols, [cols[j][i] for i in range(nrows) for j in range(ncols)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, [0] * (nrows * ncols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def row(self, i: int) -> tuple:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.ncols]

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i * self.ncols + j]

    def weight(self) -> int:
        """Number of non-zero entries."""
        return sum(1 for v in self.entries if v)

    def rank(self) -> int:
        return rank_of_entries(self.field, self.nrows, self.ncols, self.entries)

    def rref(self) -> "RrefResult":
        """Gauss-Jordan reduction; preserves the row space."""
        field = self.field
        m, n = self.nrows, self.ncols
        rows = [list(self.row(i)) for i in range(m)]
        mul, sub, inv = field.mul, field.sub, field.inv
        pivots = []
        r = 0
        for c in range(n):
            pr = next((i for i in range(r, m) if rows[i][c]), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            pv = rows[r][c]
            if pv != 1:
                ip = inv(pv)
                rows[r] = [mul(ip, x) for x in rows[r]]
            prow = rows[r]
            for i in range(m):
                f = rows[i][c]
                if f and i != r:
                    rows[i] = [sub(x, mul(f, y)) for x, y in zip(rows[i], prow)]
            pivots.append(c)
            r += 1
            if r == m:
                break
        return RrefResult(Matrix.from_rows(field, rows), tuple(pivots), r)

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.field, [self.row(i) for i in range(self.nrows)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field:
            raise ValueError("matrices belong to different fields")
        if self.ncols != other.nrows:
            raise ValueError(
                f"inner dimensions differ: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}"
            )
        field = self.field
        add, mul = field.add, field.mul
        n, out = other.ncols, []
        bent = other.entries
        for i in range(self.nrows):
            arow = self.row(i)
            for j in range(n):
                acc = 0
                for t, x in enumerate(arow):
                    if x:
                        acc = add(acc, mul(x, bent[t * n + j]))
                out.append(acc)
        return Matrix(field, self.nrows, n, out)

    # -- text format: first line "m n q", then m rows of element indices ------

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols} {self.field.q}"]
        lines += [" ".join(str(v) for v in self.row(i)) for i in range(self.nrows)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, field: Optional[Field] = None) -> "Matrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        header = lines[0].split()
        if len(header) != 3:
            raise ValueError("matrix header must be 'm n q'")
        m, n, q = (int(x) for x in header)
        if field is None:
            field = field_for_order(q)
        elif field.q != q:
            raise ValueError(f"header order {q} does not match field order {field.q}")
        if len(lines) != m + 1:
            raise ValueError(f"expected {m} rows, got {len(lines) - 1}")
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
        if any(len(r) != n for r in rows):
            raise ValueError("row length does not match header")
        return cls.from_rows(field, rows)

    # -- value semantics -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.entries))

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(str(v) for v in self.row(i)) for i in range(self.nrows))
        return f"Matrix(F_{self.field.q}, [{rows}])"


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    pivot_columns: tuple
    rank: int


@dataclass(frozen=True)
class CRFactorization:
    """A = C @ R with C the pivot columns of A and R the non-zero rows of rref(A)."""
    C: Matrix
    R: Matrix


def cr_factor(a: Matrix) -> CRFactorization:
    """Factor a rank-k matrix as C (m-by-k, full column rank) times R (k-by-n RREF).

    R is the non-zero rows of rref(a); C is read off as the columns of `a`
    at R's pivot positions, so no linear solve is involved and the pair is
    canonical.  The zero matrix (k = 0) is rejected because R would be empty.
    """
    res = a.rref()
    k = res.rank
    if k == 0:
        raise ValueError("the zero matrix has no CR factorization")
    r = Matrix(a.field, k, a.ncols, res.matrix.entries[:k * a.ncols])
    c = Matrix.from_columns(a.field, [a.column(j) for j in res.pivot_columns])
    return CRFactorization(c, r)


def rank_of_entries(field: Field, nrows: int, ncols: int, entries: Sequence[int]) -> int:
    """Rank of a flat row-major entry sequence, by elimination on a scratch copy.

    Over F_2 rows are packed into int bitmasks and reduced with xor, which is
    what keeps exhaustive enumeration loops affordable.
    """
    if field.q == 2:
        masks = []
        for i in range(nrows):
            v = 0
            base = i * ncols
            for j in range(ncols):
                if entries[base + j]:
                    v |= 1 << j
            if v:
                masks.append(v)
        return _rank_gf2(masks)
    rows = [list(entries[i * ncols:(i + 1) * ncols]) for i in range(nrows)]
    return _rank_generic(field, rows, ncols)


def _rank_gf2(rows: Iterable[int]) -> int:
    # Pivot rows keep distinct leading bits and stay sorted by decreasing
    # leading bit, so one reduction sweep per candidate suffices.
    pivots = []
    for v in rows:
        for b, r in pivots:
            if v & b:
                v ^= r
        if v:
            b = 1 << (v.bit_length() - 1)
            pos = 0
            while pos < len(pivots) and pivots[pos][0] > b:
                pos += 1
            pivots.insert(pos, (b, v))
    return len(pivots)


def _rank_generic(field: Field, rows: Sequence[list], ncols: int) -> int:
    mul, sub, inv = field.mul, field.sub, field.inv
    pivots = []  # (pivot col, normalized row), ascending pivot col
    for row in rows:
        for pc, prow in pivots:
            c = row[pc]
            if c:
                for j in range(pc, ncols):
                    y = prow[j]
                    if y:
                        row[j] = sub(row[j], mul(c, y))
        pc = next((j for j in range(ncols) if row[j]), None)
        if pc is None:
            continue
        pv = row[pc]
        if pv != 1:
            ip = inv(pv)
            row = [mul(ip, x) for x in row]
        pos = 0
        while pos < len(pivots) and pivots[pos][0] < pc:
            pos += 1
        pivots.insert(pos, (pc, row))
    return len(pivots)
