"""Exhaustive enumeration of all q**(m*n) matrices at small sizes.

This is the ground-truth side of every closed form in the package: it walks
the full matrix space with a base-q odometer, recomputing rank per matrix by
elimination on a scratch copy, and tallies joint (rank, weight) counts or
per-cell non-zero counts.  The state count is capped (default 2**24) and
exceeding the cap is an error, never a silent truncation.

The index range [0, q**(m*n)) partitions into disjoint blocks whose partial
tables merge by addition, so scans can spread over worker processes.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .gf import Field
from .matrix import _rank_generic, _rank_gf2

DEFAULT_CAP = 1 << 24

# Below this many states a process pool costs more than it saves.
_PARALLEL_MIN_STATES = 1 << 15


@dataclass(frozen=True)
class JointTable:
    """Exact count of m-by-n matrices over F_q by (rank, weight)."""
    m: int
    n: int
    q: int
    counts: Mapping[Tuple[int, int], int]

    def total(self) -> int:
        return sum(self.counts.values())

    def rank_total(self, k: int) -> int:
        return sum(c for (r, _), c in self.counts.items() if r == k)

    def rank_totals(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (r, _), c in self.counts.items():
            out[r] = out.get(r, 0) + c
        return out

    def weight_counts(self, k: int) -> Dict[int, int]:
        return {w: c for (r, w), c in self.counts.items() if r == k}

    def rank_weight_pmf(self, k: int) -> Dict[int, Fraction]:
        total = self.rank_total(k)
        if total == 0:
            raise ValueError(f"no matrices of rank {k}")
        return {w: Fraction(c, total) for w, c in sorted(self.weight_counts(k).items())}

    def mean_weight(self, k: int) -> Fraction:
        total = self.rank_total(k)
        if total == 0:
            raise ValueError(f"no matrices of rank {k}")
        return Fraction(sum(w * c for (r, w), c in self.counts.items() if r == k), total)

    def to_csv(self) -> str:
        lines = ["rank,weight,count"]
        lines += [f"{r},{w},{self.counts[r, w]}" for r, w in sorted(self.counts)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, m: int, n: int, q: int) -> "JointTable":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if lines[0] != "rank,weight,count":
            raise ValueError("bad joint-table header")
        counts = {}
        for ln in lines[1:]:
            r, w, c = (int(x) for x in ln.split(","))
            counts[r, w] = c
        return cls(m, n, q, counts)


@dataclass(frozen=True)
class EntryCountTable:
    """Per-cell count of rank-k matrices with a non-zero in that cell."""
    m: int
    n: int
    q: int
    k: int
    counts: Tuple[Tuple[int, ...], ...]

    def is_constant(self) -> bool:
        first = self.counts[0][0]
        return all(c == first for row in self.counts for c in row)

    def to_csv(self) -> str:
        lines = ["row,col,count"]
        lines += [
            f"{i},{j},{self.counts[i][j]}"
            for i in range(self.m)
            for j in range(self.n)
        ]
        return "\n".join(lines) + "\n"


def _check_scan_args(m: int, n: int, field: Field, cap: int) -> int:
    if not isinstance(field, Field):
        raise ValueError("enumeration requires a genuine Field, not a bare order")
    if m < 1 or n < 1:
        raise ValueError("dimensions must be >= 1")
    states = field.q ** (m * n)
    if states > cap:
        raise ValueError(
            f"q**(m*n) = {states} exceeds the enumeration cap {cap}; "
            "raise the cap explicitly to proceed"
        )
    return states


def _digits_of(index: int, q: int, size: int) -> list:
    digits = []
    for _ in range(size):
        index, r = divmod(index, q)
        digits.append(r)
    return digits


def _scan_joint_block(field: Field, m: int, n: int, start: int, stop: int) -> Dict:
    q = field.q
    size = m * n
    digits = _digits_of(start, q, size)
    weight = sum(1 for d in digits if d)
    counts: Dict[Tuple[int, int], int] = {}
    binary = q == 2
    idx = start
    while idx < stop:
        if binary:
            masks = []
            for i in range(0, size, n):
                v = 0
                for j in range(n):
                    if digits[i + j]:
                        v |= 1 << j
                if v:
                    masks.append(v)
            rank = _rank_gf2(masks)
        else:
            rank = _rank_generic(field, [digits[i:i + n] for i in range(0, size, n)], n)
        key = (rank, weight)
        counts[key] = counts.get(key, 0) + 1
        idx += 1
        pos = 0
        while pos < size:
            d = digits[pos] + 1
            if d == q:
                digits[pos] = 0
                weight -= 1
                pos += 1
            else:
                digits[pos] = d
                if d == 1:
                    weight += 1
                break
    return counts


def _scan_entry_block(field: Field, m: int, n: int, k: int, start: int, stop: int) -> list:
    q = field.q
    size = m * n
    digits = _digits_of(start, q, size)
    cells = [0] * size
    binary = q == 2
    idx = start
    while idx < stop:
        if binary:
            masks = []
            for i in range(0, size, n):
                v = 0
                for j in range(n):
                    if digits[i + j]:
                        v |= 1 << j
                if v:
                    masks.append(v)
            rank = _rank_gf2(masks)
        else:
            rank = _rank_generic(field, [digits[i:i + n] for i in range(0, size, n)], n)
        if rank == k:
            for t in range(size):
                if digits[t]:
                    cells[t] += 1
        idx += 1
        pos = 0
        while pos < size:
            d = digits[pos] + 1
            if d == q:
                digits[pos] = 0
                pos += 1
            else:
                digits[pos] = d
                break
    return cells


def _block_bounds(states: int, workers: int) -> list:
    step, extra = divmod(states, workers)
    bounds, lo = [], 0
    for i in range(workers):
        hi = lo + step + (1 if i < extra else 0)
        if hi > lo:
            bounds.append((lo, hi))
        lo = hi
    return bounds


def enumerate_joint(m: int, n: int, field: Field, cap: int = DEFAULT_CAP,
                    workers: int = 1) -> JointTable:
    """Joint (rank, weight) counts over every m-by-n matrix, exactly."""
    states = _check_scan_args(m, n, field, cap)
    if workers > 1 and states >= _PARALLEL_MIN_STATES:
        counts: Dict[Tuple[int, int], int] = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_scan_joint_block, field, m, n, lo, hi)
                for lo, hi in _block_bounds(states, workers)
            ]
            for fut in futures:
                for key, c in fut.result().items():
                    counts[key] = counts.get(key, 0) + c
    else:
        counts = _scan_joint_block(field, m, n, 0, states)
    return JointTable(m, n, field.q, counts)


def enumerate_entry_counts(m: int, n: int, field: Field, k: int,
                           cap: int = DEFAULT_CAP, workers: int = 1) -> EntryCountTable:
    """Per-cell non-zero counts among rank-k matrices, exactly."""
    states = _check_scan_args(m, n, field, cap)
    if not 1 <= k <= min(m, n):
        raise ValueError(f"need 1 <= k <= min(m, n), got k={k}, m={m}, n={n}")
    if workers > 1 and states >= _PARALLEL_MIN_STATES:
        cells = [0] * (m * n)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_scan_entry_block, field, m, n, k, lo, hi)
                for lo, hi in _block_bounds(states, workers)
            ]
            for fut in futures:
                for t, c in enumerate(fut.result()):
                    cells[t] += c
    else:
        cells = _scan_entry_block(field, m, n, k, 0, states)
    grid = tuple(tuple(cells[i * n:(i + 1) * n]) for i in range(m))
    return EntryCountTable(m, n, field.q, k, grid)
