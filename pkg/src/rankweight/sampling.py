"""Uniform random generation of rank-k matrices via the CR decomposition.

A rank-k matrix splits uniquely as C @ R with C a full-column-rank m-by-k
matrix and R the RREF basis of the row space; picking C uniformly among
full-rank m-by-k matrices and R uniformly among k-dimensional row spaces,
independently, makes every rank-k matrix equally likely.  Both factors are
built by rejection: draw a uniform vector, reject it when it falls in the
span of the ones already accepted (acceptance probability is at least
1 - 1/q, so expected draws per vector stay below 2).
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from .gf import Field
from .matrix import Matrix

# Default seed for every randomized entry point; the CLI lets the
# RANKWEIGHT_SEED environment variable or --seed override it.
DEFAULT_SEED = 20260207

_PARALLEL_MIN_DRAWS = 1 << 12


class RandomStream:
    """Deterministic, splittable random source (PCG64 behind a SeedSequence).

    The same seed yields the same draws on every platform for a given numpy
    version, and spawn() hands out independent child streams for parallel
    work.  Statistical quality is PCG64's (passes the standard test
    batteries); cryptographic strength is explicitly not a goal.
    """

    _BLOCK = 4096

    def __init__(self, seed: int = DEFAULT_SEED, *, _sequence=None):
        self.seed = seed
        self._sequence = np.random.SeedSequence(seed) if _sequence is None else _sequence
        self._rng = np.random.Generator(np.random.PCG64(self._sequence))
        self._buffers: Dict[int, List[int]] = {}
        self._positions: Dict[int, int] = {}

    def spawn(self, count: int) -> List["RandomStream"]:
        return [RandomStream(self.seed, _sequence=child) for child in self._sequence.spawn(count)]

    def field_vector(self, q: int, length: int) -> List[int]:
        """Uniform vector in F_q^length, as a list of element indices.

        Values are served from per-q blocks drawn in bulk; the draw sequence
        is still a pure function of the seed.
        """
        pos = self._positions.get(q, 0)
        buf = self._buffers.get(q)
        if buf is None or pos + length > len(buf):
            buf = self._rng.integers(0, q, size=max(self._BLOCK, length)).tolist()
            self._buffers[q] = buf
            pos = 0
        self._positions[q] = pos + length
        return buf[pos:pos + length]

    def integer(self, upper: int) -> int:
        return int(self._rng.integers(0, upper))


def _reduce_against(field: Field, basis: List, vec: List[int]) -> List[int]:
    # basis rows are in echelon form (ascending pivot columns, unit pivots)
    mul, sub = field.mul, field.sub
    v = list(vec)
    for pc, row in basis:
        c = v[pc]
        if c:
            for j in range(pc, len(v)):
                y = row[j]
                if y:
                    v[j] = sub(v[j], mul(c, y))
    return v


def _insert_into_basis(field: Field, basis: List, reduced: List[int]) -> None:
    pc = next(j for j, x in enumerate(reduced) if x)
    pv = reduced[pc]
    if pv != 1:
        ip = field.inv(pv)
        reduced = [field.mul(ip, x) for x in reduced]
    pos = 0
    while pos < len(basis) and basis[pos][0] < pc:
        pos += 1
    basis.insert(pos, (pc, reduced))


def _independent_vectors(field: Field, count: int, length: int,
                         stream: RandomStream) -> List[List[int]]:
    """`count` sequentially independent uniform vectors of the given length."""
    basis: List = []
    picked: List[List[int]] = []
    while len(picked) < count:
        v = stream.field_vector(field.q, length)
        reduced = _reduce_against(field, basis, v)
        if any(reduced):
            picked.append(v)
            _insert_into_basis(field, basis, reduced)
    return picked


def sample_full_rank(m: int, k: int, field: Field, stream: RandomStream) -> Matrix:
    """Uniform m-by-k matrix of rank k, built column by column."""
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    return Matrix.from_columns(field, _independent_vectors(field, k, m, stream))


def sample_rref(k: int, n: int, field: Field, stream: RandomStream) -> Matrix:
    """Uniform RREF basis of a uniform k-dimensional subspace of F_q^n.

    k independent rows pin down a uniform subspace (every subspace has the
    same number of ordered bases), and reducing them to RREF yields its
    canonical basis.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    rows = _independent_vectors(field, k, n, stream)
    return Matrix.from_rows(field, rows).rref().matrix


def sample_rank_k(m: int, n: int, k: int, field: Field, stream: RandomStream) -> Matrix:
    """Uniform m-by-n matrix of rank k over the field."""
    if not 1 <= k <= min(m, n):
        raise ValueError(f"need 1 <= k <= min(m, n), got k={k}, m={m}, n={n}")
    return sample_full_rank(m, k, field, stream) @ sample_rref(k, n, field, stream)


@dataclass(frozen=True)
class EmpiricalPmf:
    """Weight histogram of sampled matrices."""
    sample_count: int
    counts: Dict[int, int]

    def frequencies(self) -> Dict[int, Fraction]:
        return {w: Fraction(c, self.sample_count) for w, c in sorted(self.counts.items())}

    def mean(self) -> Fraction:
        return Fraction(sum(w * c for w, c in self.counts.items()), self.sample_count)


def _empirical_block(m: int, n: int, k: int, field: Field, draws: int,
                     stream: RandomStream) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for _ in range(draws):
        w = sample_rank_k(m, n, k, field, stream).weight()
        counts[w] = counts.get(w, 0) + 1
    return counts


def empirical_weight_pmf(m: int, n: int, k: int, field: Field, draws: int,
                         stream: Optional[RandomStream] = None,
                         workers: int = 1) -> EmpiricalPmf:
    """Weight histogram of `draws` independent uniform rank-k samples.

    With workers > 1 the draws are split over child streams spawned from
    `stream`, so results are reproducible for a fixed (seed, workers) pair
    and histograms merge by addition.
    """
    if draws < 1:
        raise ValueError("draws must be >= 1")
    if stream is None:
        stream = RandomStream()
    if workers > 1 and draws >= _PARALLEL_MIN_DRAWS:
        shares = [draws // workers + (1 if i < draws % workers else 0) for i in range(workers)]
        substreams = stream.spawn(workers)
        counts: Dict[int, int] = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_empirical_block, m, n, k, field, share, sub)
                for share, sub in zip(shares, substreams)
                if share
            ]
            for fut in futures:
                for w, c in fut.result().items():
                    counts[w] = counts.get(w, 0) + c
    else:
        counts = _empirical_block(m, n, k, field, draws, stream)
    return EmpiricalPmf(draws, counts)
