"""Exact counts of subspaces and rank-k matrices over F_q.

Every function here is a polynomial (or exact rational) in q, so any
integer q >= 2 is accepted; no field structure is needed until actual
matrices enter the picture.  All results are exact arbitrary-precision
integers or fractions in lowest terms.
"""

from fractions import Fraction
from math import prod


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")


def count_independent_tuples(n: int, k: int, q: int) -> int:
    """Number of ordered k-tuples of linearly independent vectors in F_q^n."""
    _check_q(q)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return prod(q**n - q**i for i in range(k))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n (the q-binomial coefficient)."""
    _check_q(q)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    num = prod(q**n - q**i for i in range(k))
    den = prod(q**k - q**i for i in range(k))
    quot, rem = divmod(num, den)
    assert rem == 0, "q-binomial division must be exact"
    return quot


def count_rank_matrices(m: int, n: int, k: int, q: int) -> int:
    """Number of m-by-n matrices of rank k over F_q."""
    _check_q(q)
    if not 0 <= k <= min(m, n):
        raise ValueError(f"need 0 <= k <= min(m, n), got k={k}, m={m}, n={n}")
    return gaussian_binomial(m, k, q) * count_independent_tuples(n, k, q)


def count_invertible(n: int, q: int) -> int:
    """Number of invertible n-by-n matrices over F_q."""
    _check_q(q)
    if n < 0:
        raise ValueError("n must be >= 0")
    return prod(q**n - q**i for i in range(n))


def subspace_ratio(n: int, k: int, q: int) -> Fraction:
    """Fraction of k-dimensional subspaces of F_q^n avoiding the first coordinate.

    Equals gaussian_binomial(n-1, k, q) / gaussian_binomial(n, k, q), which
    collapses to (q**(n-k) - 1) / (q**n - 1).
    """
    _check_q(q)
    if not 0 <= k <= n - 1:
        raise ValueError(f"need 0 <= k <= n-1, got k={k}, n={n}")
    return Fraction(q**(n - k) - 1, q**n - 1)
