"""Closed-form weight statistics of rank-k matrices over F_q.

Covers the exact per-entry non-zero probability, the full weight law of
rank-one matrices with its moments, and a Kolmogorov-Smirnov comparison of
that law against the normal distribution.  Probabilities stay exact
rationals end to end; floating point appears only in the normal cdf and KS
statistic, where the comparison target is itself continuous.

A note on the rank-one laws: the number of weight-mu vectors among the
q**m - 1 non-zero vectors of F_q^m is C(m, mu) * (q-1)**mu, so

    pr(wt = mu) = C(m, mu) * (q-1)**mu / (q**m - 1),

a binomial law conditioned on being positive.  The weight of a rank-one
matrix is the product of two such independent variables (one per CR
factor), and its law is the multiplicative convolution of the two.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .counting import _check_q, subspace_ratio

WeightPmf = Dict[int, Fraction]


def entry_nonzero_prob(m: int, n: int, k: int, q: int) -> Fraction:
    """Probability that a fixed entry of a uniform rank-k m-by-n matrix is non-zero.

    Computed in the integer form
    (q**m - q**(m-1)) * (q**n - q**(n-k)) / ((q**m - 1) * (q**n - 1)),
    an exact rational in (0, 1].
    """
    _check_q(q)
    if not 1 <= k <= min(m, n):
        raise ValueError(f"need 1 <= k <= min(m, n), got k={k}, m={m}, n={n}")
    return Fraction(
        (q**m - q**(m - 1)) * (q**n - q**(n - k)),
        (q**m - 1) * (q**n - 1),
    )


def cr_component_probs(m: int, n: int, k: int, q: int) -> Tuple[Fraction, Fraction]:
    """Per-factor non-zero probabilities for the upper-left entry.

    Returns (pr(c11 != 0), pr(r11 != 0)) for C uniform over full-rank m-by-k
    matrices and R a uniform k-dimensional row space of F_q^n.  Their product
    equals entry_nonzero_prob(m, n, k, q).
    """
    _check_q(q)
    if not 1 <= k <= min(m, n):
        raise ValueError(f"need 1 <= k <= min(m, n), got k={k}, m={m}, n={n}")
    pr_c = Fraction(q**m - q**(m - 1), q**m - 1)
    # A full row space always meets the first coordinate, so k = n gives 1.
    pr_r = Fraction(1) if k == n else 1 - subspace_ratio(n, k, q)
    return pr_c, pr_r


def average_weight(m: int, n: int, k: int, q: int) -> Fraction:
    """Expected number of non-zero entries of a uniform rank-k m-by-n matrix."""
    if k == 0:
        _check_q(q)
        if m < 1 or n < 1:
            raise ValueError("dimensions must be >= 1")
        return Fraction(0)
    return m * n * entry_nonzero_prob(m, n, k, q)


def rank1_vector_pmf(length: int, q: int) -> WeightPmf:
    """Weight law of a uniform non-zero vector of the given length over F_q."""
    _check_q(q)
    if length < 1:
        raise ValueError("length must be >= 1")
    total = q**length - 1
    return {
        mu: Fraction(math.comb(length, mu) * (q - 1) ** mu, total)
        for mu in range(1, length + 1)
    }


def rank1_weight_pmf(m: int, n: int, q: int) -> WeightPmf:
    """Weight law of a uniform rank-one m-by-n matrix over F_q.

    The weight factors as wt(C) * wt(R) over the CR decomposition, so the pmf
    is the multiplicative convolution of the two vector laws; the support
    consists only of products mu * nu with mu <= m, nu <= n.
    """
    col = rank1_vector_pmf(m, q)
    row = rank1_vector_pmf(n, q)
    pmf: WeightPmf = {}
    for mu, pc in col.items():
        for nu, pr in row.items():
            w = mu * nu
            pmf[w] = pmf.get(w, Fraction(0)) + pc * pr
    return pmf


@dataclass(frozen=True)
class MomentSummary:
    """Moments of the rank-one weight W, conditioned on W > 0 and raw.

    `mean`, `variance`, `sd` describe the actual rank-one law (the
    conditioned product of binomials); the `raw_*` fields drop the
    positivity conditioning, which is the usual large-m,n approximation.
    """
    mean: Fraction
    variance: Fraction
    sd: Decimal
    raw_mean: Fraction
    raw_second_moment: Fraction
    raw_variance: Fraction
    raw_sd: Decimal


def sqrt_decimal(x: Fraction, digits: int = 28) -> Decimal:
    """Square root of a non-negative rational as a Decimal with `digits` precision."""
    if x < 0:
        raise ValueError("square root of a negative rational")
    with localcontext() as ctx:
        ctx.prec = digits
        return (Decimal(x.numerator) / Decimal(x.denominator)).sqrt()


def rank1_moments(m: int, n: int, q: int) -> MomentSummary:
    """Closed-form moments of the rank-one weight for m-by-n matrices over F_q.

    With p = 1 - 1/q and W the unconditioned product of entry-count binomials:
      E(W)     = m*n*p**2
      E(W**2)  = m*n*p**2 + m*n*(m+n-2)*p**3 + m*(m-1)*n*(n-1)*p**4
      var(W)   = m*n*(1-n-m)*p**4 + m*n*(n+m-2)*p**3 + m*n*p**2
    and conditioning on W > 0 divides the raw moments by
    P = (1 - q**-m) * (1 - q**-n).
    """
    _check_q(q)
    if m < 1 or n < 1:
        raise ValueError("dimensions must be >= 1")
    p = Fraction(q - 1, q)
    raw_mean = m * n * p**2
    raw_m2 = m * n * p**2 + m * n * (m + n - 2) * p**3 + m * (m - 1) * n * (n - 1) * p**4
    raw_var = m * n * (1 - n - m) * p**4 + m * n * (n + m - 2) * p**3 + m * n * p**2
    support = (1 - Fraction(1, q**m)) * (1 - Fraction(1, q**n))
    mean = raw_mean / support
    variance = raw_m2 / support - mean**2
    return MomentSummary(
        mean=mean,
        variance=variance,
        sd=sqrt_decimal(variance),
        raw_mean=raw_mean,
        raw_second_moment=raw_m2,
        raw_variance=raw_var,
        raw_sd=sqrt_decimal(raw_var),
    )


def pmf_mean(pmf: Mapping[int, Fraction]) -> Fraction:
    return sum((w * p for w, p in pmf.items()), Fraction(0))


def pmf_variance(pmf: Mapping[int, Fraction]) -> Fraction:
    mean = pmf_mean(pmf)
    return sum((w * w * p for w, p in pmf.items()), Fraction(0)) - mean**2


def normal_cdf(z: float) -> float:
    """Standard normal cdf, accurate to well under 1e-10 absolute error."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def ks_distance_to_normal(pmf: Mapping[int, Fraction]) -> float:
    """Kolmogorov-Smirnov distance between a pmf and its moment-matched normal.

    The pmf is standardized by its own mean and standard deviation.  Because
    the empirical cdf is a step function and the normal cdf is continuous,
    the supremum is attained at an atom, approaching from one side or the
    other; both one-sided limits are checked at every support point.
    """
    mean = pmf_mean(pmf)
    variance = pmf_variance(pmf)
    if variance <= 0:
        raise ValueError("pmf has zero variance; KS distance is undefined")
    mu = float(mean)
    sd = math.sqrt(float(variance))
    cum = Fraction(0)
    dist = 0.0
    for w in sorted(pmf):
        phi = normal_cdf((w - mu) / sd)
        below = float(cum)
        cum += pmf[w]
        above = float(cum)
        dist = max(dist, abs(phi - below), abs(phi - above))
    return dist
