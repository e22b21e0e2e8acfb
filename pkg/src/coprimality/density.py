"""Prime sieve and the certified Euler product for the tuple density."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import Graph
from .polynomial import GraphPolynomial, compute_poly, evaluate_tail

MAX_SIEVE_BOUND = 10**8
SEGMENTED_ABOVE = 10**7
DEFAULT_PRIME_BOUND = 10**6
# Rounding allowance charged per Euler factor.
FLOAT_BUDGET_PER_FACTOR = 1e-12


class DensityError(ValueError):
    pass


@dataclass(frozen=True)
class PrimeTable:
    bound: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)


def primes_up_to(bound: int) -> PrimeTable:
    if isinstance(bound, bool) or not isinstance(bound, (int, np.integer)):
        raise DensityError(f"sieve bound must be an integer, got {bound!r}")
    bound = int(bound)
    if not 2 <= bound <= MAX_SIEVE_BOUND:
        raise DensityError(f"sieve bound {bound} outside 2..{MAX_SIEVE_BOUND}")
    return _prime_table(bound)


@lru_cache(maxsize=8)
def _prime_table(bound: int) -> PrimeTable:
    if bound > SEGMENTED_ABOVE:
        primes = _segmented_sieve(bound)
    else:
        primes = _odd_sieve(bound)
    primes.flags.writeable = False
    return PrimeTable(bound, primes)


def _odd_sieve(bound: int) -> np.ndarray:
    # index i stands for the odd number 2*i + 1
    odd = np.ones((bound + 1) // 2, dtype=bool)
    odd[0] = False
    for i in range(1, (math.isqrt(bound) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    return np.concatenate(([2], 2 * np.flatnonzero(odd) + 1)).astype(np.int64)


def _segmented_sieve(bound: int, segment: int = 1 << 22) -> np.ndarray:
    base = _odd_sieve(math.isqrt(bound))[1:]
    chunks = [np.array([2], dtype=np.int64)]
    low = 3
    while low <= bound:
        high = min(low + 2 * segment, bound + 1)
        flags = np.ones((high - low + 1) // 2, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, (low + p - 1) // p * p)
            if start % 2 == 0:
                start += p
            flags[(start - low) // 2 :: p] = False
        found = low + 2 * np.flatnonzero(flags)
        chunks.append(found[found <= bound].astype(np.int64))
        low = high if high % 2 else high + 1
    primes = np.concatenate(chunks)
    if bound < 3:
        primes = primes[:1]
    return primes


@dataclass(frozen=True)
class DensityEstimate:
    value: float
    prime_bound: int
    tail_bound: float
    float_budget: float
    graph_id: str

    def interval(self) -> tuple[float, float]:
        slack = self.tail_bound + self.float_budget
        return self.value - slack, self.value + slack


def tail_bound(p: GraphPolynomial, prime_bound: int) -> float:
    """Bound on ``|density - truncated product|`` from primes above ``prime_bound``.

    With ``S`` the tail mass of ``p`` and ``P >= 2S``, every omitted factor
    satisfies ``|p(1/q) - 1| <= S/q**2 <= 1/2``. Then ``|log(1+u)| <= 2|u|``
    gives ``|log tail| <= 2S * sum_{n>P} n**-2 <= 2S/P``. The omitted
    factors are probabilities, so the tail lies in ``[exp(-2S/P), 1]`` and
    the truncated value is at most 1, which bounds the absolute error by
    ``2S/P`` as well.
    """
    s = p.tail_mass()
    if prime_bound < 2 or prime_bound < 2 * s:
        raise DensityError(
            f"prime bound {prime_bound} below the validity threshold 2S = {2 * s}"
        )
    return 2 * s / prime_bound


def density(g: Graph, prime_bound: int = DEFAULT_PRIME_BOUND) -> DensityEstimate:
    if prime_bound < 2:
        raise DensityError(f"prime bound must be at least 2, got {prime_bound}")
    poly = compute_poly(g, signed=True)
    eps = tail_bound(poly, prime_bound)
    if g.e == 0:
        return DensityEstimate(1.0, prime_bound, 0.0, 0.0, g.graph_id())
    primes = primes_up_to(prime_bound).primes
    t = 1.0 / primes.astype(np.float64)
    # Horner on the non-constant part, vectorised over all primes at once.
    u = np.zeros_like(t)
    for c in reversed(poly.coefficients[1:]):
        u = u * t + float(c)
    u *= t
    if np.any(u <= -1.0):
        raise AssertionError(f"{g}: non-positive Euler factor encountered")
    log_total = math.fsum(np.log1p(u).tolist())
    return DensityEstimate(
        value=math.exp(log_total),
        prime_bound=prime_bound,
        tail_bound=eps,
        float_budget=FLOAT_BUDGET_PER_FACTOR * len(primes),
        graph_id=g.graph_id(),
    )


def euler_factor(p: GraphPolynomial, prime: int) -> float:
    return 1.0 + evaluate_tail(p, 1.0 / prime)
