"""Edge-numbering sums over a graph, by direct enumeration and by multiplicativity.

An edge numbering gives each edge ``a`` a positive integer ``n_a``; vertex
``r`` then carries ``N_r``, the lcm of the numbers on its incident edges
(1 when it has none). The functions here sum weights over all numberings
whose vertex numbers multiply to ``m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable

from .density import primes_up_to
from .graph import Graph
from .polynomial import GraphPolynomial

FACTORIZE_LIMIT = 10**12
TRIAL_PRIME_BOUND = 10**6
ENUMERATION_CAP = 1 << 24


class FactorizationError(ValueError):
    pass


class EnumerationCapError(ValueError):
    pass


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def value(self) -> int:
        out = 1
        for p, k in self.factors:
            out *= p**k
        return out


@lru_cache(maxsize=1)
def _trial_primes() -> list[int]:
    return primes_up_to(TRIAL_PRIME_BOUND).primes.tolist()


def factorize(m: int) -> Factorization:
    if isinstance(m, bool) or not isinstance(m, int):
        raise FactorizationError(f"expected an integer, got {m!r}")
    if not 1 <= m <= FACTORIZE_LIMIT:
        raise FactorizationError(f"{m} outside the supported range 1..{FACTORIZE_LIMIT}")
    factors = []
    rest = m
    for p in _trial_primes():
        if p * p > rest:
            break
        if rest % p == 0:
            k = 0
            while rest % p == 0:
                rest //= p
                k += 1
            factors.append((p, k))
    # No factor up to sqrt(rest) remains, so rest is 1 or prime.
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(tuple(factors))


def moebius(n: int) -> int:
    sign = 1
    for _, k in factorize(n):
        if k > 1:
            return 0
        sign = -sign
    return sign


def _divisors(fac: Factorization, max_exponent: Callable[[int], int]) -> list[int]:
    choices = [[p**j for j in range(max_exponent(k) + 1)] for p, k in fac]
    out = []
    for combo in product(*choices):
        d = 1
        for x in combo:
            d *= x
        out.append(d)
    return sorted(out)


def _numbering_sum(g: Graph, m: int, candidates: list[int], weight: Callable[[int], int]) -> int:
    e = g.e
    if e == 0:
        return 1 if m == 1 else 0
    if len(candidates) ** e > ENUMERATION_CAP:
        raise EnumerationCapError(
            f"{g}, m={m}: {len(candidates)}^{e} numberings exceeds the cap {ENUMERATION_CAP}"
        )
    weights = {d: weight(d) for d in candidates}
    candidates = [d for d in candidates if weights[d] != 0]
    ends = [(r - 1, s - 1) for r, s in g.edges]
    total = 0

    def walk(i: int, labels: list[int], w: int) -> None:
        nonlocal total
        if i == e:
            prod = 1
            for x in labels:
                prod *= x
            if prod == m:
                total += w
            return
        r, s = ends[i]
        lr, ls = labels[r], labels[s]
        for n in candidates:
            nr = lr * n // math.gcd(lr, n)
            ns = ls * n // math.gcd(ls, n)
            labels[r], labels[s] = nr, ns
            # partial vertex numbers divide the final ones
            prod = 1
            for x in labels:
                prod *= x
            if m % prod == 0:
                walk(i + 1, labels, w * weights[n])
        labels[r], labels[s] = lr, ls

    walk(0, [1] * g.v, 1)
    return total


def f_enumerate(g: Graph, m: int, signed: bool = True) -> int:
    """Sum of ``mu(n_1)...mu(n_e)`` (or its absolute value) over numberings with product ``m``.

    Only squarefree ``n_a`` with ``n_a**2 | m`` can contribute, since each
    edge number divides the vertex numbers at both of its ends.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    fac = factorize(m)
    candidates = _divisors(fac, lambda k: min(1, k // 2))
    if signed:
        weight = moebius
    else:
        weight = lambda n: abs(moebius(n))  # noqa: E731
    return _numbering_sum(g, m, candidates, weight)


def g_enumerate(g: Graph, m: int, f: Callable[[int], int]) -> int:
    """Same sum with an arbitrary weight ``f(n_1)...f(n_e)``; multiplicative when ``f`` is."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    candidates = _divisors(factorize(m), lambda k: k // 2)
    return _numbering_sum(g, m, candidates, f)


def f_prime_power(p: GraphPolynomial, k: int) -> int:
    return p.coefficient(k)


def f_multiplicative(p: GraphPolynomial, m: int) -> int:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    out = 1
    for _, k in factorize(m):
        out *= f_prime_power(p, k)
        if out == 0:
            break
    return out


@dataclass(frozen=True)
class EdgeNumbering:
    graph: Graph
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.graph.e:
            raise ValueError(f"need {self.graph.e} edge numbers, got {len(self.assignment)}")
        if any(n < 1 for n in self.assignment):
            raise ValueError("edge numbers must be positive")

    @property
    def vertex_numbers(self) -> tuple[int, ...]:
        labels = [1] * self.graph.v
        for (r, s), n in zip(self.graph.edges, self.assignment):
            labels[r - 1] = math.lcm(labels[r - 1], n)
            labels[s - 1] = math.lcm(labels[s - 1], n)
        return tuple(labels)

    def vertex_product(self) -> int:
        return math.prod(self.vertex_numbers)
