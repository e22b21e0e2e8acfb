"""Exact counts of constrained tuples and the error-term diagnostic.

``g(x)`` counts tuples ``(a_1, ..., a_v)`` with every ``a_r <= x`` and
``gcd(a_r, a_s) == 1`` for every edge ``{r, s}``. Two independent exact
counters are provided:

* ``count_bruteforce`` walks the tuples directly, testing gcds;
* ``count_moebius`` evaluates the inclusion-exclusion sum
  ``sum mu(n_1)...mu(n_e) prod_r floor(x / N_r)`` over squarefree edge
  numberings with every ``n_a <= x``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .density import DensityEstimate, primes_up_to
from .graph import Graph, max_degree

BRUTEFORCE_CAP = 10**9
MOEBIUS_BRANCH_CAP = 1 << 28

METHODS = ("bruteforce", "moebius")


class CountCapError(ValueError):
    pass


class GraphMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class CountResult:
    x: int
    count: int
    method: str
    graph_id: str


@dataclass(frozen=True)
class ErrorDiagnostic:
    x: int
    g: int
    main_term: float
    abs_error: float
    ratio: float
    d: int
    method: str
    log: str = "natural"


def _check_x(x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or x < 1:
        raise ValueError(f"x must be a positive integer, got {x!r}")
    return int(x)


def _chunks(values: list[int], parts: int) -> list[list[int]]:
    # Round-robin so that cheap and expensive leading values spread evenly.
    parts = max(1, min(parts, len(values)))
    return [values[i::parts] for i in range(parts)]


def _run_partitioned(worker, graph: Graph, x: int, leading: list[int], threads: int) -> int:
    if threads <= 1 or len(leading) <= 1:
        return worker(graph, x, leading)
    pieces = _chunks(leading, threads)
    with ProcessPoolExecutor(max_workers=len(pieces)) as pool:
        partial = list(pool.map(worker, [graph] * len(pieces), [x] * len(pieces), pieces))
    return sum(partial)


# -- brute force ------------------------------------------------------------


def _independent_tail(g: Graph) -> tuple[list[int], list[int]]:
    """Split vertices (0-based) into an enumerated prefix and an independent set.

    Once every prefix vertex has a value, the independent vertices no longer
    constrain each other, so their admissible values can be counted rather
    than walked.
    """
    adj = [set() for _ in range(g.v)]
    for r, s in g.edges:
        adj[r - 1].add(s - 1)
        adj[s - 1].add(r - 1)
    tail: list[int] = []
    for u in sorted(range(g.v), key=lambda u: (len(adj[u]), u)):
        if not adj[u] & set(tail):
            tail.append(u)
    prefix = sorted(set(range(g.v)) - set(tail), key=lambda u: (-len(adj[u]), u))
    return prefix, sorted(tail)


class _CoprimeMasks:
    """Bit ``b`` of ``mask(a)`` is set iff ``1 <= b <= x`` and ``gcd(a, b) == 1``."""

    def __init__(self, x: int):
        self.x = x
        self.values = np.arange(x + 1, dtype=np.int64)
        self.cache: dict[int, int] = {}

    def __call__(self, a: int) -> int:
        mask = self.cache.get(a)
        if mask is None:
            ok = np.gcd(self.values, a) == 1
            ok[0] = False
            mask = int.from_bytes(np.packbits(ok, bitorder="little").tobytes(), "little")
            self.cache[a] = mask
        return mask


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _bruteforce_worker(g: Graph, x: int, leading: list[int]) -> int:
    prefix, tail = _independent_tail(g)
    pos = {u: i for i, u in enumerate(prefix)}
    adj = [[] for _ in range(g.v)]
    for r, s in g.edges:
        adj[r - 1].append(s - 1)
        adj[s - 1].append(r - 1)
    earlier = [[pos[w] for w in adj[u] if w in pos and pos[w] < i] for i, u in enumerate(prefix)]
    tail_nbrs = [[pos[w] for w in adj[u]] for u in tail]
    full = (1 << (x + 1)) - 2
    masks = _CoprimeMasks(x)
    values = [0] * len(prefix)
    k = len(prefix)

    def leaf() -> int:
        out = 1
        for nbrs in tail_nbrs:
            if not nbrs:
                out *= x
                continue
            c = full
            for j in nbrs:
                c &= masks(values[j])
            out *= c.bit_count()
            if not out:
                break
        return out

    def walk(i: int) -> int:
        if i == k:
            return leaf()
        c = full
        for j in earlier[i]:
            c &= masks(values[j])
        total = 0
        for a in _bits(c):
            values[i] = a
            total += walk(i + 1)
        return total

    total = 0
    for a in leading:
        values[0] = a
        total += walk(1)
    return total


def count_bruteforce(g: Graph, x: int, threads: int = 1) -> CountResult:
    x = _check_x(x)
    if x**g.v > BRUTEFORCE_CAP:
        raise CountCapError(f"{g}, x={x}: x^v = {x**g.v} exceeds the brute-force cap {BRUTEFORCE_CAP}")
    if g.e == 0:
        count = x**g.v
    else:
        count = _run_partitioned(_bruteforce_worker, g, x, list(range(1, x + 1)), threads)
    return CountResult(x, count, "bruteforce", g.graph_id())


# -- Moebius inclusion-exclusion --------------------------------------------


def moebius_table(x: int) -> np.ndarray:
    """``mu(n)`` for ``0 <= n <= x`` (entry 0 unused)."""
    mu = np.ones(x + 1, dtype=np.int8)
    mu[0] = 0
    if x >= 2:
        for p in primes_up_to(x).primes.tolist():
            mu[p::p] *= -1
            mu[p * p :: p * p] = 0
    return mu


def squarefree_up_to(x: int) -> tuple[list[int], list[int]]:
    mu = moebius_table(x)
    n = np.flatnonzero(mu)
    return n.tolist(), mu[n].astype(int).tolist()


class _BranchBudget(Exception):
    pass


def _moebius_worker(g: Graph, x: int, leading: list[int]) -> tuple[int, int]:
    """Partial sum over numberings whose first edge number is in ``leading``.

    Returns ``(sum, branches visited)``; gives up once the visit count
    passes ``MOEBIUS_BRANCH_CAP``.
    """
    sqf, mus = squarefree_up_to(x)
    mu_of = dict(zip(sqf, mus))
    ends = [(r - 1, s - 1) for r, s in g.edges]
    e = len(ends)
    gcd = math.gcd
    labels = [1] * g.v
    visited = 0

    def walk(i: int, w: int) -> int:
        nonlocal visited
        visited += 1
        if visited > MOEBIUS_BRANCH_CAP:
            raise _BranchBudget
        if i == e:
            out = w
            for n in labels:
                out *= x // n
            return out
        r, s = ends[i]
        lr, ls = labels[r], labels[s]
        total = 0
        for n, mu in zip(sqf, mus):
            nr = lr * n // gcd(lr, n)
            if nr > x:
                continue
            ns = ls * n // gcd(ls, n)
            if ns > x:
                continue
            labels[r], labels[s] = nr, ns
            total += walk(i + 1, w * mu)
        labels[r], labels[s] = lr, ls
        return total

    r, s = ends[0]
    total = 0
    try:
        for n in leading:
            labels[r] = labels[s] = n
            total += walk(1, mu_of[n])
    except _BranchBudget:
        return 0, visited
    return total, visited


def count_moebius(g: Graph, x: int, threads: int = 1) -> CountResult:
    """Exact count by inclusion-exclusion over squarefree edge numberings.

    Branches with some ``N_r > x`` contribute ``floor(x/N_r) = 0`` and are
    pruned. The cap applies to branches actually visited, so the outcome
    does not depend on how the work is split across ``threads``.
    """
    x = _check_x(x)
    if g.e == 0:
        return CountResult(x, x**g.v, "moebius", g.graph_id())
    sqf, _ = squarefree_up_to(x)
    if threads <= 1 or len(sqf) <= 1:
        parts = [_moebius_worker(g, x, sqf)]
    else:
        pieces = _chunks(sqf, threads)
        with ProcessPoolExecutor(max_workers=len(pieces)) as pool:
            parts = list(pool.map(_moebius_worker, [g] * len(pieces), [x] * len(pieces), pieces))
    visited = sum(v for _, v in parts)
    if visited > MOEBIUS_BRANCH_CAP:
        raise CountCapError(
            f"{g}, x={x}: Moebius enumeration exceeds {MOEBIUS_BRANCH_CAP} branches"
        )
    return CountResult(x, sum(c for c, _ in parts), "moebius", g.graph_id())


def count(g: Graph, x: int, method: str, threads: int = 1) -> CountResult:
    if method == "bruteforce":
        return count_bruteforce(g, x, threads)
    if method == "moebius":
        return count_moebius(g, x, threads)
    raise ValueError(f"unknown method {method!r}")


def squarefree_count(x: int) -> int:
    return int(np.count_nonzero(moebius_table(x)))


def feasible_methods(g: Graph, x: int) -> list[str]:
    """Counters whose a-priori caps admit ``(g, x)``, fastest first.

    Used for automatic selection. ``count_moebius`` itself enforces its cap
    on branches actually visited, which admits more cases than the a-priori
    bound ``squarefree_count(x) ** e``.
    """
    out = []
    if g.e == 0 or squarefree_count(x) ** g.e <= MOEBIUS_BRANCH_CAP:
        out.append("moebius")
    if x**g.v <= BRUTEFORCE_CAP:
        out.append("bruteforce")
    return out


# -- asymptotics --------------------------------------------------------------


def main_term(g: Graph, x: int, dens: DensityEstimate) -> float:
    if dens.graph_id != g.graph_id():
        raise GraphMismatchError("density estimate was computed for a different graph")
    return dens.value * float(_check_x(x)) ** g.v


def error_diagnostic(g: Graph, x: int, dens: DensityEstimate, threads: int = 1) -> ErrorDiagnostic:
    x = _check_x(x)
    if x < 3:
        raise ValueError(f"error diagnostic needs x >= 3, got {x}")
    methods = feasible_methods(g, x)
    if not methods:
        raise CountCapError(f"{g}, x={x}: no exact counter is feasible")
    result = None
    for method in methods:
        try:
            result = count(g, x, method, threads)
            break
        except CountCapError:
            continue
    if result is None:
        raise CountCapError(f"{g}, x={x}: no exact counter is feasible")
    mt = main_term(g, x, dens)
    d = max_degree(g)
    abs_error = abs(result.count - mt)
    scale = float(x) ** (g.v - 1) * math.log(x) ** d
    return ErrorDiagnostic(x, result.count, mt, abs_error, abs_error / scale, d, result.method)
