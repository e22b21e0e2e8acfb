"""Edge-subset polynomials of a graph.

For every subset ``F`` of the edges, let ``cover(F)`` be the number of
vertices touched by ``F``. The signed polynomial sums ``(-1)**|F| * t**cover(F)``
over all subsets and the unsigned one sums ``t**cover(F)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph

# Evaluated states allowed before a graph is refused.
STATE_CAP = 1 << 28


class PolynomialCapError(ValueError):
    pass


@dataclass(frozen=True)
class GraphPolynomial:
    coefficients: tuple[int, ...]
    signed: bool

    @property
    def degree_bound(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> int:
        if k < 0:
            raise ValueError("coefficient index must be non-negative")
        return self.coefficients[k] if k < len(self.coefficients) else 0

    def tail_mass(self) -> int:
        """Sum of absolute values of the coefficients of ``t**2`` and higher."""
        return sum(abs(c) for c in self.coefficients[2:])

    def __call__(self, t: float) -> float:
        return evaluate(self, t)


def compute_poly(g: Graph, signed: bool = True) -> GraphPolynomial:
    by_subsets = 1 << g.e
    by_masks = g.e * (1 << g.v)
    if min(by_subsets, by_masks) > STATE_CAP:
        raise PolynomialCapError(
            f"{g}: needs min(2^e, e*2^v) = {min(by_subsets, by_masks)} states, cap is {STATE_CAP}"
        )
    if by_masks <= by_subsets:
        coeffs = _coefficients_by_cover_masks(g, signed)
    else:
        coeffs = _coefficients_by_subsets(g, signed)
    return GraphPolynomial(tuple(coeffs), signed)


def _coefficients_by_cover_masks(g: Graph, signed: bool) -> list[int]:
    # Sweep the edges once; state is the set of covered vertices, value is
    # the signed number of edge subsets chosen so far that cover exactly it.
    weight = -1 if signed else 1
    states = {0: 1}
    for r, s in g.edges:
        bits = (1 << (r - 1)) | (1 << (s - 1))
        nxt = dict(states)
        for mask, count in states.items():
            key = mask | bits
            nxt[key] = nxt.get(key, 0) + weight * count
        states = nxt
    coeffs = [0] * (g.v + 1)
    for mask, count in states.items():
        coeffs[mask.bit_count()] += count
    return coeffs


def _coefficients_by_subsets(g: Graph, signed: bool) -> list[int]:
    edge_bits = [(1 << (r - 1)) | (1 << (s - 1)) for r, s in g.edges]
    coeffs = [0] * (g.v + 1)
    # Gray-code walk: one edge toggles per step, so the cover mask is
    # rebuilt from per-vertex incidence counts.
    inc = [0] * g.v
    covered = 0
    size = 0
    coeffs[0] = 1
    for i in range(1, 1 << g.e):
        j = (i & -i).bit_length() - 1
        r, s = g.edges[j]
        gray = i ^ (i >> 1)
        step = 1 if gray >> j & 1 else -1
        size += step
        for x in (r - 1, s - 1):
            inc[x] += step
            if inc[x]:
                covered |= 1 << x
            else:
                covered &= ~(1 << x)
        sign = -1 if signed and size & 1 else 1
        coeffs[covered.bit_count()] += sign
    return coeffs


def evaluate(p: GraphPolynomial, t: float) -> float:
    acc = 0.0
    for c in reversed(p.coefficients):
        acc = acc * t + c
    return float(acc)


def evaluate_tail(p: GraphPolynomial, t: float) -> float:
    """``p(t) - 1`` without cancellation, for ``t`` near zero."""
    acc = 0.0
    for c in reversed(p.coefficients[1:]):
        acc = acc * t + c
    return acc * t
