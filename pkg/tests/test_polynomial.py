import pytest
from hypothesis import given

import oracles
from coprimality import polynomial
from coprimality.graph import Graph, complete_graph, empty_graph, path_graph
from coprimality.polynomial import PolynomialCapError, compute_poly, evaluate
from strategies import graphs


@pytest.mark.parametrize(
    "g, signed, expected",
    [
        (complete_graph(2), True, [1, 0, -1]),
        (complete_graph(3), True, [1, 0, -3, 2]),
        (path_graph(3), True, [1, 0, -2, 1]),
        (complete_graph(3), False, [1, 0, 3, 4]),
    ],
)
def test_known_polynomials(g, signed, expected):
    assert oracles.subset_polynomial(g.v, g.edges, signed) == expected
    assert list(compute_poly(g, signed).coefficients) == expected


def test_evaluate():
    assert evaluate(compute_poly(complete_graph(2)), 0.5) == 0.75
    assert evaluate(compute_poly(complete_graph(3)), 0.5) == 0.5
    assert evaluate(compute_poly(complete_graph(4)), 0.0) == 1.0


def test_edgeless_polynomial_is_one():
    assert compute_poly(empty_graph(3)).coefficients == (1, 0, 0, 0)


def test_cap():
    # 64 edges on 64 vertices: both routes need far more than 2^28 states
    g = Graph(64, tuple((i, i + 1) for i in range(1, 64)) + ((1, 64),))
    with pytest.raises(PolynomialCapError):
        compute_poly(g)


def test_large_graph_with_few_vertices_uses_masks():
    p = compute_poly(complete_graph(11))
    assert p.coefficient(2) == -55
    assert sum(p.coefficients) == 0


@given(graphs(max_vertices=6))
def test_both_routes_match_oracle(g):
    for signed in (True, False):
        expected = oracles.subset_polynomial(g.v, g.edges, signed)
        assert polynomial._coefficients_by_cover_masks(g, signed) == expected
        assert polynomial._coefficients_by_subsets(g, signed) == expected


@given(graphs(max_vertices=7))
def test_coefficient_invariants(g):
    q, qp = compute_poly(g, True), compute_poly(g, False)
    assert q.coefficients[0] == qp.coefficients[0] == 1
    assert q.coefficient(1) == qp.coefficient(1) == 0
    assert q.coefficient(2) == -g.e
    assert qp.coefficient(2) == g.e
    assert all(c >= 0 for c in qp.coefficients)
    assert sum(qp.coefficients) == 2**g.e
    if g.e:
        assert sum(q.coefficients) == 0
    assert sum(abs(c) for c in q.coefficients) <= 2**g.e
    assert all(abs(a) <= b for a, b in zip(q.coefficients, qp.coefficients))


@given(graphs(max_vertices=4))
def test_value_at_reciprocal_prime_is_residue_fraction(g):
    q = compute_poly(g)
    for p in (2, 3, 5):
        value = evaluate(q, 1 / p)
        assert value == pytest.approx(oracles.residue_fraction(g.v, g.edges, p), abs=1e-12)
        assert value >= (1 - 1 / p) ** g.v - 1e-12
        assert value > 0
