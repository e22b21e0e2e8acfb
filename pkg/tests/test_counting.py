import math
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from coprimality.counting import (
    CountCapError,
    GraphMismatchError,
    count_bruteforce,
    count_moebius,
    error_diagnostic,
    feasible_methods,
    main_term,
    moebius_table,
)
from coprimality.density import density
from coprimality.graph import Graph, complete_graph, empty_graph, path_graph, star_graph
from strategies import graphs

K2, K3 = complete_graph(2), complete_graph(3)


def totient(n):
    return sum(math.gcd(n, k) == 1 for k in range(1, n + 1))


def test_k2_at_10():
    expected = oracles.tuple_count(2, K2.edges, 10)
    assert expected == 2 * sum(totient(k) for k in range(1, 11)) - 1 == 63
    assert count_bruteforce(K2, 10).count == 63
    assert count_moebius(K2, 10).count == 63


def test_small_examples():
    assert count_bruteforce(K2, 1).count == 1
    assert oracles.tuple_count(3, K3.edges, 2) == 4
    assert count_bruteforce(K3, 2).count == 4
    assert count_moebius(K3, 2).count == 4
    assert count_bruteforce(empty_graph(2), 7).count == 49
    assert count_moebius(empty_graph(2), 7).count == 49


@pytest.mark.parametrize("g", [K2, K3, path_graph(4), star_graph(5), empty_graph(3)])
def test_x_equal_one(g):
    assert count_moebius(g, 1).count == 1
    assert count_bruteforce(g, 1).count == 1


def test_result_metadata():
    res = count_moebius(K3, 5)
    assert res.method == "moebius"
    assert res.x == 5
    assert res.graph_id == K3.graph_id()


def test_moebius_table():
    assert moebius_table(30).tolist()[1:] == [oracles.moebius(n) for n in range(1, 31)]


def test_caps():
    with pytest.raises(CountCapError):
        count_bruteforce(star_graph(4), 1000)
    with pytest.raises(ValueError):
        count_bruteforce(K2, 0)
    assert feasible_methods(star_graph(4), 1000) == ["moebius"]
    assert feasible_methods(K3, 10**4) == []


def test_moebius_branch_cap_is_on_visited_branches():
    # 26^6 exceeds 2^28, but the pruned walk stays far below it
    g = complete_graph(4)
    assert count_moebius(g, 40).count == count_bruteforce(g, 40).count


@settings(max_examples=40)
@given(graphs(max_vertices=4), st.integers(1, 6))
def test_counters_match_definitional_oracles(g, x):
    expected = oracles.tuple_count(g.v, g.edges, x)
    assert count_bruteforce(g, x).count == expected
    assert count_moebius(g, x).count == expected
    if g.e <= 3 and x <= 5:
        assert oracles.inclusion_exclusion_count(g.v, g.edges, x) == expected


@settings(max_examples=30)
@given(graphs(max_vertices=4), st.integers(1, 25))
def test_monotone_and_bounded(g, x):
    a = count_moebius(g, x).count
    b = count_moebius(g, x + 1).count
    assert a <= b <= (x + 1) ** g.v
    assert a <= x**g.v


@pytest.mark.parametrize("g", [K3, star_graph(4)])
def test_automorphisms_preserve_count(g):
    base = count_bruteforce(g, 12).count
    for perm in permutations(range(1, g.v + 1)):
        mapping = dict(zip(range(1, g.v + 1), perm))
        image = g.relabel(mapping)
        if image == g:
            assert count_bruteforce(image, 12).count == base
        assert count_moebius(image, 12).count == base


def test_thread_count_does_not_change_results():
    g = path_graph(4)
    assert count_moebius(g, 60, threads=3).count == count_moebius(g, 60).count
    assert count_bruteforce(g, 30, threads=3).count == count_bruteforce(g, 30).count


def test_main_term():
    assert main_term(empty_graph(2), 10, density(empty_graph(2), 100)) == 100.0
    est = density(K2)
    assert main_term(K2, 1000, est) == pytest.approx(607927.1, abs=0.1)
    assert main_term(K2, 1, est) == pytest.approx(0.6079, abs=1e-4)
    with pytest.raises(GraphMismatchError):
        main_term(K3, 10, est)


def test_error_diagnostic_edgeless():
    g = empty_graph(2)
    diag = error_diagnostic(g, 10, density(g, 100))
    assert diag.abs_error == 0.0
    assert diag.ratio == 0.0
    assert diag.d == 0


def test_error_diagnostic_k2_at_100():
    est = density(K2)
    assert oracles.tuple_count(2, K2.edges, 100) == 6087
    diag = error_diagnostic(K2, 100, est)
    assert diag.g == 6087
    assert diag.ratio == pytest.approx(abs(6087 - est.value * 10**4) / (100 * math.log(100)), rel=1e-12)
    assert 0 < diag.ratio < 10
    assert diag.log == "natural"


def test_error_diagnostic_needs_x_at_least_3():
    with pytest.raises(ValueError):
        error_diagnostic(K2, 2, density(K2, 100))


@pytest.mark.parametrize("g", [K2, K3, path_graph(4), star_graph(4)])
def test_error_ratio_bounded(g):
    est = density(g)
    xs = [10, 100, 1000] + ([10**4] if g.v == 2 else [])
    ratios = {x: error_diagnostic(g, x, est).ratio for x in xs}
    assert all(r <= 10 for r in ratios.values())
    assert ratios[max(xs)] <= 2 * ratios[100]


def test_graph_with_isolated_vertex():
    g = Graph(4, ((1, 2), (2, 3), (1, 3)))
    for x in (5, 9):
        assert count_moebius(g, x).count == count_bruteforce(K3, x).count * x
