from math import gcd

import pytest
from hypothesis import given, strategies as st

import oracles
from coprimality.graph import complete_graph, empty_graph, path_graph
from coprimality.multiplicative import (
    EdgeNumbering,
    EnumerationCapError,
    FactorizationError,
    f_enumerate,
    f_multiplicative,
    f_prime_power,
    factorize,
    g_enumerate,
    moebius,
)
from coprimality.polynomial import compute_poly
from strategies import graphs

K2, K3 = complete_graph(2), complete_graph(3)


def mu_weight(signed):
    return oracles.moebius if signed else (lambda n: abs(oracles.moebius(n)))


@pytest.mark.parametrize(
    "g, m, signed, expected",
    [(K2, 1, True, 1), (K2, 4, True, -1), (K2, 2, True, 0), (K3, 4, False, 3)],
)
def test_f_enumerate_examples(g, m, signed, expected):
    assert oracles.numbering_sum(g.v, g.edges, m, mu_weight(signed)) == expected
    assert f_enumerate(g, m, signed) == expected


def test_f_prime_power():
    assert f_prime_power(compute_poly(K3), 2) == -3
    assert f_prime_power(compute_poly(K3), 0) == 1
    assert f_prime_power(compute_poly(K2), 1) == 0
    assert f_prime_power(compute_poly(K2), 7) == 0


def test_f_multiplicative_examples():
    q3 = compute_poly(K3)
    assert f_multiplicative(q3, 36) == 9 == f_enumerate(K3, 36)
    assert f_multiplicative(q3, 1) == 1
    assert f_multiplicative(compute_poly(K2), 30) == 0


def test_edgeless_graph():
    g = empty_graph(3)
    assert f_enumerate(g, 1) == 1
    assert f_enumerate(g, 12) == 0


def test_factorize():
    assert factorize(1).factors == ()
    assert factorize(36).factors == ((2, 2), (3, 2))
    assert factorize(999983).factors == ((999983, 1),)
    assert oracles.is_prime(999983)
    big = 999979 * 999983
    assert factorize(big).factors == ((999979, 1), (999983, 1))
    assert factorize(10**12).value() == 10**12


@pytest.mark.parametrize("bad", [0, -3, 10**12 + 1])
def test_factorize_range(bad):
    with pytest.raises(FactorizationError):
        factorize(bad)


@given(st.integers(1, 10**6))
def test_factorize_reconstructs(m):
    fac = factorize(m)
    assert fac.value() == m
    primes = [p for p, _ in fac]
    assert primes == sorted(set(primes))
    assert all(oracles.is_prime(p) for p in primes)


def test_moebius_matches_oracle():
    assert [moebius(n) for n in range(1, 200)] == [oracles.moebius(n) for n in range(1, 200)]


def test_edge_numbering():
    num = EdgeNumbering(path_graph(3), (2, 3))
    assert num.vertex_numbers == (2, 6, 3)
    assert num.vertex_product() == 36
    iso = EdgeNumbering(empty_graph(2), ())
    assert iso.vertex_numbers == (1, 1)
    with pytest.raises(ValueError):
        EdgeNumbering(path_graph(3), (2,))


def test_enumeration_cap():
    # 2*3*5*7*11*13 squared gives 64 candidate edge numbers; 64^6 is over the cap
    m = (2 * 3 * 5 * 7 * 11 * 13) ** 2
    with pytest.raises(EnumerationCapError):
        f_enumerate(complete_graph(4), m)


@given(graphs(max_vertices=3), st.integers(1, 40))
def test_f_enumerate_matches_definition(g, m):
    for signed in (True, False):
        assert f_enumerate(g, m, signed) == oracles.numbering_sum(g.v, g.edges, m, mu_weight(signed))


@given(graphs(max_vertices=4))
def test_prime_powers_are_coefficients(g):
    for signed in (True, False):
        poly = compute_poly(g, signed)
        for p in (2, 3, 5):
            for k in range(g.v + 3):
                assert f_enumerate(g, p**k, signed) == poly.coefficient(k)


@given(graphs(max_vertices=4), st.integers(1, 60), st.integers(1, 60))
def test_multiplicative_in_m(g, a, b):
    if gcd(a, b) != 1:
        return
    for signed in (True, False):
        assert f_enumerate(g, a * b, signed) == f_enumerate(g, a, signed) * f_enumerate(g, b, signed)
        assert f_enumerate(g, a * b, signed) == f_multiplicative(compute_poly(g, signed), a * b)


@given(graphs(max_vertices=3), st.integers(1, 30), st.integers(1, 30))
def test_generic_weight_is_multiplicative(g, a, b):
    if gcd(a, b) != 1:
        return
    identity = lambda n: n  # noqa: E731
    assert g_enumerate(g, a * b, identity) == g_enumerate(g, a, identity) * g_enumerate(g, b, identity)
    assert g_enumerate(g, a * b, identity) == oracles.numbering_sum(g.v, g.edges, a * b, identity)


@given(graphs(max_vertices=4), st.sampled_from([2, 3, 5, 7]))
def test_vanishing(g, p):
    for signed in (True, False):
        assert f_enumerate(g, p, signed) == 0
        assert f_enumerate(g, p ** (g.v + 1), signed) == 0
