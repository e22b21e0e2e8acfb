"""Self-check suites run by ``coprimality verify``.

Each suite returns a ``SuiteResult``; nothing here is randomised, so two
runs with the same arguments produce the same report.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .counting import CountCapError, count_bruteforce, count_moebius, error_diagnostic
from .density import density
from .graph import Graph, complete_graph, path_graph, spanning_subgraphs, star_graph
from .multiplicative import f_enumerate
from .polynomial import compute_poly

INV_ZETA2 = 6 / math.pi**2
RATIO_LIMIT = 10.0
RATIO_GROWTH_LIMIT = 2.0
PROP_PRODUCT_LIMIT = 60


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    first_failure: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def check(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if not self.first_failure:
                self.first_failure = what

    def to_dict(self) -> dict:
        out = asdict(self)
        out["status"] = "PASS" if self.passed else "FAIL"
        return out


def _oracle_rows(g: Graph, max_x: int) -> list[tuple[int, int, int]]:
    return [(x, count_moebius(g, x).count, count_bruteforce(g, x).count) for x in range(1, max_x + 1)]


def oracle_equivalence(graphs: list[Graph], max_x: int, threads: int = 1) -> SuiteResult:
    res = SuiteResult("oracle_equivalence")
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_oracle_rows, graphs, [max_x] * len(graphs)))
    else:
        rows = [_oracle_rows(g, max_x) for g in graphs]
    for g, table in zip(graphs, rows):
        for x, mob, brute in table:
            res.check(mob == brute, f"{g} x={x}: moebius {mob} != bruteforce {brute}")
    res.notes.append(f"{len(graphs)} graphs x {max_x} x-values")
    return res


def prime_power_coefficients(graphs: list[Graph], primes=(2, 3, 5)) -> SuiteResult:
    res = SuiteResult("prime_power_coefficients")
    for g in graphs:
        for signed in (True, False):
            poly = compute_poly(g, signed)
            for p in primes:
                for k in range(g.v + 1):
                    got = f_enumerate(g, p**k, signed)
                    res.check(
                        got == poly.coefficient(k),
                        f"{g} signed={signed} p={p} k={k}: f={got} c_k={poly.coefficient(k)}",
                    )
    return res


def coprime_pairs(limit: int) -> list[tuple[int, int]]:
    return [
        (a, b)
        for a in range(1, limit + 1)
        for b in range(1, limit // a + 1)
        if math.gcd(a, b) == 1
    ]


def multiplicativity(graphs: list[Graph], limit: int = PROP_PRODUCT_LIMIT) -> SuiteResult:
    res = SuiteResult("multiplicativity")
    pairs = coprime_pairs(limit)
    for g in graphs:
        for signed in (True, False):
            f = {m: f_enumerate(g, m, signed) for m in range(1, limit + 1)}
            for a, b in pairs:
                res.check(f[a * b] == f[a] * f[b], f"{g} signed={signed} m1={a} m2={b}")
    res.notes.append(f"{len(pairs)} coprime pairs with product <= {limit}")
    return res


def coefficient_invariants(graphs: list[Graph]) -> SuiteResult:
    res = SuiteResult("coefficient_invariants")
    for g in graphs:
        q = compute_poly(g, True)
        qp = compute_poly(g, False)
        for poly, c2 in ((q, -g.e), (qp, g.e)):
            c = poly.coefficients
            res.check(c[0] == 1, f"{g} signed={poly.signed}: c_0={c[0]}")
            res.check(poly.coefficient(1) == 0, f"{g} signed={poly.signed}: c_1={poly.coefficient(1)}")
            res.check(poly.coefficient(2) == c2, f"{g} signed={poly.signed}: c_2={poly.coefficient(2)}")
        if g.e:
            res.check(sum(q.coefficients) == 0, f"{g}: Q(1)={sum(q.coefficients)}")
        res.check(sum(qp.coefficients) == 2**g.e, f"{g}: Q+(1)={sum(qp.coefficients)}")
        res.check(
            all(abs(a) <= b for a, b in zip(q.coefficients, qp.coefficients)),
            f"{g}: signed coefficients not dominated",
        )
    return res


def density_constant(prime_bound: int) -> SuiteResult:
    res = SuiteResult("density_inverse_zeta2")
    est = density(complete_graph(2), prime_bound)
    tol = 1e-6 if prime_bound >= 10**6 else est.tail_bound + est.float_budget
    err = abs(est.value - INV_ZETA2)
    res.check(err <= tol, f"|rho(K_2) - 6/pi^2| = {err:.3e} > {tol:.3e}")
    res.notes.append(f"error {err:.3e}, tolerance {tol:.3e}")
    return res


RATIO_GRAPHS = {
    "K_2": complete_graph(2),
    "K_3": complete_graph(3),
    "P_4": path_graph(4),
    "S_4": star_graph(4),
}


def ratio_samples(g: Graph) -> list[int]:
    return [10, 100, 1000] + ([10**4] if g.v <= 3 else [])


def error_ratio(prime_bound: int, graphs: dict[str, Graph] = RATIO_GRAPHS, threads: int = 1) -> SuiteResult:
    res = SuiteResult("error_ratio")
    for name, g in graphs.items():
        est = density(g, prime_bound)
        xs = ratio_samples(g)
        ratios = {}
        for x in xs:
            try:
                diag = error_diagnostic(g, x, est, threads)
            except CountCapError:
                res.notes.append(f"{name} x={x}: skipped, no counter within caps")
                continue
            ratios[x] = diag.ratio
            res.check(diag.ratio <= RATIO_LIMIT, f"{name} x={x}: ratio {diag.ratio:.4g} > {RATIO_LIMIT}")
        top = max(ratios, default=0)
        if 100 in ratios and top > 100:
            res.check(
                ratios[top] <= RATIO_GROWTH_LIMIT * ratios[100],
                f"{name}: ratio {ratios[top]:.4g} at x={top} exceeds {RATIO_GROWTH_LIMIT} x ratio at x=100",
            )
        res.notes.append(name + " " + " ".join(f"{x}:{r:.6g}" for x, r in ratios.items()))
    return res


def run_verify(max_vertices: int = 4, max_x: int = 40, prime_bound: int = 10**6, threads: int = 1) -> dict:
    if not 1 <= max_vertices <= 4:
        raise ValueError(f"max_vertices must lie in 1..4, got {max_vertices}")
    if max_x < 1:
        raise ValueError(f"max_x must be positive, got {max_x}")
    graphs = list(spanning_subgraphs(max_vertices))
    suites = [
        coefficient_invariants(graphs),
        oracle_equivalence(graphs, max_x, threads),
        prime_power_coefficients(graphs),
        multiplicativity(graphs),
        density_constant(prime_bound),
        error_ratio(prime_bound, threads=threads),
    ]
    return {
        "max_vertices": max_vertices,
        "max_x": max_x,
        "prime_bound": prime_bound,
        "status": "PASS" if all(s.passed for s in suites) else "FAIL",
        "suites": [s.to_dict() for s in suites],
    }
