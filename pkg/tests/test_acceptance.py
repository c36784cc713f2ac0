"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line (visible with ``-s``)
and the same lines are repeated in the terminal summary.
"""

import itertools
import random
import time

import pytest

from oracles import adjacency_sets, fraction_weight, naive_distributions, naive_reachable
from pebblelab.bounds import (
    BoundDomainError,
    thm3_lower_bound,
    thm5_rubbling_lower_bound,
    thm6_pebbling_lower_bound,
)
from pebblelab.domination import GammaCache, balls, exists_dominating_set, gamma
from pebblelab.engine import Distribution, MoveSystem, reachable, solvable, weight
from pebblelab.graphs import build_complete, build_hamming, product_of, random_connected_graph
from pebblelab.reproduce import diagonal_witness
from pebblelab.search import exhaust_size, lift_through_product, lifted_graph, optimal_number

PEB, RUB = MoveSystem.PEBBLING, MoveSystem.RUBBLING


@pytest.fixture
def verdict(acceptance_log):
    def record(number, ok, text):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
        print(line)
        acceptance_log.append(line)
        assert ok, line

    return record


def test_criterion_1_diagonal_witness(k335, verdict):
    p = diagonal_witness(k335)
    start = time.perf_counter()
    res = solvable(k335, p, PEB)
    elapsed = time.perf_counter() - start
    labels = [k335.labels[v] for v in range(k335.n) if p[v]]
    ok = res.solvable and p.size == 6 and elapsed < 10
    verdict(1, ok, f"6 pebbles on {labels} solvable={res.solvable} in {elapsed:.2f}s (< 10s)")


def _four_subset_sweep(g):
    """Plain bitset sweep over every 4-subset; returns a dominating one or None."""
    full = (1 << g.n) - 1
    ball = balls(g, 1)
    for combo in itertools.combinations(ball, 4):
        if combo[0] | combo[1] | combo[2] | combo[3] == full:
            return combo
    return None


def test_criterion_2_domination_and_bound(k335, verdict):
    start = time.perf_counter()
    gammas = GammaCache(k335)
    g2 = gammas(2)
    four, _ = exists_dominating_set(k335, 1, 4)
    swept = _four_subset_sweep(k335)
    t6 = thm6_pebbling_lower_bound(k335, 3, gammas)
    elapsed = time.perf_counter() - start
    ok = g2 == 3 and four is None and swept is None and t6 == 6 and elapsed < 60
    verdict(2, ok, f"gamma_2={g2}, no dominating 4-set among C(45,4)=148995 "
                   f"(search and sweep agree), thm6(k=3)={t6}, {elapsed:.1f}s")


def test_criterion_3_hamming_domination(verdict):
    got = {}
    for m, k in [(2, 2), (3, 2), (4, 2), (5, 2), (3, 3)]:
        value, cert = gamma(build_hamming(m, k), k - 1)
        got[(m, k)] = (value, cert.optimal)
    ok = all(v == m and proved for (m, _), (v, proved) in got.items())
    text = ", ".join(f"gamma_{k - 1}(H({m},{k}))={v}" for (m, k), (v, _) in got.items())
    verdict(3, ok, text + " (all proved optimal)")


def test_criterion_4_small_products(verdict):
    k44 = product_of([build_complete(4)] * 2)
    start = time.perf_counter()
    rho = optimal_number(k44, RUB)
    audit = exhaust_size(k44, 3, RUB, filters=False)
    stack = solvable(k44, Distribution.from_mapping(16, {0: 4}), RUB).solvable
    t_rho = time.perf_counter() - start

    k33 = product_of([build_complete(3)] * 2)
    start = time.perf_counter()
    pi = optimal_number(k33, PEB)
    pi_brute = optimal_number(k33, PEB, use_theorems=False, filters=False, seed=False)
    t_pi = time.perf_counter() - start

    ok = (rho.value == 4 and audit.raw == 816 and audit.tested == 816
          and audit.solvable_found is None and stack
          and pi.value == pi_brute.value == 4 and t_rho < 60 and t_pi < 60)
    verdict(4, ok, f"rho_opt(K4xK4)={rho.value} (816/816 size-3 rejected, 4-stack solvable, "
                   f"{t_rho:.1f}s); pi_opt(K3xK3)={pi.value} ({t_pi:.1f}s)")


def test_criterion_5_bound_consistency(random_suite, verdict):
    violations = []
    for i, g in enumerate(random_suite):
        rho = optimal_number(g, RUB, use_theorems=False, seed=False).value
        pi = optimal_number(g, PEB, use_theorems=False, seed=False).value
        if not rho <= pi <= 2 ** g.diameter:
            violations.append((i, "order", rho, pi))
        gam = GammaCache(g)
        for k in range(2, g.diameter + 2):
            if thm3_lower_bound(g, k, gam) > rho:
                violations.append((i, "thm3", k))
            if thm5_rubbling_lower_bound(g, k, gam) > rho:
                violations.append((i, "thm5", k))
        for k in range(3, g.diameter + 3):
            try:
                if thm6_pebbling_lower_bound(g, k, gam) > pi:
                    violations.append((i, "thm6", k))
            except BoundDomainError:
                pass
    verdict(5, not violations,
            f"{len(random_suite)} random graphs, {len(violations)} bound violations")


def test_criterion_6_weight_soundness(random_suite, verdict):
    checked = violations = 0
    for g in random_suite:
        for size in range(1, 5):
            for counts in naive_distributions(g.n, size):
                p = Distribution(tuple(counts))
                for v in range(g.n):
                    w = weight(g, p, v)
                    if size <= 2:
                        assert w.to_fraction() == fraction_weight(g.n, g.edges, counts, v)
                    for system in (PEB, RUB):
                        if reachable(g, p, v, system).reachable:
                            checked += 1
                            violations += w < 1
    verdict(6, violations == 0,
            f"{checked} reachable instances with |P|<=4, {violations} with weight < 1")


def test_criterion_7_oracle_equivalence(random_suite, verdict):
    small = [g for g in random_suite if g.n <= 6]
    instances = disagreements = 0
    for g in small:
        adj = adjacency_sets(g.n, g.edges)
        for size in range(0, 6):
            for counts in naive_distributions(g.n, size):
                p = Distribution(tuple(counts))
                for system in (PEB, RUB):
                    for v in range(g.n):
                        instances += 1
                        expected = naive_reachable(adj, list(counts), v, system is RUB)
                        disagreements += reachable(g, p, v, system).reachable != expected
    verdict(7, disagreements == 0,
            f"{len(small)} graphs, {instances} instances, {disagreements} disagreements")


def test_criterion_8_lift(seed, verdict):
    rng = random.Random(seed)
    cases = failures = 0
    while cases < 50:
        g = random_connected_graph(rng, rng.randint(2, 6), rng.choice([0.2, 0.4, 0.6]))
        size = rng.randint(1, 2 ** g.diameter)
        counts = [0] * g.n
        for _ in range(size):
            counts[rng.randrange(g.n)] += 1
        p = Distribution(tuple(counts))
        if not solvable(g, p, PEB).solvable:
            continue
        cases += 1
        for n in (2, 3):
            lifted = lift_through_product(g, p, n)
            failures += not solvable(lifted_graph(g, n), lifted, PEB).solvable
    verdict(8, failures == 0, f"{cases} solvable distributions lifted to n=2,3, "
                              f"{failures} unsolvable lifts")
