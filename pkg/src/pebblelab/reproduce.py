"""Checklist reproducing the numeric claims about K3□K3□K5 and Hamming graphs."""

from __future__ import annotations

from dataclasses import dataclass, field

from pebblelab.bounds import diameter_upper_bound, thm6_pebbling_lower_bound
from pebblelab.domination import GammaCache, exists_dominating_set, gamma
from pebblelab.engine import Distribution, MoveSystem, solvable
from pebblelab.graphs import Graph, build_family, build_hamming
from pebblelab.search import optimal_number

HAMMING_CASES = ((2, 2), (3, 2), (4, 2), (5, 2), (3, 3))


@dataclass
class CheckResult:
    item: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"item": self.item, "name": self.name, "passed": self.passed, "detail": self.detail}


def k335() -> Graph:
    return build_family(["product", "complete", "3", "complete", "3", "complete", "5"])


def diagonal_witness(g: Graph) -> Distribution:
    """Two pebbles on each of (0,0,0), (1,1,0), (2,2,0)."""
    return Distribution.from_mapping(g.n, {(a * 3 + a) * 5: 2 for a in range(3)})


def verify_paper(filters: bool = True) -> list[CheckResult]:
    g = k335()
    gammas = GammaCache(g)
    results = []

    p = diagonal_witness(g)
    res = solvable(g, p, MoveSystem.PEBBLING)
    results.append(
        CheckResult(1, "6-pebble diagonal distribution solvable on K3xK3xK5", res.solvable,
                    {"size": p.size, "support": [g.labels[v] for v in range(g.n) if p[v]]})
    )

    got = {f"{m},{k}": gamma(build_hamming(m, k), k - 1)[0] for m, k in HAMMING_CASES}
    results.append(
        CheckResult(2, "gamma_{k-1}(H(m,k)) = m", all(got[f"{m},{k}"] == m for m, k in HAMMING_CASES),
                    {"gamma": got})
    )

    g2 = gammas(2)
    four, nodes = exists_dominating_set(g, 1, 4)
    results.append(
        CheckResult(3, "gamma_2 = 3 and gamma_1 >= 5 on K3xK3xK5", g2 == 3 and four is None,
                    {"gamma_2": g2, "dominating_4_set": four, "search_nodes": nodes,
                     "gamma_1": gammas(1)})
    )

    t6 = thm6_pebbling_lower_bound(g, 3, gammas)
    results.append(CheckResult(4, "thm6 at k=3 on K3xK3xK5 equals 6", t6 == 6, {"thm6": t6}))

    k33 = build_family(["product", "complete", "3", "complete", "3"])
    cert = optimal_number(k33, MoveSystem.PEBBLING, use_theorems=False, filters=filters, seed=False)
    results.append(
        CheckResult(5, "pi_opt(K3xK3) = 4 by exhaustive search", cert.value == 4,
                    {"value": cert.value, "evidence": cert.lower_bound_evidence})
    )

    k44 = build_family(["product", "complete", "4", "complete", "4"])
    cert = optimal_number(k44, MoveSystem.RUBBLING, use_theorems=False, filters=filters, seed=False)
    results.append(
        CheckResult(6, "rho_opt(K4xK4) = 4", cert.value == 4,
                    {"value": cert.value, "evidence": cert.lower_bound_evidence})
    )

    cert = optimal_number(g, MoveSystem.PEBBLING, filters=filters)
    ub = diameter_upper_bound(g)
    results.append(
        CheckResult(7, "pi_opt(K3xK3xK5) = 6 < 8 = 2^diam", cert.value == 6 and ub == 8,
                    {"pi_opt": cert.value, "diameter_ub": ub,
                     "evidence": cert.lower_bound_evidence})
    )
    return results
