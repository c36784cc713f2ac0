import json

import pytest

from oracles import naive_optimal
from pebblelab.bounds import (
    BoundDomainError,
    best_bounds,
    diameter_upper_bound,
    thm3_lower_bound,
    thm4_mid_lower_bound,
    thm5_rubbling_lower_bound,
    thm5_value,
    thm6_pebbling_lower_bound,
)
from pebblelab.domination import GammaCache
from pebblelab.graphs import build_complete, build_hamming, build_path, product_of


def test_diameter_upper_bound(k335):
    assert diameter_upper_bound(build_complete(4)) == 2
    assert diameter_upper_bound(k335) == 8
    assert diameter_upper_bound(build_path(5)) == 16


def test_thm3():
    k44 = build_hamming(4, 2)
    assert thm3_lower_bound(k44, 2) == 4
    assert thm3_lower_bound(build_path(3), 2) == 1
    with pytest.raises(BoundDomainError):
        thm3_lower_bound(k44, 1)


def test_thm5():
    assert thm5_rubbling_lower_bound(build_hamming(4, 2), 2) == 4
    for n in range(1, 9):
        assert thm5_value(n, n, 2) == min(4, n)
    assert thm5_value(10**6, 10**6, 5) == 2**5
    # half-integer middle term rounds up: max(3/2 + 1, 3) = 3
    assert thm5_value(3, 100, 2) == 3
    assert thm5_value(5, 100, 3) == 5  # max(5/2 + 2, 5) = 5
    assert thm5_value(3, 100, 3) == 4  # ceil(3/2 + 2) = 4
    with pytest.raises(BoundDomainError):
        thm5_rubbling_lower_bound(build_path(3), 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_thm5_on_complete_graphs_below_rho_opt(n):
    g = build_complete(n)
    rho = naive_optimal(g.n, g.edges, rubbling=True)
    assert rho == 2
    assert thm5_rubbling_lower_bound(g, 2) <= rho


def test_thm6_and_mid(k335):
    gam = GammaCache(k335)
    assert thm6_pebbling_lower_bound(k335, 3, gam) == 6
    assert thm4_mid_lower_bound(k335, 3, gam) == 5
    with pytest.raises(BoundDomainError):
        thm6_pebbling_lower_bound(k335, 2)
    with pytest.raises(BoundDomainError):
        thm6_pebbling_lower_bound(build_complete(1), 3)
    # gamma_{k-2} = 1 caps the bound at 2
    assert thm6_pebbling_lower_bound(build_path(3), 3) <= 2


def test_report_k335(k335):
    report = best_bounds(k335, [2, 3], "k335")
    assert report.best_pebbling_lb.value == 6
    assert report.best_pebbling_lb.k == 3
    assert report.best_pebbling_lb.name == "thm6"
    assert report.diameter_ub == 8
    row = report.rows[1].to_json()
    assert row["gamma_k_minus_1"] == 3 and row["gamma_k_minus_2"] == 7


def test_report_hamming_rubbling():
    report = best_bounds(build_hamming(4, 2), [2])
    assert report.best_rubbling_lb.value == 4


@pytest.mark.parametrize("m", [4, 5, 6])
def test_report_complete_graph_keeps_literal_rows(m):
    g = build_complete(m)
    report = best_bounds(g, [2, 3])
    assert [r.k for r in report.rows] == [2, 3]
    pi = naive_optimal(g.n, g.edges, rubbling=False)
    assert pi == 2
    assert report.best_rubbling_lb.value <= report.best_pebbling_lb.value <= pi <= report.diameter_ub


def test_report_invariants(random_suite):
    for g in random_suite[:60]:
        report = best_bounds(g)
        for row in report.rows:
            values = [v for v in row.values(("thm3", "thm5", "thm4_mid", "thm6")).values()]
            assert min(values) >= 1
            if row.thm6 is not None:
                assert row.thm6 >= row.thm4_mid
        assert report.best_rubbling_lb.value == max(
            [1] + [max(r.thm3, r.thm5) for r in report.rows]
        )


def test_report_json_is_deterministic(k335):
    a = json.dumps(best_bounds(k335, [2, 3]).to_json(), sort_keys=True)
    b = json.dumps(best_bounds(product_of([build_complete(3), build_complete(3),
                                           build_complete(5)]), [2, 3], "").to_json(),
                   sort_keys=True)
    assert a == b
    assert json.loads(a)["rounding"] == "ceil"
