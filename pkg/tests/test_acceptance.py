"""Release criteria, one test each; every test prints a single PASS/FAIL line."""

from __future__ import annotations

import time

import pytest

from graphmatroids import cofactor, count
from graphmatroids.connectivity import vertex_connectivity
from graphmatroids.count import CountParams
from graphmatroids.generators import cofactor_packing, complete, lovasz_yemini
from graphmatroids.suites import COUNT_PAIRS, SUITES, SuiteConfig, run_suite


@pytest.fixture
def announce(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail

    return emit


def _suites(names, **cfg):
    reports = [run_suite(n, SuiteConfig(**cfg)) for n in names]
    bad = {r.suite: len(r.violations) for r in reports if not r.ok}
    cases = sum(r.cases for r in reports)
    return reports, bad, cases


def test_criterion_01_oracle_equivalence(announce):
    assert len(COUNT_PAIRS) == 9
    start = time.perf_counter()
    rep = run_suite("oracle-equivalence", SuiteConfig())
    elapsed = time.perf_counter() - start
    ok = rep.ok and elapsed < 60
    announce(1, ok, f"fast vs definitional rank on {rep.cases} multigraph classes (n<=5, 9 pairs): "
             f"{len(rep.violations)} mismatches in {elapsed:.1f}s (limit 60s)")


def test_criterion_02_complete_graphs_redundant(announce):
    start = time.perf_counter()
    results = {(k, l): count.is_redundant(complete(2 * l + 1), CountParams(k, l)) for k, l in [(2, 3), (3, 4), (3, 5)]}
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and elapsed < 30
    announce(2, ok, f"K_7 (2,3), K_9 (3,4), K_11 (3,5) redundant: {results} in {elapsed:.2f}s (limit 30s)")


def test_criterion_03_ring_of_cliques(announce):
    rows = []
    ok = True
    for k, l in [(2, 3), (3, 4), (3, 5)]:
        g = lovasz_yemini(k, l)
        kappa = vertex_connectivity(g)
        r = count.rank(g, CountParams(k, l))
        bound = k * g.n - l - 1
        ok &= kappa == 2 * l - 1 and r <= bound
        rows.append(f"({k},{l}) n={g.n} m={g.m} kappa={kappa} rank={r}<={bound}")
    g23 = lovasz_yemini(2, 3)
    ok &= (g23.n, g23.m) == (40, 100) and count.rank(g23, CountParams(2, 3)) <= 76
    announce(3, ok, "; ".join(rows))


def test_criterion_04_tree_packing(announce):
    reports, bad, cases = _suites(["tree-packing", "kriesell-f1"], samples=50, max_n=12)
    announce(4, not bad, f"2 robust spanning trees (4-edge-connected) and tree with connected complement "
             f"(4-connected), n<=12: {cases} samples, failures {bad or 'none'}")


def test_criterion_05_sampled_rigidity_bounds(announce):
    names = ["degree-rigidity", "degree-redundancy", "edge-connectivity-redundancy", "vertex-connectivity-redundancy"]
    reports, bad, cases = _suites(names, samples=100, max_n=10)
    ok = not bad and all(r.cases >= 100 for r in reports)
    announce(5, ok, f"degree / edge-connectivity / vertex-connectivity regimes, 100 samples each at n<=10: "
             f"{cases} cases, violations {bad or 'none'}")


def test_criterion_06_union_identity(announce):
    rep = run_suite("union-identity", SuiteConfig(samples=100, max_n=8))
    announce(6, rep.ok and rep.cases == 200, f"r_(kt,lt) = t-fold union rank for (2,3,2), (1,1,3): "
             f"{rep.cases} graphs, {len(rep.violations)} mismatches")


def test_criterion_07_cofactor(announce):
    values = {}
    start = time.perf_counter()
    for n in (6, 7, 8):
        values[n] = cofactor.r1(complete(n))[0]
    k8_time = time.perf_counter() - start
    _, parts = cofactor_packing(12, 2)
    ranks = [cofactor.certified_rank(p, None, 1) for p in parts]
    kappas = [vertex_connectivity(p) for p in parts]
    disjoint = not set(parts[0].edge_ids) & set(parts[1].edge_ids)
    spanning = all(p.n == 12 for p in parts)
    ok = (
        all(values[n] == 3 * n - 6 for n in values)
        and k8_time < 600
        and ranks == [30, 30]
        and all(k >= 3 for k in kappas)
        and disjoint
        and spanning
    )
    announce(7, ok, f"r1(K_n) {values} in {k8_time:.2f}s; packing(12,2) ranks {ranks}, "
             f"connectivity {kappas}, disjoint={disjoint}, spanning={spanning}")


def test_criterion_08_reconstruction(announce):
    rep = run_suite("reconstruction", SuiteConfig())
    announce(8, rep.ok, f"roundtrips and refusing negative controls: {rep.cases} cases, "
             f"{len(rep.violations)} violations")


def test_criterion_09_matroid_core(announce):
    rep = run_suite("components", SuiteConfig(max_n=5))
    announce(9, rep.ok, f"link-graph vs separator components and separation witnesses on all count matroids of "
             f"graphs with <= 5 vertices: {rep.cases} matroids, {len(rep.violations)} violations")


def test_criterion_10_mutants(announce):
    caught = {}
    for name in SUITES:
        rep = run_suite(name, SuiteConfig(mutant=True))
        caught[name] = len(rep.violations)
    missed = [n for n, v in caught.items() if v == 0]
    announce(10, not missed, f"{len(caught) - len(missed)}/{len(caught)} mutant suites report violations; "
             f"missed {missed or 'none'}")
