import itertools
import random

import pytest

from oracles import brute_menger, random_graph
from trisurf.admissible import (
    AdmissParams,
    admissible_exact,
    admissible_mc,
    common_core,
    count_nonadmissible,
    edge_profile,
    is_vertex_connected,
    mader_subgraph,
    menger_count,
    pair_admissible,
    pair_semi_admissible,
    prob_from_profile,
    rich_edges,
    select_semi_admissible_F,
)
from trisurf.cycles import double_pyramid
from trisurf.errors import (
    NotNeighboring,
    RangeViolation,
    SameVertex,
    TooLargeForExact,
)
from trisurf.hypercore import Hypergraph3, SimpleGraph, complete_hypergraph

PETERSEN = SimpleGraph.from_edges(
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
)


def complete_graph(n):
    return SimpleGraph.from_edges(itertools.combinations(range(n), 2))


class TestParams:
    def test_validation(self):
        with pytest.raises(RangeViolation):
            AdmissParams(p=0.0, eps=0.5, k=1)
        with pytest.raises(RangeViolation):
            AdmissParams(p=0.5, eps=1.5, k=1)
        with pytest.raises(RangeViolation):
            AdmissParams(p=0.5, eps=0.5, k=0)
        with pytest.raises(RangeViolation):
            AdmissParams(p=0.5, eps=0.5, k=1, r=0)


class TestMenger:
    def test_k5(self):
        assert menger_count(complete_graph(5), 0, 1, 10) == 3

    def test_tree(self):
        t = SimpleGraph.from_edges([(0, 1), (1, 2), (1, 3), (3, 4)])
        for u, v in t.edges:
            assert menger_count(t, u, v, 5) == 0

    def test_same_vertex(self):
        with pytest.raises(SameVertex):
            menger_count(complete_graph(4), 2, 2, 1)

    def test_matches_brute_force(self):
        rng = random.Random(31)
        for _ in range(200):
            n = rng.randint(2, 8)
            g = random_graph(rng, n)
            x, y = rng.sample(range(n), 2)
            assert menger_count(g, x, y, n) == brute_menger(g, x, y)


class TestExact:
    def test_complete_p1(self):
        for k in (1, 2, 3):
            rec = admissible_exact(
                complete_graph(k + 2), (0, 1), AdmissParams(p=1.0, eps=0.5, k=k)
            )
            assert rec.prob == pytest.approx(1.0)
            assert rec.verdict and rec.exact and rec.stderr == 0.0

    def test_tree_edge_never_admissible(self):
        t = SimpleGraph.from_edges([(0, 1), (1, 2)])
        rec = admissible_exact(t, (0, 1), AdmissParams(p=0.9, eps=0.99, k=1))
        assert rec.prob == 0.0
        assert not rec.verdict

    def test_threshold_enforced(self):
        g = complete_graph(18)
        with pytest.raises(TooLargeForExact):
            admissible_exact(g, (0, 1), AdmissParams(p=0.5, eps=0.5, k=1))

    def test_isolated_vertices_marginalize_out(self):
        g = SimpleGraph.from_edges([(0, 1), (0, 2), (1, 2)], n_vertices=30)
        # 30 vertices, but only 3 matter: stays under the exact threshold
        rec = admissible_exact(g, (0, 1), AdmissParams(p=0.5, eps=0.9, k=1))
        assert rec.prob == pytest.approx(0.5)

    def test_monotone_in_p(self):
        rng = random.Random(37)
        for _ in range(15):
            g = random_graph(rng, rng.randint(4, 10))
            if not g.edges:
                continue
            e = sorted(g.edges)[0]
            k = rng.randint(1, 3)
            last = -1.0
            for p in (0.1, 0.3, 0.5, 0.7, 0.9, 1.0):
                prob = admissible_exact(g, e, AdmissParams(p=p, eps=0.5, k=k)).prob
                assert prob >= last - 1e-12
                last = prob

    def test_profile_reusable_across_params(self):
        g = PETERSEN
        counts = edge_profile(g, (0, 1), kmax=3)
        for p in (0.3, 0.8):
            for k in (1, 2, 3):
                direct = admissible_exact(g, (0, 1), AdmissParams(p=p, eps=0.5, k=k))
                assert prob_from_profile(counts, p, k) == pytest.approx(direct.prob)


class TestMonteCarlo:
    def test_deterministic(self):
        pr = AdmissParams(p=0.6, eps=0.3, k=2)
        a = admissible_mc(PETERSEN, (0, 1), pr, trials=500, seed=99)
        b = admissible_mc(PETERSEN, (0, 1), pr, trials=500, seed=99)
        assert a == b

    def test_tree_estimate_zero(self):
        t = SimpleGraph.from_edges([(0, 1), (1, 2)])
        for seed in range(5):
            rec = admissible_mc(t, (0, 1), AdmissParams(p=0.9, eps=0.5, k=1), 200, seed)
            assert rec.prob == 0.0

    def test_petersen_matches_exact(self):
        pr = AdmissParams(p=0.9, eps=0.2, k=2)
        exact = admissible_exact(PETERSEN, (0, 1), pr)
        mc = admissible_mc(PETERSEN, (0, 1), pr, trials=20_000, seed=3)
        assert abs(mc.prob - exact.prob) <= 3 * max(mc.stderr, 1e-4)

    def test_within_four_stderr_on_random_instances(self):
        rng = random.Random(41)
        bad = 0
        total = 120
        for i in range(total):
            g = random_graph(rng, rng.randint(4, 9))
            if not g.edges:
                continue
            e = rng.choice(sorted(g.edges))
            pr = AdmissParams(p=rng.choice([0.4, 0.6, 0.8]), eps=0.5, k=rng.randint(1, 2))
            exact = admissible_exact(g, e, pr)
            mc = admissible_mc(g, e, pr, trials=2_000, seed=i)
            if abs(mc.prob - exact.prob) > 4 * max(mc.stderr, 1e-3):
                bad += 1
        assert bad <= total // 100 + 1


class TestReport:
    def test_k8(self):
        rep = count_nonadmissible(complete_graph(8), AdmissParams(p=1.0, eps=0.5, k=3))
        assert rep.n_nonadmissible == 0
        assert rep.bound == pytest.approx(96.0)  # 2*3*8 / (1.0 * 0.5)

    def test_star(self):
        star = SimpleGraph.from_edges([(0, i) for i in range(1, 8)])
        pr = AdmissParams(p=0.9, eps=0.3, k=1)
        rep = count_nonadmissible(star, pr)
        assert rep.n_nonadmissible == 7
        assert rep.bound >= 7

    def test_bound_on_random_grid(self):
        rng = random.Random(43)
        for _ in range(30):
            g = random_graph(rng, 10)
            for p in (0.5, 0.9):
                for k in (1, 2):
                    rep = count_nonadmissible(g, AdmissParams(p=p, eps=0.4, k=k))
                    assert rep.n_nonadmissible <= rep.bound

    def test_json_shape(self):
        rep = count_nonadmissible(complete_graph(5), AdmissParams(p=0.8, eps=0.4, k=1))
        doc = rep.to_json_dict()
        assert doc["n_edges"] == 10
        assert len(doc["records"]) == 10
        assert all(rec["exact"] for rec in doc["records"])


class TestMader:
    def test_complete(self):
        for k in (1, 2, 3):
            assert mader_subgraph(complete_graph(k + 2), k) == list(range(k + 2))

    def test_forest_has_none(self):
        forest = SimpleGraph.from_edges([(0, 1), (1, 2), (3, 4), (4, 5)])
        assert mader_subgraph(forest, 1) is None

    def test_random_dense_always_succeeds(self):
        rng = random.Random(47)
        for _ in range(40):
            k = rng.randint(1, 3)
            n = rng.randint(4 * k + 2, 40)
            pairs = list(itertools.combinations(range(n), 2))
            m = min(len(pairs), 2 * k * n + 1)  # average degree > 4k
            g = SimpleGraph.from_edges(rng.sample(pairs, m), n_vertices=n)
            cert = mader_subgraph(g, k)
            assert cert is not None
            assert is_vertex_connected(g, cert, k + 1)
            # independent verification: Menger on every pair of the certificate
            sub = g.subgraph(cert)
            for x, y in itertools.combinations(cert, 2):
                direct = 1 if (min(x, y), max(x, y)) in sub.edges else 0
                assert menger_count(sub, x, y, k + 1) + direct >= k + 1

    def test_never_a_false_certificate(self):
        rng = random.Random(53)
        for _ in range(60):
            g = random_graph(rng, rng.randint(3, 10))
            k = rng.randint(1, 3)
            cert = mader_subgraph(g, k)
            if cert is not None:
                assert is_vertex_connected(g, cert, k + 1)


class TestCommonCore:
    def test_complete_graph(self):
        g = complete_graph(7)
        for r in (1, 2, 3):
            w = common_core(g, r)
            assert len(w) == 7 - r
            assert w == set(range(r, 7))  # ties broken by ascending id

    def test_empty_graph(self):
        assert common_core(SimpleGraph(n_vertices=5, edges=frozenset()), 1) == set()

    def test_guarantees_on_random_graphs(self):
        rng = random.Random(59)
        for _ in range(150):
            n = rng.randint(1, 30)
            g = random_graph(rng, n)
            r = rng.randint(1, 4)
            w = common_core(g, r)
            q = n * (n - 1) // 2 - g.n_edges
            assert n - len(w) <= r + 2 * r * q / n + 1e-9
            adj = g.adjacency()
            for a, b in itertools.combinations(sorted(w), 2):
                two_paths = sum(
                    1 for v in range(n) if v not in (a, b) and a in adj[v] and b in adj[v]
                )
                assert two_paths >= r


class TestPairAdmissibility:
    def test_double_pyramid_apexes(self):
        h = double_pyramid(5)
        pr = AdmissParams(p=1.0, eps=0.5, k=1)
        assert pair_admissible(h, (0, 2, 3), (1, 2, 3), pr)

    def test_empty_colink(self):
        h = Hypergraph3.from_edges([(0, 1, 2), (1, 2, 3)])
        assert not pair_admissible(h, (0, 1, 2), (1, 2, 3), AdmissParams(p=1.0, eps=0.9, k=1))

    def test_symmetric(self):
        h = double_pyramid(4)
        pr = AdmissParams(p=0.8, eps=0.4, k=1)
        for e, f in itertools.combinations(h.sorted_edges(), 2):
            if len(set(e) & set(f)) == 2:
                assert pair_admissible(h, e, f, pr) == pair_admissible(h, f, e, pr)

    def test_not_neighboring(self):
        h = complete_hypergraph(6)
        with pytest.raises(NotNeighboring):
            pair_admissible(h, (0, 1, 2), (3, 4, 5), AdmissParams(p=1.0, eps=0.5, k=1))


class TestSemiAdmissibility:
    def test_dense_with_witnesses(self):
        h = complete_hypergraph(7)
        pr = AdmissParams(p=1.0, eps=0.5, k=1, r=3)
        ok, witnesses = pair_semi_admissible(h, (0, 1, 2), (0, 1, 3), pr)
        assert ok and len(witnesses) == 3
        for g in witnesses:
            assert set(g) & {0, 1, 2} == {0, 1}
            assert set(g) & {0, 1, 3} == {0, 1}

    def test_sparse_has_no_witnesses(self):
        h = Hypergraph3.from_edges([(0, 1, 2), (0, 1, 3), (0, 1, 4)])
        ok, witnesses = pair_semi_admissible(
            h, (0, 1, 2), (0, 1, 3), AdmissParams(p=1.0, eps=0.5, k=1, r=2)
        )
        assert not ok and witnesses == []


class TestSelection:
    def test_all_admissible_keeps_everything(self):
        h = complete_hypergraph(6)
        pr = AdmissParams(p=1.0, eps=0.5, k=1, r=1)
        assert select_semi_admissible_F(h, pr) == h.edges

    def test_empty(self):
        pr = AdmissParams(p=0.5, eps=0.5, k=1, r=1)
        assert select_semi_admissible_F(Hypergraph3.from_edges([]), pr) == frozenset()

    def test_random_instance_postcondition_verified(self):
        # select_semi_admissible_F verifies its own postcondition and
        # raises on failure; surviving the call is the assertion
        rng = random.Random(61)
        triples = list(itertools.combinations(range(7), 3))
        h = Hypergraph3.from_edges(rng.sample(triples, 26), n_vertices=7)
        pr = AdmissParams(p=0.8, eps=0.3, k=1, r=1)
        f = select_semi_admissible_F(h, pr)
        assert f <= h.edges


class TestRichEdges:
    def test_identity_family(self):
        h = Hypergraph3.from_edges([(0, 1, 2), (1, 2, 3), (3, 4, 5)])
        rep = rich_edges(h, lambda sub, e: e in sub.edges, p=0.2, eps=0.3)
        assert rep.rich == h.edges
        assert all(rec.prob == pytest.approx(1.0) for rec in rep.records)

    def test_no_copies_no_rich_edges(self):
        h = Hypergraph3.from_edges([(0, 1, 2), (1, 2, 3)])
        rep = rich_edges(h, lambda sub, e: False, p=0.99, eps=0.3)
        assert rep.rich == frozenset()

    def test_mc_deterministic_and_close_to_exact(self):
        h = complete_hypergraph(6)

        def oracle(sub, e):
            # some neighbor of e survives
            return any(len(set(e) & set(f)) == 2 for f in sub.edges)

        exact = rich_edges(h, oracle, p=0.5, eps=0.3)
        mc1 = rich_edges(h, oracle, p=0.5, eps=0.3, mode="mc", trials=3_000, seed=8)
        mc2 = rich_edges(h, oracle, p=0.5, eps=0.3, mode="mc", trials=3_000, seed=8)
        assert mc1 == mc2
        for a, b in zip(exact.records, mc1.records):
            assert abs(a.prob - b.prob) <= 4 * max(b.stderr, 1e-3)

    def test_threshold(self):
        h = complete_hypergraph(18)
        with pytest.raises(TooLargeForExact):
            rich_edges(h, lambda sub, e: True, p=0.5, eps=0.5)
