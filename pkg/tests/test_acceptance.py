"""Acceptance suite: nine end-to-end criteria, one test (and hence one
pass/fail line under ``pytest -v``) per criterion.

Each criterion exercises a full feature path against independent
oracles: golden surface classifications, exhaustive cycle sweeps,
statistical tolerances for Monte-Carlo estimators, and planted-instance
pipelines verified by the classifier.
"""

from __future__ import annotations

import itertools
import math
import random
import time

from oracles import OCTAHEDRON, RP2_6, TORUS7, brute_menger, random_graph
from test_cycles import build_glue_spec
from test_pipeline import PARAMS, planted_genus2, planted_torus
from test_rainbow import block_edge, grid_vertex, residue_parts
from trisurf.admissible import (
    AdmissParams,
    admissible_exact,
    admissible_mc,
    count_nonadmissible,
    is_vertex_connected,
    mader_subgraph,
    menger_count,
)
from trisurf.cycles import (
    admits_3_partition,
    enumerate_topological_cycles,
    glue_spheres,
    recognize_topological_cycle,
    tight_cycle,
)
from trisurf.errors import StageFailure, TooLarge
from trisurf.extremal import gluing_bound_check, lower_bound_generate
from trisurf.hypercore import Hypergraph3, SimpleGraph, edge3
from trisurf.pipeline import (
    build_torus,
    count_sub_triangulations,
    find_surface_genus_g,
    orientable_target,
)
from trisurf.rainbow import (
    SetColoring,
    build_link_of_edges,
    count_nonrainbow_homs,
    hom_cycle,
    rainbow_to_topcycle,
    sidorenko_check,
)
from trisurf.surface import classify_surface, euler_characteristic, face_count_identity


def test_criterion_1_surface_classification_golden_suite():
    start = time.perf_counter()
    assert str(classify_surface(OCTAHEDRON)) == "OrientableGenus(0)"
    assert euler_characteristic(OCTAHEDRON) == 2
    assert str(classify_surface(TORUS7)) == "OrientableGenus(1)"
    assert euler_characteristic(TORUS7) == 0
    assert str(classify_surface(RP2_6)) == "NonOrientableCrossCaps(1)"
    assert euler_characteristic(RP2_6) == 1
    for r in range(5, 13):
        h = tight_cycle(r)
        assert not classify_surface(h).is_surface
        cert = recognize_topological_cycle(h)
        # even length triangulates the cylinder, odd length the Moebius strip
        assert cert.kind == ("Cylinder" if r % 2 == 0 else "Moebius")
    assert time.perf_counter() - start < 1.0


def test_criterion_2_gluing_and_parity_law():
    start = time.perf_counter()
    for r in (6, 24):
        glued = glue_spheres(build_glue_spec(r))
        assert str(classify_surface(glued)) == "OrientableGenus(1)"
        assert euler_characteristic(glued) == 0
    assert time.perf_counter() - start < 5.0

    # parity law and 3-partite implication over a random sweep
    rng = random.Random(2024)
    instances = 0
    partite_hits = 0
    while instances < 10_000:
        n = rng.randint(5, 8)
        triples = list(itertools.combinations(range(n), 3))
        m = rng.randint(3, 8)
        h = Hypergraph3.from_edges(rng.sample(triples, m), n_vertices=n)
        instances += 1
        for subset, cert in enumerate_topological_cycles(h, max_edges=8):
            assert (cert.sign_product() == (-1) ** cert.r) == cert.torus_like
            sub = Hypergraph3(n_vertices=h.n_vertices, edges=frozenset(subset))
            if admits_3_partition(sub) is not None:
                assert cert.torus_like
                partite_hits += 1
    assert partite_hits > 0  # the sweep actually exercised the implication


def test_criterion_3_admissibility_bound_and_mc_accuracy():
    grid = [
        (p, eps, k)
        for p in (0.3, 0.5, 0.8)
        for eps in (0.2, 0.5, 0.8)
        for k in (1, 2, 3)
    ]

    # exact count never exceeds 2kn/(p^2 eps), zero tolerance
    rng = random.Random(31)
    for i in range(100):
        g = random_graph(rng, rng.randint(3, 12))
        p, eps, k = grid[i % len(grid)]
        report = count_nonadmissible(g, AdmissParams(p=p, eps=eps, k=k, r=1))
        assert report.n_nonadmissible <= report.bound

    # Monte-Carlo within 4 standard errors of the exact value in >= 99%
    # of trials; the standard error is the binomial one at the exact
    # probability, which stays meaningful when the empirical rate is 0 or 1
    rng = random.Random(32)
    trials = 400
    hits = 0
    total = 0
    while total < 1000:
        g = random_graph(rng, rng.randint(3, 10))
        if not g.edges:
            continue
        e = rng.choice(sorted(g.edges))
        p, eps, k = grid[total % len(grid)]
        params = AdmissParams(p=p, eps=eps, k=k, r=1)
        exact = admissible_exact(g, e, params)
        mc = admissible_mc(g, e, params, trials=trials, seed=total)
        se = math.sqrt(exact.prob * (1.0 - exact.prob) / trials)
        total += 1
        if abs(mc.prob - exact.prob) <= 4.0 * se + 1e-12:
            hits += 1
    assert hits >= 990


def test_criterion_4_menger_and_mader_certificates():
    rng = random.Random(41)
    for _ in range(10_000):
        n = rng.randint(2, 8)
        g = random_graph(rng, n)
        x, y = rng.sample(range(n), 2)
        assert menger_count(g, x, y, n) == brute_menger(g, x, y)

    rng = random.Random(42)
    for _ in range(200):
        k = rng.randint(1, 3)
        n = rng.randint(4 * k + 2, 40)
        pairs = list(itertools.combinations(range(n), 2))
        m = min(len(pairs), 2 * k * n + 1)  # average degree > 4k
        g = SimpleGraph.from_edges(rng.sample(pairs, m), n_vertices=n)
        cert = mader_subgraph(g, k)
        assert cert is not None
        assert is_vertex_connected(g, cert, k + 1)


def test_criterion_5_homomorphism_counting():
    rng = random.Random(51)
    for _ in range(500):
        g = random_graph(rng, rng.randint(1, 12))
        assert hom_cycle(g, 2) == 2 * g.n_edges

    k3 = SimpleGraph.from_edges([(0, 1), (0, 2), (1, 2)])
    assert hom_cycle(k3, 4) == 18

    rng = random.Random(52)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 12))
        holds, _, _ = sidorenko_check(g, rng.randint(1, 4))
        assert holds

    # non-rainbow walk bound: singleton color sets are always diverse, so
    # every graph/length pair is checkable; the counter itself raises if
    # the bound fails, and we re-check the returned pair
    rng = random.Random(53)
    checked = 0
    for _ in range(150):
        n = rng.randint(3, 10)
        g = random_graph(rng, n)
        coloring = SetColoring(
            r=1, colors={v: frozenset({v}) for v in range(n)}
        )
        for ell in (2, 3, 4):
            try:
                nonrainbow, bound = count_nonrainbow_homs(g, coloring, 2 * ell)
            except TooLarge:
                continue
            assert nonrainbow <= bound
            checked += 1
    assert checked >= 300


def _cycle_instance(m: int, pattern: tuple[int, ...], chords):
    """Hypergraph with blocks f1..fm, boundary arrows oriented by
    ``pattern`` (1 = forward), plus extra chord arrows."""
    edges = {edge3(*block_edge(i)) for i in range(1, m + 1)}

    def arrow(i, j):
        edges.add(edge3(grid_vertex(i, 1), grid_vertex(j, 2), grid_vertex(j, 3)))
        edges.add(edge3(grid_vertex(i, 1), grid_vertex(i, 2), grid_vertex(j, 3)))

    for idx in range(m):
        i, j = idx + 1, (idx + 1) % m + 1
        if pattern[idx]:
            arrow(i, j)
        else:
            arrow(j, i)
    for i, j in chords:
        arrow(i, j)
    h = Hypergraph3.from_edges(sorted(edges))
    parts = residue_parts(3 * m)
    link = build_link_of_edges(h, parts)
    index = {p: i for i, p in enumerate(link.payloads)}
    cycle = [index[edge3(*block_edge(i))] for i in range(1, m + 1)]
    return h, parts, link, cycle


def test_criterion_6_rainbow_cycle_conversion():
    # the mixed-orientation 12-vertex four-block instance
    h, parts, link, cycle = _cycle_instance(4, (1, 1, 0, 0), [])
    cert, sub = rainbow_to_topcycle(h, parts, link, cycle)
    assert cert.torus_like
    assert cert.r <= 12
    assert recognize_topological_cycle(sub).torus_like

    # all orientation patterns of the 4- and 6-block cycles, with random
    # chord arrows between non-adjacent blocks as noise
    rng = random.Random(61)
    instances = 0
    for m in (4, 6):
        non_adjacent = [
            (i, j)
            for i in range(1, m + 1)
            for j in range(1, m + 1)
            if i != j and j != i % m + 1 and i != j % m + 1
        ]
        for pattern in itertools.product((0, 1), repeat=m):
            for _ in range(13):
                chords = [
                    c for c in non_adjacent if rng.random() < 0.3
                ]
                h, parts, link, cycle = _cycle_instance(m, pattern, chords)
                cert, sub = rainbow_to_topcycle(h, parts, link, cycle)
                assert cert.torus_like
                assert cert.r <= 3 * m
                assert sub.edges <= h.edges
                # independent re-verification of the certificate
                again = recognize_topological_cycle(sub)
                assert again.torus_like and again.r == cert.r
                instances += 1
    assert instances >= 1000


def test_criterion_7_end_to_end_torus_and_genus_two():
    successes = 0
    for seed in range(100):
        h = planted_torus(noise_frac=0.2, noise_seed=seed)
        try:
            torus, cert = build_torus(
                h, PARAMS, max_cycle_len=6, seed=seed, retries=64, skip_F=True
            )
        except StageFailure:
            continue
        assert str(classify_surface(torus)) == "OrientableGenus(1)"
        assert torus.edges <= h.edges
        assert cert.torus_like
        successes += 1
    assert successes >= 95

    surface = find_surface_genus_g(
        planted_genus2(), 2, PARAMS, seed=0, retries=2048, v_max=8
    )
    assert str(classify_surface(surface)) == "OrientableGenus(2)"


def test_criterion_8_lower_bound_generator():
    start = time.perf_counter()
    n, c0, v_max = 40, 0.5, 8
    target = orientable_target(1)
    h, report = lower_bound_generate(n, target, c0, v_max, seed=0)

    # post-verify: no torus sub-triangulation within the vertex budget
    assert count_sub_triangulations(h, target, v_max) == []
    assert report.triangulations_found == report.edges_deleted == 0

    p = min(1.0, c0 / math.sqrt(n))
    n_triples = math.comb(n, 3)
    mean = p * n_triples
    sigma = math.sqrt(n_triples * p * (1.0 - p))
    assert abs(report.edges_before - mean) <= 4.0 * sigma
    assert time.perf_counter() - start < 60.0

    # face-count identity on every enumerated sub-triangulation of dense
    # hosts that do contain spheres and tori
    octa_shift = Hypergraph3.from_edges(
        [tuple(v + 40 for v in e) for e in OCTAHEDRON.edges]
    )
    host = Hypergraph3.from_edges(
        sorted(h.edges | octa_shift.edges | TORUS7.edges)
    )
    enumerated = 0
    for tgt in (orientable_target(0), orientable_target(1)):
        for sub in count_sub_triangulations(host, tgt, 8):
            assert face_count_identity(sub)
            enumerated += 1
    assert enumerated >= 2  # both the planted sphere and the planted torus


def test_criterion_9_gluing_extremal_bound():
    tetra = Hypergraph3.from_edges(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], n_vertices=4
    )
    rows = gluing_bound_check(7, [tetra], [tetra])
    assert [r.n for r in rows] == list(range(3, 8))
    for row in rows:
        assert row.ex_glued <= row.bound
        assert row.ok
