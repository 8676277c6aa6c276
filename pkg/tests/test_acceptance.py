"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines.  Every tolerance and time limit is pinned here; the randomized
criteria use fixed base seeds, so the whole suite is deterministic.
"""

import math
import statistics
import time
from contextlib import contextmanager
from itertools import combinations

import numpy as np
import pytest

import rainbowconn as rc
from rainbowconn import seeds as sd
from rainbowconn.experiments import ExperimentConfig, rows_to_csv, run_experiment

from helpers import (
    all_pairings,
    complete_graph,
    cycle,
    petersen,
    random_connected_graph,
    random_min_degree_graph,
    random_valid_split,
)

BASE_SEED = 20260810


@contextmanager
def criterion(num, description, time_limit=None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if time_limit is not None:
            assert elapsed < time_limit, (
                f"criterion {num} took {elapsed:.1f}s, limit {time_limit}s"
            )
    except BaseException:
        print(f"[acceptance] criterion {num:>2}: {description}: FAIL")
        raise
    print(
        f"[acceptance] criterion {num:>2}: {description}: PASS ({elapsed:.1f}s)"
    )


def test_criterion_01_split_lemma_bound():
    """500 random valid splits, n <= 50: colour count within the bound."""
    with criterion(1, "split-lemma bound exact on 500 random instances", 10.0):
        rng = np.random.default_rng(sd.derive_seed(BASE_SEED, "c1"))
        for _ in range(500):
            n = int(rng.integers(2, 51))
            g = random_connected_graph(rng, n, int(rng.integers(0, 2 * n)))
            split = random_valid_split(g, rng)
            col = rc.split_colouring(split)
            cert = col.certificate
            assert (
                col.colours_used
                <= cert.diam1 + cert.diam2 + len(cert.shared_edges)
            )


def test_criterion_02_rainbow_soundness_small_graphs():
    """10^4 random connected graphs with n <= 8, delta >= 4: exact oracle."""
    with criterion(2, "min-degree colouring exact-rainbow on 10^4 small graphs"):
        rng = np.random.default_rng(sd.derive_seed(BASE_SEED, "c2"))
        for _ in range(10**4):
            n = int(rng.integers(5, 9))
            g = complete_graph(5) if n == 5 else random_min_degree_graph(rng, n, 4)
            col = rc.rc_min_degree(g)
            report = rc.is_rainbow_edge_connected_exact(g, col)
            assert report.verdict, (g.edge_list, report.witness)


def test_criterion_03_min_degree_bound_6_regular():
    """100 random 6-regular graphs, n in 60..300: bound + all-pairs check."""
    with criterion(3, "16n/6 bound and certificates on 100 6-regular graphs", 60.0):
        limit_hits = 0
        for i in range(100):
            n = 60 + round(i * 240 / 99)
            seed = sd.derive_seed(BASE_SEED, "c3", i)
            g = rc.sample_connected_regular(n, 6, seed)
            col = rc.rc_min_degree(g)
            assert col.colours_used <= math.ceil(16 * n / 6)
            report = rc.check_certificate(g, col, pairs="all")
            assert report.verdict, report.witness
            limit_hits = max(limit_hits, col.colours_used / (16 * n / 6))
        assert limit_hits <= 1.0


def test_criterion_04_regular_scaling():
    """Theorem-2 pipelines over doubling grids: certificates pass, the
    colours/log n ratio column stays bounded (no monotone increase across
    the top three doublings)."""
    with criterion(4, "regular-pipeline scaling over n up to 8192", 300.0):
        grids = {
            5: [128, 256, 512, 1024, 2048, 4096, 8192],
            6: [129, 257, 513, 1025, 2049, 4097, 8193],  # odd: H+H+H route
        }
        for r, grid in grids.items():
            ratios = []
            for n in grid:
                cols = []
                for trial in range(10):
                    seed = sd.derive_seed(BASE_SEED, "c4", r, n, trial)
                    g, col = rc.rc_random_regular(n, r, seed)
                    cols.append(col.colours_used)
                    if n <= 200:
                        report = rc.check_certificate(g, col, pairs="all")
                    else:
                        report = rc.check_certificate(
                            g, col, pairs="sample", sample_size=1000, seed=seed
                        )
                    assert report.verdict, (r, n, trial, report.witness)
                ratios.append(statistics.median(cols) / math.log(n))
            top_steps = list(zip(ratios[-4:-1], ratios[-3:]))
            monotone_increase = all(b > a for a, b in top_steps)
            assert not monotone_increase, (r, ratios)


def test_criterion_05_diameter_empirics():
    """Bollobas-Chung model at n=4096 and the quarter-matching model grid."""
    with criterion(5, "diameter scaling of the cycle-plus-matching models", 120.0):
        rows = rc.diameter_statistics(
            "cycle+perfect-matching",
            [4096],
            trials=50,
            seed=sd.derive_seed(BASE_SEED, "c5a"),
        )
        med = rows[0].dmedian
        assert math.log2(4096) <= med <= 1.5 * math.log2(4096), med

        rows = rc.diameter_statistics(
            "cycle+quarter-matching",
            [512, 1024, 2048, 4096],
            trials=30,
            seed=sd.derive_seed(BASE_SEED, "c5b"),
        )
        ratios = [row.ratio_ln for row in rows]
        spread = (max(ratios) - min(ratios)) / min(ratios)
        assert spread < 0.25, ratios


def test_criterion_06_lll_partition():
    """100 random 28-regular graphs at n=500: partition within 50n resamples."""
    with criterion(6, "two-sided partition on 100 28-regular graphs", 120.0):
        n, r = 500, 28
        threshold = 4  # ceil(0.11 * 28)
        for i in range(100):
            g = rc.sample_connected_regular(n, r, sd.derive_seed(BASE_SEED, "c6g", i))
            res = rc.lll_partition(
                g, rc.PartitionParams(), seed=sd.derive_seed(BASE_SEED, "c6p", i)
            )
            assert res.resamples <= 50 * n
            side1 = set(res.side1)
            for v in range(n):
                in1 = sum(1 for u in g.adjacency[v] if u in side1)
                assert in1 >= threshold and r - in1 >= threshold, (i, v)


def test_criterion_07_vertex_split_bound_and_soundness():
    """rvc pipeline bound holds exactly; synthetic small splits all verify."""
    with criterion(7, "vertex split bound and exact soundness"):
        for n, r in ((150, 28), (200, 28), (120, 30)):
            out = rc.rvc_random_regular(n, r, sd.derive_seed(BASE_SEED, "c7", n, r))
            col = out.colouring
            cert = col.certificate
            assert (
                col.colours_used
                <= cert.diam1 + cert.diam2 + len(cert.shared_vertices) + 2
            )
            assert rc.check_certificate(out.graph, col, pairs="all").verdict

        rng = np.random.default_rng(sd.derive_seed(BASE_SEED, "c7s"))
        zoo = [cycle(4), cycle(6), cycle(8), complete_graph(5), complete_graph(7), petersen()]
        for _ in range(20):
            n = int(rng.integers(4, 11))
            zoo.append(random_connected_graph(rng, n, int(rng.integers(n, 3 * n))))
        built = 0
        for g in zoo:
            for _ in range(60):
                size1 = int(rng.integers(1, g.n))
                side1 = set(int(v) for v in rng.choice(g.n, size=size1, replace=False))
                overlap = int(rng.integers(0, 3))
                side2 = set(range(g.n)) - side1
                if overlap:
                    side2 |= set(
                        int(v) for v in rng.choice(g.n, size=overlap, replace=False)
                    )
                split = rc.VertexSplit(g, frozenset(side1), frozenset(side2))
                try:
                    split.validate()
                except rc.SplitConditionError:
                    continue
                col = rc.vertex_split_colouring(split)
                cert = col.certificate
                assert (
                    col.colours_used
                    <= cert.diam1 + cert.diam2 + len(cert.shared_vertices) + 2
                )
                report = rc.is_rainbow_vertex_connected_exact(g, col)
                assert report.verdict, (g.edge_list, side1, side2, report.witness)
                built += 1
        assert built >= 100, built


def test_criterion_08_pairing_lemma():
    """Exact n=2, r=2 check by enumeration plus the n=40 Monte Carlo check."""
    with criterion(8, "pairing-model edge-probability bound"):
        hits = total = 0
        for pairing in all_pairings([0, 1, 2, 3]):
            cells = {(min(p // 2, q // 2), max(p // 2, q // 2)) for p, q in pairing}
            total += 1
            hits += (0, 1) in cells
        exact = hits / total
        assert exact == pytest.approx(2 / 3)
        assert exact <= 2 * (2 * 2 / 2) ** 1  # bound 4

        report = rc.mc_pairing_edge_probability(
            40, 4, [(0, 1), (2, 3), (4, 5)], trials=10**5,
            seed=sd.derive_seed(BASE_SEED, "c8"),
        )
        assert report.bound == pytest.approx(2 * (8 / 40) ** 3)
        assert report.estimate - 3 * report.stderr <= report.bound


def test_criterion_09_gap_sequence_lemma():
    """Bijection (exhaustive n=12), exact tail, and the three MC tails."""
    with criterion(9, "gap-sequence bijection and tail bounds"):
        n = 12
        count = 0
        for size in range(2, n + 1, 2):
            for subset in combinations(range(1, n + 1), size):
                gs = rc.gap_sequence_from_subset(subset, n)
                assert rc.subset_from_gap_sequence(gs) == subset
                count += 1
        assert count == 2**11 - 1

        # Exact tail at (n=12, m=3, s=2): gaps sum to 12 < 20, so zero.
        tail = total = 0
        for subset in combinations(range(1, 13), 6):
            gs = rc.gap_sequence_from_subset(subset, 12)
            total += 1
            tail += gs.y[0] + gs.y[1] > 20
        assert tail / total <= math.exp(-4)

        for s in (1, 2, 5):
            report = rc.mc_gap_tail(
                1000, 250, list(range(s)), trials=10**4,
                seed=sd.derive_seed(BASE_SEED, "c9", s),
            )
            assert report.bound == pytest.approx(math.exp(-2 * s))
            assert report.estimate - 3 * report.stderr <= report.bound, s


def test_criterion_10_expander_splitter():
    """K16 with lambda=1/2 splits within 100 retries; C4 is a negative control."""
    with criterion(10, "Las Vegas expander split with exact validation"):
        g = complete_graph(16)
        split = rc.expander_split(
            g, 0.5, seed=sd.derive_seed(BASE_SEED, "c10"), max_retries=100
        )
        for part in (split.edges1, split.edges2):
            assert rc.edge_expansion_exact(rc.Graph(16, part)) >= 2

        with pytest.raises(rc.RetriesExhaustedError):
            rc.expander_split(
                cycle(4), 0.5, seed=sd.derive_seed(BASE_SEED, "c10n"), max_retries=100
            )


def test_criterion_11_deterministic_experiments():
    """Identical configs produce byte-identical CSV."""
    with criterion(11, "byte-identical experiment reruns"):
        config = ExperimentConfig(
            experiment="acceptance-det",
            pipeline="regular",
            n_values=[64, 128],
            r_values=[5],
            trials=2,
            base_seed=BASE_SEED,
            verify="certificate-sample",
            verify_pairs=100,
        )
        first = rows_to_csv(run_experiment(config), config)
        second = rows_to_csv(run_experiment(config), config)
        assert first == second
        assert first.count("\n") == 4 + 3  # 4 rows + version/config/header
