"""Seeded generators for the random graph models under study.

Covers the pairing (configuration) model, uniform simple regular graphs,
random Hamiltonian cycles and matchings, rejection-sampled edge-disjoint
unions, and the gap-sequence / subdivision construction of the
cycle-plus-quarter-matching model.

All generators are pure functions of (parameters, seed): identical inputs
give bit-identical graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import seeds
from .errors import InvalidInputError, RetriesExhaustedError
from .graphs import Graph, Multigraph, _canon, is_connected


@dataclass(frozen=True)
class PairingState:
    """Configuration-model state: n cells of r points, perfectly matched.

    Points are 0..n*r-1; point p lives in cell p // r.  ``pairs`` lists the
    matched point pairs (p, q) with p < q, sorted by first point, and its
    order fixes the edge indices of the projected multigraph.
    """

    n: int
    r: int
    pairs: tuple

    def cell(self, point: int) -> int:
        return point // self.r

    @cached_property
    def multigraph(self) -> Multigraph:
        return Multigraph(
            self.n, tuple(_canon(p // self.r, q // self.r) for p, q in self.pairs)
        )


def _pairing_from_rng(n: int, r: int, rng: np.random.Generator) -> PairingState:
    perm = rng.permutation(n * r)
    halves = perm.reshape(-1, 2)
    lo = np.minimum(halves[:, 0], halves[:, 1])
    hi = np.maximum(halves[:, 0], halves[:, 1])
    order = np.argsort(lo)
    pairs = tuple(zip(lo[order].tolist(), hi[order].tolist()))
    return PairingState(n=n, r=r, pairs=pairs)


def sample_pairing(n: int, r: int, seed: int) -> PairingState:
    """Uniform perfect matching on the n*r configuration points."""
    if n < 1 or r < 1:
        raise InvalidInputError(f"need n, r >= 1, got n={n}, r={r}")
    if (n * r) % 2 != 0:
        raise InvalidInputError(f"n*r = {n * r} is odd; no perfect matching exists")
    return _pairing_from_rng(n, r, seeds.generator(seed, "pairing", n, r))


def sample_simple_regular(
    n: int, r: int, seed: int, max_attempts: int = 5000
) -> Graph:
    """Uniform simple r-regular graph by rejection from the pairing model.

    Each simple graph occurs with equal probability, so rejection is exactly
    uniform.  The acceptance rate decays like exp(-(r^2-1)/4): practical for
    small r only; larger degrees exhaust max_attempts (use
    sample_regular_fast for those).
    """
    if (n * r) % 2 != 0:
        raise InvalidInputError(f"n*r = {n * r} is odd")
    if not 0 < r < n:
        raise InvalidInputError(f"need 0 < r < n, got r={r}, n={n}")
    rng = seeds.generator(seed, "simple-regular", n, r)
    return _simple_regular_from_rng(n, r, rng, max_attempts)


def _simple_regular_attempt(n: int, r: int, rng: np.random.Generator):
    """One pairing draw, projected; None when loops/parallels appear."""
    cells = rng.permutation(n * r) // r
    a, b = cells[0::2], cells[1::2]
    if (a == b).any():
        return None
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    keys = lo * n + hi
    if np.unique(keys).size != keys.size:
        return None
    return Graph(n, frozenset(zip(lo.tolist(), hi.tolist())))


def _simple_regular_from_rng(
    n: int, r: int, rng: np.random.Generator, max_attempts: int = 5000
) -> Graph:
    for _ in range(max_attempts):
        g = _simple_regular_attempt(n, r, rng)
        if g is not None:
            return g
    raise RetriesExhaustedError(
        f"no simple multigraph in {max_attempts} pairings (n={n}, r={r}); "
        "simplicity is too rare at this degree"
    )


def sample_regular_fast(n: int, r: int, seed: int, max_restarts: int = 10**6) -> Graph:
    """Simple r-regular graph by stub matching with restart on dead ends.

    The standard configuration-model repair loop (as in NetworkX): pair
    random stubs, re-queue the stubs of rejected pairs, restart when the
    remaining stubs admit no suitable edge.  Asymptotically uniform and fast
    even for large r, where exact rejection is hopeless.
    """
    if (n * r) % 2 != 0:
        raise InvalidInputError(f"n*r = {n * r} is odd")
    if not 0 <= r < n:
        raise InvalidInputError(f"need 0 <= r < n, got r={r}, n={n}")
    if r == 0:
        return Graph(n, frozenset())
    rng = seeds.generator(seed, "regular-fast", n, r)

    def suitable(edges, counts):
        if not counts:
            return True
        verts = sorted(counts)
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                if (u, v) not in edges:
                    return True
        return False

    for _ in range(max_restarts):
        edges = set()
        stubs = list(range(n)) * r
        ok = True
        while stubs:
            stubs = [int(s) for s in rng.permutation(stubs)]
            counts = {}
            it = iter(stubs)
            for s1, s2 in zip(it, it):
                u, v = _canon(s1, s2)
                if u != v and (u, v) not in edges:
                    edges.add((u, v))
                else:
                    counts[s1] = counts.get(s1, 0) + 1
                    counts[s2] = counts.get(s2, 0) + 1
            if not suitable(edges, counts):
                ok = False
                break
            stubs = [v for v, k in counts.items() for _ in range(k)]
        if ok:
            return Graph(n, frozenset(edges))
    raise RetriesExhaustedError(f"stub matching failed after {max_restarts} restarts")


def _ham_cycle_from_rng(n: int, rng: np.random.Generator) -> Graph:
    perm = rng.permutation(n).tolist()
    edges = {_canon(perm[i - 1], perm[i]) for i in range(n)}
    return Graph(n, frozenset(edges))


def random_hamiltonian_cycle(n: int, seed: int) -> Graph:
    """Cycle through a uniform random permutation of 0..n-1."""
    if n < 3:
        raise InvalidInputError(f"a cycle needs n >= 3, got {n}")
    return _ham_cycle_from_rng(n, seeds.generator(seed, "hamcycle", n))


def _matching_from_rng(n: int, m: int, rng: np.random.Generator) -> Graph:
    chosen = rng.choice(n, size=2 * m, replace=False).tolist()
    edges = {_canon(chosen[2 * i], chosen[2 * i + 1]) for i in range(m)}
    return Graph(n, frozenset(edges))


def random_matching(n: int, m: int, seed: int) -> Graph:
    """Uniform 2m-subset of vertices with a uniform perfect matching on it."""
    if m < 0 or 2 * m > n:
        raise InvalidInputError(f"need 0 <= 2m <= n, got m={m}, n={n}")
    return _matching_from_rng(n, m, seeds.generator(seed, "matching", n, m))


def _realize_part(part, rng: np.random.Generator) -> Graph:
    if isinstance(part, Graph):
        return part
    return part(rng)


def oplus_union(parts, seed: int, max_attempts: int = 2000):
    """Edge-disjoint union of independently sampled parts, by full rejection.

    ``parts`` mixes Graph values (deterministic) and callables taking a
    numpy Generator and returning a Graph.  On any pairwise edge collision
    every part is resampled, matching conditioning on mutual disjointness
    exactly; per-part resampling would bias the distribution.

    Returns (union graph, tuple of per-part edge frozensets).
    """
    parts = list(parts)
    if len(parts) < 2:
        raise InvalidInputError("oplus union needs at least 2 parts")
    rng = seeds.generator(seed, "oplus", len(parts))
    last_overlap = None
    for _ in range(max_attempts):
        graphs = [_realize_part(p, rng) for p in parts]
        ns = {g.n for g in graphs}
        if len(ns) != 1:
            raise InvalidInputError(f"parts disagree on vertex count: {sorted(ns)}")
        union = set()
        total = 0
        for g in graphs:
            union |= g.edges
            total += len(g.edges)
        if len(union) == total:
            return (
                Graph(graphs[0].n, frozenset(union)),
                tuple(frozenset(g.edges) for g in graphs),
            )
        last_overlap = total - len(union)
    raise RetriesExhaustedError(
        f"no edge-disjoint sample in {max_attempts} attempts "
        f"(last overlap: {last_overlap} edges)",
        best=last_overlap,
    )


@dataclass(frozen=True)
class GapSequence:
    """Spacing encoding (Y_0, ..., Y_2m) of a 2m-subset of {1..n}.

    Y_0 is the first element, Y_i the i-th gap, Y_2m the tail n - b_2m.
    Bijective with the subset.
    """

    n: int
    m: int
    y: tuple

    def __post_init__(self):
        if len(self.y) != 2 * self.m + 1:
            raise InvalidInputError(
                f"gap sequence needs 2m+1={2 * self.m + 1} entries, got {len(self.y)}"
            )
        if any(v < 1 for v in self.y[:-1]) or self.y[-1] < 0:
            raise InvalidInputError("need Y_i >= 1 for i < 2m and Y_2m >= 0")
        if sum(self.y) != self.n:
            raise InvalidInputError(f"gap entries sum to {sum(self.y)}, expected {self.n}")


def gap_sequence_from_subset(subset, n: int) -> GapSequence:
    """Gap encoding of an even-size subset of {1..n} (1-based labels)."""
    b = list(subset)
    if not b or len(b) % 2 != 0:
        raise InvalidInputError("subset must be non-empty with even size")
    if any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
        raise InvalidInputError("subset must be strictly increasing")
    if b[0] < 1 or b[-1] > n:
        raise InvalidInputError(f"subset values must lie in 1..{n}")
    y = [b[0]]
    y.extend(b[i + 1] - b[i] for i in range(len(b) - 1))
    y.append(n - b[-1])
    return GapSequence(n=n, m=len(b) // 2, y=tuple(y))


def subset_from_gap_sequence(gs: GapSequence) -> tuple:
    """Inverse of gap_sequence_from_subset; reconstructs the subset exactly."""
    b = []
    acc = 0
    for y in gs.y[:-1]:
        acc += y
        b.append(acc)
    return tuple(b)


@dataclass(frozen=True)
class SubdivisionRecord:
    """Construction record of the subdivided cycle-plus-matching model.

    ``b`` is the sorted 2m-subset of {1..n} (1-based), ``matching`` the
    perfect matching on it (1-based value pairs), ``gaps`` its gap sequence.
    """

    b: tuple
    matching: tuple
    gaps: GapSequence


def _positions_matching_avoiding_cycle(
    k: int, rng: np.random.Generator, max_attempts: int = 10000
) -> tuple:
    """Perfect matching on positions 0..k-1 avoiding cyclically adjacent pairs."""
    for _ in range(max_attempts):
        perm = rng.permutation(k).tolist()
        pairs = [
            _canon(perm[2 * i], perm[2 * i + 1]) for i in range(k // 2)
        ]
        if all((j - i) % k != 1 and (i - j) % k != 1 for i, j in pairs):
            return tuple(sorted(pairs))
    raise RetriesExhaustedError(
        f"no cycle-avoiding matching on {k} positions in {max_attempts} attempts"
    )


def _subdivided_graph(n: int, b: tuple, y: tuple, matching_pairs: tuple) -> Graph:
    """Subdivide the cycle b_1..b_2m b_1 by gaps y, keep matching edges.

    Labels are 1-based; the produced Graph is 0-based.  The edge b_i b_{i+1}
    becomes the chain of Y_i unit steps; the wrap edge b_2m b_1 becomes the
    chain of Y_2m + Y_0 steps through n and back to b_1.
    """
    edges = set()
    k = len(b)
    for i in range(k):
        start = b[i]
        steps = y[i + 1] if i < k - 1 else y[k] + y[0]
        cur = start
        for _ in range(steps):
            nxt = cur % n + 1
            edges.add(_canon(cur - 1, nxt - 1))
            cur = nxt
        if cur != b[(i + 1) % k]:
            raise InvalidInputError("gap sequence inconsistent with subset")
    for u, v in matching_pairs:
        edges.add(_canon(u - 1, v - 1))
    return Graph(n, frozenset(edges))


def subdivide_cycle_model(n: int, seed: int):
    """Cycle (1..n,1) plus a ⌊n/4⌋-edge matching, built the two-step way.

    Samples the 2m-subset B, a perfect matching M on B whose edges avoid the
    contracted cycle b_1..b_2m b_1, and realizes the graph by subdividing
    each contracted cycle edge into its gap-count of unit edges.  Returns
    (graph, SubdivisionRecord).
    """
    if n < 8:
        raise InvalidInputError(f"model needs n >= 8, got {n}")
    m = n // 4
    rng_subset = seeds.generator(seed, "theorem5-subset", n)
    rng_match = seeds.generator(seed, "theorem5-matching", n)
    chosen = np.sort(rng_subset.choice(n, size=2 * m, replace=False)) + 1
    b = tuple(int(v) for v in chosen)
    gaps = gap_sequence_from_subset(b, n)
    pos_pairs = _positions_matching_avoiding_cycle(2 * m, rng_match)
    matching = tuple(sorted(_canon(b[i], b[j]) for i, j in pos_pairs))
    graph = _subdivided_graph(n, b, gaps.y, matching)
    return graph, SubdivisionRecord(b=b, matching=matching, gaps=gaps)


def cycle_graph(n: int) -> Graph:
    """The fixed cycle 0-1-...-(n-1)-0."""
    if n < 3:
        raise InvalidInputError(f"a cycle needs n >= 3, got {n}")
    return Graph(n, frozenset(_canon(i, (i + 1) % n) for i in range(n)))


def cycle_plus_perfect_matching(n: int, seed: int, max_attempts: int = 2000) -> Graph:
    """Fixed n-cycle plus an edge-disjoint random ⌊n/2⌋-edge matching."""
    if n < 4:
        raise InvalidInputError(f"model needs n >= 4, got {n}")
    base = cycle_graph(n)
    rng = seeds.generator(seed, "cycle+pm", n)
    for _ in range(max_attempts):
        matching = _matching_from_rng(n, n // 2, rng)
        if not (matching.edges & base.edges):
            return Graph(n, base.edges | matching.edges)
    raise RetriesExhaustedError(
        f"no cycle-disjoint perfect matching in {max_attempts} attempts"
    )


def sample_connected_regular(
    n: int, r: int, seed: int, max_attempts: int = 200
) -> Graph:
    """sample_regular_fast, resampled until connected."""
    for attempt in range(max_attempts):
        g = sample_regular_fast(n, r, seeds.derive_seed(seed, "connected", attempt))
        if is_connected(g):
            return g
    raise RetriesExhaustedError(
        f"no connected {r}-regular sample in {max_attempts} attempts"
    )
