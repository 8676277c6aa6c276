"""Graph and multigraph primitives plus the deterministic algorithms on them.

Vertices are dense integers 0..n-1 throughout; any external 1-based labels
are mapped at I/O boundaries.  Graph values are immutable after construction
and safe to share across parallel workers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import chain

import numpy as np

from .errors import (
    DisconnectedGraphError,
    EnumerationCapError,
    InvalidInputError,
    OddDegreeError,
)

EXPANSION_CAP = 24


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no self-loops, no parallel edges."""

    n: int
    edges: frozenset

    @cached_property
    def edge_list(self) -> tuple:
        """Edges as (u, v) with u < v, sorted lexicographically."""
        return tuple(sorted(self.edges))

    @cached_property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edge_list)}

    @cached_property
    def adjacency(self) -> tuple:
        """Per-vertex sorted neighbour tuples."""
        adj = [[] for _ in range(self.n)]
        for u, v in self.edge_list:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _csr(self) -> tuple:
        """(flat neighbour array, start offsets), for vectorized BFS."""
        starts = np.zeros(self.n + 1, dtype=np.int64)
        for v, nbrs in enumerate(self.adjacency):
            starts[v + 1] = starts[v] + len(nbrs)
        flat = np.fromiter(
            chain.from_iterable(self.adjacency), dtype=np.int64, count=int(starts[-1])
        )
        return flat, starts

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> tuple:
        return tuple(len(a) for a in self.adjacency)

    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return _canon(u, v) in self.edges

    def subgraph_with_edges(self, edge_subset) -> "Graph":
        """Spanning subgraph (same vertex set) keeping only ``edge_subset``."""
        sub = frozenset(_canon(u, v) for u, v in edge_subset)
        extra = sub - self.edges
        if extra:
            raise InvalidInputError(f"edges not in graph: {sorted(extra)[:3]}")
        return Graph(self.n, sub)

    def induced_subgraph(self, vertices) -> tuple["Graph", tuple]:
        """Induced subgraph on ``vertices``; returns (graph, old-id tuple).

        The returned graph renumbers vertices 0..k-1 following the sorted
        order of ``vertices``; element i of the mapping is the original id.
        """
        keep = sorted(set(vertices))
        if keep and not (0 <= keep[0] and keep[-1] < self.n):
            raise InvalidInputError("induced vertex out of range")
        pos = {v: i for i, v in enumerate(keep)}
        sub = frozenset(
            (pos[u], pos[v])
            for u, v in self.edges
            if u in pos and v in pos
        )
        return Graph(len(keep), sub), tuple(keep)


def build_graph(n: int, edge_list) -> Graph:
    """Build a Graph from an (n, edge pair list) description.

    Duplicate pairs are collapsed; self-loops and out-of-range vertices are
    rejected.
    """
    if n < 0:
        raise InvalidInputError(f"vertex count must be non-negative, got {n}")
    edges = set()
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidInputError(f"vertex out of range in edge ({u}, {v}), n={n}")
        if u == v:
            raise InvalidInputError(f"self-loop ({u}, {v}) not allowed")
        edges.add(_canon(u, v))
    return Graph(n, frozenset(edges))


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph with loops; edges carry stable dense indices.

    ``edges[i]`` is the pair of endpoints of edge i (loops as (v, v)).  The
    degree of a vertex counts loops twice.
    """

    n: int
    edges: tuple

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInputError(f"vertex out of range in edge ({u}, {v})")
        object.__setattr__(
            self, "edges", tuple(_canon(u, v) for u, v in self.edges)
        )

    @cached_property
    def degrees(self) -> tuple:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def incidence(self) -> tuple:
        """Per-vertex tuple of (edge index, other endpoint); loops appear once."""
        inc = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append((i, v))
            if u != v:
                inc[v].append((i, u))
        return tuple(tuple(entries) for entries in inc)

    @cached_property
    def adjacency(self) -> tuple:
        """Distinct neighbours (loops excluded), sorted; for BFS reuse."""
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def is_simple(self) -> bool:
        if any(u == v for u, v in self.edges):
            return False
        return len(set(self.edges)) == len(self.edges)

    def simple_graph(self) -> Graph:
        """Maximal simple subgraph: drop loops, merge parallel edges."""
        return Graph(self.n, frozenset(e for e in self.edges if e[0] != e[1]))


@dataclass(frozen=True)
class DistanceLayers:
    """BFS distances from a root; ``dist[v]`` is None when v is unreachable.

    ``parent[v]`` is the lowest-id predecessor on a shortest root-v path,
    giving deterministic shortest-path trees.
    """

    root: int
    dist: tuple
    parent: tuple

    @property
    def eccentricity(self) -> int:
        return max(d for d in self.dist if d is not None)

    def layers(self) -> list:
        """Vertices grouped by distance; index j holds layer U_j."""
        out = [[] for _ in range(self.eccentricity + 1)]
        for v, d in enumerate(self.dist):
            if d is not None:
                out[d].append(v)
        return out


def bfs_layers(g, root: int) -> DistanceLayers:
    """Exact BFS distance layers from ``root`` in a Graph or Multigraph."""
    if not 0 <= root < g.n:
        raise InvalidInputError(f"root {root} out of range for n={g.n}")
    dist = [None] * g.n
    parent = [None] * g.n
    dist[root] = 0
    queue = deque([root])
    adj = g.adjacency
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for u in adj[v]:
            if dist[u] is None:
                dist[u] = dv + 1
                parent[u] = v
                queue.append(u)
    return DistanceLayers(root=root, dist=tuple(dist), parent=tuple(parent))


def connected_components(g) -> tuple:
    """Maximal connected components, each sorted, ordered by least vertex."""
    seen = [False] * g.n
    comps = []
    adj = g.adjacency
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def is_connected(g) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


_SHIFTS = np.arange(64, dtype=np.uint64)


def eccentricities(g: Graph) -> tuple:
    """Eccentricity of every vertex, by 64-way bitset BFS.

    Sources are processed 64 at a time; one uint64 per vertex carries the
    frontier bits, so each BFS level is a single gather + segmented OR.
    Raises DisconnectedGraphError if any pair is unreachable.
    """
    n = g.n
    if n == 0:
        raise InvalidInputError("eccentricities of the empty graph are undefined")
    if n == 1:
        return (0,)
    flat, starts = g._csr
    if flat.size == 0:
        raise DisconnectedGraphError("graph has no edges but n > 1")
    degs = np.diff(starts)
    seg = np.minimum(starts[:-1], flat.size - 1)
    isolated = degs == 0
    ecc = np.zeros(n, dtype=np.int64)
    for base in range(0, n, 64):
        width = min(64, n - base)
        mask = np.uint64((1 << width) - 1)
        frontier = np.zeros(n, dtype=np.uint64)
        frontier[base : base + width] = np.uint64(1) << _SHIFTS[:width]
        visited = frontier.copy()
        level = 0
        while True:
            spread = np.bitwise_or.reduceat(frontier[flat], seg)
            spread[isolated] = 0
            nxt = spread & ~visited
            if not nxt.any():
                break
            level += 1
            visited |= nxt
            newbits = np.bitwise_or.reduce(nxt)
            hit = ((newbits >> _SHIFTS[:width]) & np.uint64(1)).astype(bool)
            ecc[base : base + width][hit] = level
            frontier = nxt
        if (np.bitwise_and.reduce(visited) & mask) != mask:
            raise DisconnectedGraphError("graph is disconnected")
    return tuple(int(x) for x in ecc)


def diameter(g: Graph) -> int:
    """Max over all-pairs shortest distances; errors on disconnected input."""
    return max(eccentricities(g))


def euler_circuit(mg: Multigraph) -> tuple:
    """Closed trail through every edge of ``mg`` exactly once (Hierholzer).

    Returns the sequence of edge indices; consecutive edges share an
    endpoint and the trail returns to its start.  Requires all degrees even
    and the edge set connected (isolated vertices are ignored).
    """
    odd = [v for v, d in enumerate(mg.degrees) if d % 2 == 1]
    if odd:
        raise OddDegreeError(f"odd-degree vertices present: {odd[:6]}")
    m = len(mg.edges)
    if m == 0:
        return ()
    support = [v for v, d in enumerate(mg.degrees) if d > 0]
    comp_of_start = _edge_support_component(mg, support[0])
    if any(v not in comp_of_start for v in support):
        raise DisconnectedGraphError("edge set is disconnected")

    used = [False] * m
    ptr = [0] * mg.n
    inc = mg.incidence
    out = []
    stack = [(support[0], None)]
    while stack:
        v, via = stack[-1]
        entries = inc[v]
        i = ptr[v]
        while i < len(entries) and used[entries[i][0]]:
            i += 1
        ptr[v] = i
        if i == len(entries):
            stack.pop()
            if via is not None:
                out.append(via)
        else:
            eid, w = entries[i]
            used[eid] = True
            stack.append((w, eid))
    if len(out) != m:
        raise DisconnectedGraphError("edge set is disconnected")
    out.reverse()
    return tuple(out)


def _edge_support_component(mg: Multigraph, start: int) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in mg.adjacency[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def _popcount_u32(a: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(a).astype(np.int64)
    b = np.ascontiguousarray(a, dtype=np.uint32).view(np.uint8).reshape(-1, 4)
    return _POPCOUNT8[b].sum(axis=1).astype(np.int64)


def edge_expansion_exact(g: Graph, cap: int = EXPANSION_CAP) -> Fraction:
    """Exact edge expansion min |out(S)| / |S| over non-empty S, |S| <= n/2.

    Exhaustive over all 2^n - 1 subsets (vectorized per chunk); capped at
    ``cap`` vertices so exactness stays honest.  For larger graphs use a
    sampled upper bound instead (see verify.density_audit's sampled mode for
    the analogous pattern).
    """
    n = g.n
    if n < 2:
        raise InvalidInputError("edge expansion needs at least 2 vertices")
    if n > cap:
        raise EnumerationCapError(
            f"n={n} exceeds the exact-enumeration cap {cap}; use sampling"
        )
    if not is_connected(g):
        raise DisconnectedGraphError("edge expansion of a disconnected graph is 0")
    out_count, size = _expansion_minimizer(g)
    return Fraction(out_count, size)


def edge_expansion_sampled(g: Graph, samples: int, seed: int) -> Fraction:
    """Sampled upper bound on the edge expansion, clearly not exact.

    Minimizes |out(S)|/|S| over ``samples`` random subsets; since only some
    subsets are seen, the result can only overestimate the true minimum.
    Intended for graphs beyond the exact-enumeration cap.
    """
    from . import seeds

    if g.n < 2:
        raise InvalidInputError("edge expansion needs at least 2 vertices")
    if not is_connected(g):
        raise DisconnectedGraphError("edge expansion of a disconnected graph is 0")
    rng = seeds.generator(seed, "expansion-sampled", g.n)
    best = None
    adj_sets = [set(a) for a in g.adjacency]
    for _ in range(samples):
        size = int(rng.integers(1, g.n // 2 + 1))
        subset = set(int(v) for v in rng.choice(g.n, size=size, replace=False))
        out = sum(
            1 for v in subset for u in adj_sets[v] if u not in subset
        )
        cand = Fraction(out, size)
        if best is None or cand < best:
            best = cand
    return best


def _expansion_minimizer(g: Graph) -> tuple:
    """(|out(S)|, |S|) attaining the expansion minimum; S <= n/2 nonempty."""
    n = g.n
    half = n // 2
    edges = g.edge_list
    best = None  # (out, size)
    chunk = 1 << 20
    for lo in range(1, 1 << n, chunk):
        hi = min(lo + chunk, 1 << n)
        masks = np.arange(lo, hi, dtype=np.uint32)
        sizes = _popcount_u32(masks)
        valid = sizes <= half
        if not valid.any():
            continue
        cut = np.zeros(masks.size, dtype=np.int64)
        for u, v in edges:
            cut += ((masks >> np.uint32(u)) ^ (masks >> np.uint32(v))) & np.uint32(1)
        ratio = np.where(valid, cut / sizes, np.inf)
        i = int(np.argmin(ratio))
        cand = (int(cut[i]), int(sizes[i]))
        if best is None or Fraction(*cand) < Fraction(*best):
            best = cand
    return best
