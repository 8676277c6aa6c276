"""Rainbow edge colourings via edge splitting.

The layered split colouring gives every valid pair of connected spanning
subgraphs (G1, G2) a colouring with at most diam(G1) + diam(G2) + |E1 ∩ E2|
colours; the remaining operations manufacture good splits: alternation
along an Euler circuit for the minimum-degree bound, Las Vegas 2-colouring
for expanders, and edge-disjoint unions of random models for regular graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import seeds
from .errors import (
    BoundViolationError,
    DisconnectedGraphError,
    InvalidInputError,
    RetriesExhaustedError,
)
from .graphs import (
    Graph,
    Multigraph,
    _canon,
    bfs_layers,
    connected_components,
    eccentricities,
    edge_expansion_exact,
    euler_circuit,
    is_connected,
)
from .models import (
    _ham_cycle_from_rng,
    _matching_from_rng,
    _simple_regular_from_rng,
    oplus_union,
    sample_connected_regular,
)


@dataclass(frozen=True)
class EdgeSplit:
    """A pair of spanning subgraphs (V, edges1), (V, edges2) of g.

    ``shared`` is computed, never asserted.  Both subgraphs must be
    connected on the full vertex set for the split colouring to apply.
    """

    g: Graph
    edges1: frozenset
    edges2: frozenset

    @cached_property
    def shared(self) -> frozenset:
        return self.edges1 & self.edges2

    def validate(self) -> None:
        for i, part in ((1, self.edges1), (2, self.edges2)):
            stray = part - self.g.edges
            if stray:
                raise InvalidInputError(
                    f"edges{i} contains non-edges of g: {sorted(stray)[:3]}"
                )
            if not is_connected(Graph(self.g.n, part)):
                raise DisconnectedGraphError(
                    f"subgraph {i} is not a connected spanning subgraph"
                )


@dataclass
class EdgeCertificate:
    """Construction record enabling polynomial verification.

    ``dist_i``/``parent_i`` are BFS arrays toward the common root inside
    subgraph i; ``palette_a``/``palette_b`` map a layer index j to the
    colour of edges between layers j-1 and j; shared edges precede both
    palettes in the colour numbering.
    """

    root: int
    dist1: tuple
    parent1: tuple
    dist2: tuple
    parent2: tuple
    shared_edges: tuple
    palette_a: dict
    palette_b: dict
    diam1: int
    diam2: int

    def to_payload(self) -> dict:
        return {
            "root": self.root,
            "dist1": list(self.dist1),
            "parent1": list(self.parent1),
            "dist2": list(self.dist2),
            "parent2": list(self.parent2),
            "shared_edges": [list(e) for e in self.shared_edges],
            "palette_a": {str(k): v for k, v in self.palette_a.items()},
            "palette_b": {str(k): v for k, v in self.palette_b.items()},
            "diam1": self.diam1,
            "diam2": self.diam2,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "EdgeCertificate":
        return cls(
            root=payload["root"],
            dist1=tuple(payload["dist1"]),
            parent1=tuple(payload["parent1"]),
            dist2=tuple(payload["dist2"]),
            parent2=tuple(payload["parent2"]),
            shared_edges=tuple(tuple(e) for e in payload["shared_edges"]),
            palette_a={int(k): v for k, v in payload["palette_a"].items()},
            palette_b={int(k): v for k, v in payload["palette_b"].items()},
            diam1=payload["diam1"],
            diam2=payload["diam2"],
        )


@dataclass
class EdgeColouring:
    """Colour ids per edge, plus the optional construction certificate."""

    colours: dict
    certificate: EdgeCertificate | None = None

    @property
    def colours_used(self) -> int:
        return len(set(self.colours.values()))

    def bound(self) -> int | None:
        """The split-lemma bound diam1 + diam2 + |B| when a certificate exists."""
        if self.certificate is None:
            return None
        c = self.certificate
        return c.diam1 + c.diam2 + len(c.shared_edges)

    def to_payload(self) -> dict:
        return {
            "kind": "edge",
            "colors": [[u, v, c] for (u, v), c in sorted(self.colours.items())],
            "certificate": (
                None if self.certificate is None else self.certificate.to_payload()
            ),
            "bound": self.bound(),
            "colours_used": self.colours_used,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "EdgeColouring":
        cert = payload.get("certificate")
        return cls(
            colours={(u, v): c for u, v, c in payload["colors"]},
            certificate=None if cert is None else EdgeCertificate.from_payload(cert),
        )


def split_colouring(split: EdgeSplit) -> EdgeColouring:
    """Layered rainbow colouring from a valid edge split.

    Shared edges get unique colours.  A root minimizing the sum of its
    eccentricities in the two subgraphs is chosen (ties to the lowest id);
    each remaining edge of subgraph i between consecutive BFS layers gets
    the layer colour of palette a (i=1) or b (i=2).  Intra-layer edges and
    edges outside both subgraphs reuse the first a-palette colour.
    """
    g = split.g
    if not is_connected(g):
        raise DisconnectedGraphError("underlying graph must be connected")
    split.validate()
    g1 = Graph(g.n, split.edges1)
    g2 = Graph(g.n, split.edges2)
    ecc1 = eccentricities(g1) if g.n > 1 else (0,)
    ecc2 = eccentricities(g2) if g.n > 1 else (0,)
    root = min(range(g.n), key=lambda v: (ecc1[v] + ecc2[v], v))
    layers1 = bfs_layers(g1, root)
    layers2 = bfs_layers(g2, root)
    shared = tuple(sorted(split.shared))
    shared_colour = {e: i for i, e in enumerate(shared)}

    # First pass: which palette levels are actually needed.
    d1, d2 = layers1.dist, layers2.dist
    needed_a, needed_b = set(), set()
    plan = {}
    for e in g.edge_list:
        if e in shared_colour:
            continue
        u, v = e
        if e in split.edges1:
            j = max(d1[u], d1[v])
            if abs(d1[u] - d1[v]) == 1:
                plan[e] = ("a", j)
                needed_a.add(j)
            else:
                plan[e] = ("a", 1)
                needed_a.add(1)
        elif e in split.edges2:
            j = max(d2[u], d2[v])
            if abs(d2[u] - d2[v]) == 1:
                plan[e] = ("b", j)
                needed_b.add(j)
            else:
                plan[e] = ("a", 1)
                needed_a.add(1)
        else:
            plan[e] = ("a", 1)
            needed_a.add(1)

    # Second pass: dense ids: shared first, then a levels, then b levels.
    next_id = len(shared)
    palette_a = {}
    for j in sorted(needed_a):
        palette_a[j] = next_id
        next_id += 1
    palette_b = {}
    for j in sorted(needed_b):
        palette_b[j] = next_id
        next_id += 1

    colours = dict(shared_colour)
    for e, (side, j) in plan.items():
        colours[e] = palette_a[j] if side == "a" else palette_b[j]

    cert = EdgeCertificate(
        root=root,
        dist1=d1,
        parent1=layers1.parent,
        dist2=d2,
        parent2=layers2.parent,
        shared_edges=shared,
        palette_a=palette_a,
        palette_b=palette_b,
        diam1=max(ecc1),
        diam2=max(ecc2),
    )
    colouring = EdgeColouring(colours=colours, certificate=cert)
    if colouring.colours_used > cert.diam1 + cert.diam2 + len(shared):
        raise BoundViolationError(
            f"{colouring.colours_used} colours exceed the split bound "
            f"{cert.diam1}+{cert.diam2}+{len(shared)}"
        )
    return colouring


def euler_degree_split(g: Graph):
    """Partition E(g) into (F1, F2) by alternating along an Euler circuit.

    Odd-degree vertices are paired by an auxiliary matching (in increasing
    id order; pairs may duplicate existing edges, the multigraph absorbs
    them), the circuit is alternated, and the auxiliary edges dropped.
    Every vertex of degree d keeps degree >= floor((d-1)/2) in each half.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("euler split needs a connected graph")
    base = g.edge_list
    m = len(base)
    odd = [v for v in range(g.n) if g.degree(v) % 2 == 1]
    aux = [(odd[i], odd[i + 1]) for i in range(0, len(odd), 2)]
    mg = Multigraph(g.n, tuple(base) + tuple(aux))
    circuit = list(euler_circuit(mg))
    if aux:
        # Rotate so an auxiliary edge sits first: the wrap-around parity
        # defect then lands on an edge that is removed anyway.
        first_aux = next(i for i, eid in enumerate(circuit) if eid >= m)
        circuit = circuit[first_aux:] + circuit[:first_aux]
    f1, f2 = set(), set()
    for pos, eid in enumerate(circuit):
        if eid >= m:
            continue
        # 1-based trail position: even positions to F1, odd to F2.
        if (pos + 1) % 2 == 0:
            f1.add(base[eid])
        else:
            f2.add(base[eid])
    return frozenset(f1), frozenset(f2)


def connect_components(g: Graph, f) -> frozenset:
    """Smallest edge set B ⊆ E(g) making (V, F ∪ B) connected.

    B is a spanning tree of the component contraction of g, so
    |B| = (#components of (V, F)) - 1; g connected guarantees feasibility.
    """
    f = frozenset(_canon(u, v) for u, v in f)
    stray = f - g.edges
    if stray:
        raise InvalidInputError(f"F contains non-edges of g: {sorted(stray)[:3]}")
    comps = connected_components(Graph(g.n, f))
    comp_id = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_id[v] = i
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    added = []
    for u, v in g.edge_list:
        ru, rv = find(comp_id[u]), find(comp_id[v])
        if ru != rv:
            parent[ru] = rv
            added.append((u, v))
    if len(added) != len(comps) - 1:
        raise DisconnectedGraphError("g itself is disconnected")
    return frozenset(added)


def rc_min_degree(g: Graph) -> EdgeColouring:
    """Rainbow colouring of a connected graph with min degree >= 4.

    Euler-alternates the edges, reconnects each half with a small edge set,
    and applies the split colouring.  Asserts the guaranteed bounds: at most
    ceil(16n/delta) colours, |B_i| <= 2n/delta, diam(G_i) <= 6n/delta.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("rc_min_degree needs a connected graph")
    delta = g.min_degree()
    if delta < 4:
        raise InvalidInputError(f"minimum degree {delta} < 4")
    n = g.n
    f1, f2 = euler_degree_split(g)
    b1 = connect_components(g, f1)
    b2 = connect_components(g, f2)
    for i, b in ((1, b1), (2, b2)):
        if len(b) > 2 * n / delta:
            raise BoundViolationError(
                f"|B_{i}| = {len(b)} exceeds 2n/delta = {2 * n / delta:.2f}"
            )
    split = EdgeSplit(g, f1 | b1, f2 | b2)
    colouring = split_colouring(split)
    cert = colouring.certificate
    for i, diam_i in ((1, cert.diam1), (2, cert.diam2)):
        if diam_i > 6 * n / delta:
            raise BoundViolationError(
                f"diam(G_{i}) = {diam_i} exceeds 6n/delta = {6 * n / delta:.2f}"
            )
    limit = math.ceil(16 * n / delta)
    if colouring.colours_used > limit:
        raise BoundViolationError(
            f"{colouring.colours_used} colours exceed ceil(16n/delta) = {limit}"
        )
    return colouring


def _expansion_or_zero(g: Graph, cap: int) -> Fraction:
    if not is_connected(g):
        return Fraction(0)
    return edge_expansion_exact(g, cap=cap)


def expander_split(
    g: Graph,
    lam: float,
    seed: int,
    max_retries: int = 100,
    cap: int = 24,
) -> EdgeSplit:
    """Las Vegas edge 2-colouring with both halves expanding.

    Uniformly 2-colours the edges and validates (exactly, via subset
    enumeration) that both halves have edge expansion at least
    (1 - lam) * Phi(g) / 2; retries up to ``max_retries``.
    """
    if not 0 < lam < 1:
        raise InvalidInputError(f"lambda must lie in (0, 1), got {lam}")
    if not is_connected(g):
        raise DisconnectedGraphError("expander split needs a connected graph")
    phi = edge_expansion_exact(g, cap=cap)
    threshold = (1 - Fraction(lam)) * phi / 2
    edges = g.edge_list
    root = seeds.seed_sequence(seed, "expander-split", g.n, lam)
    best = None
    for attempt in range(max_retries):
        rng = np.random.Generator(np.random.PCG64(root.spawn(1)[0]))
        bits = rng.integers(0, 2, size=len(edges))
        e1 = frozenset(e for e, b in zip(edges, bits) if b == 0)
        e2 = frozenset(e for e, b in zip(edges, bits) if b == 1)
        exp1 = _expansion_or_zero(Graph(g.n, e1), cap)
        exp2 = _expansion_or_zero(Graph(g.n, e2), cap)
        low = min(exp1, exp2)
        if best is None or low > best[0]:
            best = (low, exp1, exp2, attempt)
        if exp1 >= threshold and exp2 >= threshold:
            split = EdgeSplit(g, e1, e2)
            split.validate()
            return split
    raise RetriesExhaustedError(
        f"no split with both expansions >= {threshold} in {max_retries} retries; "
        f"best attempt {best[3]} had expansions ({best[1]}, {best[2]})",
        best=best,
    )


def _split_third_cycle_alternately(cycle: Graph) -> tuple:
    """Walk the cycle once and alternate its edges into two halves.

    Positions are 1-based along the walk; even positions go to the first
    half ((n-1)/2 edges for odd n), odd positions to the second.
    """
    start = 0
    adj = cycle.adjacency
    walk = [start]
    prev = None
    cur = start
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == start:
            break
        walk.append(nxt)
        prev, cur = cur, nxt
    edges_in_order = [
        _canon(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))
    ]
    half1 = frozenset(e for i, e in enumerate(edges_in_order) if (i + 1) % 2 == 0)
    half2 = frozenset(e for i, e in enumerate(edges_in_order) if (i + 1) % 2 == 1)
    return half1, half2


def rc_random_regular(n: int, r: int, seed: int, max_attempts: int = 20000):
    """Random r-regular graph together with its split rainbow colouring.

    Builds the graph as an edge-disjoint union of smaller random regular
    graphs / Hamiltonian cycles (r >= 6), or of two cycle-plus-matching
    graphs (r = 5), then colours the two halves with the split lemma.
    Returns (graph, colouring); the certificate records both diameters.

    The disjointness rejection accepts with probability bounded away from
    zero but small (e.g. ~e^-6 for three Hamiltonian cycles), hence the
    large default attempt budget.
    """
    if (n * r) % 2 != 0:
        raise InvalidInputError(f"n*r = {n * r} is odd")
    if r < 5:
        raise InvalidInputError(f"pipeline needs r >= 5, got {r}")
    for attempt in range(20):
        attempt_seed = seeds.derive_seed(seed, "rc-regular", attempt)
        g, e1, e2 = _regular_split_parts(n, r, attempt_seed, max_attempts)
        g1 = Graph(n, e1)
        g2 = Graph(n, e2)
        if is_connected(g1) and is_connected(g2):
            split = EdgeSplit(g, e1, e2)
            colouring = split_colouring(split)
            cert = colouring.certificate
            if colouring.colours_used > cert.diam1 + cert.diam2:
                raise BoundViolationError(
                    "colour count exceeds diam(G1) + diam(G2) on a shared-free split"
                )
            return g, colouring
    raise RetriesExhaustedError(
        "could not draw a decomposition with both halves connected"
    )


def _regular_split_parts(n: int, r: int, seed: int, max_attempts: int):
    """Sample the contiguity decomposition for r >= 5; returns (g, E1, E2)."""
    if r == 5:
        # Two Hamiltonian cycles plus a perfect matching split in half:
        # each side is a cycle plus a floor(n/4)-edge matching.
        def ham(rng):
            return _ham_cycle_from_rng(n, rng)

        def perfect(rng):
            return _matching_from_rng(n, n // 2, rng)

        union, (h1, h2, pm) = oplus_union(
            [ham, ham, perfect], seed, max_attempts=max_attempts
        )
        pm_edges = sorted(pm)
        rng = seeds.generator(seed, "pm-split", n)
        order = rng.permutation(len(pm_edges))
        quarter = n // 4
        m1 = frozenset(pm_edges[i] for i in order[:quarter])
        m2 = pm - m1
        return union, h1 | m1, h2 | m2
    if r == 6 and n % 2 == 1:
        # Three Hamiltonian cycles; the third is alternated between halves.
        def ham(rng):
            return _ham_cycle_from_rng(n, rng)

        union, (h1, h2, h3) = oplus_union(
            [ham, ham, ham], seed, max_attempts=max_attempts
        )
        half1, half2 = _split_third_cycle_alternately(Graph(n, h3))
        return union, h1 | half1, h2 | half2
    if r % 2 == 1:
        r1, r2 = (r + 1) // 2, (r - 1) // 2
    elif n % 2 == 0 or (r // 2) % 2 == 0:
        r1 = r2 = r // 2
    else:
        r1, r2 = r // 2 + 1, r // 2 - 1
    if min(r1, r2) < 3:
        raise InvalidInputError(
            f"decomposition parts r1={r1}, r2={r2} must both be >= 3"
        )

    def part(ri):
        def sampler(rng):
            if ri <= 5:
                return _simple_regular_from_rng(n, ri, rng)
            child = int(rng.integers(0, seeds.MAX_SEED, dtype=np.uint64))
            return sample_connected_regular(n, ri, child)

        return sampler

    union, (p1, p2) = oplus_union(
        [part(r1), part(r2)], seed, max_attempts=max_attempts
    )
    return union, p1, p2
