"""Rainbow vertex colourings via vertex splitting.

A valid vertex split (V1, V2), covering V with every vertex having a
neighbour on the other side and both induced subgraphs connected, admits a
layered colouring with at most diam(G[V1]) + diam(G[V2]) + |V1 ∩ V2| + 2
colours.  The split itself comes from local resampling of a fair coin per
vertex until every vertex keeps a constant fraction of its neighbours on
both sides, followed by greedy stitching of the induced components.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from . import seeds
from .errors import (
    BoundViolationError,
    DisconnectedGraphError,
    InvalidInputError,
    RetriesExhaustedError,
    SplitConditionError,
)
from .graphs import Graph, bfs_layers, connected_components, eccentricities, is_connected
from .models import sample_connected_regular


@dataclass(frozen=True)
class PartitionParams:
    """Parameters of the two-sided neighbour-keeping partition.

    ``gamma`` is the kept-fraction target: every vertex must retain at least
    ceil(gamma * r) neighbours on each side.  The local-lemma feasibility
    value (r^2 + 1) * 2 * e^(1 - 2 (1/2 - gamma)^2 r) must fall below 1 for
    the resampling loop to be guaranteed; ``best_effort`` lets a caller run
    it anyway.
    """

    gamma: float = 0.11
    max_resamples: int | None = None
    best_effort: bool = False

    def __post_init__(self):
        if not 0 < self.gamma < 0.5:
            raise InvalidInputError(f"gamma must lie in (0, 1/2), got {self.gamma}")

    def threshold(self, r: int) -> int:
        """Required per-side neighbour count: degrees are integers."""
        return math.ceil(self.gamma * r)

    def feasibility_value(self, r: int) -> float:
        return (r * r + 1) * 2 * math.exp(1 - 2 * (0.5 - self.gamma) ** 2 * r)

    def feasible(self, r: int) -> bool:
        return self.feasibility_value(r) < 1


@dataclass(frozen=True)
class PartitionResult:
    side1: tuple
    side2: tuple
    resamples: int
    feasibility: float

    @property
    def sides(self) -> tuple:
        return self.side1, self.side2


def _regular_degree(g: Graph) -> int:
    degs = set(g.degrees)
    if len(degs) != 1:
        raise InvalidInputError(f"graph is not regular (degrees {sorted(degs)[:4]})")
    return next(iter(degs))


def lll_partition(
    g: Graph, params: PartitionParams | None = None, seed: int = 0
) -> PartitionResult:
    """Two-sided partition keeping >= ceil(gamma*r) neighbours on each side.

    Moser-Tardos style: assign each vertex a fair coin; while some vertex
    violates the two-sided requirement, re-coin its closed neighbourhood.
    Deterministic given (g, params, seed).  Raises RetriesExhaustedError
    with the violating vertices when the resample budget runs out.
    """
    params = params or PartitionParams()
    r = _regular_degree(g)
    feasibility = params.feasibility_value(r)
    if feasibility >= 1 and not params.best_effort:
        raise InvalidInputError(
            f"feasibility value {feasibility:.3f} >= 1 for r={r}, "
            f"gamma={params.gamma}; pass best_effort=True to try anyway"
        )
    t = params.threshold(r)
    budget = params.max_resamples if params.max_resamples is not None else 50 * g.n
    rng = seeds.generator(seed, "lll-partition", g.n, r, params.gamma)
    adj = g.adjacency

    side = [int(b) for b in rng.integers(0, 2, size=g.n)]
    count1 = [0] * g.n  # neighbours currently on side 1
    for v in range(g.n):
        count1[v] = sum(side[u] for u in adj[v])

    def violated(v):
        return count1[v] < t or (len(adj[v]) - count1[v]) < t

    queue = deque(v for v in range(g.n) if violated(v))
    queued = [False] * g.n
    for v in queue:
        queued[v] = True
    resamples = 0
    while queue:
        v = queue.popleft()
        queued[v] = False
        if not violated(v):
            continue
        if resamples >= budget:
            offenders = [u for u in range(g.n) if violated(u)]
            raise RetriesExhaustedError(
                f"{len(offenders)} vertices still violate the partition after "
                f"{budget} resamples (first few: {offenders[:6]})",
                best=offenders,
            )
        resamples += 1
        closed = (v, *adj[v])
        coins = rng.integers(0, 2, size=len(closed))
        touched = set()
        for u, new in zip(closed, coins):
            new = int(new)
            if new != side[u]:
                delta = 1 if new == 1 else -1
                for w in adj[u]:
                    count1[w] += delta
                    touched.add(w)
                side[u] = new
            touched.add(u)
        for u in touched:
            if violated(u) and not queued[u]:
                queue.append(u)
                queued[u] = True
    u1 = tuple(v for v in range(g.n) if side[v] == 1)
    u2 = tuple(v for v in range(g.n) if side[v] == 0)
    return PartitionResult(
        side1=u1, side2=u2, resamples=resamples, feasibility=feasibility
    )


def stitch_components(g: Graph, u) -> frozenset:
    """Small vertex set W making g[U ∪ W] connected.

    While the induced subgraph is disconnected, a shortest path in g from
    one component to the nearest other component is found by multi-source
    BFS and its internal vertices join W; each step merges at least two
    components, so g connected guarantees termination.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("stitching needs a connected host graph")
    active = set(u)
    if not active:
        raise InvalidInputError("U must be non-empty")
    w = set()
    adj = g.adjacency
    while True:
        sub, mapping = g.induced_subgraph(sorted(active | w))
        comps = connected_components(sub)
        if len(comps) == 1:
            return frozenset(w)
        comp_of = {}
        for ci, comp in enumerate(comps):
            for local in comp:
                comp_of[mapping[local]] = ci
        sources = [mapping[local] for local in comps[0]]
        dist = {v: 0 for v in sources}
        parent = {}
        queue = deque(sorted(sources))
        goal = None
        while queue:
            v = queue.popleft()
            if v in comp_of and comp_of[v] != 0:
                goal = v
                break
            for nb in adj[v]:
                if nb not in dist:
                    dist[nb] = dist[v] + 1
                    parent[nb] = v
                    queue.append(nb)
        if goal is None:
            raise DisconnectedGraphError("host graph disconnected during stitching")
        path = [goal]
        while path[-1] in parent:
            path.append(parent[path[-1]])
        internal = path[1:-1]
        w.update(internal)
        if not internal:
            # Adjacent components can only happen across the U/W boundary
            # of the induced subgraph; merging needs no new vertices, but
            # then they were already one component; guard against looping.
            raise RuntimeError("stitching made no progress")


@dataclass(frozen=True)
class VertexSplit:
    """Vertex cover pair (side1, side2) of g with computed intersection."""

    g: Graph
    side1: frozenset
    side2: frozenset

    @cached_property
    def shared(self) -> frozenset:
        return self.side1 & self.side2

    def validate(self) -> None:
        g = self.g
        if self.side1 | self.side2 != frozenset(range(g.n)):
            missing = sorted(frozenset(range(g.n)) - (self.side1 | self.side2))
            raise SplitConditionError(
                f"condition 1 violated: vertices not covered: {missing[:6]}",
                condition=1,
            )
        # Condition 2 merely names c = |side1 ∩ side2|; nothing to check.
        for label, inside, other in (
            ("V1", self.side1, self.side2),
            ("V2", self.side2, self.side1),
        ):
            for v in sorted(inside):
                if not any(nb in other for nb in g.adjacency[v]):
                    raise SplitConditionError(
                        f"condition 3 violated: vertex {v} in {label} has no "
                        f"neighbour on the other side",
                        condition=3,
                    )
        for i, part in ((1, self.side1), (2, self.side2)):
            if not part:
                raise SplitConditionError(
                    f"condition 4 violated: side {i} is empty", condition=4
                )
            sub, _ = g.induced_subgraph(sorted(part))
            if not is_connected(sub):
                raise SplitConditionError(
                    f"condition 4 violated: g[V{i}] is disconnected", condition=4
                )


@dataclass
class VertexCertificate:
    """Verification record of a layered vertex colouring.

    ``dist_i``/``parent_i`` live on the original vertex ids and are None
    outside side i; shared vertices keep their unique colours even though
    they also sit in layers.
    """

    root1: int
    root2: int
    dist1: tuple
    parent1: tuple
    dist2: tuple
    parent2: tuple
    shared_vertices: tuple
    palette_a: dict
    palette_b: dict
    diam1: int
    diam2: int

    def to_payload(self) -> dict:
        return {
            "root1": self.root1,
            "root2": self.root2,
            "dist1": list(self.dist1),
            "parent1": list(self.parent1),
            "dist2": list(self.dist2),
            "parent2": list(self.parent2),
            "shared_vertices": list(self.shared_vertices),
            "palette_a": {str(k): v for k, v in self.palette_a.items()},
            "palette_b": {str(k): v for k, v in self.palette_b.items()},
            "diam1": self.diam1,
            "diam2": self.diam2,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "VertexCertificate":
        return cls(
            root1=payload["root1"],
            root2=payload["root2"],
            dist1=tuple(payload["dist1"]),
            parent1=tuple(payload["parent1"]),
            dist2=tuple(payload["dist2"]),
            parent2=tuple(payload["parent2"]),
            shared_vertices=tuple(payload["shared_vertices"]),
            palette_a={int(k): v for k, v in payload["palette_a"].items()},
            palette_b={int(k): v for k, v in payload["palette_b"].items()},
            diam1=payload["diam1"],
            diam2=payload["diam2"],
        )


@dataclass
class VertexColouring:
    """Colour ids per vertex, plus the optional construction certificate."""

    colours: dict
    certificate: VertexCertificate | None = None

    @property
    def colours_used(self) -> int:
        return len(set(self.colours.values()))

    def bound(self) -> int | None:
        if self.certificate is None:
            return None
        c = self.certificate
        return c.diam1 + c.diam2 + len(c.shared_vertices) + 2

    def to_payload(self) -> dict:
        return {
            "kind": "vertex",
            "colors": [[v, c] for v, c in sorted(self.colours.items())],
            "certificate": (
                None if self.certificate is None else self.certificate.to_payload()
            ),
            "bound": self.bound(),
            "colours_used": self.colours_used,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "VertexColouring":
        cert = payload.get("certificate")
        return cls(
            colours={v: c for v, c in payload["colors"]},
            certificate=None if cert is None else VertexCertificate.from_payload(cert),
        )


def _induced_layers(g: Graph, part: frozenset, root: int):
    """(dist, parent, ecc-by-original-id) of g[part] BFS from root."""
    sub, mapping = g.induced_subgraph(sorted(part))
    back = {orig: local for local, orig in enumerate(mapping)}
    layers = bfs_layers(sub, back[root])
    dist = [None] * g.n
    parent = [None] * g.n
    for local, orig in enumerate(mapping):
        d = layers.dist[local]
        if d is None:
            raise SplitConditionError(
                "condition 4 violated: side not connected", condition=4
            )
        dist[orig] = d
        p = layers.parent[local]
        parent[orig] = None if p is None else mapping[p]
    return tuple(dist), tuple(parent)


def vertex_split_colouring(split: VertexSplit) -> VertexColouring:
    """Layered rainbow vertex colouring from a valid vertex split.

    Shared vertices get unique colours (kept even though they lie in
    layers); the rest of side i is coloured by its BFS distance layer from
    root i inside g[V_i], palettes a and b.  Roots are an adjacent pair
    (v1, v2) across the split minimizing the eccentricity sum.
    """
    g = split.g
    split.validate()
    sub1, map1 = g.induced_subgraph(sorted(split.side1))
    sub2, map2 = g.induced_subgraph(sorted(split.side2))
    ecc1_local = eccentricities(sub1) if sub1.n > 1 else (0,)
    ecc2_local = eccentricities(sub2) if sub2.n > 1 else (0,)
    ecc1 = {orig: ecc1_local[i] for i, orig in enumerate(map1)}
    ecc2 = {orig: ecc2_local[i] for i, orig in enumerate(map2)}

    candidates = []
    for u, v in g.edge_list:
        if u in ecc1 and v in ecc2:
            candidates.append((ecc1[u] + ecc2[v], u, v))
        if v in ecc1 and u in ecc2:
            candidates.append((ecc1[v] + ecc2[u], v, u))
    if not candidates:
        raise SplitConditionError(
            "no edge crosses from V1 to V2", condition=3
        )
    _, root1, root2 = min(candidates)

    dist1, parent1 = _induced_layers(g, split.side1, root1)
    dist2, parent2 = _induced_layers(g, split.side2, root2)
    shared = tuple(sorted(split.shared))
    shared_colour = {v: i for i, v in enumerate(shared)}

    needed_a = sorted(
        {dist1[v] for v in split.side1 if v not in shared_colour}
    )
    needed_b = sorted(
        {dist2[v] for v in split.side2 if v not in shared_colour}
    )
    next_id = len(shared)
    palette_a = {}
    for j in needed_a:
        palette_a[j] = next_id
        next_id += 1
    palette_b = {}
    for j in needed_b:
        palette_b[j] = next_id
        next_id += 1

    colours = dict(shared_colour)
    for v in split.side1:
        if v not in shared_colour:
            colours[v] = palette_a[dist1[v]]
    for v in split.side2:
        if v not in shared_colour:
            colours[v] = palette_b[dist2[v]]

    cert = VertexCertificate(
        root1=root1,
        root2=root2,
        dist1=dist1,
        parent1=parent1,
        dist2=dist2,
        parent2=parent2,
        shared_vertices=shared,
        palette_a=palette_a,
        palette_b=palette_b,
        diam1=max(ecc1_local),
        diam2=max(ecc2_local),
    )
    colouring = VertexColouring(colours=colours, certificate=cert)
    limit = cert.diam1 + cert.diam2 + len(shared) + 2
    if colouring.colours_used > limit:
        raise BoundViolationError(
            f"{colouring.colours_used} colours exceed the vertex split bound {limit}"
        )
    return colouring


@dataclass(frozen=True)
class RvcResult:
    """Pipeline output: graph, colouring, and the measured stitch sizes."""

    graph: Graph
    colouring: VertexColouring
    w1: frozenset
    w2: frozenset
    partition_resamples: int


def rvc_random_regular(
    n: int,
    r: int,
    seed: int,
    params: PartitionParams | None = None,
) -> RvcResult:
    """Random r-regular graph with its split rainbow vertex colouring.

    Samples the graph, partitions it two-sidedly, stitches each side
    connected, and applies the vertex split colouring.  Requires r >= 28 so
    the default gamma = 0.11 partition is guaranteed.
    """
    if (n * r) % 2 != 0:
        raise InvalidInputError(f"n*r = {n * r} is odd")
    if r < 28 and (params is None or not params.best_effort):
        raise InvalidInputError(f"pipeline needs r >= 28, got {r}")
    g = sample_connected_regular(n, r, seeds.derive_seed(seed, "rvc-graph"))
    partition = lll_partition(g, params, seeds.derive_seed(seed, "rvc-partition"))
    u1, u2 = partition.sides
    w1 = stitch_components(g, u1)
    w2 = stitch_components(g, u2)
    split = VertexSplit(
        g, frozenset(u1) | w1, frozenset(u2) | w2
    )
    colouring = vertex_split_colouring(split)
    return RvcResult(
        graph=g,
        colouring=colouring,
        w1=w1,
        w2=w2,
        partition_resamples=partition.resamples,
    )
