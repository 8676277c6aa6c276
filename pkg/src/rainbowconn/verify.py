"""Oracles and statistical checks for colourings and random models.

Exact rainbow connectivity decisions by state-space search (guarded, since
the general problem is NP-hard), polynomial certificate validation that
replays the construction's paths, exhaustive/sampled edge-density audits,
and Monte Carlo estimates reported next to their analytic bounds. An
estimate only counts against a bound when it exceeds it by more than three
binomial standard errors.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import seeds
from .edge_colouring import EdgeColouring
from .errors import CertificateError, EnumerationCapError, InvalidInputError
from .graphs import Graph, _canon, _popcount_u32, diameter, is_connected
from .models import (
    cycle_graph,
    cycle_plus_perfect_matching,
    sample_connected_regular,
    subdivide_cycle_model,
)
from .vertex_colouring import VertexColouring

EXACT_N_GUARD = 14
EXACT_COLOUR_GUARD = 20


@dataclass
class Witness:
    """Replayable counterexample: the failing pair and the path evidence."""

    pair: tuple
    reason: str
    path: tuple | None = None
    colours: tuple | None = None


@dataclass
class VerifyReport:
    verdict: bool
    method: str
    pairs_checked: int
    witness: Witness | None = None

    def to_payload(self) -> dict:
        payload = {
            "verdict": self.verdict,
            "method": self.method,
            "pairs_checked": self.pairs_checked,
        }
        if self.witness is not None:
            payload["witness"] = {
                "pair": list(self.witness.pair),
                "reason": self.witness.reason,
                "path": None if self.witness.path is None else list(self.witness.path),
                "colours": (
                    None if self.witness.colours is None else list(self.witness.colours)
                ),
            }
        return payload


def _mask_reachable(adj_steps, n, source):
    """Vertices reachable by a rainbow walk from ``source``.

    ``adj_steps(v, at_source)`` yields (next vertex, colour bit) moves; a
    state is (vertex, set of consumed colour bits) and per-vertex minimal
    mask antichains prune dominated states.
    """
    from collections import deque

    states = [[] for _ in range(n)]
    states[source].append(0)
    reached = {source}
    queue = deque([(source, 0)])
    while queue:
        if len(reached) == n:
            break
        v, mask = queue.popleft()
        for u, bit in adj_steps(v, v == source, mask):
            nm = mask | bit
            bucket = states[u]
            if any(existing & nm == existing for existing in bucket):
                continue
            bucket[:] = [ex for ex in bucket if ex & nm != ex or ex == nm]
            bucket.append(nm)
            reached.add(u)
            queue.append((u, nm))
    return reached


def _guard_exact(g: Graph, n_colours: int) -> None:
    if g.n > EXACT_N_GUARD and n_colours > EXACT_COLOUR_GUARD:
        raise EnumerationCapError(
            f"exact search infeasible: n={g.n} > {EXACT_N_GUARD} and "
            f"{n_colours} colours > {EXACT_COLOUR_GUARD}; use certificate or "
            "sampled mode"
        )


def is_rainbow_edge_connected_exact(g: Graph, col: EdgeColouring) -> VerifyReport:
    """Exact decision: every vertex pair joined by an edge-rainbow path.

    Searches (vertex, used-colour-set) states from each source; sound and
    complete because any colour-distinct walk contains a colour-distinct
    simple path.
    """
    if not is_connected(g):
        raise InvalidInputError("graph must be connected")
    missing = g.edges - col.colours.keys()
    if missing:
        raise InvalidInputError(f"uncoloured edges: {sorted(missing)[:3]}")
    palette = sorted(set(col.colours.values()))
    _guard_exact(g, len(palette))
    bit_of = {c: 1 << i for i, c in enumerate(palette)}
    moves = [[] for _ in range(g.n)]
    for (u, v), c in col.colours.items():
        if (u, v) in g.edges:
            moves[u].append((v, bit_of[c]))
            moves[v].append((u, bit_of[c]))
    for entry in moves:
        entry.sort()

    def steps(v, _at_source, mask):
        for u, bit in moves[v]:
            if not mask & bit:
                yield u, bit
        return

    pairs_checked = 0
    for s in range(g.n - 1):
        reached = _mask_reachable(steps, g.n, s)
        for t in range(s + 1, g.n):
            pairs_checked += 1
            if t not in reached:
                return VerifyReport(
                    verdict=False,
                    method="exact",
                    pairs_checked=pairs_checked,
                    witness=Witness(
                        pair=(s, t), reason="no rainbow path exists"
                    ),
                )
    return VerifyReport(verdict=True, method="exact", pairs_checked=pairs_checked)


def is_rainbow_vertex_connected_exact(g: Graph, col: VertexColouring) -> VerifyReport:
    """Exact decision: every pair joined by a path with distinct internal colours.

    Single-edge paths have no internal vertices and always qualify.
    """
    if not is_connected(g):
        raise InvalidInputError("graph must be connected")
    if set(col.colours.keys()) != set(range(g.n)):
        raise InvalidInputError("every vertex must be coloured")
    palette = sorted(set(col.colours.values()))
    _guard_exact(g, len(palette))
    bit_of = {c: 1 << i for i, c in enumerate(palette)}
    vbit = [bit_of[col.colours[v]] for v in range(g.n)]
    adj = g.adjacency

    def steps(v, at_source, mask):
        # Extending past v makes v internal, except at the source.
        gate = 0 if at_source else vbit[v]
        if mask & gate:
            return
        for u in adj[v]:
            yield u, gate

    pairs_checked = 0
    for s in range(g.n - 1):
        reached = _mask_reachable(steps, g.n, s)
        for t in range(s + 1, g.n):
            pairs_checked += 1
            if t not in reached:
                return VerifyReport(
                    verdict=False,
                    method="exact",
                    pairs_checked=pairs_checked,
                    witness=Witness(
                        pair=(s, t), reason="no vertex-rainbow path exists"
                    ),
                )
    return VerifyReport(verdict=True, method="exact", pairs_checked=pairs_checked)


def _simplify_walk(walk):
    """Cut cycles out of a vertex walk, leaving a simple path."""
    out = []
    pos = {}
    for v in walk:
        if v in pos:
            for dropped in out[pos[v] + 1 :]:
                del pos[dropped]
            del out[pos[v] + 1 :]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


def _iter_pairs(n, pairs, sample_size, seed):
    if isinstance(pairs, (list, tuple)):
        yield from pairs
        return
    if pairs == "all":
        for s in range(n - 1):
            for t in range(s + 1, n):
                yield (s, t)
        return
    if pairs == "sample":
        if not sample_size or sample_size < 1:
            raise InvalidInputError("sample mode needs a positive sample_size")
        rng = seeds.generator(seed, "certificate-pairs", n)
        for _ in range(sample_size):
            u = int(rng.integers(0, n))
            v = int(rng.integers(0, n - 1))
            if v >= u:
                v += 1
            yield (u, v)
        return
    raise InvalidInputError(f"unknown pairs mode {pairs!r}")


class _EdgeCertChecker:
    def __init__(self, g: Graph, col: EdgeColouring):
        cert = col.certificate
        if cert is None:
            raise CertificateError("colouring carries no certificate")
        self.g = g
        self.col = col
        self.cert = cert
        self._chain_cache = ({}, {})
        self.shared_set = set(cert.shared_edges)
        self._structural()

    def _structural(self) -> None:
        g, cert, col = self.g, self.cert, self.col
        n = g.n
        for name, arr in (
            ("dist1", cert.dist1),
            ("dist2", cert.dist2),
            ("parent1", cert.parent1),
            ("parent2", cert.parent2),
        ):
            if len(arr) != n:
                raise CertificateError(f"{name} has length {len(arr)}, expected {n}")
        if not 0 <= cert.root < n:
            raise CertificateError(f"root {cert.root} out of range")
        missing = g.edges - col.colours.keys()
        if missing:
            raise CertificateError(f"uncoloured edges: {sorted(missing)[:3]}")
        shared_cols = [col.colours.get(e) for e in cert.shared_edges]
        if any(e not in g.edges for e in cert.shared_edges):
            raise CertificateError("shared edge not present in the graph")
        if len(set(shared_cols)) != len(shared_cols):
            raise CertificateError("shared edges are not uniquely coloured")
        pal_vals = list(cert.palette_a.values()) + list(cert.palette_b.values())
        if len(set(pal_vals)) != len(pal_vals):
            raise CertificateError("palette colour ids collide")
        if set(pal_vals) & set(shared_cols):
            raise CertificateError("palette colours collide with shared colours")
        for side, dist, parent, palette in (
            (1, cert.dist1, cert.parent1, cert.palette_a),
            (2, cert.dist2, cert.parent2, cert.palette_b),
        ):
            if dist[cert.root] != 0 or parent[cert.root] is not None:
                raise CertificateError(f"root layers inconsistent on side {side}")
            for v in range(n):
                if v == cert.root:
                    continue
                d, p = dist[v], parent[v]
                if d is None or p is None:
                    raise CertificateError(
                        f"side {side} does not span vertex {v}"
                    )
                e = _canon(v, p)
                if e not in g.edges:
                    raise CertificateError(
                        f"parent edge {e} on side {side} is not a graph edge"
                    )
                if dist[p] != d - 1:
                    raise CertificateError(
                        f"layer array corrupt at vertex {v} on side {side}"
                    )
                c = self.col.colours[e]
                if e not in self.shared_set and c != palette.get(d):
                    raise CertificateError(
                        f"parent edge {e} colour {c} does not match layer {d} "
                        f"of side {side}"
                    )

    def _chain(self, side: int, x: int):
        """(edge ids, colours, vertices) from x toward the root on ``side``."""
        cache = self._chain_cache[side - 1]
        if x in cache:
            return cache[x]
        cert = self.cert
        parent = cert.parent1 if side == 1 else cert.parent2
        eidx = self.g.edge_index
        edge_ids, cols, verts = [], [], [x]
        v = x
        while v != cert.root:
            p = parent[v]
            e = _canon(v, p)
            edge_ids.append(eidx[e])
            cols.append(self.col.colours[e])
            verts.append(p)
            v = p
        entry = (tuple(edge_ids), tuple(cols), tuple(verts), frozenset(edge_ids))
        cache[x] = entry
        return entry

    def check_pair(self, x: int, y: int) -> Witness | None:
        if x == y:
            return None
        ids1, cols1, verts1, _ = self._chain(1, x)
        ids2, cols2, verts2, set2 = self._chain(2, y)
        cross = next((i for i, eid in enumerate(ids1) if eid in set2), None)
        if cross is None:
            walk_cols = list(cols1) + list(cols2)
            walk = list(verts1) + list(reversed(verts2[:-1]))
        else:
            j = ids2.index(ids1[cross])
            if verts1[cross] == verts2[j]:
                # Already on the second path; the common edge is not traversed.
                walk_cols = list(cols1[:cross]) + list(cols2[:j])
                walk = list(verts1[: cross + 1]) + list(reversed(verts2[:j]))
            else:
                walk_cols = list(cols1[: cross + 1]) + list(cols2[:j])
                walk = (
                    list(verts1[: cross + 1])
                    + [verts2[j]]
                    + list(reversed(verts2[:j]))
                )
        if len(set(walk_cols)) != len(walk_cols):
            return Witness(
                pair=(x, y),
                reason="constructed path repeats an edge colour",
                path=tuple(walk),
                colours=tuple(walk_cols),
            )
        return None


class _VertexCertChecker:
    def __init__(self, g: Graph, col: VertexColouring):
        cert = col.certificate
        if cert is None:
            raise CertificateError("colouring carries no certificate")
        self.g = g
        self.col = col
        self.cert = cert
        self.side1 = frozenset(
            v for v in range(g.n) if cert.dist1[v] is not None
        )
        self.side2 = frozenset(
            v for v in range(g.n) if cert.dist2[v] is not None
        )
        self._structural()

    def _structural(self) -> None:
        g, cert, col = self.g, self.cert, self.col
        n = g.n
        for name, arr in (
            ("dist1", cert.dist1),
            ("dist2", cert.dist2),
            ("parent1", cert.parent1),
            ("parent2", cert.parent2),
        ):
            if len(arr) != n:
                raise CertificateError(f"{name} has length {len(arr)}, expected {n}")
        if set(col.colours.keys()) != set(range(n)):
            raise CertificateError("not every vertex is coloured")
        if self.side1 | self.side2 != frozenset(range(n)):
            raise CertificateError("certificate sides do not cover the graph")
        if not g.has_edge(cert.root1, cert.root2):
            raise CertificateError("roots are not adjacent")
        if cert.dist1[cert.root1] != 0 or cert.dist2[cert.root2] != 0:
            raise CertificateError("root distances are not zero")
        shared = set(cert.shared_vertices)
        if shared != set(self.side1 & self.side2):
            raise CertificateError("shared vertex list disagrees with sides")
        shared_cols = [col.colours[v] for v in cert.shared_vertices]
        if len(set(shared_cols)) != len(shared_cols):
            raise CertificateError("shared vertices are not uniquely coloured")
        pal_vals = list(cert.palette_a.values()) + list(cert.palette_b.values())
        if len(set(pal_vals)) != len(pal_vals):
            raise CertificateError("palette colour ids collide")
        if set(pal_vals) & set(shared_cols):
            raise CertificateError("palette colours collide with shared colours")
        for side_no, members, dist, parent, palette, root in (
            (1, self.side1, cert.dist1, cert.parent1, cert.palette_a, cert.root1),
            (2, self.side2, cert.dist2, cert.parent2, cert.palette_b, cert.root2),
        ):
            if root not in members:
                raise CertificateError(f"root {root} is outside side {side_no}")
            for v in sorted(members):
                d = dist[v]
                if v == root:
                    continue
                p = parent[v]
                if p is None or p not in members:
                    raise CertificateError(
                        f"vertex {v} has no in-side parent on side {side_no}"
                    )
                if not g.has_edge(v, p) or dist[p] != d - 1:
                    raise CertificateError(
                        f"layer array corrupt at vertex {v} on side {side_no}"
                    )
                if v not in shared and col.colours[v] != palette.get(d):
                    raise CertificateError(
                        f"vertex {v} colour does not match layer {d} of side {side_no}"
                    )

    def _chain(self, side: int, x: int):
        cert = self.cert
        parent = cert.parent1 if side == 1 else cert.parent2
        root = cert.root1 if side == 1 else cert.root2
        verts = [x]
        while verts[-1] != root:
            verts.append(parent[verts[-1]])
        return verts

    def check_pair(self, x: int, y: int) -> Witness | None:
        if x == y:
            return None
        g = self.g
        # Normalize so a runs on side 1 and b on side 2, replacing an
        # endpoint outside its side by an in-side neighbour.
        if x in self.side1:
            a, b = x, y
        elif y in self.side1:
            a, b = y, x
        else:
            a, b = x, y
        prefix = []
        if a not in self.side1:
            nb = next(
                (u for u in g.adjacency[a] if u in self.side1), None
            )
            if nb is None:
                return Witness(
                    pair=(x, y),
                    reason=f"endpoint {a} has no neighbour inside side 1",
                )
            prefix = [a]
            a = nb
        suffix = []
        if b not in self.side2:
            nb = next(
                (u for u in g.adjacency[b] if u in self.side2), None
            )
            if nb is None:
                return Witness(
                    pair=(x, y),
                    reason=f"endpoint {b} has no neighbour inside side 2",
                )
            suffix = [b]
            b = nb
        p1 = self._chain(1, a)
        p2 = self._chain(2, b)
        set2 = set(p2)
        cross = next((i for i, v in enumerate(p1) if v in set2), None)
        if cross is None:
            core = p1 + list(reversed(p2))
        else:
            j = p2.index(p1[cross])
            core = p1[: cross + 1] + list(reversed(p2[:j]))
        walk = prefix + core + suffix
        path = _simplify_walk(walk)
        first, last = path[0], path[-1]
        if {first, last} != {x, y}:
            return Witness(
                pair=(x, y),
                reason="constructed walk does not join the pair",
                path=tuple(path),
            )
        for u, v in zip(path, path[1:]):
            if not g.has_edge(u, v):
                return Witness(
                    pair=(x, y),
                    reason=f"constructed walk uses the non-edge ({u}, {v})",
                    path=tuple(path),
                )
        internal = path[1:-1]
        internal_cols = [self.col.colours[v] for v in internal]
        if len(set(internal_cols)) != len(internal_cols):
            return Witness(
                pair=(x, y),
                reason="constructed path repeats an internal colour",
                path=tuple(path),
                colours=tuple(internal_cols),
            )
        return None


def check_certificate(
    g: Graph,
    col,
    pairs="all",
    sample_size: int | None = None,
    seed: int = 0,
) -> VerifyReport:
    """Replay the construction's paths and verify colour distinctness.

    For each checked pair, builds the layered path to the roots, switches
    at the earliest shared edge/vertex when the two sides intersect (the
    vertex variant first reroutes an endpoint outside a side through an
    in-side neighbour), and checks the colours along it.  Structural
    certificate defects raise CertificateError; path failures are returned
    as witnesses.
    """
    if isinstance(col, EdgeColouring):
        checker = _EdgeCertChecker(g, col)
    elif isinstance(col, VertexColouring):
        checker = _VertexCertChecker(g, col)
    else:
        raise InvalidInputError(f"unsupported colouring type {type(col).__name__}")
    method = "sampled" if pairs == "sample" else "certificate"
    pairs_checked = 0
    for x, y in _iter_pairs(g.n, pairs, sample_size, seed):
        pairs_checked += 1
        witness = checker.check_pair(x, y)
        if witness is not None:
            return VerifyReport(
                verdict=False,
                method=method,
                pairs_checked=pairs_checked,
                witness=witness,
            )
    return VerifyReport(verdict=True, method=method, pairs_checked=pairs_checked)


@dataclass
class DensityAudit:
    """Worst offender of the subset edge-density inequality e(S) < d|S|/2."""

    verdict: bool
    worst_set: tuple
    worst_edges: int
    method: str
    subsets_checked: int
    d: float
    max_size: int


def density_audit(
    g: Graph,
    d: float,
    max_size: int,
    seed: int = 0,
    samples_per_size: int = 2000,
) -> DensityAudit:
    """Audit e(S) < d·|S|/2 over vertex sets with |S| <= max_size.

    Exhaustive for n <= 24 (vectorized over all bitmasks); otherwise random
    subsets per size, clearly labelled as sampled.  The worst offender
    maximizes e(S) - d·|S|/2.
    """
    if max_size < 1 or max_size > g.n:
        raise InvalidInputError(f"max_size must lie in 1..{g.n}")
    if g.n <= 24:
        return _density_exhaustive(g, d, max_size)
    return _density_sampled(g, d, max_size, seed, samples_per_size)


def _density_exhaustive(g: Graph, d: float, max_size: int) -> DensityAudit:
    n = g.n
    edges = g.edge_list
    best_score = None
    best_mask = None
    best_inside = None
    violations = 0
    checked = 0
    chunk = 1 << 20
    for lo in range(1, 1 << n, chunk):
        hi = min(lo + chunk, 1 << n)
        masks = np.arange(lo, hi, dtype=np.uint32)
        sizes = _popcount_u32(masks)
        valid = sizes <= max_size
        if not valid.any():
            continue
        inside = np.zeros(masks.size, dtype=np.int64)
        for u, v in edges:
            inside += (masks >> np.uint32(u)) & (masks >> np.uint32(v)) & np.uint32(1)
        score = np.where(valid, inside - d * sizes / 2.0, -np.inf)
        i = int(np.argmax(score))
        if best_score is None or score[i] > best_score:
            best_score = float(score[i])
            best_mask = int(masks[i])
            best_inside = int(inside[i])
        checked += int(valid.sum())
        # Strict inequality, with borderline cases resolved exactly.
        margin = 2 * inside - d * sizes
        clear = margin > 1e-9
        violations += int((clear & valid).sum())
        band = np.abs(margin) <= 1e-9
        for idx in np.nonzero(band & valid)[0]:
            if 2 * int(inside[idx]) >= Fraction(d) * int(sizes[idx]):
                violations += 1
    worst = tuple(v for v in range(n) if best_mask >> v & 1)
    return DensityAudit(
        verdict=violations == 0,
        worst_set=worst,
        worst_edges=best_inside,
        method="exhaustive",
        subsets_checked=checked,
        d=d,
        max_size=max_size,
    )


def _density_sampled(
    g: Graph, d: float, max_size: int, seed: int, samples_per_size: int
) -> DensityAudit:
    rng = seeds.generator(seed, "density-audit", g.n, max_size)
    adj_sets = [set(a) for a in g.adjacency]
    best = None
    violations = 0
    checked = 0
    for size in range(1, max_size + 1):
        for _ in range(samples_per_size):
            subset = sorted(int(v) for v in rng.choice(g.n, size=size, replace=False))
            members = set(subset)
            inside = sum(
                1 for v in subset for u in adj_sets[v] if u > v and u in members
            )
            score = inside - d * size / 2.0
            checked += 1
            if best is None or score > best[0]:
                best = (score, tuple(subset), inside)
            if 2 * inside >= d * size - 1e-12 and 2 * inside >= Fraction(d) * size:
                violations += 1
    return DensityAudit(
        verdict=violations == 0,
        worst_set=best[1],
        worst_edges=best[2],
        method="sampled",
        subsets_checked=checked,
        d=d,
        max_size=max_size,
    )


@dataclass
class ExpansionAudit:
    """Worst vertex-neighbourhood expansion over small sets.

    ``min_ratio`` is min over non-empty T with |T| <= max_size of
    |Γ(T)| / |T|, where Γ(T) contains T and all its neighbours.
    """

    min_ratio: Fraction
    worst_set: tuple
    gamma_size: int
    subsets_checked: int


def neighbourhood_expansion_audit(
    g: Graph, max_size: int, cap: int = 20
) -> ExpansionAudit:
    """Exact audit of the closed-neighbourhood expansion of small sets.

    Enumerates every non-empty T with |T| <= max_size by a subset DP over
    bitmasks (capped at ``cap`` vertices) and reports the worst ratio, the
    measurable counterpart of the induced-subgraph expansion claims used in
    the vertex-colouring diameter argument.
    """
    n = g.n
    if n > cap:
        raise EnumerationCapError(f"n={n} exceeds the audit cap {cap}")
    if not 1 <= max_size <= n:
        raise InvalidInputError(f"max_size must lie in 1..{n}")
    nbr = np.zeros(n, dtype=np.uint32)
    for v in range(n):
        mask = 1 << v
        for u in g.adjacency[v]:
            mask |= 1 << u
        nbr[v] = mask
    total = 1 << n
    gamma = np.zeros(total, dtype=np.uint32)
    # Masks grouped by lowest set bit, processed from the highest bit down,
    # so the reduced mask (lowest bit cleared) is always already filled.
    for b in range(n - 1, -1, -1):
        high = np.arange(0, 1 << (n - b - 1), dtype=np.uint32) << np.uint32(b + 1)
        masks = high | np.uint32(1 << b)
        gamma[masks] = gamma[high] | nbr[b]
    all_masks = np.arange(total, dtype=np.uint32)
    sizes = _popcount_u32(all_masks)
    gsizes = _popcount_u32(gamma)
    valid = (sizes >= 1) & (sizes <= max_size)
    ratio = np.where(valid, gsizes / np.maximum(sizes, 1), np.inf)
    i = int(np.argmin(ratio))
    worst = tuple(v for v in range(n) if (i >> v) & 1)
    return ExpansionAudit(
        min_ratio=Fraction(int(gsizes[i]), int(sizes[i])),
        worst_set=worst,
        gamma_size=int(gsizes[i]),
        subsets_checked=int(valid.sum()),
    )


@dataclass
class McReport:
    """Monte Carlo estimate next to its analytic bound.

    ``exceeds_bound`` is True only when estimate - 3*stderr > bound, the
    only situation the bound is judged violated.
    """

    estimate: float
    bound: float
    stderr: float
    trials: int
    extras: dict

    @property
    def exceeds_bound(self) -> bool:
        return self.estimate - 3 * self.stderr > self.bound


def mc_pairing_edge_probability(
    n: int, r: int, e0, trials: int, seed: int
) -> McReport:
    """Empirical Pr[E0 ⊆ E(G(P))] against the bound 2(2r/n)^m."""
    e0 = sorted({_canon(u, v) for u, v in e0})
    for u, v in e0:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise InvalidInputError(f"bad pair ({u}, {v}) in E0")
    m = len(e0)
    if m > n * r / 4:
        raise InvalidInputError(f"|E0| = {m} exceeds nr/4 = {n * r / 4}")
    if trials < 10**4:
        raise InvalidInputError(f"need trials >= 10^4, got {trials}")
    if (n * r) % 2 != 0:
        raise InvalidInputError(f"n*r = {n * r} is odd")
    rng = seeds.generator(seed, "mc-pairing", n, r)
    e0_keys = np.array([u * n + v for u, v in e0], dtype=np.int64)
    hits = 0
    for _ in range(trials):
        cells = rng.permutation(n * r) // r
        a, b = cells[0::2], cells[1::2]
        keys = np.minimum(a, b) * n + np.maximum(a, b)
        if m == 0 or np.isin(e0_keys, keys).all():
            hits += 1
    est = hits / trials
    stderr = math.sqrt(est * (1 - est) / trials)
    return McReport(
        estimate=est,
        bound=2 * (2 * r / n) ** m,
        stderr=stderr,
        trials=trials,
        extras={"m": m},
    )


def mc_gap_tail(n: int, m: int, indices, trials: int, seed: int) -> McReport:
    """Empirical Pr[sum of chosen gaps > 10s] against e^(-2s).

    Also reports the frequency of the tail gap exceeding log n, in both the
    natural and base-2 logs since the bound's base is ambiguous.
    """
    idx = sorted(set(int(i) for i in indices))
    if any(i < 0 or i >= 2 * m for i in idx):
        raise InvalidInputError(f"indices must lie in 0..{2 * m - 1}")
    if 2 * m > n:
        raise InvalidInputError(f"need 2m <= n, got m={m}, n={n}")
    if trials < 10**4:
        raise InvalidInputError(f"need trials >= 10^4, got {trials}")
    s = len(idx)
    rng = seeds.generator(seed, "mc-gap", n, m)
    tail_hits = 0
    y2m_ln = 0
    y2m_log2 = 0
    idx_arr = np.array(idx, dtype=np.int64)
    for _ in range(trials):
        b = np.sort(rng.choice(n, size=2 * m, replace=False)) + 1
        y = np.empty(2 * m + 1, dtype=np.int64)
        y[0] = b[0]
        y[1 : 2 * m] = np.diff(b)
        y[2 * m] = n - b[-1]
        if s and int(y[idx_arr].sum()) > 10 * s:
            tail_hits += 1
        if y[2 * m] > math.log(n):
            y2m_ln += 1
        if y[2 * m] > math.log2(n):
            y2m_log2 += 1
    est = tail_hits / trials
    stderr = math.sqrt(est * (1 - est) / trials)
    return McReport(
        estimate=est,
        bound=math.exp(-2 * s),
        stderr=stderr,
        trials=trials,
        extras={
            "s": s,
            "tail_gap_gt_ln_n": y2m_ln / trials,
            "tail_gap_gt_log2_n": y2m_log2 / trials,
        },
    )


@dataclass
class DiameterStats:
    model: str
    n: int
    r: int | None
    trials: int
    dmin: int
    dmedian: float
    dmax: int
    ratio_log2: float
    ratio_ln: float


DIAMETER_MODELS = ("cycle", "cycle+perfect-matching", "cycle+quarter-matching", "regular")


def diameter_statistics(
    model: str, n_grid, trials: int, seed: int, r: int | None = None
):
    """Per-n diameter min/median/max over seeded trials, with log ratios."""
    if model not in DIAMETER_MODELS:
        raise InvalidInputError(
            f"unknown model {model!r}; choose from {DIAMETER_MODELS}"
        )
    rows = []
    for n in n_grid:
        diams = []
        for trial in range(trials):
            child = seeds.derive_seed(seed, "diam", model, n, trial)
            if model == "cycle":
                g = cycle_graph(n)
            elif model == "cycle+perfect-matching":
                g = cycle_plus_perfect_matching(n, child)
            elif model == "cycle+quarter-matching":
                g, _ = subdivide_cycle_model(n, child)
            else:
                if r is None:
                    raise InvalidInputError("regular model needs r")
                g = sample_connected_regular(n, r, child)
            diams.append(diameter(g))
        med = statistics.median(diams)
        rows.append(
            DiameterStats(
                model=model,
                n=n,
                r=r if model == "regular" else None,
                trials=trials,
                dmin=min(diams),
                dmedian=med,
                dmax=max(diams),
                ratio_log2=med / math.log2(n),
                ratio_ln=med / math.log(n),
            )
        )
    return rows
