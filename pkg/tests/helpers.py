"""Independent oracles for the test suite.

Everything here is deliberately coded from first principles (dict BFS,
itertools enumeration, recursive matchings) so library bugs cannot hide
behind shared code paths.
"""

from collections import deque
from itertools import combinations

from rainbowconn.graphs import build_graph


def brute_sssp(g, source):
    """Dict-based BFS distances; unreachable vertices are absent."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u, w in g.edges:
            for a, b in ((u, w), (w, u)):
                if a == v and b not in dist:
                    dist[b] = dist[v] + 1
                    queue.append(b)
    return dist


def brute_diameter(g):
    best = 0
    for s in range(g.n):
        dist = brute_sssp(g, s)
        if len(dist) != g.n:
            return None
        best = max(best, max(dist.values()))
    return best


def brute_components(g):
    seen = set()
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = set(brute_sssp(g, s))
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def brute_expansion(g):
    """(out, size) pairs minimized as a fraction; None for n < 2."""
    from fractions import Fraction

    best = None
    verts = range(g.n)
    for k in range(1, g.n // 2 + 1):
        for subset in combinations(verts, k):
            s = set(subset)
            out = sum(1 for u, v in g.edges if (u in s) != (v in s))
            cand = Fraction(out, k)
            if best is None or cand < best:
                best = cand
    return best


def brute_density_worst(g, d, max_size):
    """Independent worst offender of e(S) < d|S|/2 via combinations."""
    best = None
    any_violation = False
    for k in range(1, max_size + 1):
        for subset in combinations(range(g.n), k):
            s = set(subset)
            inside = sum(1 for u, v in g.edges if u in s and v in s)
            score = inside - d * k / 2
            if best is None or score > best[0]:
                best = (score, subset, inside)
            if inside >= d * k / 2:
                any_violation = True
    return best, not any_violation


def all_pairings(points):
    """Every perfect matching on the given point list."""
    points = list(points)
    if not points:
        yield []
        return
    first = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1 :]
        for sub in all_pairings(rest):
            yield [(first, points[i])] + sub


def all_simple_paths(g, s, t):
    adj = g.adjacency
    path = [s]
    on_path = {s}

    def extend(v):
        if v == t:
            yield list(path)
            return
        for u in adj[v]:
            if u not in on_path:
                path.append(u)
                on_path.add(u)
                yield from extend(u)
                on_path.discard(u)
                path.pop()

    yield from extend(s)


def naive_rainbow_edge_connected(g, colours):
    """All-simple-paths check of edge-rainbow connectivity; n <= 7 scale."""
    for s in range(g.n - 1):
        for t in range(s + 1, g.n):
            ok = False
            for path in all_simple_paths(g, s, t):
                cols = [
                    colours[(min(a, b), max(a, b))]
                    for a, b in zip(path, path[1:])
                ]
                if len(set(cols)) == len(cols):
                    ok = True
                    break
            if not ok:
                return False, (s, t)
    return True, None


def naive_rainbow_vertex_connected(g, colours):
    for s in range(g.n - 1):
        for t in range(s + 1, g.n):
            ok = False
            for path in all_simple_paths(g, s, t):
                cols = [colours[v] for v in path[1:-1]]
                if len(set(cols)) == len(cols):
                    ok = True
                    break
            if not ok:
                return False, (s, t)
    return True, None


def check_closed_trail(mg, sequence):
    """Validate the Euler postconditions: each edge once, endpoints chain."""
    assert sorted(sequence) == list(range(len(mg.edges)))
    if not sequence:
        return
    # Orient the trail: consecutive edges must share an endpoint.
    first_u, first_v = mg.edges[sequence[0]]
    for start in {first_u, first_v}:
        cur = start
        ok = True
        for eid in sequence:
            u, v = mg.edges[eid]
            if cur == u:
                cur = v
            elif cur == v:
                cur = u
            else:
                ok = False
                break
        if ok and cur == start:
            return
    raise AssertionError("sequence is not a closed trail")


def random_connected_graph(rng, n, extra_edges):
    """Random spanning tree plus extra random edges; always connected."""
    edges = set()
    order = [int(v) for v in rng.permutation(n)]
    for i in range(1, n):
        j = int(rng.integers(0, i))
        u, v = order[i], order[j]
        edges.add((min(u, v), max(u, v)))
    pool = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(extra_edges):
        u, v = pool[int(rng.integers(0, len(pool)))]
        edges.add((u, v))
    return build_graph(n, sorted(edges))


def spanning_connected_subset(g, rng):
    """Random spanning tree of g plus a random sprinkle of extra edges."""
    edges = list(g.edge_list)
    order = rng.permutation(len(edges))
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = set()
    for idx in order:
        u, v = edges[idx]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.add((u, v))
    for idx in order[: int(rng.integers(0, len(edges) // 2 + 1))]:
        chosen.add(edges[idx])
    return frozenset(chosen)


def random_valid_split(g, rng):
    """A valid EdgeSplit of g: both sides spanning tree + extras."""
    from rainbowconn.edge_colouring import EdgeSplit

    return EdgeSplit(
        g, spanning_connected_subset(g, rng), spanning_connected_subset(g, rng)
    )


def random_min_degree_graph(rng, n, min_deg, max_tries=2000):
    """Random connected graph with minimum degree >= min_deg, by rejection."""
    if n == min_deg + 1:
        return complete_graph(n)
    for _ in range(max_tries):
        p = 0.55 + 0.4 * rng.random()
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        g = build_graph(n, edges)
        if g.min_degree() >= min_deg and brute_diameter(g) is not None:
            return g
    raise RuntimeError("could not sample a qualifying graph")


def complete_graph(n):
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


def circulant(n, k):
    """2k-regular circulant graph with offsets 1..k."""
    edges = [(i, (i + d) % n) for i in range(n) for d in range(1, k + 1)]
    return build_graph(n, edges)
