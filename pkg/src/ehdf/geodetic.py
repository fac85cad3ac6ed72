"""Geodetic graphs: recognition (two independent ways), the diameter-two
classification, and subdivided complete graphs that are geodetic."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .graph import Graph, GraphError, bfs_distances, bits, is_connected, is_independent_set


@dataclass(frozen=True)
class GeodeticReport:
    verdict: bool
    pair: tuple[int, int] | None = None
    paths: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self):
        return self.verdict

    def to_json(self) -> dict:
        out = {"geodetic": self.verdict}
        if self.pair is not None:
            out["pair"] = list(self.pair)
            out["paths"] = [list(p) for p in self.paths]
        return out


def _require_connected(G: Graph) -> None:
    if G.n == 0 or not is_connected(G):
        raise GraphError("graph must be connected and nonempty")


def _bfs_tree(G: Graph, x: int) -> tuple[list[int], list[int]]:
    """Distances and lowest-id BFS parents from x."""
    dist = [-1] * G.n
    parent = [-1] * G.n
    dist[x] = 0
    q = deque([x])
    while q:
        u = q.popleft()
        for w in G.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                q.append(w)
    return dist, parent


def _walk_back(parent: list[int], v: int) -> list[int]:
    out = [v]
    while parent[out[-1]] >= 0:
        out.append(parent[out[-1]])
    return out[::-1]


def is_geodetic_counting(G: Graph) -> GeodeticReport:
    """BFS from every source, counting shortest paths."""
    _require_connected(G)
    for x in G.vertices():
        dist, parent = _bfs_tree(G, x)
        count = [0] * G.n
        count[x] = 1
        for u in sorted(G.vertices(), key=lambda v: dist[v]):
            for w in G.neighbors(u):
                if dist[w] == dist[u] + 1:
                    count[w] += count[u]
        multi = [v for v in G.vertices() if count[v] > 1]
        if multi:
            # the closest such vertex has >= 2 predecessors, each reached uniquely
            y = min(multi, key=lambda v: (dist[v], v))
            preds = [w for w in G.neighbors(y) if dist[w] == dist[y] - 1]
            p1, p2 = preds[0], preds[1]
            paths = (tuple(_walk_back(parent, p1)) + (y,), tuple(_walk_back(parent, p2)) + (y,))
            return GeodeticReport(False, (x, y), paths)
    return GeodeticReport(True)


def is_geodetic_layered(G: Graph) -> GeodeticReport:
    """Every y in N_k(x), k >= 2, must see exactly one vertex of N_{k-1}(x)."""
    _require_connected(G)
    masks = G.masks
    for x in G.vertices():
        dist = bfs_distances(G, x)
        layers: dict[int, int] = {}
        for v, d in enumerate(dist):
            layers[d] = layers.get(d, 0) | (1 << v)
        for k in range(2, max(dist) + 1):
            for y in bits(layers[k]):
                back = list(bits(masks[y] & layers[k - 1]))
                if len(back) != 1:
                    _, parent = _bfs_tree(G, x)
                    paths = (
                        tuple(_walk_back(parent, back[0])) + (y,),
                        tuple(_walk_back(parent, back[1])) + (y,),
                    )
                    return GeodeticReport(False, (x, y), paths)
    return GeodeticReport(True)


def check_geodetic_witness(G: Graph, report: GeodeticReport) -> bool:
    """Independent check of a negative verdict's two paths."""
    if report.verdict or report.pair is None:
        return False
    x, y = report.pair
    p, q = report.paths
    d = bfs_distances(G, x)[y]
    for path in (p, q):
        if path[0] != x or path[-1] != y or len(path) - 1 != d:
            return False
        if any(not G.has_edge(a, b) for a, b in zip(path, path[1:])):
            return False
    return p != q


def diameter(G: Graph) -> int:
    _require_connected(G)
    return max(max(bfs_distances(G, x)) for x in G.vertices())


# -- diameter-two classification -----------------------------------------------

def maximal_cliques(G: Graph) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with pivoting; cliques sorted."""
    masks = G.masks
    out = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(bits(r)))
            return
        pivot = max(bits(p | x), key=lambda u: (masks[u] & p).bit_count())
        for v in list(bits(p & ~masks[pivot])):
            expand(r | (1 << v), p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, (1 << G.n) - 1, 0)
    return sorted(out)


@dataclass(frozen=True)
class Diam2Classification:
    """``case`` is ``universal_vertex``, ``strongly_regular``, ``two_degrees``
    or ``contradiction`` (a geodetic diameter-two graph fitting none)."""

    case: str
    params: tuple = ()
    x1: tuple[int, ...] = ()
    x2: tuple[int, ...] = ()
    checks: tuple[tuple[str, bool], ...] = ()
    diagnostics: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        out: dict = {"case": self.case, "params": list(self.params)}
        if self.case == "two_degrees":
            out["X1"] = list(self.x1)
            out["X2"] = list(self.x2)
        if self.checks:
            out["checks"] = {name: ok for name, ok in self.checks}
        if self.diagnostics:
            out["diagnostics"] = list(self.diagnostics)
        return out


def strongly_regular_params(G: Graph) -> tuple[int, int, int, int] | None:
    """(n, k, lambda, mu) by exhaustive common-neighbour counts, or None."""
    degs = set(G.degrees())
    if len(degs) != 1:
        return None
    k = degs.pop()
    masks = G.masks
    lam, mu = set(), set()
    for a, b in combinations(G.vertices(), 2):
        common = (masks[a] & masks[b]).bit_count()
        (lam if G.has_edge(a, b) else mu).add(common)
    if len(lam) > 1 or len(mu) > 1:
        return None
    return G.n, k, (lam.pop() if lam else 0), (mu.pop() if mu else 0)


def classify_diam2(G: Graph) -> Diam2Classification:
    """Place a geodetic graph of diameter two in one of the three cases."""
    if not is_geodetic_counting(G):
        raise ValueError("graph is not geodetic")
    if diameter(G) != 2:
        raise ValueError("graph does not have diameter 2")
    n = G.n
    universal = [v for v in G.vertices() if G.degree(v) == n - 1]
    if universal:
        return Diam2Classification("universal_vertex", (universal[0],))
    srg = strongly_regular_params(G)
    if srg is not None:
        return Diam2Classification("strongly_regular", srg)
    degs = sorted(set(G.degrees()), reverse=True)
    if len(degs) != 2:
        return Diam2Classification(
            "contradiction",
            tuple(degs),
            diagnostics=(f"expected regular or exactly two degrees, found {degs}",),
        )
    k1, k2 = degs
    x1 = tuple(v for v in G.vertices() if G.degree(v) == k1)
    x2 = tuple(v for v in G.vertices() if G.degree(v) == k2)
    s1, s2 = set(x1), set(x2)
    cliques = maximal_cliques(G)
    mixed = [c for c in cliques if set(c) & s1 and set(c) & s2]
    inside = [c for c in cliques if set(c) <= s1]
    checks = (
        ("X2 independent", is_independent_set(G, x2)),
        ("mixed maximal cliques have size 2", all(len(c) == 2 for c in mixed)),
        ("maximal cliques in X1 have size k1-k2+2", all(len(c) == k1 - k2 + 2 for c in inside)),
        ("n = k1*k2 + 1", n == k1 * k2 + 1),
    )
    diags = tuple(f"clause failed: {name}" for name, ok in checks if not ok)
    return Diam2Classification("two_degrees", (k1, k2), x1, x2, checks, diags)


# -- generators -------------------------------------------------------------------

def plesnik_stemple(n: int, f: Sequence[int] | Mapping[int, int]) -> Graph:
    """K_n with each edge (x, y) subdivided by f(x) + f(y) new vertices."""
    if n < 2:
        raise ValueError("n must be at least 2")
    fv = [f[i] for i in range(n)]
    if any(k < 0 for k in fv):
        raise ValueError("f must be nonnegative")
    edges = []
    nxt = n
    for x, y in combinations(range(n), 2):
        p = [x] + list(range(nxt, nxt + fv[x] + fv[y])) + [y]
        nxt += fv[x] + fv[y]
        edges.extend(zip(p, p[1:]))
    return Graph(nxt, edges)


def petersen() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint."""
    subsets = list(combinations(range(5), 2))
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    return Graph(len(subsets), edges)


def friendship_graph(k: int) -> Graph:
    """k triangles sharing vertex 0."""
    edges = []
    for t in range(k):
        a, b = 2 * t + 1, 2 * t + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph(2 * k + 1, edges)
