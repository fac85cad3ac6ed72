"""Immutable simple graphs over dense integer vertex ids.

Vertices are ``0..n-1``. Every derived structure (induced subgraphs,
subdivisions, identifications) returns a new graph together with a map back
to the host ids, so callers never lose track of where a vertex came from.

Adjacency is kept both as sorted neighbour tuples and as integer bitmasks;
the bitmasks drive the hot loops in the search routines.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input (bad vertex ids, loops, bad files)."""


class GuardExceeded(RuntimeError):
    """Raised when an exponential search is asked to run beyond its size guard.

    The searches refuse explicitly instead of returning a partial answer.
    """


def bits(mask: int):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """A simple undirected graph with vertices ``0..n-1``.

    Instances are immutable and hashable; two graphs compare equal iff they
    have the same vertex count and the same edge set.
    """

    __slots__ = ("_n", "_adj", "_masks", "_edges", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._n = n
        self._adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._masks = tuple(to_mask(s) for s in nbrs)
        self._edges = None
        self._hash = None

    # -- basic queries -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self.edges())

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood bitmask per vertex."""
        return self._masks

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges ``(u, v)`` with ``u < v``, sorted."""
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in range(self._n) for v in self._adj[u] if u < v
            )
        return self._edges

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self._adj[v]) | {v}

    def set_neighbors(self, s: Iterable[int]) -> frozenset[int]:
        """N(S): vertices outside S adjacent to some vertex of S."""
        s = frozenset(s)
        mask = 0
        for v in s:
            mask |= self._masks[v]
        mask &= ~to_mask(s)
        return frozenset(bits(mask))

    def set_closed_neighbors(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        return self.set_neighbors(s) | s

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    # -- derived graphs ------------------------------------------------
    def remove(self, s: Iterable[int]) -> tuple["Graph", list[int]]:
        """G - S, with the map from new ids to old ids."""
        s = set(s)
        return induced_subgraph(self, [v for v in range(self._n) if v not in s])

    def complement(self) -> "Graph":
        return Graph(
            self._n,
            [(u, v) for u, v in combinations(range(self._n), 2) if not self.has_edge(u, v)],
        )

    # -- dunder --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._masks == other._masks

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._masks))
        return self._hash

    def __len__(self):
        return self._n

    def __repr__(self):
        return f"Graph(n={self._n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph with exactly the given edges; duplicates collapse."""
    return Graph(n, edges)


def _check_subset(G: Graph, s: Iterable[int]) -> list[int]:
    out = sorted(set(s))
    for v in out:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} not in graph on {G.n} vertices")
    return out


def induced_subgraph(G: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """G[S] relabelled to ``0..|S|-1`` in increasing host order.

    Returns the subgraph and ``back`` with ``back[i]`` the host id of new vertex i.
    """
    back = _check_subset(G, s)
    fwd = {v: i for i, v in enumerate(back)}
    edges = [(fwd[u], fwd[v]) for u in back for v in G.neighbors(u) if u < v and v in fwd]
    return Graph(len(back), edges), back


def distance_layers(G: Graph, x: int) -> tuple[list[frozenset[int]], frozenset[int]]:
    """BFS layers N_0={x}, N_1, ... and the set of vertices unreachable from x."""
    if not 0 <= x < G.n:
        raise GraphError(f"vertex {x} not in graph on {G.n} vertices")
    dist = bfs_distances(G, x)
    layers: list[set[int]] = []
    for v, d in enumerate(dist):
        if d < 0:
            continue
        while len(layers) <= d:
            layers.append(set())
        layers[d].add(v)
    unreachable = frozenset(v for v, d in enumerate(dist) if d < 0)
    return [frozenset(layer) for layer in layers], unreachable


def bfs_distances(G: Graph, x: int) -> list[int]:
    """Distances from x; -1 marks unreachable vertices."""
    dist = [-1] * G.n
    dist[x] = 0
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for w in G.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def shortest_path(G: Graph, a: int, b: int, allowed: int | None = None) -> list[int] | None:
    """A shortest a-b path whose internal vertices lie in the bitmask ``allowed``.

    Ties are broken towards smaller vertex ids. ``allowed=None`` means no
    restriction.
    """
    if a == b:
        return [a]
    masks = G.masks
    if allowed is None:
        allowed = (1 << G.n) - 1
    allowed |= 1 << b
    parent = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for w in bits(masks[u] & allowed):
            if w in parent:
                continue
            parent[w] = u
            if w == b:
                path = [b]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(w)
    return None


def connected_components(G: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    """Components of G (or of G[within]), each sorted, ordered by smallest member."""
    if within is None:
        allowed = (1 << G.n) - 1
    else:
        allowed = to_mask(within)
    masks = G.masks
    comps = []
    remaining = allowed
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= masks[v]
            nxt &= allowed & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(list(bits(comp)))
        remaining &= ~comp
    return comps


def is_connected(G: Graph) -> bool:
    return len(connected_components(G)) <= 1


def is_clique(G: Graph, s: Iterable[int]) -> bool:
    vs = _check_subset(G, s)
    mask = to_mask(vs)
    masks = G.masks
    return all((masks[v] | 1 << v) & mask == mask for v in vs)


def is_independent_set(G: Graph, s: Iterable[int]) -> bool:
    vs = _check_subset(G, s)
    mask = to_mask(vs)
    masks = G.masks
    return all(masks[v] & mask == 0 for v in vs)


def find_induced_embedding(H: Graph, G: Graph, guard: int | None = 12) -> dict[int, int] | None:
    """Find an injective map phi with uv in E(H) iff phi(u)phi(v) in E(G).

    Plain backtracking: pattern vertices are placed in an order that keeps
    each new vertex attached to already-placed ones where possible, and
    candidates are pruned by degree. Raises :class:`GuardExceeded` when H has
    more than ``guard`` vertices (``None`` disables the guard).
    """
    if guard is not None and H.n > guard:
        raise GuardExceeded(f"pattern has {H.n} vertices, guard is {guard}")
    if H.n > G.n:
        return None
    if H.n == 0:
        return {}

    # order: highest degree first, then greedily most-connected-to-placed
    order: list[int] = []
    placed = set()
    rest = set(H.vertices())
    while rest:
        best = max(
            rest,
            key=lambda v: (sum(1 for w in H.neighbors(v) if w in placed), H.degree(v), -v),
        )
        order.append(best)
        placed.add(best)
        rest.remove(best)

    hdeg = H.degrees()
    gdeg = G.degrees()
    gmasks = G.masks
    phi: dict[int, int] = {}
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        u = order[i]
        for x in range(G.n):
            if used >> x & 1 or gdeg[x] < hdeg[u]:
                continue
            ok = True
            for w, y in phi.items():
                if H.has_edge(u, w) != bool(gmasks[x] >> y & 1):
                    ok = False
                    break
            if not ok:
                continue
            phi[u] = x
            used |= 1 << x
            if extend(i + 1):
                return True
            del phi[u]
            used &= ~(1 << x)
        return False

    return dict(sorted(phi.items())) if extend(0) else None


def check_induced_embedding(H: Graph, G: Graph, phi: dict[int, int]) -> bool:
    """Edge-by-edge check of an embedding, independent of the search."""
    if sorted(phi) != list(H.vertices()) or len(set(phi.values())) != H.n:
        return False
    if any(not 0 <= x < G.n for x in phi.values()):
        return False
    return all(
        H.has_edge(u, v) == G.has_edge(phi[u], phi[v]) for u, v in combinations(H.vertices(), 2)
    )


# -- named families ----------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph(n)


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Disjoint union; returns the offsets at which each input starts."""
    offsets = []
    edges = []
    off = 0
    for g in graphs:
        offsets.append(off)
        edges.extend((u + off, v + off) for u, v in g.edges())
        off += g.n
    return Graph(off, edges), offsets


# -- text format -------------------------------------------------------

def format_graph(G: Graph, comments: Sequence[str] = ()) -> str:
    """Serialise to the ``p n m`` / ``e u v`` text format (LF endings)."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"p {G.n} {G.m}")
    lines.extend(f"e {u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the text format. Duplicate edges, loops and u>v are rejected."""
    if "\r" in text:
        raise GraphError("CR characters not allowed; use LF line endings")
    header = None
    edges: list[tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise GraphError(f"line {lineno}: second header")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: expected 'p <n> <m>'")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise GraphError(f"line {lineno}: non-integer header") from None
            if header[0] < 0 or header[1] < 0:
                raise GraphError(f"line {lineno}: negative count")
        elif parts[0] == "e":
            if header is None:
                raise GraphError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphError(f"line {lineno}: non-integer vertex") from None
            if u == v:
                raise GraphError(f"line {lineno}: self-loop at {u}")
            if u > v:
                raise GraphError(f"line {lineno}: edge must be written with u < v")
            if not (0 <= u and v < header[0]):
                raise GraphError(f"line {lineno}: vertex out of range 0..{header[0] - 1}")
            if (u, v) in seen:
                raise GraphError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add((u, v))
            edges.append((u, v))
        else:
            raise GraphError(f"line {lineno}: unknown record {parts[0]!r}")
    if header is None:
        raise GraphError("missing 'p <n> <m>' header")
    if len(edges) != header[1]:
        raise GraphError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_graph(fh.read())


def write_graph(G: Graph, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(G, comments))
