"""Generators and analysers for birdcages, links and birdcage-splits.

Every builder returns the graph together with a role map (floor, hook,
paths, ...) in host vertex ids, so that tests can check each structural
claim against the exact vertices it is about.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .detect import DEFAULT_GUARD, chordless_paths
from .graph import (
    Graph,
    GraphError,
    bits,
    connected_components,
    induced_subgraph,
    is_clique,
    is_independent_set,
    shortest_path,
    to_mask,
)

ODD, EVEN = "odd", "even"


class SpecError(ValueError):
    """A construction whose preconditions do not hold."""


def _parity_of(k: int) -> str:
    return ODD if k % 2 else EVEN


# -- birdcages ---------------------------------------------------------------

@dataclass(frozen=True)
class BirdcageSpec:
    """Floor size, one path length per floor vertex, and the shared parity.

    ``parity=None`` infers it from the lengths.
    """

    floor_size: int
    path_lengths: tuple[int, ...]
    parity: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "path_lengths", tuple(self.path_lengths))
        if self.floor_size < 1:
            raise SpecError("a birdcage needs a nonempty floor")
        if len(self.path_lengths) != self.floor_size:
            raise SpecError(
                f"need one path per floor vertex: {self.floor_size} floor vertices, "
                f"{len(self.path_lengths)} lengths"
            )
        if any(k < 1 for k in self.path_lengths):
            raise SpecError("path lengths must be at least 1")
        parities = {_parity_of(k) for k in self.path_lengths}
        if len(parities) > 1:
            raise SpecError("rule (a) violated: all paths must be odd or all even")
        if self.parity is None:
            object.__setattr__(self, "parity", parities.pop())
        elif self.parity not in (ODD, EVEN):
            raise SpecError(f"parity must be 'odd' or 'even', got {self.parity!r}")
        elif parities != {self.parity}:
            raise SpecError(f"rule (a) violated: lengths are not all {self.parity}")
        ones = self.path_lengths.count(1)
        if 1 < ones < self.floor_size:
            raise SpecError(
                "rule (b) violated: at most one path of length one, or all of them"
            )

    def to_json(self) -> dict:
        return {"floor": self.floor_size, "lengths": list(self.path_lengths), "parity": self.parity}

    @classmethod
    def from_json(cls, d: dict) -> "BirdcageSpec":
        return cls(d["floor"], tuple(d["lengths"]), d.get("parity"))


@dataclass(frozen=True)
class Birdcage:
    graph: Graph
    floor: tuple[int, ...]
    hook: int
    paths: tuple[tuple[int, ...], ...]  # each runs floor vertex -> hook
    spec: BirdcageSpec

    @property
    def parity(self) -> str:
        return self.spec.parity

    def roles(self) -> dict:
        return {"floor": list(self.floor), "hook": self.hook, "paths": [list(p) for p in self.paths]}


def build_birdcage(spec: BirdcageSpec) -> Birdcage:
    """Floor clique 0..f-1, hook f, then path internals path by path (floor side first)."""
    f = spec.floor_size
    hook = f
    edges = list(combinations(range(f), 2))
    paths = []
    nxt = f + 1
    for i, length in enumerate(spec.path_lengths):
        internal = list(range(nxt, nxt + length - 1))
        nxt += length - 1
        p = [i] + internal + [hook]
        edges.extend(zip(p, p[1:]))
        paths.append(tuple(p))
    return Birdcage(Graph(nxt, edges), tuple(range(f)), hook, tuple(paths), spec)


@dataclass(frozen=True)
class Glued:
    """Result of gluing two graphs: the new graph and where each input went."""

    graph: Graph
    map1: tuple[int, ...]
    map2: tuple[int, ...]
    notes: tuple[str, ...] = ()

    def roles(self) -> dict:
        return {"map1": list(self.map1), "map2": list(self.map2), "notes": list(self.notes)}


def _glue(
    g1: Graph,
    g2: Graph,
    identify: dict[int, int] | None = None,
    extra: Iterable[tuple[int, int]] = (),
    notes: Sequence[str] = (),
) -> Glued:
    """Disjoint union of g1 and g2, identifying ``identify[v2] = v1`` and
    adding edges ``(v1, v2)`` listed in ``extra``."""
    identify = identify or {}
    if len(set(identify.values())) != len(identify):
        raise SpecError("identification must be injective")
    map2 = []
    nxt = g1.n
    for v in g2.vertices():
        if v in identify:
            map2.append(identify[v])
        else:
            map2.append(nxt)
            nxt += 1
    edges = set(g1.edges())
    edges.update((min(map2[a], map2[b]), max(map2[a], map2[b])) for a, b in g2.edges())
    for a, b in extra:
        x, y = a, map2[b]
        if x == y:
            raise SpecError("join would create a loop")
        edges.add((min(x, y), max(x, y)))
    return Glued(Graph(nxt, edges), tuple(g1.vertices()), tuple(map2), tuple(notes))


def _part(B: Birdcage, part: str) -> tuple[int, ...]:
    if part == "hook":
        return (B.hook,)
    if part == "floor":
        return B.floor
    raise SpecError(f"part must be 'hook' or 'floor', got {part!r}")


def birdcage_is_clique(B: Birdcage) -> bool:
    return is_clique(B.graph, B.graph.vertices())


JOIN_MODES = ("hook-identify", "complete", "floor-identify", "floor-identify-2")


def join_birdcages(
    B1: Birdcage, B2: Birdcage, mode: str, part1: str = "hook", part2: str = "hook"
) -> Glued:
    """The four joins of two birdcages.

    ``hook-identify`` merges the hooks; ``complete`` adds all edges between
    ``part1`` of B1 and ``part2`` of B2 (each ``"hook"`` or ``"floor"``);
    ``floor-identify`` merges equal-size floors in declared order and needs
    exactly one of the two to be a clique; ``floor-identify-2`` merges two
    2-vertex floors so that the unique hook-adjacent floor vertices meet.
    """
    if mode == "hook-identify":
        return _glue(B1.graph, B2.graph, {B2.hook: B1.hook})
    if mode == "complete":
        a, b = _part(B1, part1), _part(B2, part2)
        return _glue(B1.graph, B2.graph, extra=[(x, y) for x in a for y in b])
    if mode == "floor-identify":
        if len(B1.floor) != len(B2.floor):
            raise SpecError("floor-identify needs floors of equal size")
        if birdcage_is_clique(B1) == birdcage_is_clique(B2):
            raise SpecError("floor-identify needs exactly one of the birdcages to be a clique")
        keep = 2 if birdcage_is_clique(B1) else 1
        return _glue(
            B1.graph,
            B2.graph,
            dict(zip(B2.floor, B1.floor)),
            notes=[f"roles: floor and hook of the non-clique birdcage B{keep}"],
        )
    if mode == "floor-identify-2":
        if not len(B1.floor) == len(B2.floor) == 2:
            raise SpecError("floor-identify-2 needs two floors of size 2")
        xs = []
        for B in (B1, B2):
            adj = [x for x in B.floor if B.graph.has_edge(x, B.hook)]
            if len(adj) != 1:
                raise SpecError("each floor must have exactly one vertex adjacent to its hook")
            other = [x for x in B.floor if x != adj[0]]
            xs.append((adj[0], other[0]))
        (x1, o1), (x2, o2) = xs
        return _glue(B1.graph, B2.graph, {x2: x1, o2: o1})
    raise SpecError(f"unknown join mode {mode!r}; expected one of {JOIN_MODES}")


# -- skew edges ----------------------------------------------------------------

@dataclass(frozen=True)
class SkewEdge:
    hook: int
    partner: int


def skew_edge_candidates(B: Birdcage) -> list[int]:
    g = B.graph
    return [w for w in g.neighbors(B.hook) if not g.masks[w] & g.masks[B.hook]]


def attach_skew_edge(B: Birdcage, h_star: int) -> SkewEdge:
    g = B.graph
    if not g.has_edge(B.hook, h_star):
        raise SpecError(f"{h_star} is not a neighbour of the hook {B.hook}")
    common = sorted(bits(g.masks[h_star] & g.masks[B.hook]))
    if common:
        raise SpecError(f"hook and {h_star} have common neighbours {common}")
    return SkewEdge(B.hook, h_star)


def skew_join(
    B1: Birdcage,
    B2: Birdcage,
    skew2: SkewEdge,
    *,
    skew1: SkewEdge | None = None,
    form: str = "double",
    matching: str = "straight",
    part: str = "hook",
    target: str = "hook",
) -> Glued:
    """Skew-joins.

    ``form="double"`` identifies both ends of the two skew-edges, pairing
    hook with hook (``matching="straight"``) or hook with partner
    (``"crossed"``). ``form="identify"`` merges B1's hook with the ``target``
    end (``"hook"`` or ``"partner"``) of B2's skew-edge; ``form="join"``
    completely joins B1's ``part`` to that end.
    """
    attach_skew_edge(B2, skew2.partner)
    t = skew2.hook if target == "hook" else skew2.partner
    if target not in ("hook", "partner"):
        raise SpecError(f"target must be 'hook' or 'partner', got {target!r}")
    if form == "double":
        if skew1 is None:
            raise SpecError("a double skew-join needs a skew-edge on both birdcages")
        attach_skew_edge(B1, skew1.partner)
        if matching == "straight":
            ident = {skew2.hook: skew1.hook, skew2.partner: skew1.partner}
        elif matching == "crossed":
            ident = {skew2.hook: skew1.partner, skew2.partner: skew1.hook}
        else:
            raise SpecError(f"matching must be 'straight' or 'crossed', got {matching!r}")
        return _glue(B1.graph, B2.graph, ident)
    if form == "identify":
        return _glue(B1.graph, B2.graph, {t: B1.hook})
    if form == "join":
        return _glue(B1.graph, B2.graph, extra=[(x, t) for x in _part(B1, part)])
    raise SpecError(f"unknown skew-join form {form!r}")


# -- links -----------------------------------------------------------------------

@dataclass(frozen=True)
class LinkStructure:
    graph: Graph
    c1: tuple[int, ...]
    c2: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    vertices: frozenset[int]
    parity: str | None  # "odd", "even", "mixed", or None when there are no paths

    @property
    def is_link(self) -> bool:
        return self.parity in (ODD, EVEN)


def extract_link(
    G: Graph,
    c1: Iterable[int],
    c2: Iterable[int],
    limit: int | None = 10_000,
    guard: int | None = DEFAULT_GUARD,
) -> LinkStructure:
    """Collect every chordless C1-C2 path and classify the parities."""
    c1, c2 = tuple(sorted(set(c1))), tuple(sorted(set(c2)))
    if set(c1) & set(c2):
        raise SpecError("the two cliques must be disjoint")
    for c in (c1, c2):
        if not c or not is_clique(G, c):
            raise SpecError(f"{list(c)} is not a nonempty clique")
    paths = tuple(chordless_paths(G, c1, c2, limit=limit, guard=guard))
    lengths = {_parity_of(len(p) - 1) for p in paths}
    if not lengths:
        parity = None
    elif len(lengths) == 1:
        parity = lengths.pop()
    else:
        parity = "mixed"
    verts = frozenset(v for p in paths for v in p)
    return LinkStructure(G, c1, c2, paths, verts, parity)


def extend_link(G: Graph, L: LinkStructure | Iterable[int]) -> frozenset[int]:
    """Least superset closed under adding chordless paths between nonadjacent members.

    A chordless a-b path with interior outside the current set S exists iff
    some component of G - S touches both a and b; a shortest a-b path
    through that component is chordless, so each round adds one. Pairs are
    taken in lexicographic order.
    """
    S = set(L.vertices if isinstance(L, LinkStructure) else L)
    masks = G.masks
    while True:
        outside = [v for v in G.vertices() if v not in S]
        best = None
        for comp in connected_components(G, outside):
            cmask = to_mask(comp)
            touching = sorted(v for v in S if masks[v] & cmask)
            for a, b in combinations(touching, 2):
                if not G.has_edge(a, b):
                    if best is None or (a, b) < best[0]:
                        best = ((a, b), cmask)
                    break
        if best is None:
            return frozenset(S)
        (a, b), cmask = best
        path = shortest_path(G, a, b, allowed=cmask)
        S.update(path)


def find_omega(G: Graph) -> tuple[int, int, int] | None:
    """First vertex (by id) with two nonadjacent neighbours x < y."""
    for w in G.vertices():
        for x, y in combinations(G.neighbors(w), 2):
            if not G.has_edge(x, y):
                return w, x, y
    return None


@dataclass(frozen=True)
class Replaced:
    graph: Graph
    map_birdcage: dict[int, int]
    map_link: dict[int, int]
    floor: tuple[int, ...]
    hook: int
    added_join_edges: int


def replace_path_with_link(B: Birdcage, path_index: int, L: LinkStructure) -> Replaced:
    """Substitute one floor-hook path of B by a vertex-to-clique link.

    The link's single endpoint becomes the hook, and its clique is completely
    joined to the remaining floor vertices (the number of such edges is
    recorded as ``added_join_edges``).
    """
    if len(L.c1) != 1:
        raise SpecError("the link must start at a single vertex")
    if not L.is_link:
        raise SpecError(f"not a link: path parity is {L.parity}")
    if L.parity != B.parity:
        raise SpecError(f"parity mismatch: link is {L.parity}, birdcage paths are {B.parity}")
    if not 0 <= path_index < len(B.paths):
        raise SpecError(f"no path {path_index}")
    doomed = set(B.paths[path_index][:-1])
    keep = [v for v in B.graph.vertices() if v not in doomed]
    base, back = induced_subgraph(B.graph, keep)
    map_b = {old: new for new, old in enumerate(back)}
    lverts = sorted(L.vertices | set(L.c1) | set(L.c2))
    lg, lback = induced_subgraph(L.graph, lverts)
    lpos = {old: i for i, old in enumerate(lback)}
    others = [map_b[x] for x in B.floor if x not in doomed]
    joins = [(x, lpos[c]) for x in others for c in L.c2]
    glued = _glue(base, lg, {lpos[L.c1[0]]: map_b[B.hook]}, extra=joins)
    map_l = {old: glued.map2[i] for i, old in enumerate(lback)}
    floor = tuple(sorted(others + [map_l[c] for c in L.c2]))
    return Replaced(glued.graph, map_b, map_l, floor, map_b[B.hook], len(joins))


# -- split graphs and birdcage-splits -----------------------------------------------

@dataclass(frozen=True)
class SplitGraph:
    """Clique ``0..c-1`` and independent vertices ``c..c+i-1``.

    ``edges`` holds cross pairs ``(clique vertex, independent index)``.
    """

    clique_size: int
    independent_size: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        es = tuple(sorted({(int(c), int(x)) for c, x in self.edges}, key=lambda e: (e[1], e[0])))
        for c, x in es:
            if not (0 <= c < self.clique_size and 0 <= x < self.independent_size):
                raise SpecError(f"cross edge ({c},{x}) out of range")
        object.__setattr__(self, "edges", es)

    @property
    def clique(self) -> tuple[int, ...]:
        return tuple(range(self.clique_size))

    @property
    def independent(self) -> tuple[int, ...]:
        return tuple(range(self.clique_size, self.clique_size + self.independent_size))

    @property
    def graph(self) -> Graph:
        c = self.clique_size
        edges = list(combinations(range(c), 2)) + [(a, c + x) for a, x in self.edges]
        g = Graph(c + self.independent_size, edges)
        assert is_clique(g, self.clique) and is_independent_set(g, self.independent)
        return g


@dataclass(frozen=True)
class HookSpec:
    parity: str
    edges: tuple[tuple[int, int], ...]  # (clique vertex, path length)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(c), int(k)) for c, k in self.edges))


@dataclass(frozen=True)
class BirdcageSplitSpec:
    clique_size: int
    hooks: tuple[HookSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "hooks", tuple(self.hooks))
        if self.clique_size < 1:
            raise SpecError("the clique must be nonempty")
        for h, hs in enumerate(self.hooks):
            if hs.parity not in (ODD, EVEN):
                raise SpecError(f"hook {h}: parity must be 'odd' or 'even'")
            cs = [c for c, _ in hs.edges]
            if len(set(cs)) != len(cs):
                raise SpecError(f"hook {h}: repeated clique vertex")
            for c, k in hs.edges:
                if not 0 <= c < self.clique_size:
                    raise SpecError(f"hook {h}: clique vertex {c} out of range")
                if k < 2:
                    raise SpecError(f"hook {h}: every path must have length > 1, got {k}")
                if _parity_of(k) != hs.parity:
                    raise SpecError(
                        f"hook {h}: length {k} clashes with the hook's {hs.parity} parity"
                    )

    @property
    def base(self) -> SplitGraph:
        return SplitGraph(
            self.clique_size,
            len(self.hooks),
            tuple((c, h) for h, hs in enumerate(self.hooks) for c, _ in hs.edges),
        )

    def to_json(self) -> dict:
        return {
            "clique_size": self.clique_size,
            "hooks": [
                {"parity": hs.parity, "edges": [{"c": c, "len": k} for c, k in hs.edges]}
                for hs in self.hooks
            ],
        }

    @classmethod
    def from_json(cls, d: dict) -> "BirdcageSplitSpec":
        hooks = tuple(
            HookSpec(h["parity"], tuple((e["c"], e["len"]) for e in h["edges"])) for h in d["hooks"]
        )
        return cls(d["clique_size"], hooks)


@dataclass(frozen=True)
class BirdcageSplit:
    graph: Graph
    clique: tuple[int, ...]
    hooks: tuple[int, ...]
    paths: dict = field(compare=False)  # (hook, clique vertex) -> path clique vertex..hook

    def floor_of(self, hook: int) -> tuple[int, ...]:
        return tuple(sorted(c for h, c in self.paths if h == hook))

    def roles(self) -> dict:
        return {
            "clique": list(self.clique),
            "hooks": list(self.hooks),
            "paths": [{"hook": h, "c": c, "path": list(p)} for (h, c), p in self.paths.items()],
        }


def build_birdcage_split(spec: BirdcageSplitSpec) -> BirdcageSplit:
    """Clique 0..c-1, hooks next, then path internals hook by hook, edge by edge."""
    c = spec.clique_size
    hooks = tuple(range(c, c + len(spec.hooks)))
    edges = list(combinations(range(c), 2))
    nxt = c + len(spec.hooks)
    paths = {}
    for h, hs in zip(hooks, spec.hooks):
        for cv, k in hs.edges:
            internal = list(range(nxt, nxt + k - 1))
            nxt += k - 1
            p = [cv] + internal + [h]
            edges.extend(zip(p, p[1:]))
            paths[(h, cv)] = tuple(p)
    return BirdcageSplit(Graph(nxt, edges), tuple(range(c)), hooks, paths)


def subdivide_cross_edges(H: SplitGraph) -> tuple[Graph, tuple[int, ...]]:
    """Put one new vertex on every clique-independent edge; returns (graph, Z)."""
    base = H.graph
    c = H.clique_size
    edges = [(a, b) for a, b in base.edges() if b < c]
    nxt = base.n
    z = []
    for a, x in H.edges:
        edges.append((a, nxt))
        edges.append((nxt, c + x))
        z.append(nxt)
        nxt += 1
    return Graph(nxt, edges), tuple(z)


def local_complement(G: Graph, z: int) -> Graph:
    """Complement the edges inside N(z)."""
    if not 0 <= z < G.n:
        raise GraphError(f"vertex {z} out of range")
    nb = G.neighbors(z)
    toggle = set(combinations(nb, 2))
    edges = set(G.edges()) ^ toggle
    return Graph(G.n, edges)


def hat_construction(
    H: SplitGraph, order: Sequence[int] | None = None
) -> tuple[Graph, dict[int, int]]:
    """Subdivide every cross edge, then locally complement at each subdivision vertex.

    Returns the resulting graph and the embedding of H (its vertices keep
    their ids). ``order`` permutes the subdivision vertices.
    """
    g, z = subdivide_cross_edges(H)
    seq = list(z) if order is None else list(order)
    if sorted(seq) != sorted(z):
        raise SpecError("order must be a permutation of the subdivision vertices")
    for s in seq:
        g = local_complement(g, s)
    return g, {v: v for v in range(H.clique_size + H.independent_size)}
