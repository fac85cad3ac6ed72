"""Forbidden-structure oracles: holes, even holes, diamonds, chordality.

The hole searches are exponential in the worst case. They extend chordless
paths one vertex at a time, only ever adding a vertex adjacent to the head of
the path and to no other path vertex, which keeps them fast on the sparse
structured graphs this package deals with. A vertex-count guard makes the
worst case explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .graph import (
    Graph,
    GuardExceeded,
    bits,
    connected_components,
    is_clique,
    shortest_path,
    to_mask,
)

DEFAULT_GUARD = 64


@dataclass(frozen=True)
class HoleWitness:
    """A chordless cycle of length at least four, in canonical rotation."""

    cycle: tuple[int, ...]

    def __len__(self):
        return len(self.cycle)

    @property
    def is_even(self) -> bool:
        return len(self.cycle) % 2 == 0

    def to_json(self) -> dict:
        kind = "even_hole" if self.is_even else "odd_hole"
        return {"kind": kind, "cycle": list(self.cycle)}


@dataclass(frozen=True)
class DiamondWitness:
    vertices: tuple[int, int, int, int]
    missing: tuple[int, int]

    def to_json(self) -> dict:
        return {"kind": "diamond", "vertices": list(self.vertices), "missing": list(self.missing)}


def canonical_cycle(cycle: Iterable[int]) -> tuple[int, ...]:
    """Rotate/reflect so the minimum comes first, then its smaller neighbour."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[:0:-1]
    return tuple(c)


def is_hole(G: Graph, cycle: Iterable[int]) -> bool:
    """Independent verifier for :class:`HoleWitness` invariants."""
    c = list(cycle)
    k = len(c)
    if k < 4 or len(set(c)) != k or any(not 0 <= v < G.n for v in c):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if G.has_edge(c[i], c[j]) != consecutive:
                return False
    return True


def is_diamond(G: Graph, w: DiamondWitness) -> bool:
    vs = w.vertices
    if len(set(vs)) != 4:
        return False
    present = [(a, b) for a, b in combinations(vs, 2) if G.has_edge(a, b)]
    missing = [tuple(sorted((a, b))) for a, b in combinations(vs, 2) if not G.has_edge(a, b)]
    return len(present) == 5 and missing == [tuple(sorted(w.missing))]


def _guard(G: Graph, guard: int | None) -> None:
    if guard is not None and G.n > guard:
        raise GuardExceeded(f"graph has {G.n} vertices, hole-search guard is {guard}")


def iter_chordless_cycles(G: Graph, guard: int | None = DEFAULT_GUARD) -> Iterator[HoleWitness]:
    """Yield every hole of G exactly once, already in canonical form.

    For each start vertex s only vertices larger than s are used, so s is the
    minimum of every cycle it roots; the second vertex must be smaller than
    the closing one, which fixes the direction.
    """
    _guard(G, guard)
    masks = G.masks
    for s in range(G.n):
        higher = ~((1 << (s + 1)) - 1)
        ns = masks[s]
        for v1 in bits(ns & higher):
            # blocked = path vertices plus closed neighbourhoods of path[1:-1];
            # s is handled through ns so that it can close the cycle
            stack = [([s, v1], (1 << s) | (1 << v1))]
            while stack:
                path, blocked = stack.pop()
                head = path[-1]
                nxt_blocked = blocked | masks[head]
                for w in bits(masks[head] & higher & ~blocked):
                    if ns >> w & 1:
                        if len(path) >= 3 and w > v1:
                            yield HoleWitness(tuple(path + [w]))
                        continue
                    stack.append((path + [w], nxt_blocked | (1 << w)))


def enumerate_chordless_cycles(
    G: Graph, max_count: int | None = None, guard: int | None = DEFAULT_GUARD
) -> list[HoleWitness]:
    """All holes of G in canonical form, sorted, up to ``max_count``."""
    out = []
    for h in iter_chordless_cycles(G, guard):
        out.append(h)
        if max_count is not None and len(out) >= max_count:
            break
    out.sort(key=lambda h: (len(h.cycle), h.cycle))
    return out


def find_even_hole(G: Graph, guard: int | None = DEFAULT_GUARD) -> HoleWitness | None:
    for h in iter_chordless_cycles(G, guard):
        if h.is_even:
            return h
    return None


def find_diamond(G: Graph) -> DiamondWitness | None:
    """An edge in two triangles whose apexes are nonadjacent, if any."""
    masks = G.masks
    for u, v in G.edges():
        common = list(bits(masks[u] & masks[v]))
        for a, b in combinations(common, 2):
            if not masks[a] >> b & 1:
                return DiamondWitness((u, v, a, b), (a, b))
    return None


# -- chordality ----------------------------------------------------------

def maximum_cardinality_search(G: Graph) -> list[int]:
    """MCS visiting order; its reverse is a PEO iff G is chordal."""
    weight = [0] * G.n
    visited = [False] * G.n
    order = []
    for _ in range(G.n):
        best = -1
        for v in range(G.n):
            if not visited[v] and (best < 0 or weight[v] > weight[best]):
                best = v
        visited[best] = True
        order.append(best)
        for w in G.neighbors(best):
            if not visited[w]:
                weight[w] += 1
    return order


def is_perfect_elimination_order(G: Graph, order: list[int]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in G.neighbors(v) if pos[w] > pos[v]]
        if not is_clique(G, later):
            return False
    return True


def find_hole(G: Graph) -> HoleWitness | None:
    """Polynomial hole finder.

    G has a hole through v with neighbours u, w on it iff u, w are nonadjacent
    neighbours of v joined by a path avoiding the rest of N[v]; a shortest such
    path closes a chordless cycle.
    """
    masks = G.masks
    full = (1 << G.n) - 1
    for v in range(G.n):
        nb = list(G.neighbors(v))
        closed = masks[v] | (1 << v)
        for u, w in combinations(nb, 2):
            if masks[u] >> w & 1:
                continue
            path = shortest_path(G, u, w, allowed=full & ~closed)
            if path is not None:
                return HoleWitness(canonical_cycle([v] + path))
    return None


def is_chordal(G: Graph) -> tuple[bool, list[int] | HoleWitness]:
    """(True, perfect elimination order) or (False, a hole)."""
    order = maximum_cardinality_search(G)[::-1]
    if is_perfect_elimination_order(G, order):
        return True, order
    hole = find_hole(G)
    assert hole is not None, "MCS rejected a graph with no hole"
    return False, hole


# -- chordless paths ------------------------------------------------------

def iter_chordless_paths(
    G: Graph, c1: Iterable[int], c2: Iterable[int], guard: int | None = DEFAULT_GUARD
) -> Iterator[tuple[int, ...]]:
    """Induced paths from C1 to C2 using no other vertex of C1 or C2."""
    _guard(G, guard)
    c1 = sorted(set(c1))
    c2 = sorted(set(c2))
    if set(c1) & set(c2):
        raise ValueError("C1 and C2 must be disjoint")
    m1, m2 = to_mask(c1), to_mask(c2)
    masks = G.masks
    for a in c1:
        # blocked = path vertices plus closed neighbourhoods of path[:-1]
        stack = [((a,), 1 << a)]
        while stack:
            path, blocked = stack.pop()
            head = path[-1]
            nxt_blocked = blocked | masks[head]
            for w in bits(masks[head] & ~blocked & ~m1):
                if m2 >> w & 1:
                    yield path + (w,)
                    continue
                stack.append((path + (w,), nxt_blocked | (1 << w)))


def chordless_paths(
    G: Graph,
    c1: Iterable[int],
    c2: Iterable[int],
    limit: int | None = 10_000,
    guard: int | None = DEFAULT_GUARD,
) -> list[tuple[int, ...]]:
    """All qualifying chordless paths, sorted by (length, vertices).

    Raises :class:`GuardExceeded` if more than ``limit`` paths exist, so a
    truncated list is never mistaken for the full collection.
    """
    out = []
    for p in iter_chordless_paths(G, c1, c2, guard):
        out.append(p)
        if limit is not None and len(out) > limit:
            raise GuardExceeded(f"more than {limit} chordless paths")
    out.sort(key=lambda p: (len(p), p))
    return out


def is_chordless_path(G: Graph, path: Iterable[int]) -> bool:
    p = list(path)
    if len(set(p)) != len(p):
        return False
    return all(G.has_edge(p[i], p[j]) == (j == i + 1) for i, j in combinations(range(len(p)), 2))


# -- simplicial extremes ---------------------------------------------------

def is_simplicial(G: Graph, v: int) -> bool:
    return is_clique(G, G.neighbors(v))


def is_simplicial_extreme(G: Graph, v: int) -> bool:
    return G.degree(v) == 2 or is_simplicial(G, v)


@dataclass(frozen=True)
class SimplicialExtremes:
    """Outcome of the simplicial-extreme search.

    ``kind`` is ``"clique"``, ``"pair"`` (with ``pair`` set) or
    ``"counterexample"``; the last means the graph cannot lie in the class.
    """

    kind: str
    extremes: tuple[int, ...]
    pair: tuple[int, int] | None = None


def find_simplicial_extremes(G: Graph) -> SimplicialExtremes:
    if len(connected_components(G)) > 1:
        raise ValueError("graph must be connected")
    extremes = tuple(v for v in G.vertices() if is_simplicial_extreme(G, v))
    if is_clique(G, G.vertices()):
        return SimplicialExtremes("clique", extremes)
    for a, b in combinations(extremes, 2):
        if not G.has_edge(a, b):
            return SimplicialExtremes("pair", extremes, (a, b))
    return SimplicialExtremes("counterexample", extremes)


# -- class membership ------------------------------------------------------

@dataclass(frozen=True)
class ClassVerdict:
    member: bool
    witness: HoleWitness | DiamondWitness | None = None

    def __bool__(self):
        return self.member

    def to_json(self) -> dict:
        return {"member": self.member, "witness": self.witness.to_json() if self.witness else None}


def is_in_class_G(G: Graph, guard: int | None = DEFAULT_GUARD) -> ClassVerdict:
    """Membership in the class of (even-hole, diamond)-free graphs."""
    _guard(G, guard)
    d = find_diamond(G)
    if d is not None:
        return ClassVerdict(False, d)
    h = find_even_hole(G, guard)
    if h is not None:
        return ClassVerdict(False, h)
    return ClassVerdict(True)
