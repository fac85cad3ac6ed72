"""Clique-separator decomposition into atoms.

Candidates come from a minimal elimination ordering (Lex M): every clique
minimal separator of G is the set of higher-numbered neighbours, in the
minimal triangulation, of some vertex. Each candidate is re-checked against
G directly (clique, and actually disconnects) before it is used.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Union

from .graph import (
    Graph,
    GraphError,
    connected_components,
    format_graph,
    induced_subgraph,
    is_clique,
)


class DecompositionError(ValueError):
    """An inconsistent :class:`DecompTree`."""


@dataclass(frozen=True)
class Separator:
    vertices: tuple[int, ...]
    sides: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Atom:
    vertices: tuple[int, ...]
    graph: Graph = field(compare=False)

    def to_json(self) -> dict:
        edges = [[self.vertices[u], self.vertices[v]] for u, v in self.graph.edges()]
        return {"atom": list(self.vertices), "edges": edges}


@dataclass(frozen=True)
class Split:
    separator: tuple[int, ...]
    left: "Node"
    right: "Node"

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.left.vertices) | set(self.right.vertices)))

    def to_json(self) -> dict:
        return {
            "separator": list(self.separator),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }


Node = Union[Atom, Split]


@dataclass(frozen=True)
class DecompTree:
    root: Node
    n: int

    def atoms(self) -> list[Atom]:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Atom):
                out.append(node)
            else:
                stack.append(node.right)
                stack.append(node.left)
        return out

    def splits(self) -> list[Split]:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Split):
                out.append(node)
                stack.append(node.right)
                stack.append(node.left)
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "tree": self.root.to_json()}

    def to_dot(self) -> str:
        lines = ["graph decomposition {"]
        counter = 0

        def visit(node) -> str:
            nonlocal counter
            name = f"n{counter}"
            counter += 1
            if isinstance(node, Atom):
                label = "{" + ",".join(map(str, node.vertices)) + "}"
                lines.append(f'  {name} [shape=box, label="{label}"];')
            else:
                label = "{" + ",".join(map(str, node.separator)) + "}"
                lines.append(f'  {name} [shape=diamond, label="{label}"];')
                for child in (node.left, node.right):
                    lines.append(f"  {name} -- {visit(child)};")
            return name

        visit(self.root)
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- minimal elimination ordering ----------------------------------------

def minimal_ordering(G: Graph) -> tuple[list[int], list[tuple[int, int]]]:
    """Lex M: a minimal elimination ordering and its fill edges.

    Returns ``(order, fill)`` where ``order[0]`` is eliminated first and
    ``order`` is a perfect elimination order of G + fill. Vertices are
    numbered from n down to 1; when v is numbered, every unnumbered w that is
    reachable from v through unnumbered vertices all carrying labels smaller
    than w's label gets v's number appended to its label (and a fill edge if
    it is not a neighbour of v).
    """
    n = G.n
    labels: list[tuple[int, ...]] = [() for _ in range(n)]
    numbered = [False] * n
    order_rev = []
    fill = []
    for number in range(n, 0, -1):
        v = max((u for u in range(n) if not numbered[u]), key=lambda u: (labels[u], -u))
        numbered[v] = True
        order_rev.append(v)
        # bottleneck search: for each unnumbered w, the smallest possible
        # maximum label over internal vertices of a v-w path
        # keys: (0,) for a direct neighbour, (1, label) for the worst label seen
        best: dict[int, tuple] = {}
        heap: list = []
        for w in G.neighbors(v):
            if not numbered[w]:
                best[w] = (0,)
                heapq.heappush(heap, ((0,), w))
        while heap:
            bottleneck, w = heapq.heappop(heap)
            if best.get(w) != bottleneck:
                continue
            through = max(bottleneck, (1, labels[w]))
            for x in G.neighbors(w):
                if numbered[x]:
                    continue
                if x not in best or through < best[x]:
                    best[x] = through
                    heapq.heappush(heap, (through, x))
        reached = [w for w, b in best.items() if b < (1, labels[w])]
        for w in sorted(reached):
            labels[w] = labels[w] + (number,)
            if not G.has_edge(v, w):
                fill.append((min(v, w), max(v, w)))
    order = order_rev[::-1]
    return order, sorted(fill)


def _madj_sets(G: Graph) -> list[tuple[int, tuple[int, ...]]]:
    order, fill = minimal_ordering(G)
    H = Graph(G.n, list(G.edges()) + fill)
    pos = {v: i for i, v in enumerate(order)}
    return [(v, tuple(sorted(w for w in H.neighbors(v) if pos[w] > pos[v]))) for v in order]


# -- separators -----------------------------------------------------------

def _split_candidates(G: Graph, s: tuple[int, ...]) -> list[tuple[int, tuple[int, ...], tuple[int, ...], Separator]]:
    """Full components of G - s, when s is a minimal separator.

    A component C is full when N(C) = s; s is a minimal separator exactly
    when at least two components are full. Non-minimal clique separators are
    skipped because splitting on them leaves redundant atoms.
    """
    sset = set(s)
    rest = [v for v in G.vertices() if v not in sset]
    comps = connected_components(G, rest)
    full = [c for c in comps if G.set_neighbors(c) == sset]
    if len(full) < 2:
        return []
    sep = Separator(tuple(s), tuple(tuple(c) for c in comps))
    return [(len(c), tuple(s), tuple(c), sep) for c in full]


def _best_split(G: Graph):
    """(component, its separator, the separator record) or None.

    Candidates are the clique minimal separators among the madj sets. The
    smallest full component wins; ties go to the lexicographically smallest
    separator, then component.
    """
    cands = []
    seen = set()
    for _, s in _madj_sets(G):
        if not s or s in seen:
            continue
        seen.add(s)
        if not is_clique(G, s):
            continue
        cands.extend(_split_candidates(G, s))
    if not cands:
        return None
    size, boundary, comp, sep = min(cands, key=lambda c: (c[0], c[1], c[2]))
    return comp, boundary, sep


def find_clique_separator(G: Graph) -> Separator | None:
    if len(connected_components(G)) > 1:
        raise GraphError("graph must be connected")
    best = _best_split(G)
    if best is None:
        return None
    return best[2]


def decompose(G: Graph) -> DecompTree:
    """Recursively split along clique separators until only atoms remain.

    For the chosen component C with boundary S = N(C), the left piece is
    G[C + S] and the right piece is G - C; both stay connected because S is a
    clique.
    """
    comps = connected_components(G)
    if len(comps) > 1:
        raise GraphError(f"graph must be connected; components: {comps}")
    return DecompTree(_decompose(G, list(G.vertices())), G.n)


def _decompose(G: Graph, host_ids: list[int]) -> Node:
    best = _best_split(G) if G.n > 1 else None
    if best is None:
        return Atom(tuple(host_ids), G)
    comp, boundary, _ = best
    left_set = sorted(set(comp) | set(boundary))
    right_set = sorted(set(G.vertices()) - set(comp))
    lg, lback = induced_subgraph(G, left_set)
    rg, rback = induced_subgraph(G, right_set)
    return Split(
        tuple(host_ids[v] for v in boundary),
        _decompose(lg, [host_ids[v] for v in lback]),
        _decompose(rg, [host_ids[v] for v in rback]),
    )


def reassemble(T: DecompTree) -> Graph:
    """Glue the atoms back together, checking the tree's consistency."""
    _check_node(T.root)
    atoms = T.atoms()
    covered = set()
    edges = set()
    for a in atoms:
        if a.graph.n != len(a.vertices) or list(a.vertices) != sorted(set(a.vertices)):
            raise DecompositionError(f"atom {a.vertices} does not match its graph")
        covered.update(a.vertices)
        edges.update((a.vertices[u], a.vertices[v]) for u, v in a.graph.edges())
    if covered != set(range(T.n)):
        raise DecompositionError("atoms do not cover the host vertex set")
    G = Graph(T.n, edges)
    for sp in T.splits():
        if not is_clique(G, sp.separator):
            raise DecompositionError(f"separator {sp.separator} is not a clique")
    return G


def _check_node(node: Node) -> None:
    if isinstance(node, Atom):
        return
    shared = set(node.left.vertices) & set(node.right.vertices)
    if shared != set(node.separator):
        raise DecompositionError(
            f"separator {node.separator} differs from the overlap {sorted(shared)}"
        )
    _check_node(node.left)
    _check_node(node.right)


def has_clique_separator_bruteforce(G: Graph) -> bool:
    """Exhaustive check: does some clique disconnect G? Test oracle for small graphs."""
    cliques = [()]
    # grow cliques vertex by vertex in increasing order
    frontier = [((v,), G.masks[v]) for v in G.vertices()]
    while frontier:
        nxt = []
        for cl, common in frontier:
            cliques.append(cl)
            for w in G.neighbors(cl[-1]):
                if w > cl[-1] and common >> w & 1:
                    nxt.append((cl + (w,), common & G.masks[w]))
        frontier = nxt
    for cl in cliques:
        rest = [v for v in G.vertices() if v not in set(cl)]
        if len(connected_components(G, rest)) > 1:
            return True
    return False


def tree_from_json(data: dict) -> DecompTree:
    def build(d) -> Node:
        if "atom" in d:
            vs = tuple(d["atom"])
            idx = {v: i for i, v in enumerate(vs)}
            return Atom(vs, Graph(len(vs), [(idx[u], idx[v]) for u, v in d["edges"]]))
        return Split(tuple(d["separator"]), build(d["left"]), build(d["right"]))

    return DecompTree(build(data["tree"]), data["n"])


def tree_to_text(T: DecompTree) -> str:
    return json.dumps(T.to_json(), indent=2) + "\n"


def reassembled_text(T: DecompTree) -> str:
    return format_graph(reassemble(T))
