"""k-expressions: the four clique-width composers, plus cut-rank and rank-width.

An expression is a tree of :class:`Create`, :class:`Eta`, :class:`Rho` and
:class:`Union` nodes. Evaluation yields a :class:`LabeledGraph` whose
vertices appear in left-to-right leaf order.

Text grammar (whitespace insignificant)::

    expr := "v(" INT "," NAME ")"
          | "eta(" INT "," INT "," expr ")"
          | "rho(" INT "," INT "," expr ")"
          | "(" expr "+" expr ")"
    NAME := [a-z][a-z0-9_]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
import typing
from typing import Mapping, Sequence

from .graph import Graph, GuardExceeded, bits, to_mask


class ExpressionError(ValueError):
    """Structurally or semantically invalid expression."""


class ParseError(ExpressionError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_NAME = re.compile(r"[a-z][a-z0-9_]*\Z")


@dataclass(frozen=True)
class Create:
    label: int
    name: str

    def __post_init__(self):
        if self.label < 1:
            raise ExpressionError(f"labels must be positive, got {self.label}")
        if not _NAME.match(self.name):
            raise ExpressionError(f"bad vertex name {self.name!r}")


@dataclass(frozen=True)
class Eta:
    i: int
    j: int
    child: "KExpression"

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise ExpressionError("labels must be positive")
        if self.i == self.j:
            raise ExpressionError(f"eta needs two distinct labels, got eta({self.i},{self.j})")


@dataclass(frozen=True)
class Rho:
    i: int
    j: int
    child: "KExpression"

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise ExpressionError("labels must be positive")


@dataclass(frozen=True)
class Union:
    """Disjoint union of two labelled graphs."""

    left: "KExpression"
    right: "KExpression"


KExpression = typing.Union[Create, Eta, Rho, Union]


# short constructors, mainly for tests and builders
def v(label: int, name: str) -> Create:
    return Create(label, name)


def eta(i: int, j: int, child: KExpression) -> Eta:
    return Eta(i, j, child)


def rho(i: int, j: int, child: KExpression) -> Rho:
    return Rho(i, j, child)


def union(left: KExpression, right: KExpression) -> Union:
    return Union(left, right)


def union_all(parts: Sequence[KExpression]) -> KExpression:
    acc = parts[0]
    for p in parts[1:]:
        acc = Union(acc, p)
    return acc


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: tuple[int, ...]
    names: tuple[str, ...]

    def index(self) -> dict[str, int]:
        return {nm: i for i, nm in enumerate(self.names)}


def _postorder(e: KExpression):
    """Iterative post-order traversal (expressions can be deep)."""
    stack = [(e, False)]
    while stack:
        node, done = stack.pop()
        if done or isinstance(node, Create):
            yield node
            continue
        stack.append((node, True))
        if isinstance(node, Union):
            stack.append((node.right, False))
            stack.append((node.left, False))
        else:
            stack.append((node.child, False))


def evaluate(e: KExpression) -> LabeledGraph:
    """Evaluate an expression; duplicate vertex names are rejected."""
    # each partial result: (names, labels, edge set over local indices)
    results: list[tuple[list[str], list[int], set[tuple[int, int]]]] = []
    for node in _postorder(e):
        if isinstance(node, Create):
            results.append(([node.name], [node.label], set()))
        elif isinstance(node, Union):
            rn, rl, re_ = results.pop()
            ln, ll, le = results.pop()
            clash = set(ln) & set(rn)
            if clash:
                raise ExpressionError(f"duplicate vertex names in union: {sorted(clash)}")
            off = len(ln)
            le |= {(a + off, b + off) for a, b in re_}
            results.append((ln + rn, ll + rl, le))
        elif isinstance(node, Eta):
            names, labels, edges = results[-1]
            li = [k for k, lab in enumerate(labels) if lab == node.i]
            lj = [k for k, lab in enumerate(labels) if lab == node.j]
            for a in li:
                for b in lj:
                    edges.add((min(a, b), max(a, b)))
        else:
            names, labels, edges = results[-1]
            for k, lab in enumerate(labels):
                if lab == node.i:
                    labels[k] = node.j
    (names, labels, edges), = results
    return LabeledGraph(Graph(len(names), edges), tuple(labels), tuple(names))


# the spec-facing name
eval_kexpr = evaluate


def width(e: KExpression) -> int:
    """Largest label mentioned anywhere in the expression."""
    w = 0
    for node in _postorder(e):
        if isinstance(node, Create):
            w = max(w, node.label)
        elif isinstance(node, (Eta, Rho)):
            w = max(w, node.i, node.j)
    return w


def leaves(e: KExpression) -> list[Create]:
    return [node for node in _postorder(e) if isinstance(node, Create)]


def default_names(n: int) -> dict[int, str]:
    return {i: f"v{i}" for i in range(n)}


@dataclass(frozen=True)
class Verification:
    """Outcome of :func:`verify`; truthy iff the graphs match exactly."""

    ok: bool
    kind: str  # "ok" | "name_mismatch" | "edge_mismatch"
    detail: str = ""

    def __bool__(self):
        return self.ok


def verify(e: KExpression, G: Graph, name_map: Mapping[int, str] | None = None) -> Verification:
    """Exact equality (not isomorphism) of eval(e) with G under ``name_map``.

    ``name_map`` sends each vertex of G to the expression name that must
    denote it; by default vertex i is called ``v<i>``.
    """
    if name_map is None:
        name_map = default_names(G.n)
    lg = evaluate(e)
    missing_names = [x for x in G.vertices() if x not in name_map]
    if missing_names:
        return Verification(False, "name_mismatch", f"no name for vertices {missing_names}")
    expected = {name_map[x] for x in G.vertices()}
    if len(expected) != G.n:
        return Verification(False, "name_mismatch", "name map is not injective on V(G)")
    got = set(lg.names)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        return Verification(False, "name_mismatch", f"missing {missing}, unexpected {extra}")
    idx = lg.index()
    for x in G.vertices():
        for y in range(x + 1, G.n):
            if G.has_edge(x, y) != lg.graph.has_edge(idx[name_map[x]], idx[name_map[y]]):
                what = "missing" if G.has_edge(x, y) else "extra"
                return Verification(False, "edge_mismatch", f"{what} edge {x}-{y}")
    return Verification(True, "ok")


# -- builders --------------------------------------------------------------

def kexpr_clique(n: int) -> KExpression:
    """K_n with labels {1, 2}."""
    if n < 1:
        raise ValueError("n must be positive")
    e: KExpression = Create(1, "v0")
    for k in range(1, n):
        e = Rho(2, 1, Eta(1, 2, Union(e, Create(2, f"v{k}"))))
    return e


def kexpr_path(n: int) -> KExpression:
    """P_n (vertices v0-v1-...); label 1 settled, 2 the current end, 3 incoming."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return Create(1, "v0")
    if n == 2:
        return Eta(1, 2, Union(Create(1, "v0"), Create(2, "v1")))
    e: KExpression = Create(2, "v0")
    for k in range(1, n):
        e = Rho(3, 2, Rho(2, 1, Eta(2, 3, Union(e, Create(3, f"v{k}")))))
    return e


def kexpr_cycle(n: int) -> KExpression:
    """C_n: a path whose first vertex keeps label 4, closed by a final eta."""
    if n < 3:
        raise ValueError("a cycle needs n >= 3")
    e: KExpression = Eta(4, 2, Union(Create(4, "v0"), Create(2, "v1")))
    for k in range(2, n):
        e = Rho(3, 2, Rho(2, 1, Eta(2, 3, Union(e, Create(3, f"v{k}")))))
    return Eta(2, 4, e)


def kexpr_trivial(G: Graph, name_map: Mapping[int, str] | None = None) -> KExpression:
    """One label per vertex: width n, always correct."""
    if G.n == 0:
        raise ValueError("the empty graph has no expression")
    names = name_map or default_names(G.n)
    e = union_all([Create(x + 1, names[x]) for x in G.vertices()])
    for x, y in G.edges():
        e = Eta(x + 1, y + 1, e)
    return e


# labels used by kexpr_birdcage
_SETTLED, _DEAD, _END, _NEW, _HOOK = 1, 2, 3, 4, 5


def kexpr_birdcage(spec) -> KExpression:
    """Bounded-label expression for a plain birdcage.

    The hook keeps its own label throughout. Each path is grown from the hook
    towards its floor vertex with an end label and an incoming label; finished
    internal vertices are parked on a dead label. A floor vertex arrives on
    the incoming label, is joined to the settled floor and to its path end,
    then is settled. Five labels suffice whatever the floor size or path
    lengths. Vertex names match :func:`menagerie.build_birdcage` ids.
    """
    from .menagerie import build_birdcage

    bc = build_birdcage(spec)

    def nm(x):
        return f"v{x}"

    e: KExpression = Create(_HOOK, nm(bc.hook))
    for path in bc.paths:
        # path runs floor -> ... -> hook
        floor_vertex, internals = path[0], path[1:-1]
        if not internals:
            e = Union(e, Create(_NEW, nm(floor_vertex)))
            e = Eta(_NEW, _SETTLED, Eta(_NEW, _HOOK, e))
            e = Rho(_NEW, _SETTLED, e)
            continue
        first = internals[-1]  # the hook's neighbour
        e = Eta(_END, _HOOK, Union(e, Create(_END, nm(first))))
        for x in reversed(internals[:-1]):
            e = Eta(_END, _NEW, Union(e, Create(_NEW, nm(x))))
            e = Rho(_NEW, _END, Rho(_END, _DEAD, e))
        e = Eta(_END, _NEW, Union(e, Create(_NEW, nm(floor_vertex))))
        e = Eta(_NEW, _SETTLED, e)
        e = Rho(_NEW, _SETTLED, Rho(_END, _DEAD, e))
    return e


# -- text form ---------------------------------------------------------------

def serialize_kexpr(e: KExpression) -> str:
    out: list[str] = []
    for node in _postorder(e):
        if isinstance(node, Create):
            out.append(f"v({node.label},{node.name})")
        elif isinstance(node, Union):
            r = out.pop()
            l = out.pop()
            out.append(f"({l}+{r})")
        else:
            c = out.pop()
            op = "eta" if isinstance(node, Eta) else "rho"
            out.append(f"{op}({node.i},{node.j},{c})")
    return out[0]


_TOKEN = re.compile(r"\s*(?:(eta|rho|v)\b|(\d+)|([a-z][a-z0-9_]*)|([(),+]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kw, num, name, punct = m.groups()
        if kw:
            toks.append(("kw", kw, start))
        elif num:
            toks.append(("int", num, start))
        elif name:
            toks.append(("name", name, start))
        else:
            toks.append((punct, punct, start))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


def parse_kexpr(text: str) -> KExpression:
    """Parse the text grammar; errors carry the offending position."""
    toks = _tokenize(text)
    i = 0

    def expect(kind: str) -> tuple[str, str, int]:
        nonlocal i
        t = toks[i]
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1] or 'end of input'!r}", t[2])
        i += 1
        return t

    def integer() -> int:
        t = expect("int")
        return int(t[1])

    # explicit stack machine so deep expressions do not hit the recursion limit
    def parse_expr() -> KExpression:
        nonlocal i
        # frames: ("eta"/"rho", i, j, pos) or ("union-left",) / ("union-right", left)
        frames: list = []
        while True:
            t = toks[i]
            if t[0] == "kw" and t[1] == "v":
                i += 1
                expect("(")
                lab = integer()
                expect(",")
                nt = toks[i]
                if nt[0] not in ("name", "kw"):
                    raise ParseError("expected a vertex name", nt[2])
                i += 1
                expect(")")
                if lab < 1:
                    raise ParseError("labels must be positive", t[2])
                node: KExpression = Create(lab, nt[1])
            elif t[0] == "kw":
                i += 1
                expect("(")
                a = integer()
                expect(",")
                b = integer()
                expect(",")
                if t[1] == "eta" and a == b:
                    raise ParseError(f"eta needs two distinct labels, got eta({a},{b})", t[2])
                if a < 1 or b < 1:
                    raise ParseError("labels must be positive", t[2])
                frames.append((t[1], a, b))
                continue
            elif t[0] == "(":
                i += 1
                frames.append(("union-left",))
                continue
            else:
                raise ParseError(f"unexpected token {t[1] or 'end of input'!r}", t[2])
            # reduce completed node against pending frames
            while frames:
                f = frames[-1]
                if f[0] in ("eta", "rho"):
                    expect(")")
                    frames.pop()
                    node = (Eta if f[0] == "eta" else Rho)(f[1], f[2], node)
                elif f[0] == "union-left":
                    expect("+")
                    frames[-1] = ("union-right", node)
                    break
                else:
                    expect(")")
                    frames.pop()
                    node = Union(f[1], node)
            else:
                return node

    result = parse_expr()
    if toks[i][0] != "eof":
        raise ParseError(f"trailing input {toks[i][1]!r}", toks[i][2])
    return result


# -- cut-rank and rank-width -------------------------------------------------

def _gf2_rank(rows: list[int]) -> int:
    rank = 0
    rows = [r for r in rows if r]
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
    return rank


def cutrank(G: Graph, A) -> int:
    """GF(2) rank of the biadjacency matrix between A and V - A."""
    amask = to_mask(A) if not isinstance(A, int) else A
    comp = ((1 << G.n) - 1) & ~amask
    return _gf2_rank([G.masks[x] & comp for x in bits(amask)])


def rankwidth_exact(G: Graph, guard: int = 10):
    """Exact rank-width by dynamic programming over vertex subsets.

    A branch decomposition rooted at an edge is a binary tree on the leaves;
    f(X) = min over splits X = Y + Z of max(cutrank Y, cutrank Z, f(Y), f(Z)).
    Returns ``(width, tree)`` where ``tree`` is a nested tuple of vertices.
    """
    n = G.n
    if n < 2:
        raise ValueError("rank-width needs at least 2 vertices")
    if n > guard:
        raise GuardExceeded(f"{n} vertices exceeds the rank-width guard {guard}")
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def cr(mask: int) -> int:
        return cutrank(G, mask)

    @lru_cache(maxsize=None)
    def best(mask: int):
        if mask & (mask - 1) == 0:
            return 0, mask.bit_length() - 1
        low = mask & -mask
        rest = mask ^ low
        result = None
        # Y always contains the lowest vertex, so each split is seen once
        sub = rest
        while True:
            y = low | sub
            z = mask ^ y
            if z:
                wy, ty = best(y)
                wz, tz = best(z)
                w = max(cr(y), cr(z), wy, wz)
                if result is None or w < result[0]:
                    result = (w, (ty, tz))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        return result

    w, tree = best(full)
    return w, tree


def branch_width_of_tree(G: Graph, tree) -> int:
    """Width of a rooted binary tree (nested tuples) read as a branch decomposition."""
    worst = 0

    def leaves_of(t) -> int:
        nonlocal worst
        if isinstance(t, int):
            m = 1 << t
        else:
            m = leaves_of(t[0]) | leaves_of(t[1])
        worst = max(worst, cutrank(G, m))
        return m

    full = leaves_of(tree)
    if full != (1 << G.n) - 1:
        raise ValueError("tree leaves do not cover the vertex set")
    return worst
