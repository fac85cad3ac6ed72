"""Seeded random generators and the labelled test corpus.

Everything here takes an explicit :class:`random.Random` (or a seed) so that
corpora are reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .cliquesep import decompose
from .cwexpr import Create, Eta, KExpression, Rho, Union
from .detect import is_in_class_G
from .geodetic import friendship_graph, petersen, plesnik_stemple
from .graph import (
    Graph,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    induced_subgraph,
    is_connected,
    path_graph,
    star_graph,
)
from .menagerie import (
    EVEN,
    ODD,
    BirdcageSpec,
    BirdcageSplitSpec,
    HookSpec,
    SplitGraph,
    build_birdcage,
    build_birdcage_split,
    extract_link,
    join_birdcages,
    replace_path_with_link,
)

DEFAULT_SEED = 20240601


def _rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(DEFAULT_SEED if seed_or_rng is None else seed_or_rng)


def random_length(rng: random.Random, parity: str, lo: int, hi: int) -> int:
    choices = [k for k in range(lo, hi + 1) if (k % 2 == 1) == (parity == ODD)]
    return rng.choice(choices)


def random_birdcage_spec(rng, max_floor: int = 5, max_len: int = 6) -> BirdcageSpec:
    rng = _rng(rng)
    f = rng.randint(1, max_floor)
    parity = rng.choice([ODD, EVEN])
    if parity == ODD and rng.random() < 0.15:
        return BirdcageSpec(f, (1,) * f, ODD)
    lens = [random_length(rng, parity, 2, max_len) for _ in range(f)]
    if parity == ODD and rng.random() < 0.4:
        lens[rng.randrange(f)] = 1
    return BirdcageSpec(f, tuple(lens), parity)


def random_birdcage_split_spec(
    rng, max_clique: int = 5, max_hooks: int = 4, max_len: int = 6
) -> BirdcageSplitSpec:
    rng = _rng(rng)
    c = rng.randint(1, max_clique)
    hooks = []
    for _ in range(rng.randint(1, max_hooks)):
        parity = rng.choice([ODD, EVEN])
        floor = sorted(rng.sample(range(c), rng.randint(1, c)))
        hooks.append(HookSpec(parity, tuple((v, random_length(rng, parity, 2, max_len)) for v in floor)))
    return BirdcageSplitSpec(c, tuple(hooks))


def random_split_graph(rng, max_clique: int = 5, max_independent: int = 5, p: float = 0.5) -> SplitGraph:
    rng = _rng(rng)
    c = rng.randint(0, max_clique)
    i = rng.randint(0, max_independent)
    if c + i == 0:
        c = 1
    edges = tuple((a, x) for a in range(c) for x in range(i) if rng.random() < p)
    return SplitGraph(c, i, edges)


def random_graph(rng, n: int, p: float) -> Graph:
    rng = _rng(rng)
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(rng, n: int, p: float) -> Graph:
    """G(n, p) conditioned on connectivity by adding a random spanning tree."""
    rng = _rng(rng)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[k], perm[rng.randrange(k)]))) for k in range(1, n)}
    edges |= {e for e in combinations(range(n), 2) if rng.random() < p}
    return Graph(n, edges)


def random_kexpr(rng, max_width: int = 5, max_leaves: int = 40) -> KExpression:
    """A random well-formed expression with distinct names v0, v1, ..."""
    rng = _rng(rng)
    target = rng.randint(1, max_leaves)
    counter = iter(range(target))

    def build(k: int) -> KExpression:
        if k == 1:
            e: KExpression = Create(rng.randint(1, max_width), f"v{next(counter)}")
        else:
            split = rng.randint(1, k - 1)
            e = Union(build(split), build(k - split))
        for _ in range(rng.choice([0, 0, 1, 2])):
            i = rng.randint(1, max_width)
            j = rng.randint(1, max_width)
            if rng.random() < 0.6 and i != j:
                e = Eta(i, j, e)
            else:
                e = Rho(i, j, e)
        return e

    return build(target)


# -- the corpus ------------------------------------------------------------------

@dataclass(frozen=True)
class Item:
    name: str
    graph: Graph
    member: bool | None = None  # membership in the class, when known by construction


def _atoms_of(name: str, G: Graph) -> list[Item]:
    out = []
    if not is_connected(G):
        return out
    for k, a in enumerate(decompose(G).atoms()):
        if a.graph.n >= 3:
            out.append(Item(f"{name}/atom{k}", a.graph, True))
    return out


def class_corpus(seed=None, size: int = 120) -> list[Item]:
    """Connected members of the class: birdcages, splits, glued cages, atoms.

    Random small graphs filtered through the class oracle are mixed in for
    variety.
    """
    rng = _rng(seed)
    items: list[Item] = []
    for k in range(size // 4):
        sp = random_birdcage_spec(rng, max_floor=4, max_len=5)
        items.append(Item(f"birdcage{k}", build_birdcage(sp).graph, True))
    for k in range(size // 4):
        sp = random_birdcage_split_spec(rng, max_clique=4, max_hooks=3, max_len=4)
        g = build_birdcage_split(sp).graph
        items.append(Item(f"split{k}", g, True))
        items.extend(_atoms_of(f"split{k}", g))
    for k in range(size // 8):
        b1 = build_birdcage(random_birdcage_spec(rng, max_floor=3, max_len=4))
        b2 = build_birdcage(random_birdcage_spec(rng, max_floor=3, max_len=4))
        g = join_birdcages(b1, b2, "hook-identify").graph
        items.append(Item(f"hookjoin{k}", g, True))
    # a chorded odd link replacing one path of an odd birdcage
    link_g = Graph(6, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 3), (1, 4)])
    link = extract_link(link_g, [0], [3])
    for f in (2, 3):
        b = build_birdcage(BirdcageSpec(f, (3,) * f))
        items.append(Item(f"replaced{f}", replace_path_with_link(b, 0, link).graph, True))
    tries = 0
    while len(items) < size and tries < 20 * size:
        tries += 1
        g = random_connected_graph(rng, rng.randint(4, 10), rng.uniform(0.05, 0.5))
        if is_in_class_G(g):
            items.append(Item(f"random{tries}", g, True))
    for k in range(3, 8):
        items.append(Item(f"K{k}", complete_graph(k), True))
    items.append(Item("C5", cycle_graph(5), True))
    items.append(Item("C7", cycle_graph(7), True))
    return [it for it in items if is_connected(it.graph)]


def general_corpus(seed=None, size: int = 160, max_n: int = 20) -> list[Item]:
    """Connected graphs of all kinds with n <= max_n (membership unknown)."""
    rng = _rng(seed)
    items = [it for it in class_corpus(rng, size // 2) if it.graph.n <= max_n]
    named = [
        ("petersen", petersen()),
        ("friendship3", friendship_graph(3)),
        ("C4", cycle_graph(4)),
        ("C6", cycle_graph(6)),
        ("P5", path_graph(5)),
        ("star4", star_graph(4)),
    ]
    items += [Item(nm, g) for nm, g in named]
    for k in range(20):
        n = rng.randint(2, 5)
        f = [rng.randint(0, 2) for _ in range(n)]
        g = plesnik_stemple(n, f)
        if g.n <= max_n:
            items.append(Item(f"ps{k}", g))
    while len(items) < size:
        g = random_connected_graph(rng, rng.randint(3, max_n), rng.uniform(0.0, 0.4))
        items.append(Item(f"gnp{len(items)}", g))
    return items


def labelled_recognition_corpus(seed=None) -> list[Item]:
    """30 members and 30 non-members, membership known by construction."""
    rng = _rng(seed)
    members: list[Item] = []
    while len(members) < 10:
        sp = random_birdcage_split_spec(rng, max_clique=4, max_hooks=3, max_len=5)
        g = build_birdcage_split(sp).graph
        if is_connected(g):
            members.append(Item(f"split{len(members)}", g, True))
    for k in range(8):
        members.append(Item(f"birdcage{k}", build_birdcage(random_birdcage_spec(rng, 4, 5)).graph, True))
    atoms = []
    for it in list(members):
        atoms.extend(a for a in _atoms_of(it.name, it.graph) if a.graph.n >= 4)
    members += atoms[:7]
    members += [
        Item("C5", cycle_graph(5), True),
        Item("C9", cycle_graph(9), True),
        Item("K5", complete_graph(5), True),
        Item("P6", path_graph(6), True),
        Item("friendship3", friendship_graph(3), True),
    ]
    members = members[:30]

    non: list[Item] = []
    for k in (4, 6, 8, 10, 12, 14):
        non.append(Item(f"C{k}", cycle_graph(k), False))
    # diamonds glued into odd structures
    diamond = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    for k in range(8):
        sp = random_birdcage_spec(rng, 4, 5)
        b = build_birdcage(sp)
        # hang a diamond on the hook through its degree-3 vertex 0
        g, offs = disjoint_union([b.graph, diamond])
        edges = list(g.edges()) + [(b.hook, offs[1])]
        # identify by contracting: simply add the edge, diamond survives intact
        non.append(Item(f"cage+diamond{k}", Graph(g.n, edges), False))
    for k in range(6):
        c = rng.randint(3, 5)
        # a split graph with an independent vertex seeing two clique vertices
        # gives two triangles on a common clique edge: a diamond
        sg = SplitGraph(c, 2, ((0, 0), (1, 0), (rng.randrange(c), 1)))
        non.append(Item(f"split-diamond{k}", sg.graph, False))
    for k in range(6):
        sp = random_birdcage_split_spec(rng, max_clique=3, max_hooks=2, max_len=4)
        g = build_birdcage_split(sp).graph
        # an even cycle hung on a clique vertex
        h = rng.choice([4, 6, 8])
        cyc = cycle_graph(h)
        u, offs = disjoint_union([g, cyc])
        edges = list(u.edges()) + [(0, offs[1])]
        non.append(Item(f"split+C{h}_{k}", Graph(u.n, edges), False))
    for k in range(4):
        # an odd-parity birdcage with an even path smuggled in: even hole
        f = rng.randint(2, 4)
        lens = [3] * f
        edges = list(build_birdcage(BirdcageSpec(f, tuple(lens))).graph.edges())
        n0 = 1 + f + 2 * f
        # add a length-2 path from floor vertex 0 to the hook (f)
        edges += [(0, n0), (n0, f)]
        non.append(Item(f"mixed-cage{k}", Graph(n0 + 1, edges), False))
    return members + non[:30]


def components_as_items(name: str, G: Graph) -> list[Item]:
    out = []
    for k, comp in enumerate(connected_components(G)):
        sub, _ = induced_subgraph(G, comp)
        out.append(Item(f"{name}/cc{k}", sub))
    return out
