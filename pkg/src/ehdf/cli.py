"""Batch command line: recognise, decompose, generate, k-expression tools, geodetic checks.

Exit codes: 0 verdict true (or success), 1 verdict false, 2 usage or parse
error, 3 an exponential search refused to run past its guard, 4 the two
geodetic oracles disagreed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import tempfile
import time

from . import __version__
from .cliquesep import decompose
from .corpus import (
    DEFAULT_SEED,
    random_birdcage_split_spec,
    random_split_graph,
)
from .cwexpr import (
    ExpressionError,
    evaluate,
    kexpr_birdcage,
    kexpr_clique,
    kexpr_cycle,
    kexpr_path,
    kexpr_trivial,
    parse_kexpr,
    serialize_kexpr,
    verify,
    width,
)
from .detect import DEFAULT_GUARD, find_diamond, is_in_class_G
from .geodetic import classify_diam2, diameter, is_geodetic_counting, is_geodetic_layered, petersen, plesnik_stemple
from .graph import (
    GraphError,
    GuardExceeded,
    complete_graph,
    connected_components,
    cycle_graph,
    format_graph,
    induced_subgraph,
    is_clique,
    parse_graph,
    path_graph,
)
from .menagerie import (
    BirdcageSpec,
    BirdcageSplitSpec,
    SpecError,
    build_birdcage,
    build_birdcage_split,
    hat_construction,
)

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_GUARD, EXIT_CONTRADICTION = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _load_graph(path: str):
    data = _read_bytes(path)
    return parse_graph(data.decode("utf-8")), hashlib.sha256(data).hexdigest()


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ehdf-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Run:
    """Collects the report for one command."""

    def __init__(self, args):
        self.args = args
        self.report: dict = {
            "command": args.argv_echo,
            "version": __version__,
        }
        self.t0 = time.perf_counter()
        self.report_to_stderr = False

    def artifact(self, text: str, suffix_out: str | None = None) -> None:
        """Write the main artifact to --out, or to stdout (report then goes to stderr)."""
        if self.args.out:
            path = self.args.out if suffix_out is None else self.args.out + suffix_out
            write_atomic(path, text)
            self.report.setdefault("outputs", []).append(path)
        elif suffix_out is None:
            sys.stdout.write(text)
            self.report_to_stderr = True

    def finish(self, code: int) -> int:
        if self.args.timing:
            self.report["elapsed_s"] = round(time.perf_counter() - self.t0, 6)
        stream = sys.stderr if self.report_to_stderr else sys.stdout
        if self.args.format == "text":
            for k, v in self.report.items():
                stream.write(f"{k}: {json.dumps(v, sort_keys=True)}\n")
        else:
            stream.write(json.dumps(self.report, sort_keys=True, indent=2) + "\n")
        return code


# -- commands ---------------------------------------------------------------------

def recognize_graph(G, guard: int | None = DEFAULT_GUARD) -> dict:
    """Decompose along clique separators and test each atom.

    Diamonds can straddle a clique separator (two triangles on a common edge),
    so the diamond test runs on the whole graph; holes never cross a clique
    separator, so the even-hole test runs per atom.
    """
    out: dict = {"n": G.n, "m": G.m, "atoms": []}
    d = find_diamond(G)
    witness = d.to_json() if d else None
    member = d is None
    for comp in connected_components(G):
        sub, back = induced_subgraph(G, comp)
        for atom in decompose(sub).atoms():
            host = [back[v] for v in atom.vertices]
            ag = atom.graph
            if is_clique(ag, ag.vertices()):
                e = kexpr_clique(ag.n)
                kind = "clique"
            else:
                e = kexpr_trivial(ag)
                kind = "trivial"
            entry = {
                "vertices": host,
                "size": ag.n,
                "expression": kind,
                "expression_width": width(e),
            }
            if member:
                verdict = is_in_class_G(ag, guard)
                entry["member"] = verdict.member
                if not verdict.member:
                    member = False
                    w = verdict.witness.to_json()
                    key = "cycle" if "cycle" in w else "vertices"
                    w[key] = [host[v] for v in w[key]]
                    if "missing" in w:
                        w["missing"] = [host[v] for v in w["missing"]]
                    witness = w
            out["atoms"].append(entry)
    out["member"] = member
    out["witness"] = witness
    return out


def cmd_recognize(args) -> int:
    run = Run(args)
    G, digest = _load_graph(args.graph)
    run.report["input_sha256"] = digest
    res = recognize_graph(G, args.guard)
    run.report.update(res)
    return run.finish(EXIT_TRUE if res["member"] else EXIT_FALSE)


def cmd_decompose(args) -> int:
    run = Run(args)
    G, digest = _load_graph(args.graph)
    run.report["input_sha256"] = digest
    comps = connected_components(G)
    if len(comps) > 1:
        raise UsageError(f"graph is disconnected; components: {comps}")
    T = decompose(G)
    fmt = args.tree_format or ("dot" if args.format == "dot" else "json")
    text = T.to_dot() if fmt == "dot" else json.dumps(T.to_json(), sort_keys=True) + "\n"
    run.artifact(text)
    run.report["atoms"] = [{"vertices": list(a.vertices), "size": len(a.vertices)} for a in T.atoms()]
    run.report["separators"] = [list(s.separator) for s in T.splits()]
    return run.finish(EXIT_TRUE)


def _int_list(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x.strip()]


def cmd_generate(args) -> int:
    run = Run(args)
    rng = random.Random(args.seed)
    fam = args.family
    roles: dict = {"family": fam, "seed": args.seed}
    spec_json = None
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            spec_json = json.load(fh)
    if fam == "birdcage":
        if spec_json is not None:
            spec = BirdcageSpec.from_json(spec_json)
        else:
            if args.lengths is None:
                raise UsageError("birdcage needs --lengths (or --spec)")
            lens = _int_list(args.lengths)
            spec = BirdcageSpec(args.floor or len(lens), tuple(lens), args.parity)
        bc = build_birdcage(spec)
        G = bc.graph
        roles.update(spec=spec.to_json(), **bc.roles())
    elif fam == "birdcage-split":
        if spec_json is not None:
            spec = BirdcageSplitSpec.from_json(spec_json)
        else:
            spec = random_birdcage_split_spec(
                rng, args.clique_size or 5, args.hooks or 4, args.max_len or 6
            )
        bs = build_birdcage_split(spec)
        G = bs.graph
        roles.update(spec=spec.to_json(), **bs.roles())
    elif fam in ("split-graph", "hat"):
        sg = random_split_graph(rng, args.clique_size or 5, args.hooks or 5)
        roles.update(clique=list(sg.clique), independent=list(sg.independent), cross_edges=[list(e) for e in sg.edges])
        if fam == "hat":
            G, emb = hat_construction(sg)
            roles["embedding"] = {str(k): v for k, v in emb.items()}
        else:
            G = sg.graph
    elif fam == "petersen":
        G = petersen()
    elif fam == "plesnik-stemple":
        n = args.n or 4
        f = _int_list(args.f) if args.f else [rng.randint(0, 2) for _ in range(n)]
        if len(f) != n:
            raise UsageError(f"--f needs {n} values")
        G = plesnik_stemple(n, f)
        roles.update(n=n, f=f)
    elif fam in ("cycle", "path", "clique"):
        if not args.n:
            raise UsageError(f"{fam} needs --n")
        G = {"cycle": cycle_graph, "path": path_graph, "clique": complete_graph}[fam](args.n)
    else:
        raise UsageError(f"unknown family {fam!r}")
    run.artifact(format_graph(G))
    run.artifact(json.dumps(roles, sort_keys=True, indent=2) + "\n", suffix_out=".roles.json")
    run.report.update(family=fam, n=G.n, m=G.m, seed=args.seed)
    return run.finish(EXIT_TRUE)


def _load_expr(path: str):
    data = _read_bytes(path)
    return parse_kexpr(data.decode("utf-8")), hashlib.sha256(data).hexdigest()


def cmd_kexpr(args) -> int:
    run = Run(args)
    op = args.op
    if op == "build":
        fam = args.family
        if fam == "birdcage":
            lens = _int_list(args.lengths or "")
            e = kexpr_birdcage(BirdcageSpec(len(lens), tuple(lens)))
        elif fam == "trivial":
            G, _ = _load_graph(args.graph)
            e = kexpr_trivial(G)
        else:
            e = {"clique": kexpr_clique, "path": kexpr_path, "cycle": kexpr_cycle}[fam](args.n)
        run.artifact(serialize_kexpr(e) + "\n")
        run.report.update(width=width(e))
        return run.finish(EXIT_TRUE)
    e, digest = _load_expr(args.expr)
    run.report["input_sha256"] = digest
    if op == "parse":
        run.artifact(serialize_kexpr(e) + "\n")
        return run.finish(EXIT_TRUE)
    if op == "width":
        run.report["width"] = width(e)
        return run.finish(EXIT_TRUE)
    if op == "eval":
        lg = evaluate(e)
        run.artifact(format_graph(lg.graph))
        names = {nm: i for i, nm in enumerate(lg.names)}
        run.artifact(json.dumps({"names": names, "labels": list(lg.labels)}, sort_keys=True) + "\n", ".names.json")
        run.report.update(n=lg.graph.n, m=lg.graph.m, width=width(e), names=names)
        return run.finish(EXIT_TRUE)
    if op == "verify":
        G, gd = _load_graph(args.graph)
        run.report["graph_sha256"] = gd
        name_map = None
        if args.names:
            with open(args.names, encoding="utf-8") as fh:
                raw = json.load(fh)
            # file maps expression names to vertex ids
            name_map = {int(v): k for k, v in raw.items()}
        res = verify(e, G, name_map)
        run.report.update(verified=res.ok, kind=res.kind, detail=res.detail)
        return run.finish(EXIT_TRUE if res.ok else EXIT_FALSE)
    raise UsageError(f"unknown kexpr operation {op!r}")


def cmd_geodetic(args) -> int:
    run = Run(args)
    G, digest = _load_graph(args.graph)
    run.report["input_sha256"] = digest
    comps = connected_components(G)
    if len(comps) > 1:
        raise UsageError(f"graph is disconnected; components: {comps}")
    a = is_geodetic_counting(G)
    b = is_geodetic_layered(G)
    run.report["counting"] = a.to_json()
    run.report["layered"] = b.to_json()
    if a.verdict != b.verdict:
        run.report["error"] = "the two geodetic oracles disagree"
        return run.finish(EXIT_CONTRADICTION)
    run.report["geodetic"] = a.verdict
    if args.op == "classify":
        if a.verdict and G.n > 1 and diameter(G) == 2:
            run.report["classification"] = classify_diam2(G).to_json()
        else:
            run.report["classification"] = None
            run.report["note"] = "classification applies to geodetic graphs of diameter 2"
    return run.finish(EXIT_TRUE if a.verdict else EXIT_FALSE)


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")
    common.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="vertex guard for exponential searches")
    common.add_argument("--format", choices=["json", "dot", "text"], default="json")
    common.add_argument("--out", help="write the artifact here (atomically)")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    p = argparse.ArgumentParser(prog="ehdf", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ehdf {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("recognize", parents=[common], help="class membership via clique-separator atoms")
    r.add_argument("graph")
    r.set_defaults(func=cmd_recognize)

    d = sub.add_parser("decompose", parents=[common], help="clique-separator decomposition tree")
    d.add_argument("graph")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--dot", dest="tree_format", action="store_const", const="dot")
    g.add_argument("--json", dest="tree_format", action="store_const", const="json")
    d.set_defaults(func=cmd_decompose)

    gen = sub.add_parser("generate", parents=[common], help="generate a graph family")
    gen.add_argument(
        "family",
        choices=["birdcage", "birdcage-split", "split-graph", "hat", "petersen", "plesnik-stemple", "cycle", "path", "clique"],
    )
    gen.add_argument("--spec", help="JSON spec file")
    gen.add_argument("--floor", type=int)
    gen.add_argument("--lengths", help="comma-separated path lengths")
    gen.add_argument("--parity", choices=["odd", "even"])
    gen.add_argument("--clique-size", type=int)
    gen.add_argument("--hooks", type=int, help="max hooks / independent vertices")
    gen.add_argument("--max-len", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--f", help="comma-separated subdivision weights")
    gen.set_defaults(func=cmd_generate)

    k = sub.add_parser("kexpr", help="k-expression tools")
    ksub = k.add_subparsers(dest="op", required=True)
    for op in ("eval", "width", "parse"):
        kp = ksub.add_parser(op, parents=[common])
        kp.add_argument("expr")
        kp.set_defaults(func=cmd_kexpr)
    kv = ksub.add_parser("verify", parents=[common])
    kv.add_argument("expr")
    kv.add_argument("graph")
    kv.add_argument("--names", help="JSON object mapping expression names to vertex ids")
    kv.set_defaults(func=cmd_kexpr)
    kb = ksub.add_parser("build", parents=[common])
    kb.add_argument("family", choices=["clique", "path", "cycle", "birdcage", "trivial"])
    kb.add_argument("--n", type=int)
    kb.add_argument("--lengths")
    kb.add_argument("--graph")
    kb.set_defaults(func=cmd_kexpr)

    geo = sub.add_parser("geodetic", help="geodetic checks")
    gsub = geo.add_subparsers(dest="op", required=True)
    for op in ("check", "classify"):
        gp = gsub.add_parser(op, parents=[common])
        gp.add_argument("graph")
        gp.set_defaults(func=cmd_geodetic)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    args.argv_echo = argv
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"ehdf: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (GraphError, ExpressionError, SpecError, UsageError, ValueError, OSError) as exc:
        print(f"ehdf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
