"""Command-line interface.

Exit codes: 0 success, 1 verification failed, 2 invalid input,
3 cap or budget exceeded. Diagnostics go to stderr; results to stdout or
--out.
"""

from __future__ import annotations

import argparse
import sys

from . import embed as emb_mod
from . import formats
from .errors import BudgetExceededError, CapExceededError, FiberDimError, ParseError
from .fiber import build, is_markov_basis, is_minimal, min_markov_basis_size
from .graphs import color
from .lattice import EnumerationLimits
from .solver import (
    SEARCH_BUDGET_EXCEEDED,
    SEARCH_FOUND,
    Effort,
    fdim_bracket,
    fdim_exact_search,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_BUDGET = 3


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_graph(path):
    return formats.parse_edge_list(_read_text(path))


def _limits(args):
    return EnumerationLimits(max_dim=args.max_dim, max_box_volume=args.max_box)


def _cmd_embed(args):
    method = args.method
    if method == "cycle":
        if args.n is None:
            raise ParseError("--method cycle needs --n")
        embedding = emb_mod.embed_cycle(args.n)
        labels = tuple(str(v) for v in range(args.n))
    elif method == "multipartite":
        if not args.sizes:
            raise ParseError("--method multipartite needs --sizes")
        sizes = [int(s) for s in args.sizes.split(",")]
        embedding = emb_mod.embed_complete_multipartite(sizes)
        labels = tuple(str(v) for v in range(sum(sizes)))
    elif method == "product":
        if len(args.graph or []) < 2:
            raise ParseError("--method product needs at least two --graph files")
        parts = []
        label_sets = []
        for path in args.graph:
            g, labels_part = _load_graph(path)
            parts.append(emb_mod.embed_simplex(g))
            label_sets.append(labels_part)
        embedding = emb_mod.embed_product(parts)
        labels = label_sets[0]
        for nxt in label_sets[1:]:
            labels = tuple(f"{a}|{b}" for a in labels for b in nxt)
    else:
        if not args.graph:
            raise ParseError(f"--method {method} needs --graph")
        g, labels = _load_graph(args.graph[0])
        if method == "simplex":
            embedding = emb_mod.embed_simplex(g)
        elif method == "chromatic":
            embedding = emb_mod.embed_chromatic(g, color(g, "exact"))
        elif method == "apex":
            if g.node_count < 2:
                raise ParseError("apex needs at least two nodes")
            v = 0
            if args.apex_node is not None:
                if args.apex_node not in labels:
                    raise ParseError(f"unknown apex node {args.apex_node!r}")
                v = labels.index(args.apex_node)
            sub = g.delete_node(v)
            from .solver import _base_upper

            embedding = emb_mod.embed_apex(g, v, _base_upper(sub, Effort()))
        elif method == "dps":
            n = g.node_count
            d = args.dim if args.dim is not None else max(1, (n - 1).bit_length())
            found = emb_mod.find_dps_point_set(n, d, args.box, budget=args.budget)
            if found is None:
                print(
                    f"no distinct pair-sum set of {n} points in dimension {d}, box {args.box}",
                    file=sys.stderr,
                )
                return EXIT_BUDGET
            embedding = emb_mod.embed_dps(g, found)
        else:
            raise ParseError(f"unknown method {method!r}")
    doc = formats.embedding_document(embedding, labels)
    _write_text(args.out, formats.serialize_document(doc))
    return EXIT_OK


def _cmd_verify(args):
    g, labels = _load_graph(args.graph)
    doc = formats.parse_document(_read_text(args.document))
    if formats.verify_embedding_document(doc, g, labels):
        print("ok: document embeds the graph")
        return EXIT_OK
    print("verification failed: document does not embed the graph", file=sys.stderr)
    return EXIT_VERIFY_FAILED


def _cmd_fdim(args):
    g, _labels = _load_graph(args.graph)
    effort = Effort(
        search_dim2_box=args.box,
        search_budget=args.budget,
    )
    bracket = fdim_bracket(g, effort)
    status = "exact" if bracket.exact else "inexact"
    print(f"lower={bracket.lower} upper={bracket.upper} {status}")
    cert = bracket.lower_certificate
    print(f"lower certificate: {cert.kind}: {cert.detail}")
    if bracket.upper_certificate is not None:
        up = bracket.upper_certificate
        print(
            f"upper certificate: method={up.method_tag} dimension={up.dimension} "
            f"moves={len(up.moves)} points={len(up.vertex_map)}"
        )
    return EXIT_OK


def _cmd_fiber_graph(args):
    polytope = formats.polytope_from_document(formats.parse_document(_read_text(args.polytope)))
    moves = formats.moveset_from_document(formats.parse_document(_read_text(args.moves)))
    fg = build(polytope, moves, _limits(args))
    _write_text(args.out, formats.fiber_graph_to_dot(fg))
    return EXIT_OK


def _cmd_markov(args):
    polytope = formats.polytope_from_document(formats.parse_document(_read_text(args.polytope)))
    limits = _limits(args)
    if args.moves:
        moves = formats.moveset_from_document(formats.parse_document(_read_text(args.moves)))
        report = is_minimal(polytope, moves, limits)
        markov = is_markov_basis(polytope, moves, limits)
        print(f"minimal={'yes' if report.minimal else 'no'}")
        if not report.minimal:
            unused = ", ".join(str(r) for r in report.unused.positive_representatives())
            print(f"unused moves (up to sign): {unused}")
        print(f"markov_basis={'yes' if markov else 'no'}")
    if args.min_size:
        smallest = min_markov_basis_size(polytope, args.size_cap, limits)
        if smallest is None:
            print(f"no Markov basis of size <= {args.size_cap}")
        else:
            print(f"minimum Markov basis size: {smallest}")
    if not args.moves and not args.min_size:
        raise ParseError("markov needs --moves and/or --min-size")
    return EXIT_OK


def _cmd_search_dps(args):
    found = emb_mod.find_dps_point_set(args.n, args.dim, args.box, budget=args.budget)
    if found is None:
        print(f"none: no {args.n}-point distinct pair-sum set in dimension {args.dim}, box {args.box}")
    else:
        print(" ".join("(" + ",".join(map(str, p)) + ")" for p in found.points))
    return EXIT_OK


def _add_limit_flags(sp):
    sp.add_argument("--max-dim", type=int, default=8, help="enumeration dimension cap")
    sp.add_argument("--max-box", type=int, default=200_000, help="bounding-box volume cap")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fiberdim",
        description="Fiber graphs on lattice polytopes: embeddings, Markov bases, "
        "and fiber-dimension brackets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="construct an embedding and write its document")
    p.add_argument("--method", required=True,
                   choices=["simplex", "chromatic", "apex", "cycle", "multipartite", "dps", "product"])
    p.add_argument("--graph", action="append", help="edge-list file ('-' for stdin); repeatable for product")
    p.add_argument("--n", type=int, help="cycle length for --method cycle")
    p.add_argument("--sizes", help="comma-separated class sizes for --method multipartite")
    p.add_argument("--apex-node", help="label of the node to cone over for --method apex")
    p.add_argument("--dim", type=int, help="target dimension for --method dps")
    p.add_argument("--box", type=int, default=3, help="search box for --method dps")
    p.add_argument("--budget", type=int, default=200_000, help="search budget")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("verify", help="re-check an embedding document against a graph")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("document", help="embedding document file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("fdim", help="certified fiber-dimension bracket")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--box", type=int, default=2, help="dimension-2 exhaustive search box")
    p.add_argument("--budget", type=int, default=50_000, help="search budget")
    p.set_defaults(func=_cmd_fdim)

    p = sub.add_parser("fiber-graph", help="build F(P, M) from documents and emit DOT")
    p.add_argument("--polytope", required=True, help="polytope document")
    p.add_argument("--moves", required=True, help="moveset document")
    p.add_argument("--out", help="output file (default stdout)")
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_fiber_graph)

    p = sub.add_parser("markov", help="minimality / Markov-basis checks and minimum-size search")
    p.add_argument("--polytope", required=True, help="polytope document")
    p.add_argument("--moves", help="moveset document")
    p.add_argument("--min-size", action="store_true", help="search for the minimum Markov basis size")
    p.add_argument("--size-cap", type=int, default=10, help="cap on |M| for the search")
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_markov)

    p = sub.add_parser("search-dps", help="exhaustive search for a distinct pair-sum point set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--box", type=int, required=True)
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(func=_cmd_search_dps)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CapExceededError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, FiberDimError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
