# main.py

import argparse
import logging
import sys

import config
from activation import tail_classes
from contributors import enumerate_contributors, enumerate_reduced_nonzero
from emitters import emit, emit_classes
from errors import KirchhoffError, QueryError
from exact_matrix import determinant, permanent, tree_number
from generators import random_signed_graph
from incidence import (
    adjacency_matrix,
    degree_matrix,
    dump_graph,
    incidence_matrix,
    laplacian,
    load_graph,
    signless_laplacian,
)
from kirchhoff_laws import METHODS, SIGNS, full_report, label_edges, transpedance

log = logging.getLogger(__name__)

MATRIX_KINDS = {
    "laplacian": laplacian,
    "signless": signless_laplacian,
    "incidence": incidence_matrix,
    "degree": degree_matrix,
    "adjacency": adjacency_matrix,
}


def setup_logging(verbosity):
    """Routes log records to stderr as '[LEVEL] message'; stdout carries only artifacts."""
    level = {0: config.LOG_LEVEL, 1: "INFO"}.get(verbosity, "DEBUG")
    logging.basicConfig(level=level, format="[%(levelname)s] %(message)s", stream=sys.stderr, force=True)


def parse_pair(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise QueryError(f"--pair expects 'w1,w2', got '{text}'.")
    return parts


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=config.OUTPUT_FORMATS, default=config.DEFAULT_FORMAT, help="Output format")
    common.add_argument("--cap", type=int, default=None, help="Contributor/class cap per query")
    common.add_argument("--perm-max", type=int, default=None, help="Largest permanent size allowed")
    common.add_argument("--threads", type=int, default=None, help="Worker threads for enumeration")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("-g", "--graph", required=True, help="Graph JSON file")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("-s", "--source", required=True, help="Source vertex u1")
    pair.add_argument("-t", "--sink", required=True, help="Sink vertex u2")

    method = argparse.ArgumentParser(add_help=False)
    method.add_argument("--method", choices=METHODS, default="contributor", help="Evaluation method")
    method.add_argument("--sign", choices=SIGNS, default="det", help="Determinant (D) or permanent (P) sign")

    parser = argparse.ArgumentParser(description="Exact Kirchhoff transpedances on signed graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", parents=[common, graph], help="Print a graph matrix")
    p.add_argument("--kind", choices=sorted(MATRIX_KINDS), default="laplacian")

    sub.add_parser("tau", parents=[common, graph], help="Tree number of the (underlying) graph")

    p = sub.add_parser("det", parents=[common, graph], help="Determinant of a graph matrix")
    p.add_argument("--kind", choices=sorted(MATRIX_KINDS), default="laplacian")

    p = sub.add_parser("perm", parents=[common, graph], help="Permanent of a graph matrix")
    p.add_argument("--kind", choices=sorted(MATRIX_KINDS), default="signless")

    p = sub.add_parser("transpedance", parents=[common, graph, pair, method], help="One transpedance value")
    p.add_argument("--pair", required=True, help="Marked vertices 'w1,w2'")

    sub.add_parser("label", parents=[common, graph, pair, method], help="Label every ordered adjacency")

    p = sub.add_parser("verify", parents=[common, graph, pair], help="Check every Kirchhoff law")
    p.add_argument("--method", choices=METHODS, default="contributor")

    p = sub.add_parser("enumerate", parents=[common, graph], help="List contributors or activation classes")
    p.add_argument("-s", "--source", help="Source vertex u1 (reduced enumeration)")
    p.add_argument("-t", "--sink", help="Sink vertex u2 (reduced enumeration)")
    p.add_argument("--pair", help="Marked vertices 'w1,w2' (reduced enumeration)")
    p.add_argument("--classes", action="store_true", help="Emit activation class reports instead")

    p = sub.add_parser("gen", parents=[common], help="Write a random signed graph as Graph JSON")
    p.add_argument("-n", type=int, default=config.GEN_VERTICES, help="Number of vertices")
    p.add_argument("-p", type=float, default=config.GEN_EDGE_PROBABILITY, help="Edge probability")
    p.add_argument("-q", type=float, default=config.GEN_NEGATIVE_PROBABILITY, help="Negative-edge probability")
    p.add_argument("--seed", type=int, default=config.GEN_SEED)
    p.add_argument("-o", "--output", help="Output path (default stdout)")
    return parser


def _matrix(args, G):
    return MATRIX_KINDS[args.kind](G)


def _restriction(args):
    given = [args.source, args.sink, args.pair]
    if not any(given):
        return (), ()
    if not all(given):
        raise QueryError("Reduced enumeration needs --source, --sink and --pair together.")
    return (args.source, args.sink), tuple(parse_pair(args.pair))


def dispatch(args):
    """Runs one subcommand. Returns (artifact text, exit code)."""
    if args.command == "gen":
        G = random_signed_graph(args.n, args.p, args.q, args.seed)
        text = dump_graph(G)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
            log.info("Wrote %r to %s", G, args.output)
            return "", 0
        return text, 0

    G = load_graph(args.graph)
    fmt = args.format

    if args.command == "matrix":
        return emit(_matrix(args, G), fmt), 0
    if args.command == "det":
        return emit(determinant(_matrix(args, G)), fmt), 0
    if args.command == "perm":
        return emit(permanent(_matrix(args, G), max_n=args.perm_max), fmt), 0
    if args.command == "tau":
        L = laplacian(G.underlying()) if G.is_signed_graph else laplacian(G)
        return emit(tree_number(L), fmt), 0

    if args.command == "transpedance":
        w1, w2 = parse_pair(args.pair)
        value = transpedance(G, args.source, args.sink, w1, w2, args.sign, args.method,
                             args.cap, args.threads, args.perm_max)
        return emit(value, fmt), 0
    if args.command == "label":
        labeling = label_edges(G, args.source, args.sink, args.sign, args.method,
                               args.cap, args.threads, args.perm_max)
        return emit(labeling, fmt), 0
    if args.command == "verify":
        report = full_report(G, args.source, args.sink, args.method, args.cap, args.threads)
        return emit(report, fmt), (1 if report.violated else 0)
    if args.command == "enumerate":
        u, w = _restriction(args)
        if args.classes:
            return emit_classes(tail_classes(G, u, w, reduced=True, cap=args.cap), fmt), 0
        if u:
            found = list(enumerate_reduced_nonzero(G, u, w, args.cap))
        else:
            found = list(enumerate_contributors(G, args.cap))
        return emit(found, fmt), 0
    raise QueryError(f"Unknown command '{args.command}'.")


def run(argv=None):
    """
    Command-line entry point.

    Returns:
        0 on success, 1 when verify finds a violation, 2 for invalid input,
        3 for capacity or capability errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    setup_logging(args.verbose)

    try:
        text, code = dispatch(args)
    except KirchhoffError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
