"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 graph outside the supported
classes, 3 verification found a failing check.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .generators import GenSpec
from .graph import (
    Graph,
    GraphError,
    Kind,
    classify,
    edge_laplacian,
    incidence_matrix,
    parse_graph,
    signless_laplacian,
)
from .linalg import RationalMatrix, pseudoinverse_oracle, to_csv, to_json
from .tree import mp_edge_laplacian, mp_incidence, mp_signless_laplacian
from .unicyclic import inv_edge_laplacian, inv_incidence, inv_signless_laplacian
from .verify import describe, render_many, verify_graph, verify_many

EXIT_OK, EXIT_USAGE, EXIT_CLASS, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


FORMULAS = {
    Kind.TREE: {"M": mp_incidence, "Q": mp_signless_laplacian, "S": mp_edge_laplacian},
    Kind.ODD_UNICYCLIC: {"M": inv_incidence, "Q": inv_signless_laplacian, "S": inv_edge_laplacian},
}
BASE_MATRICES = {"M": incidence_matrix, "Q": signless_laplacian, "S": edge_laplacian}


def compute_matrix(g: Graph, which: str, mode: str) -> RationalMatrix:
    """The (pseudo)inverse of M, Q or S, by closed form or by the generic oracle."""
    if mode == "oracle":
        return pseudoinverse_oracle(BASE_MATRICES[which](g))
    gc = classify(g)
    if gc.kind not in FORMULAS:
        raise LookupError(f"no closed form for this graph ({gc.detail}); use --mode oracle")
    return FORMULAS[gc.kind][which](g)


def _load(path: str) -> tuple[Graph, dict | None]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _relabel_note(mapping: dict | None) -> str:
    if not mapping:
        return ""
    return "# relabel: " + " ".join(f"{k}={v}" for k, v in mapping.items()) + "\n"


def cmd_classify(args) -> int:
    g, mapping = _load(args.file)
    sys.stdout.write(_relabel_note(mapping))
    print(describe(g))
    return EXIT_CLASS if classify(g).kind is Kind.UNSUPPORTED else EXIT_OK


def cmd_compute(args) -> int:
    g, mapping = _load(args.file)
    try:
        result = compute_matrix(g, args.which, args.mode)
    except LookupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLASS
    if args.format == "csv":
        sys.stdout.write(_relabel_note(mapping) + to_csv(result))
    else:
        out = to_json(result)
        if mapping:
            import json

            obj = json.loads(out)
            obj["labels"] = mapping
            out = json.dumps(obj) + "\n"
        sys.stdout.write(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if (args.file is None) == (args.gen is None):
        raise UsageError("verify needs exactly one of FILE or --gen KIND n=N ...")
    if args.file is not None:
        g, mapping = _load(args.file)
        sys.stdout.write(_relabel_note(mapping))
        report = verify_graph(g, args.inject_fault)
        sys.stdout.write(report.render())
        return EXIT_OK if report.ok else EXIT_VERIFY
    try:
        spec = GenSpec.parse(args.gen)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    reports = verify_many(spec.graphs(), args.inject_fault)
    header = f"verify --gen {' '.join(args.gen)}"
    sys.stdout.write(render_many(reports, header))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VERIFY


def cmd_generate(args) -> int:
    try:
        spec = GenSpec.parse(args.spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    graphs = list(spec.graphs())
    if args.output in (None, "-"):
        if len(graphs) > 1:
            raise UsageError("count > 1 needs -o DIRECTORY")
        sys.stdout.write(graphs[0].to_text())
        return EXIT_OK
    out = Path(args.output)
    if len(graphs) == 1:
        out.write_text(graphs[0].to_text())
        return EXIT_OK
    out.mkdir(parents=True, exist_ok=True)
    width = len(str(len(graphs) - 1))
    for k, g in enumerate(graphs):
        (out / f"{spec.kind}_n{spec.n}_{k:0{width}d}.txt").write_text(g.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graph-mpinv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="report tree / odd-unicyclic / unsupported")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("compute", help="print a (pseudo)inverse as exact fractions")
    c.add_argument("file")
    c.add_argument("--which", choices=["M", "Q", "S"], default="M")
    c.add_argument("--mode", choices=["formula", "oracle"], default="formula")
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.set_defaults(func=cmd_compute)

    c = sub.add_parser("verify", help="run every formula/oracle and lemma check")
    c.add_argument("file", nargs="?")
    c.add_argument("--gen", nargs="+", metavar="TOKEN", help="KIND n=N [cycle=K] count=C seed=S")
    c.add_argument("--inject-fault", action="store_true", help="corrupt one formula entry (negative control)")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("generate", help="write random graphs in the text format")
    c.add_argument("spec", nargs="+", metavar="TOKEN", help="KIND n=N [cycle=K] [count=C] seed=S")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
