"""Command-line entry point: ``dpcolor --input FILE --command NAME``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import InputError
from ..solver import DEFAULT_BUDGET_VERTICES
from .corpus import PROFILES, generate_corpus
from .document import emit
from .pipeline import COMMANDS, EXIT_INPUT, EXIT_OK, run_pipeline


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dpcolor", description=__doc__)
    p.add_argument("--input", help="graph document path, or '-' for stdin")
    p.add_argument("--command", required=True, choices=COMMANDS + ("generate",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-vertices", type=int, default=DEFAULT_BUDGET_VERTICES)
    p.add_argument("--budget-samples", type=int, default=None)
    p.add_argument("--adjacency-convention", choices=("edge", "vertex"), default="edge")
    p.add_argument("--emit", choices=("text", "machine"), default="text")
    gen = p.add_argument_group("generate")
    gen.add_argument("--profile", choices=PROFILES, default="sparse-girth")
    gen.add_argument("--count", type=int, default=10)
    gen.add_argument("--output", help="directory for generated documents")
    return p


def _generate(args) -> int:
    if not args.output:
        print("error: generate needs --output", file=sys.stderr)
        return EXIT_INPUT
    try:
        docs = generate_corpus(args.seed, args.count, args.profile)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for i, doc in enumerate(docs):
        path = out / f"{args.profile}-{args.seed}-{i:04d}.json"
        path.write_bytes(emit(doc).encode("utf-8"))
    print(f"wrote {len(docs)} documents to {out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        return _generate(args)
    if not args.input:
        print("error: --input is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text("utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = run_pipeline(text, args.command, seed=args.seed,
                          budget_vertices=args.budget_vertices,
                          budget_samples=args.budget_samples,
                          convention=args.adjacency_convention)
    out = report.machine() if args.emit == "machine" else report.text()
    sys.stdout.write(out)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
