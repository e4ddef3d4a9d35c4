"""Command line: ``embed-service serve`` and ``embed-service precompute``."""

from __future__ import annotations

import argparse
import sys

from .backends import DEFAULT_MODEL, ModelLoadError, load_backend
from .precompute import precompute, read_texts_jsonl
from .server import serve_http, serve_stdio


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="embed-service")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="answer embed requests over stdio or HTTP")
    serve.add_argument("--model", default=DEFAULT_MODEL,
                       help="backend spec: st:<model id> or hash:<dim>[:<seed>]")
    serve.add_argument("--batch-size", type=int, default=64)
    serve.add_argument("--dim-check", type=int, default=None,
                       help="refuse to start unless the model dimension matches")
    serve.add_argument("--http", metavar="HOST:PORT", default=None,
                       help="serve HTTP POST /embed instead of stdio")

    pre = sub.add_parser("precompute", help="embed a JSONL of {id, text} into a store file")
    pre.add_argument("input")
    pre.add_argument("output")
    pre.add_argument("--model", default=DEFAULT_MODEL)
    pre.add_argument("--batch-size", type=int, default=64)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        backend = load_backend(args.model)
    except ModelLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "serve":
        if args.dim_check is not None and backend.dim != args.dim_check:
            print(
                f"error: model dimension {backend.dim} != required {args.dim_check}",
                file=sys.stderr,
            )
            return 2
        if args.http:
            host, _, port = args.http.rpartition(":")
            serve_http(backend, host or "127.0.0.1", int(port), args.batch_size)
        else:
            serve_stdio(backend, sys.stdin, sys.stdout, args.batch_size)
        return 0

    texts = read_texts_jsonl(args.input)
    stored = precompute(backend, texts, args.output, args.batch_size)
    print(f"stored {stored} vectors (dim {backend.dim}, tag {backend.tag})", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
