"""Command-line entry points: crawl, rank, serve, export.

Exit codes: 0 success, 1 usage error, 2 source error, 3 corrupt session.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .ingestion import SourceFormat, SourceSpec, UnreadableSource, crawl
from .metrics import InvalidCombination, preset_by_name, rank_terms, validate_combination
from .model import load_corpus, save_corpus
from .textprep import build_term_index

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOURCE = 2
EXIT_SESSION = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="conceptminer", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_crawl = sub.add_parser("crawl", help="parse sources into a corpus file")
    p_crawl.add_argument("--mbox", action="append", default=[], metavar="FILE")
    p_crawl.add_argument("--eml-dir", action="append", default=[], metavar="DIR")
    p_crawl.add_argument("--ics", action="append", default=[], metavar="FILE")
    p_crawl.add_argument("--bookmarks", action="append", default=[], metavar="FILE")
    p_crawl.add_argument("--out", required=True, metavar="FILE")

    p_rank = sub.add_parser("rank", help="print the top ranked terms of a corpus")
    p_rank.add_argument("corpus")
    p_rank.add_argument("--preset", default=None)
    p_rank.add_argument("--weights", default=None, metavar="k=v,...")
    p_rank.add_argument("--top", type=int, default=25)
    p_rank.add_argument("--ngrams", action="store_true")

    p_serve = sub.add_parser("serve", help="run the triage service")
    p_serve.add_argument("corpus")
    p_serve.add_argument("--session", default=None, metavar="FILE")
    p_serve.add_argument("--port", type=int, default=7431)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--gazetteer", default=None, metavar="FILE")
    p_serve.add_argument("--ui-dir", default=None, metavar="DIR")

    p_export = sub.add_parser("export", help="export the concept graph of a session")
    p_export.add_argument("session")
    p_export.add_argument("corpus")
    p_export.add_argument("--format", choices=("ttl", "json"), required=True)
    p_export.add_argument("--out", required=True, metavar="FILE")

    return parser


def _cmd_crawl(args) -> int:
    specs = []
    for path in args.mbox:
        specs.append(SourceSpec(Path(path), SourceFormat.MBOX))
    for path in args.eml_dir:
        specs.append(SourceSpec(Path(path), SourceFormat.EML_DIRECTORY))
    for path in args.ics:
        specs.append(SourceSpec(Path(path), SourceFormat.ICS))
    for path in args.bookmarks:
        specs.append(SourceSpec(Path(path), SourceFormat.BOOKMARKS_HTML))
    try:
        corpus = crawl(specs)
    except UnreadableSource as exc:
        print(f"source error: {exc}", file=sys.stderr)
        return EXIT_SOURCE
    save_corpus(corpus, args.out)
    for entry in corpus.manifest:
        note = f" ({len(entry.warnings)} warnings)" if entry.warnings else ""
        print(f"{entry.source} [{entry.format}]: {entry.count} items{note}")
    print(f"wrote {len(corpus.items)} items to {args.out}")
    return EXIT_OK


def _parse_weights(spec: str) -> dict[str, float]:
    weights = {}
    for piece in spec.split(","):
        piece = piece.strip()
        if not piece:
            continue
        name, sep, value = piece.partition("=")
        if not sep:
            raise InvalidCombination(f"bad weight: {piece!r} (expected name=value)")
        try:
            weights[name.strip()] = float(value)
        except ValueError:
            raise InvalidCombination(f"bad weight value: {piece!r}")
    return weights


def _cmd_rank(args) -> int:
    try:
        corpus = load_corpus(args.corpus)
    except (OSError, ValueError) as exc:
        print(f"source error: {exc}", file=sys.stderr)
        return EXIT_SOURCE
    index = build_term_index(corpus, ngrams=args.ngrams)

    if args.weights:
        try:
            combination = validate_combination("cli", _parse_weights(args.weights))
        except InvalidCombination as exc:
            print(f"invalid weights: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        combination = preset_by_name(args.preset or "balanced")
        if combination is None:
            print(f"unknown preset: {args.preset}", file=sys.stderr)
            return EXIT_USAGE

    ranked = rank_terms(index, corpus, combination)
    print(f"{'score':>8}  {'count':>5}  term")
    for key, score in ranked[: args.top]:
        record = index.get(key)
        print(f"{score:8.4f}  {record.count:5d}  {record.display_surface()}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .api import serve
    from .triage import CorpusMismatch, CorruptSession

    try:
        serve(
            Path(args.corpus),
            session_file=Path(args.session) if args.session else None,
            port=args.port,
            host=args.host,
            gazetteer_file=Path(args.gazetteer) if args.gazetteer else None,
            ui_dir=Path(args.ui_dir) if args.ui_dir else None,
        )
    except (CorruptSession, CorpusMismatch) as exc:
        print(f"session error: {exc}", file=sys.stderr)
        return EXIT_SESSION
    except OSError as exc:
        print(f"source error: {exc}", file=sys.stderr)
        return EXIT_SOURCE
    return EXIT_OK


def _cmd_export(args) -> int:
    from .export import export_graph
    from .triage import CorruptSession, load_session

    try:
        corpus = load_corpus(args.corpus)
    except (OSError, ValueError) as exc:
        print(f"source error: {exc}", file=sys.stderr)
        return EXIT_SOURCE
    try:
        session = load_session(args.session)
    except (OSError, CorruptSession) as exc:
        print(f"session error: {exc}", file=sys.stderr)
        return EXIT_SESSION
    index = build_term_index(corpus)
    payload = export_graph(session, corpus, index, args.format)
    Path(args.out).write_bytes(payload)
    print(f"wrote {len(payload)} bytes to {args.out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)
    handlers = {
        "crawl": _cmd_crawl,
        "rank": _cmd_rank,
        "serve": _cmd_serve,
        "export": _cmd_export,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
