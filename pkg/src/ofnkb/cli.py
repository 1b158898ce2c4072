"""``ofnkb`` command line: load, validate, query, explain, export and a REPL.

Exit status: 0 clean, 2 input or parse error, 3 clashes found, 4 fact not
entailed.  The REPL runs the same handlers, so a piped script prints the
same bytes as the equivalent one-shot commands.
"""

from __future__ import annotations

import argparse
import shlex
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, TextIO

from . import corpus
from .export import (
    FactSyntaxError,
    dump_json,
    facts_text,
    full,
    lookup_fact,
    parse_fact_expr,
    render_proof,
    render_rows,
    report,
    short,
)
from .kb import KbError, KnowledgeBase, build_kb
from .ofs import LAX, STRICT, OfnSyntaxError, parse
from .ofs.model import Ontology
from .reasoner import Closure, ReasonerConfig, check_consistency, explain, lint_completeness, materialize
from .sparql import QueryError, asserted_only, evaluate, parse_query

OK, INPUT_ERROR, CLASHES, NOT_ENTAILED = 0, 2, 3, 4


class CommandError(Exception):
    def __init__(self, message: str, status: int = INPUT_ERROR):
        super().__init__(message)
        self.status = status


@dataclass
class Options:
    lax: bool = False
    una: bool = True
    plain_literals: bool = True
    reasoning: bool = True
    full_iris: bool = False

    def reasoner(self) -> ReasonerConfig:
        return ReasonerConfig(una=self.una, plain_literals=self.plain_literals)


@dataclass
class Session:
    """Loaded ontologies plus a closure built on first use."""

    options: Options = field(default_factory=Options)
    ontologies: list[Ontology] = field(default_factory=list)
    _kb: Optional[KnowledgeBase] = None
    _closure: Optional[Closure] = None

    def add(self, onts: list[Ontology]) -> None:
        kb = build_kb(self.ontologies + onts)
        self.ontologies.extend(onts)
        self._kb, self._closure = kb, None

    @property
    def kb(self) -> KnowledgeBase:
        if self._kb is None:
            self._kb = build_kb(self.ontologies)
        return self._kb

    def closure(self, reasoning: bool = True) -> Closure:
        if not reasoning:
            return asserted_only(self.kb)
        if self._closure is None:
            self._closure = materialize(self.kb)
        return self._closure


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise CommandError(f"{path}: file not found")
    try:
        return p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CommandError(f"{path}: cannot read: {exc}") from exc


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CommandError(f"{path}: cannot write: {exc.strerror}") from exc


def _parse_files(paths: list[str], lax: bool, err: TextIO) -> list[tuple[str, Ontology]]:
    out = []
    for p in paths:
        text = _read(p)
        try:
            ont = parse(text, LAX if lax else STRICT)
        except OfnSyntaxError as exc:
            raise CommandError(f"{p}:{exc}") from exc
        for w in ont.warnings:
            err.write(f"{p}:{w}\n")
        out.append((p, ont))
    return out


def _load_into(session: Session, paths: list[str], use_corpus: bool, lax: bool, err: TextIO):
    loaded = []
    if use_corpus:
        try:
            corpus.verify()
        except corpus.CorpusError as exc:
            raise CommandError(str(exc)) from exc
        for _, ont in _parse_files([str(corpus.path(n)) for n in corpus.ONTOLOGIES], False, err):
            loaded.append((f"corpus:{corpus.ONTOLOGIES[len(loaded)]}", ont))
    loaded += _parse_files(paths, lax, err)
    try:
        session.add([o for _, o in loaded])
    except KbError as exc:
        raise CommandError(str(exc)) from exc
    return loaded


# --- command handlers -------------------------------------------------------
# each returns (stdout text, exit status) or raises CommandError


def _show(session: Session, opts: Options):
    return full if opts.full_iris else short(session.kb)


def cmd_load(session: Session, args, opts: Options, err: TextIO):
    files = getattr(args, "kb", []) + args.files
    loaded = _load_into(session, files, getattr(args, "corpus", False), opts.lax, err)
    kb = session.kb
    lines = [f"{p}: {len(o.axioms)} axioms" for p, o in loaded]
    lines.append(
        f"classes: {len(kb.classes)}, object properties: {len(kb.object_properties)}, "
        f"data properties: {len(kb.data_properties)}, individuals: {len(kb.individuals)}"
    )
    return "".join(x + "\n" for x in lines), OK


def cmd_validate(session: Session, args, opts: Options, err: TextIO):
    cl = session.closure(opts.reasoning)
    cfg = opts.reasoner()
    clashes = check_consistency(session.kb, cl, cfg)
    lints = lint_completeness(session.kb, cl, cfg)
    text = dump_json(report(session.kb, cl, clashes, lints, _show(session, opts)))
    status = CLASHES if clashes else OK
    if args.out:
        _write(args.out, text)
        return "", status
    return text, status


def cmd_query(session: Session, args, opts: Options, err: TextIO):
    source = args.query
    text = _read(source) if not _looks_inline(source) else source
    try:
        q = parse_query(text)
    except QueryError as exc:
        where = "" if _looks_inline(source) else f"{source}:"
        raise CommandError(f"{where}{exc}") from exc
    rows = evaluate(q, session.closure(opts.reasoning), opts.plain_literals)
    out = render_rows(rows, _show(session, opts), args.format)
    if args.out:
        _write(args.out, out)
        return "", OK
    return out, OK


def _looks_inline(source: str) -> bool:
    return "{" in source


def cmd_explain(session: Session, args, opts: Options, err: TextIO):
    kb = session.kb
    try:
        kind, terms = parse_fact_expr(args.fact, kb.prefixes)
    except FactSyntaxError as exc:
        raise CommandError(f"bad fact expression: {exc}") from exc
    cl = session.closure(opts.reasoning)
    fact = lookup_fact(cl, kind, terms, opts.plain_literals)
    if fact is None:
        return "not entailed\n", NOT_ENTAILED
    return render_proof(kb, explain(cl, fact), _show(session, opts)), OK


def cmd_export(session: Session, args, opts: Options, err: TextIO):
    if not args.facts and not args.report:
        raise CommandError("export needs --facts PATH and/or --report PATH")
    cl = session.closure(opts.reasoning)
    status = OK
    if args.facts:
        _write(args.facts, facts_text(cl))
    if args.report:
        cfg = opts.reasoner()
        clashes = check_consistency(session.kb, cl, cfg)
        lints = lint_completeness(session.kb, cl, cfg)
        _write(args.report, dump_json(report(session.kb, cl, clashes, lints)))
        status = CLASHES if clashes else OK
    return "", status


HANDLERS = {
    "load": cmd_load,
    "validate": cmd_validate,
    "query": cmd_query,
    "explain": cmd_explain,
    "export": cmd_export,
}


# --- argument parsing -------------------------------------------------------


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so the REPL can survive bad lines."""

    def error(self, message):
        raise _ArgError(f"{self.prog}: {message}")


def _flag_parent(suppress: bool) -> argparse.ArgumentParser:
    d = argparse.SUPPRESS if suppress else None
    p = _Parser(add_help=False)
    p.add_argument("--lax", action="store_true", default=d or False, help="skip unsupported axioms with a warning")
    p.add_argument("--no-una", dest="no_una", action="store_true", default=d or False, help="drop the unique name assumption")
    p.add_argument(
        "--strict-literals", dest="strict_literals", action="store_true", default=d or False,
        help="rdfs:Literal no longer matches other datatypes",
    )
    p.add_argument(
        "--no-reasoning", dest="no_reasoning", action="store_true", default=d or False,
        help="use asserted facts only",
    )
    p.add_argument("--full-iris", dest="full_iris", action="store_true", default=d or False, help="print full IRIs")
    return p


def _kb_parent(suppress: bool) -> argparse.ArgumentParser:
    d = argparse.SUPPRESS if suppress else None
    p = _Parser(add_help=False)
    p.add_argument("--corpus", action="store_true", default=d or False, help="load the bundled corpus first")
    p.add_argument("--kb", action="append", default=d or [], metavar="FILE", help="ontology file to load first")
    return p


def build_parser(repl: bool = False) -> argparse.ArgumentParser:
    """Top-level parser; in ``repl`` mode only ``load`` takes KB options."""
    top = _Parser(prog="" if repl else "ofnkb", add_help=not repl)
    flags = [_flag_parent(suppress=True)]
    kb = [] if repl else [_kb_parent(suppress=True)]
    if not repl:
        for action in _flag_parent(False)._actions + _kb_parent(False)._actions:
            top._add_action(action)
    sub = top.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("load", parents=flags + [_kb_parent(suppress=True)], help="parse ontology files and print counts")
    p.add_argument("files", nargs="*")
    p = sub.add_parser("validate", parents=flags + kb, help="clashes, lints and stats as JSON")
    p.add_argument("--out", metavar="PATH")
    p = sub.add_parser("query", parents=flags + kb, help="run a query file or inline query")
    p.add_argument("query", metavar="FILE-OR-TEXT")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--out", metavar="PATH")
    p = sub.add_parser("explain", parents=flags + kb, help="proof tree for an entailed fact")
    p.add_argument("fact", metavar="FACT")
    p = sub.add_parser("export", parents=flags + kb, help="write fact and report files")
    p.add_argument("--facts", metavar="PATH")
    p.add_argument("--report", metavar="PATH")
    if not repl:
        sub.add_parser("repl", parents=flags + kb, help="read commands from stdin")
    else:
        sub.add_parser("quit")
        sub.add_parser("exit")
    return top


def _options(base: Options, ns) -> Options:
    return replace(
        base,
        lax=base.lax or getattr(ns, "lax", False),
        una=base.una and not getattr(ns, "no_una", False),
        plain_literals=base.plain_literals and not getattr(ns, "strict_literals", False),
        reasoning=base.reasoning and not getattr(ns, "no_reasoning", False),
        full_iris=base.full_iris or getattr(ns, "full_iris", False),
    )


def _run(session: Session, ns, opts: Options, out: TextIO, err: TextIO) -> int:
    try:
        text, status = HANDLERS[ns.command](session, ns, opts, err)
    except CommandError as exc:
        err.write(f"error: {exc}\n")
        return exc.status
    out.write(text)
    return status


def repl(session: Session, base: Options, stdin: TextIO, out: TextIO, err: TextIO) -> int:
    parser = build_parser(repl=True)
    interactive = stdin.isatty()
    while True:
        if interactive:
            out.write("ofnkb> ")
            out.flush()
        line = stdin.readline()
        if not line:
            return OK
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            words = shlex.split(line)
        except ValueError as exc:
            err.write(f"error: {exc}\n")
            continue
        if words[0] not in HANDLERS and words[0] not in ("quit", "exit"):
            err.write(f"unknown command: {words[0]}\n")
            continue
        try:
            ns = parser.parse_args(words)
        except _ArgError as exc:
            err.write(f"error: {exc}\n")
            continue
        if ns.command in ("quit", "exit"):
            return OK
        _run(session, ns, _options(base, ns), out, err)
        out.flush()


def main(argv: Optional[list[str]] = None, stdin: TextIO = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except _ArgError as exc:
        err.write(f"{exc}\n")
        return INPUT_ERROR
    opts = _options(Options(), ns)
    session = Session(opts)
    if ns.command != "load" and (ns.corpus or ns.kb):
        try:
            _load_into(session, ns.kb, ns.corpus, opts.lax, err)
        except CommandError as exc:
            err.write(f"error: {exc}\n")
            return exc.status
    if ns.command == "repl":
        return repl(session, opts, stdin, out, err)
    return _run(session, ns, opts, out, err)


def entry() -> None:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8", newline="\n")
    sys.exit(main())


if __name__ == "__main__":
    entry()
