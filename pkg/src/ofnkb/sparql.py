"""A SPARQL subset: PREFIX, SELECT and one basic graph pattern."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .kb import KnowledgeBase, Member
from .ofs.lexer import unquote
from .ofs.model import RDF_TYPE, XSD_INTEGER, XSD_STRING, Iri, Literal, literals_match
from .reasoner import Closure, materialize


class QueryError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return "?" + self.name


TYPE = RDF_TYPE
Term = Union[Var, Iri, Literal]


@dataclass(frozen=True)
class TriplePattern:
    subject: Union[Var, Iri]
    predicate: Iri
    object: Term


@dataclass(frozen=True)
class Query:
    prefixes: dict
    select: tuple[Var, ...]
    patterns: tuple[TriplePattern, ...]


# --- lexing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<iri><[^<>"{}|^`\\\s]*>)
  | (?P<var>[?$][^\W][\w]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
  | (?P<dtmark>\^\^)
  | (?P<lang>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<pname>(?:[^\W\d][\w\-]*)?:[\w\-]*)
  | (?P<word>[^\W\d]\w*)
  | (?P<int>[+-]?\d+)
  | (?P<punct>[{}.*])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise QueryError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind not in ("ws", "comment"):
            out.append(_Tok(kind, lexeme, line, col))
        nl = lexeme.count("\n")
        if nl:
            line += nl
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    return out


# --- parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.prefixes: dict[str, str] = {}
        lines = text.split("\n")
        self.end = (len(lines), len(lines[-1]) + 1)

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self, what: str) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise QueryError(f"expected {what}, found end of query", *self.end)
        self.pos += 1
        return tok

    def keyword(self, tok: Optional[_Tok], word: str) -> bool:
        return tok is not None and tok.kind == "word" and tok.text.upper() == word

    def query(self) -> Query:
        while self.keyword(self.peek(), "PREFIX"):
            self.next("PREFIX")
            name = self.next("prefix name")
            if name.kind != "pname" or not name.text.endswith(":"):
                raise QueryError("expected prefix name", name.line, name.column)
            ns = self.next("namespace IRI")
            if ns.kind != "iri":
                raise QueryError("expected namespace IRI", ns.line, ns.column)
            self.prefixes[name.text[:-1]] = ns.text[1:-1]
        tok = self.next("SELECT")
        if not self.keyword(tok, "SELECT"):
            raise QueryError(f"expected SELECT, found {tok.text!r}", tok.line, tok.column)
        select: list[Var] = []
        star = False
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "var":
                self.pos += 1
                v = Var(tok.text[1:])
                if v not in select:
                    select.append(v)
            elif tok is not None and tok.kind == "punct" and tok.text == "*" and not select and not star:
                self.pos += 1
                star = True
            else:
                break
        if not select and not star:
            t = self.peek()
            raise QueryError("SELECT needs at least one variable", *(t.line, t.column) if t else self.end)
        if self.keyword(self.peek(), "WHERE"):
            self.pos += 1
        brace = self.next("'{'")
        if brace.text != "{":
            raise QueryError(f"expected '{{', found {brace.text!r}", brace.line, brace.column)
        patterns = []
        while True:
            tok = self.peek()
            if tok is None:
                raise QueryError("missing '}'", *self.end)
            if tok.text == "}" and tok.kind == "punct":
                self.pos += 1
                break
            patterns.append(self.triple())
            tok = self.peek()
            if tok is not None and tok.kind == "punct" and tok.text == ".":
                self.pos += 1
            elif tok is None or tok.text != "}":
                where = (tok.line, tok.column) if tok else self.end
                raise QueryError("expected '.' or '}' after triple pattern", *where)
        if not patterns:
            raise QueryError("empty pattern block", brace.line, brace.column)
        tok = self.peek()
        if tok is not None:
            raise QueryError(f"unexpected {tok.text!r} after query", tok.line, tok.column)
        seen = []
        for p in patterns:
            for t in (p.subject, p.object):
                if isinstance(t, Var) and t not in seen:
                    seen.append(t)
        if star:
            select = seen
        for v in select:
            if v not in seen:
                raise QueryError(f"variable {v} does not occur in the pattern", brace.line, brace.column)
        return Query(dict(self.prefixes), tuple(select), tuple(patterns))

    def iri(self, tok: _Tok) -> Iri:
        if tok.kind == "iri":
            return Iri(tok.text[1:-1])
        label, _, local = tok.text.partition(":")
        if label not in self.prefixes:
            raise QueryError(f"unknown prefix {label + ':'!r}", tok.line, tok.column)
        return Iri(self.prefixes[label] + local)

    def term(self, allow_literal: bool) -> Term:
        tok = self.next("term")
        if tok.kind == "var":
            return Var(tok.text[1:])
        if tok.kind in ("iri", "pname"):
            return self.iri(tok)
        if allow_literal and tok.kind == "string":
            lex = unquote(tok.text)
            nxt = self.peek()
            if nxt is not None and nxt.kind == "dtmark":
                self.pos += 1
                dt = self.next("datatype")
                if dt.kind not in ("iri", "pname"):
                    raise QueryError("expected datatype IRI", dt.line, dt.column)
                return Literal(lex, self.iri(dt))
            if nxt is not None and nxt.kind == "lang":
                raise QueryError("language tags are not supported", nxt.line, nxt.column)
            return Literal(lex, XSD_STRING)
        if allow_literal and tok.kind == "int":
            return Literal(tok.text, XSD_INTEGER)
        raise QueryError(f"unexpected {tok.text!r}", tok.line, tok.column)

    def triple(self) -> TriplePattern:
        subj = self.term(allow_literal=False)
        tok = self.next("predicate")
        if tok.kind == "var":
            raise QueryError("variable predicate is not supported", tok.line, tok.column)
        if tok.kind == "word" and tok.text == "a":
            pred = TYPE
        elif tok.kind in ("iri", "pname"):
            pred = self.iri(tok)
        else:
            raise QueryError(f"expected predicate, found {tok.text!r}", tok.line, tok.column)
        obj = self.term(allow_literal=pred != TYPE)
        return TriplePattern(subj, pred, obj)


def parse_query(text: str) -> Query:
    return _Parser(text).query()


# --- evaluation -------------------------------------------------------------


@dataclass(frozen=True)
class BindingSet:
    vars: tuple[Var, ...]
    rows: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.rows)


def term_key(t) -> str:
    if isinstance(t, Iri):
        return str(t)
    return f'"{t.lexical}"^^{t.datatype}'


def _candidates(cl: Closure, kb: KnowledgeBase, pat: TriplePattern, binding: dict, plain: bool):
    """Yield extensions of ``binding`` that satisfy ``pat``."""

    def resolve(t):
        if isinstance(t, Var):
            return binding.get(t.name, _FREE)
        if isinstance(t, Iri):
            tid = kb.term(t)
            return _MISSING if tid is None else tid
        return t

    s, o = resolve(pat.subject), resolve(pat.object)
    if s is _MISSING or o is _MISSING or isinstance(s, Literal):
        return
    if pat.predicate == TYPE:
        if isinstance(o, Literal):
            return
        pairs = _pairs(s, o, cl.members, cl.instances, ((f.ind, f.cls) for f in _all(cl, Member)))
    else:
        p = kb.term(pat.predicate)
        if p is None:
            return
        if p in kb.data_properties:
            pairs = _value_pairs(cl, p, s, o, isinstance(pat.object, Literal), plain)
        else:
            if isinstance(o, Literal):
                return
            pairs = _pairs(
                s,
                o,
                {s_: cl.out_edges.get((p, s_), ()) for s_ in ([s] if s is not _FREE else [])},
                {o_: cl.in_edges.get((p, o_), ()) for o_ in ([o] if o is not _FREE else [])},
                iter(sorted(cl.edges_by_prop.get(p, ()))),
            )
    for sv, ov in pairs:
        new = dict(binding)
        if isinstance(pat.subject, Var):
            new[pat.subject.name] = sv
        if isinstance(pat.object, Var):
            if pat.object.name in new and new[pat.object.name] != ov:
                continue
            new[pat.object.name] = ov
        yield new


class _Sentinel:
    pass


_FREE = _Sentinel()
_MISSING = _Sentinel()


def _all(cl: Closure, kind):
    return (f for f in cl.supports if isinstance(f, kind))


def _pairs(s, o, forward, backward, everything):
    if s is not _FREE and o is not _FREE:
        if o in forward.get(s, ()):
            yield s, o
    elif s is not _FREE:
        for x in sorted(forward.get(s, ())):
            yield s, x
    elif o is not _FREE:
        for x in sorted(backward.get(o, ())):
            yield x, o
    else:
        yield from everything


def _value_pairs(cl: Closure, d: int, s, o, constant: bool, plain: bool):
    if s is not _FREE:
        items = [(s, lit) for lit in cl.values.get((d, s), ())]
    else:
        items = list(cl.values_by_prop.get(d, ()))
    for subj, lit in items:
        if o is _FREE:
            yield subj, lit
        elif isinstance(o, Literal):
            # constants in the query match under the plain-literal rule;
            # a variable already bound to a literal must be the same literal
            if literals_match(o, lit, plain) if constant else o == lit:
                yield subj, lit


def evaluate(query: Query, closure: Closure, plain_literals: bool = True) -> BindingSet:
    kb = closure.kb
    results = set()

    def walk(i: int, binding: dict):
        if i == len(query.patterns):
            results.add(tuple(binding[v.name] for v in query.select))
            return
        for ext in _candidates(closure, kb, query.patterns[i], binding, plain_literals):
            walk(i + 1, ext)

    walk(0, {})
    rows = [tuple(kb.iri(x) if isinstance(x, int) else x for x in row) for row in results]
    rows.sort(key=lambda r: tuple(term_key(t) for t in r))
    return BindingSet(query.select, tuple(rows))


def asserted_only(kb: KnowledgeBase) -> Closure:
    cl = Closure(kb)
    for f in kb.asserted:
        cl.add(f, ("ASSERTED", ()))
    return cl


def evaluate_with_reasoning_flag(
    query: Query, kb: KnowledgeBase, use_closure: bool, plain_literals: bool = True
) -> BindingSet:
    cl = materialize(kb) if use_closure else asserted_only(kb)
    return evaluate(query, cl, plain_literals)


__all__ = [
    "BindingSet",
    "Query",
    "QueryError",
    "TriplePattern",
    "Var",
    "asserted_only",
    "evaluate",
    "evaluate_with_reasoning_flag",
    "parse_query",
    "term_key",
]
