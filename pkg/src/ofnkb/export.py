"""Text formats shared by the CLI: fact lines, JSON reports, proof trees."""

from __future__ import annotations

import json
import re
from typing import Callable

from .kb import (
    Cardinality,
    ClassPattern,
    Constraint,
    DataPattern,
    Edge,
    EdgePattern,
    KnowledgeBase,
    Member,
    Requirement,
    Value,
)
from .ofs.lexer import quote, unquote
from .ofs.model import RDFS_LITERAL, Iri, Literal, literals_match
from .ofs.serializer import abbreviate
from .reasoner import ASSERTED, Clash, Closure, Lint, ProofNode

Show = Callable[[Iri], str]


def full(iri: Iri) -> str:
    return str(iri)


def short(kb: KnowledgeBase) -> Show:
    return lambda iri: abbreviate(iri, kb.prefixes)


def render_literal(lit: Literal, show: Show = full) -> str:
    return f"{quote(lit.lexical)}^^{show(lit.datatype)}"


def render_term(term, show: Show = full) -> str:
    return render_literal(term, show) if isinstance(term, Literal) else show(term)


def render_fact(kb: KnowledgeBase, f, show: Show = full) -> str:
    iri = kb.iri
    if isinstance(f, Member):
        return f"member({show(iri(f.ind))}, {show(iri(f.cls))})"
    if isinstance(f, Edge):
        return f"edge({show(iri(f.prop))}, {show(iri(f.subj))}, {show(iri(f.obj))})"
    return f"data({show(iri(f.prop))}, {show(iri(f.subj))}, {render_literal(f.lit, show)})"


def facts_text(cl: Closure) -> str:
    lines = sorted(render_fact(cl.kb, f) for f in cl.facts)
    return "".join(line + "\n" for line in lines)


# --- reports ----------------------------------------------------------------


def _prop(kb: KnowledgeBase, prop: int, inverse: bool, show: Show) -> str:
    name = show(kb.iri(prop))
    return f"inverse({name})" if inverse else name


def render_trigger(kb: KnowledgeBase, t, show: Show = full) -> str:
    if isinstance(t, ClassPattern):
        return show(kb.iri(t.cls))
    if isinstance(t, EdgePattern):
        text = _prop(kb, t.prop, t.inverse, show)
        if t.filler is not None:
            text += f" some {show(kb.iri(t.filler))}"
        return text
    if isinstance(t, DataPattern):
        return show(kb.iri(t.prop))
    raise TypeError(t)


def render_requirement(kb: KnowledgeBase, r: Requirement, show: Show = full) -> str:
    if r.kind == "member":
        return f"a {show(kb.iri(r.cls))}"
    text = _prop(kb, r.prop, r.inverse, show)
    if r.cls is not None:
        text += f" some {show(kb.iri(r.cls))}"
    return text


def clash_json(kb: KnowledgeBase, c: Clash, show: Show = full) -> dict:
    out = {"kind": c.kind, "individual": show(kb.iri(c.individual))}
    if c.kind == "disjoint-classes":
        out["classes"] = [show(kb.iri(x)) for x in c.details]
    elif c.kind == "disjoint-data-properties":
        d1, d2, l1, l2 = c.details
        out["properties"] = [show(kb.iri(d1)), show(kb.iri(d2))]
        out["values"] = [render_literal(l1, show), render_literal(l2, show)]
    else:
        prop, inverse, limit, count = c.details
        out["property"] = _prop(kb, prop, inverse, show)
        out["max"] = limit
        out["have"] = count
    return out


def lint_json(kb: KnowledgeBase, lint: Lint, show: Show = full) -> dict:
    con = lint.constraint
    out = {"kind": lint.kind, "individual": show(kb.iri(lint.individual))}
    out["trigger"] = render_trigger(kb, con.trigger, show)
    if isinstance(con, Constraint):
        out["requires"] = [render_requirement(kb, r, show) for r in con.alternatives]
    elif isinstance(con, Cardinality):
        out["property"] = _prop(kb, con.prop, con.inverse, show)
    if lint.have is not None:
        out["have"] = lint.have
        out["need"] = lint.need
    return out


def stats(kb: KnowledgeBase, cl: Closure) -> dict:
    asserted = sum(1 for f in cl.supports if cl.is_asserted(f))
    return {"asserted": asserted, "derived": len(cl) - asserted, "classes": len(kb.classes)}


def report(kb: KnowledgeBase, cl: Closure, clashes: list, lints: list, show: Show = full) -> dict:
    return {
        "clashes": [clash_json(kb, c, show) for c in clashes],
        "lints": [lint_json(kb, x, show) for x in lints],
        "stats": stats(kb, cl),
    }


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --- fact expressions -------------------------------------------------------

_FACT_HEAD = re.compile(r"\s*(member|edge|data)\s*\(\s*")
_ARG = re.compile(
    r"""(?P<iri><[^<>"\s]*>)
      | (?P<lit>"(?:[^"\\]|\\.)*"|'(?:[^'\\]|\\.)*')(?:\^\^(?P<dt><[^<>"\s]*>|[^\s,()]*:[\w\-]*))?
      | (?P<pname>[^\s,()<>"']*:[\w\-]*)""",
    re.VERBOSE,
)


class FactSyntaxError(ValueError):
    pass


def _resolve(text: str, prefixes: dict) -> Iri:
    if text.startswith("<"):
        return Iri(text[1:-1])
    label, _, local = text.partition(":")
    if label not in prefixes:
        raise FactSyntaxError(f"unknown prefix {label + ':'!r}")
    return Iri(prefixes[label] + local)


def parse_fact_expr(text: str, prefixes: dict) -> tuple[str, list]:
    """Split ``member(a, C)``-style text into its kind and resolved terms.

    A literal without ``^^`` is read as rdfs:Literal.
    """
    m = _FACT_HEAD.match(text)
    if not m:
        raise FactSyntaxError("expected member(...), edge(...) or data(...)")
    kind, pos, args = m.group(1), m.end(), []
    while True:
        a = _ARG.match(text, pos)
        if not a:
            raise FactSyntaxError(f"bad argument at column {pos + 1}")
        if a.group("lit") is not None:
            dt = a.group("dt")
            args.append(Literal(unquote(a.group("lit")), _resolve(dt, prefixes) if dt else RDFS_LITERAL))
        else:
            args.append(_resolve(a.group(), prefixes))
        pos = a.end()
        sep = re.compile(r"\s*([,)])\s*").match(text, pos)
        if not sep:
            raise FactSyntaxError(f"expected ',' or ')' at column {pos + 1}")
        pos = sep.end()
        if sep.group(1) == ")":
            break
    if pos != len(text):
        raise FactSyntaxError(f"trailing text at column {pos + 1}")
    arity = {"member": 2, "edge": 3, "data": 3}[kind]
    if len(args) != arity:
        raise FactSyntaxError(f"{kind} takes {arity} arguments")
    if isinstance(args[-1], Literal) != (kind == "data") or any(isinstance(x, Literal) for x in args[:-1]):
        raise FactSyntaxError(f"literal misplaced in {kind}(...)")
    return kind, args


def lookup_fact(cl: Closure, kind: str, args: list, plain: bool = True):
    """The closure fact named by a parsed expression, or None."""
    kb = cl.kb
    ids = [kb.term(x) if isinstance(x, Iri) else x for x in args]
    if any(x is None for x in ids):
        return None
    if kind == "member":
        f = Member(*ids)
    elif kind == "edge":
        f = Edge(*ids)
    else:
        f = Value(*ids)
        if f not in cl:
            found = sorted(
                (v for v in cl.values.get((f.prop, f.subj), ()) if literals_match(f.lit, v, plain)),
                key=lambda v: (v.lexical, v.datatype.full),
            )
            f = Value(f.prop, f.subj, found[0]) if found else f
    return f if f in cl else None


def render_proof(kb: KnowledgeBase, node: ProofNode, show: Show = full) -> str:
    lines: list[str] = []

    def walk(n: ProofNode, depth: int):
        lines.append(f"{'  ' * depth}[{n.rule}] {render_fact(kb, n.fact, show)}")
        for c in n.children:
            walk(c, depth + 1)

    walk(node, 0)
    return "".join(line + "\n" for line in lines)


def render_rows(bindings, show: Show = full, fmt: str = "tsv") -> str:
    names = [v.name for v in bindings.vars]
    if fmt == "json":
        rows = [{k: render_term(t, show) for k, t in zip(names, row)} for row in bindings.rows]
        return dump_json({"vars": names, "rows": rows})
    out = ["\t".join("?" + n for n in names)]
    out.extend("\t".join(render_term(t, show) for t in row) for row in bindings.rows)
    return "".join(line + "\n" for line in out)


__all__ = [
    "ASSERTED",
    "FactSyntaxError",
    "dump_json",
    "facts_text",
    "full",
    "lookup_fact",
    "parse_fact_expr",
    "render_fact",
    "render_proof",
    "render_rows",
    "report",
    "short",
    "stats",
]

