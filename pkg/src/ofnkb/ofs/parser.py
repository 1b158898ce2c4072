"""Recursive-descent parser for the functional-syntax subset.

The accepted grammar is exactly the axiom and expression forms the bundled
corpus uses.  In ``lax`` mode an axiom that uses anything else is skipped and
recorded as a warning; in ``strict`` mode it is an error.
"""

from __future__ import annotations

from typing import Callable, Optional

from . import lexer
from .lexer import OfnSyntaxError, Token, unquote
from .model import (
    DECLARATION_KINDS,
    OWL_THING,
    XSD_STRING,
    ClassAssertion,
    ClassName,
    DataPropertyAssertion,
    DataPropertyDomain,
    DataSomeValuesFrom,
    Declaration,
    DisjointClasses,
    DisjointDataProperties,
    EquivalentClasses,
    EquivalentDataProperties,
    Iri,
    Literal,
    ObjectIntersectionOf,
    ObjectInverseOf,
    ObjectMaxCardinality,
    ObjectMinCardinality,
    ObjectProperty,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    ObjectSomeValuesFrom,
    ObjectUnionOf,
    Ontology,
    ParseWarning,
    SourceLoc,
    SubClassOf,
    SubDataPropertyOf,
    SubObjectPropertyOf,
    Thing,
)

STRICT = "strict"
LAX = "lax"


class _Unsupported(OfnSyntaxError):
    """A well-formed construct outside the supported subset."""


def parse(source: str, mode: str = STRICT) -> Ontology:
    return parse_ontology(lexer.tokenize(source), mode)


def parse_ontology(tokens: list[Token], mode: str = STRICT) -> Ontology:
    if mode not in (STRICT, LAX):
        raise ValueError(f"unknown parse mode {mode!r}")
    toks = [t for t in tokens if t.kind != lexer.COMMENT]
    _check_balance(toks)
    return _Parser(toks, mode).document()


AXIOM_HEADS = frozenset(
    {
        "Declaration",
        "SubClassOf",
        "EquivalentClasses",
        "DisjointClasses",
        "SubObjectPropertyOf",
        "ObjectPropertyDomain",
        "ObjectPropertyRange",
        "SubDataPropertyOf",
        "EquivalentDataProperties",
        "DisjointDataProperties",
        "DataPropertyDomain",
        "ClassAssertion",
        "ObjectPropertyAssertion",
        "DataPropertyAssertion",
    }
)


def _check_balance(toks: list[Token]) -> None:
    """Reject unbalanced input before parsing, pointing at the likely culprit.

    An axiom keyword nested inside another axiom means the outer one was
    never closed.  If only ``Ontology(`` is left open at the end, the final
    ``)`` is taken as its closer and the innermost axiom still open is blamed.
    """
    stack: list[tuple[Token, Optional[Token]]] = []
    head: Optional[Token] = None
    for t in toks:
        if t.kind == lexer.KEYWORD:
            if t.lexeme in AXIOM_HEADS:
                for opener, kw in reversed(stack):
                    if kw is not None and kw.lexeme in AXIOM_HEADS:
                        raise OfnSyntaxError("unbalanced parentheses", kw.line, kw.column)
            head = t
            continue
        if t.kind == lexer.PUNCT and t.lexeme == "(":
            stack.append((t, head))
        elif t.kind == lexer.PUNCT and t.lexeme == ")":
            if not stack:
                raise OfnSyntaxError("unbalanced parentheses", t.line, t.column)
            stack.pop()
        head = None
    if not stack:
        return
    opener, kw = stack[-1]
    if len(stack) == 1 and kw is not None and kw.lexeme == "Ontology" and toks[-1].lexeme == ")":
        inner: list[tuple[Token, Optional[Token]]] = []
        for t in toks[toks.index(opener) + 1 : -1]:
            if t.kind == lexer.KEYWORD:
                head = t
                continue
            if t.kind == lexer.PUNCT and t.lexeme == "(":
                inner.append((t, head))
            elif t.kind == lexer.PUNCT and t.lexeme == ")" and inner:
                inner.pop()
            head = None
        if inner:
            opener, kw = inner[0]
    where = kw or opener
    raise OfnSyntaxError("unbalanced parentheses", where.line, where.column)


class _Parser:
    def __init__(self, toks: list[Token], mode: str):
        self.toks = toks
        self.pos = 0
        self.mode = mode
        self.prefixes: dict[str, str] = {}
        self.warnings: list[ParseWarning] = []
        self._axioms: dict[str, Callable[[Token], object]] = {
            "Declaration": self._declaration,
            "SubClassOf": self._subclassof,
            "EquivalentClasses": self._equivalent_classes,
            "DisjointClasses": self._disjoint_classes,
            "SubObjectPropertyOf": self._sub_object_property,
            "ObjectPropertyDomain": self._object_domain,
            "ObjectPropertyRange": self._object_range,
            "SubDataPropertyOf": self._sub_data_property,
            "EquivalentDataProperties": self._equivalent_data_properties,
            "DisjointDataProperties": self._disjoint_data_properties,
            "DataPropertyDomain": self._data_domain,
            "ClassAssertion": self._class_assertion,
            "ObjectPropertyAssertion": self._object_assertion,
            "DataPropertyAssertion": self._data_assertion,
        }

    # -- token helpers -----------------------------------------------------

    def peek(self) -> Optional[Token]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else Token("", "", 1, 1)
            raise OfnSyntaxError("unexpected end of input", last.line, last.column)
        self.pos += 1
        return tok

    def expect(self, lexeme: str) -> Token:
        tok = self.next()
        if tok.lexeme != lexeme or tok.kind not in (lexer.PUNCT, lexer.KEYWORD):
            raise OfnSyntaxError(f"expected {lexeme!r}, found {tok.lexeme!r}", tok.line, tok.column)
        return tok

    def at(self, lexeme: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.lexeme == lexeme and tok.kind in (lexer.PUNCT, lexer.KEYWORD)

    def skip_balanced(self) -> None:
        """Skip from just after a head keyword past its matching ')'."""
        self.expect("(")
        depth = 1
        while depth:
            tok = self.next()
            if tok.kind == lexer.PUNCT and tok.lexeme == "(":
                depth += 1
            elif tok.kind == lexer.PUNCT and tok.lexeme == ")":
                depth -= 1

    # -- document ----------------------------------------------------------

    def document(self) -> Ontology:
        while self.at("Prefix"):
            self.next()
            self.expect("(")
            name = self.next()
            if name.kind != lexer.PNAME or not name.lexeme.endswith(":"):
                raise OfnSyntaxError("expected prefix name", name.line, name.column)
            self.expect("=")
            ns = self.next()
            if ns.kind != lexer.IRI:
                raise OfnSyntaxError("expected namespace IRI", ns.line, ns.column)
            self.expect(")")
            self.prefixes[name.lexeme[:-1]] = ns.lexeme[1:-1]

        tok = self.peek()
        if tok is None:
            raise OfnSyntaxError("missing Ontology(...)", 1, 1)
        self.expect("Ontology")
        self.expect("(")
        iri = None
        tok = self.peek()
        if tok is not None and tok.kind in (lexer.IRI, lexer.PNAME):
            iri = self.iri()
        axioms = []
        while not self.at(")"):
            ax = self.axiom()
            if ax is not None:
                axioms.append(ax)
        self.expect(")")
        tok = self.peek()
        if tok is not None:
            raise OfnSyntaxError("trailing content after Ontology(...)", tok.line, tok.column)
        return Ontology(iri, dict(self.prefixes), axioms, self.warnings)

    def axiom(self):
        head = self.next()
        if head.kind != lexer.KEYWORD:
            raise OfnSyntaxError(f"expected axiom keyword, found {head.lexeme!r}", head.line, head.column)
        handler = self._axioms.get(head.lexeme)
        start = self.pos
        if handler is None:
            if self.mode == STRICT:
                raise OfnSyntaxError(f"unknown axiom keyword {head.lexeme!r}", head.line, head.column)
            self.skip_balanced()
            self.warnings.append(
                ParseWarning(head.line, head.column, f"skipped unsupported axiom {head.lexeme}")
            )
            return None
        try:
            return handler(head)
        except _Unsupported as exc:
            if self.mode == STRICT:
                raise
            self.pos = start
            self.skip_balanced()
            self.warnings.append(
                ParseWarning(head.line, head.column, f"skipped {head.lexeme}: {exc.message}")
            )
            return None

    # -- terminals ---------------------------------------------------------

    def iri(self) -> Iri:
        tok = self.next()
        if tok.kind == lexer.IRI:
            return Iri(tok.lexeme[1:-1])
        if tok.kind == lexer.PNAME:
            prefix, _, local = tok.lexeme.partition(":")
            if prefix not in self.prefixes:
                raise OfnSyntaxError(f"unknown prefix {prefix + ':'!r}", tok.line, tok.column)
            return Iri(self.prefixes[prefix] + local)
        raise OfnSyntaxError(f"expected IRI, found {tok.lexeme!r}", tok.line, tok.column)

    def literal(self) -> Literal:
        tok = self.next()
        if tok.kind != lexer.STRING:
            raise OfnSyntaxError(f"expected literal, found {tok.lexeme!r}", tok.line, tok.column)
        text = unquote(tok.lexeme)
        nxt = self.peek()
        if nxt is not None and nxt.kind == lexer.DATATYPE_MARKER:
            self.next()
            return Literal(text, self.iri())
        if nxt is not None and nxt.kind == lexer.PNAME and nxt.lexeme.startswith("@"):
            raise _Unsupported("language tags", nxt.line, nxt.column)
        return Literal(text, XSD_STRING)

    def integer(self) -> int:
        tok = self.next()
        if tok.kind != lexer.INTEGER:
            raise OfnSyntaxError(f"expected integer, found {tok.lexeme!r}", tok.line, tok.column)
        return int(tok.lexeme)

    # -- expressions -------------------------------------------------------

    def prop(self):
        tok = self.peek()
        if tok is not None and tok.kind == lexer.KEYWORD:
            if tok.lexeme != "ObjectInverseOf":
                raise _Unsupported(f"property expression {tok.lexeme}", tok.line, tok.column)
            self.next()
            self.expect("(")
            inner = self.peek()
            if inner is not None and inner.kind == lexer.KEYWORD:
                raise OfnSyntaxError("nested ObjectInverseOf", inner.line, inner.column)
            iri = self.iri()
            self.expect(")")
            return ObjectInverseOf(iri)
        return ObjectProperty(self.iri())

    def class_expr(self):
        tok = self.peek()
        if tok is None:
            self.next()
        if tok.kind != lexer.KEYWORD:
            iri = self.iri()
            return Thing() if iri == OWL_THING else ClassName(iri)
        head = self.next()
        kw = head.lexeme
        if kw in ("ObjectUnionOf", "ObjectIntersectionOf"):
            self.expect("(")
            members = []
            while not self.at(")"):
                members.append(self.class_expr())
            self.expect(")")
            if len(members) < 2:
                raise OfnSyntaxError(f"{kw} needs at least 2 operands", head.line, head.column)
            cls = ObjectUnionOf if kw == "ObjectUnionOf" else ObjectIntersectionOf
            return cls(tuple(members))
        if kw == "ObjectSomeValuesFrom":
            self.expect("(")
            p = self.prop()
            filler = self.class_expr()
            self.expect(")")
            return ObjectSomeValuesFrom(p, filler)
        if kw == "DataSomeValuesFrom":
            self.expect("(")
            d = self.iri()
            rng = self.peek()
            if rng is not None and rng.kind == lexer.KEYWORD:
                raise _Unsupported(f"data range {rng.lexeme}", rng.line, rng.column)
            dr = self.iri()
            self.expect(")")
            return DataSomeValuesFrom(d, dr)
        if kw in ("ObjectMinCardinality", "ObjectMaxCardinality"):
            self.expect("(")
            n = self.integer()
            p = self.prop()
            if not self.at(")"):
                t = self.peek()
                raise _Unsupported("qualified cardinality", t.line, t.column)
            self.expect(")")
            cls = ObjectMinCardinality if kw == "ObjectMinCardinality" else ObjectMaxCardinality
            return cls(n, p)
        raise _Unsupported(f"class expression {kw}", head.line, head.column)

    def _n_ary(self, head: Token, item: Callable, minimum: int = 2) -> tuple:
        self.expect("(")
        items = []
        while not self.at(")"):
            items.append(item())
        self.expect(")")
        if len(items) < minimum:
            raise OfnSyntaxError(
                f"{head.lexeme} needs at least {minimum} operands, got {len(items)}",
                head.line,
                head.column,
            )
        return tuple(items)

    # -- axioms ------------------------------------------------------------

    @staticmethod
    def _loc(head: Token) -> SourceLoc:
        return SourceLoc(head.line, head.column)

    def _declaration(self, head: Token):
        self.expect("(")
        kind = self.next()
        if kind.kind != lexer.KEYWORD:
            raise OfnSyntaxError("expected entity kind", kind.line, kind.column)
        if kind.lexeme not in DECLARATION_KINDS:
            raise _Unsupported(f"declaration of {kind.lexeme}", kind.line, kind.column)
        self.expect("(")
        iri = self.iri()
        self.expect(")")
        self.expect(")")
        return Declaration(kind.lexeme, iri, self._loc(head))

    def _subclassof(self, head: Token):
        self.expect("(")
        sub = self.class_expr()
        sup = self.class_expr()
        self.expect(")")
        return SubClassOf(sub, sup, self._loc(head))

    def _equivalent_classes(self, head: Token):
        return EquivalentClasses(self._n_ary(head, self.class_expr), self._loc(head))

    def _disjoint_classes(self, head: Token):
        return DisjointClasses(self._n_ary(head, self.class_expr), self._loc(head))

    def _sub_object_property(self, head: Token):
        self.expect("(")
        sub = self.prop()
        sup = self.prop()
        self.expect(")")
        return SubObjectPropertyOf(sub, sup, self._loc(head))

    def _object_domain(self, head: Token):
        self.expect("(")
        p = self.iri()
        c = self.class_expr()
        self.expect(")")
        return ObjectPropertyDomain(p, c, self._loc(head))

    def _object_range(self, head: Token):
        self.expect("(")
        p = self.iri()
        c = self.class_expr()
        self.expect(")")
        return ObjectPropertyRange(p, c, self._loc(head))

    def _sub_data_property(self, head: Token):
        self.expect("(")
        sub = self.iri()
        sup = self.iri()
        self.expect(")")
        return SubDataPropertyOf(sub, sup, self._loc(head))

    def _equivalent_data_properties(self, head: Token):
        return EquivalentDataProperties(self._n_ary(head, self.iri), self._loc(head))

    def _disjoint_data_properties(self, head: Token):
        return DisjointDataProperties(self._n_ary(head, self.iri), self._loc(head))

    def _data_domain(self, head: Token):
        self.expect("(")
        d = self.iri()
        c = self.class_expr()
        self.expect(")")
        return DataPropertyDomain(d, c, self._loc(head))

    def _class_assertion(self, head: Token):
        self.expect("(")
        c = self.class_expr()
        ind = self.iri()
        self.expect(")")
        return ClassAssertion(c, ind, self._loc(head))

    def _object_assertion(self, head: Token):
        self.expect("(")
        p = self.iri()
        s = self.iri()
        o = self.iri()
        self.expect(")")
        return ObjectPropertyAssertion(p, s, o, self._loc(head))

    def _data_assertion(self, head: Token):
        self.expect("(")
        d = self.iri()
        s = self.iri()
        v = self.literal()
        self.expect(")")
        return DataPropertyAssertion(d, s, v, self._loc(head))
