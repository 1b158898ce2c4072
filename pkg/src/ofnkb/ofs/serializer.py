"""Deterministic writer for the functional-syntax subset."""

from __future__ import annotations

import re
from typing import Mapping

from .lexer import quote
from .model import (
    OWL_THING,
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
    SubClassOf,
    SubDataPropertyOf,
    SubObjectPropertyOf,
    Thing,
)

_LOCAL_OK = re.compile(r"[\w\-]*")


def abbreviate(iri: Iri, prefixes: Mapping[str, str]) -> str:
    """Shortest readable form of ``iri``: a prefixed name when one applies.

    The longest matching namespace wins; ties go to the shorter label, then
    the alphabetically first.  Falls back to ``<full>``.
    """
    best = None
    for label, ns in prefixes.items():
        if not ns or not iri.full.startswith(ns):
            continue
        local = iri.full[len(ns):]
        if not _LOCAL_OK.fullmatch(local):
            continue
        key = (-len(ns), len(label), label)
        if best is None or key < best[0]:
            best = (key, f"{label}:{local}")
    return best[1] if best else str(iri)


class _Writer:
    def __init__(self, prefixes: Mapping[str, str]):
        self.prefixes = prefixes

    def iri(self, iri: Iri) -> str:
        return abbreviate(iri, self.prefixes)

    def literal(self, lit: Literal) -> str:
        return f"{quote(lit.lexical)}^^{self.iri(lit.datatype)}"

    def prop(self, p) -> str:
        if isinstance(p, ObjectInverseOf):
            return f"ObjectInverseOf({self.iri(p.iri)})"
        return self.iri(p.iri)

    def cls(self, c) -> str:
        if isinstance(c, ClassName):
            return self.iri(c.iri)
        if isinstance(c, Thing):
            return self.iri(OWL_THING)
        if isinstance(c, ObjectUnionOf):
            return f"ObjectUnionOf({self.join(self.cls, c.members)})"
        if isinstance(c, ObjectIntersectionOf):
            return f"ObjectIntersectionOf({self.join(self.cls, c.members)})"
        if isinstance(c, ObjectSomeValuesFrom):
            return f"ObjectSomeValuesFrom({self.prop(c.prop)} {self.cls(c.filler)})"
        if isinstance(c, DataSomeValuesFrom):
            return f"DataSomeValuesFrom({self.iri(c.prop)} {self.iri(c.datarange)})"
        if isinstance(c, ObjectMinCardinality):
            return f"ObjectMinCardinality({c.n} {self.prop(c.prop)})"
        if isinstance(c, ObjectMaxCardinality):
            return f"ObjectMaxCardinality({c.n} {self.prop(c.prop)})"
        raise TypeError(f"not a class expression: {c!r}")

    @staticmethod
    def join(fn, items) -> str:
        return " ".join(fn(x) for x in items)

    def axiom(self, ax) -> str:
        name = type(ax).__name__
        if isinstance(ax, Declaration):
            body = f"{ax.kind}({self.iri(ax.iri)})"
        elif isinstance(ax, SubClassOf):
            body = f"{self.cls(ax.sub)} {self.cls(ax.sup)}"
        elif isinstance(ax, (EquivalentClasses, DisjointClasses)):
            body = self.join(self.cls, ax.members)
        elif isinstance(ax, SubObjectPropertyOf):
            body = f"{self.prop(ax.sub)} {self.prop(ax.sup)}"
        elif isinstance(ax, (ObjectPropertyDomain, ObjectPropertyRange, DataPropertyDomain)):
            body = f"{self.iri(ax.prop)} {self.cls(ax.cls)}"
        elif isinstance(ax, SubDataPropertyOf):
            body = f"{self.iri(ax.sub)} {self.iri(ax.sup)}"
        elif isinstance(ax, (EquivalentDataProperties, DisjointDataProperties)):
            body = self.join(self.iri, ax.members)
        elif isinstance(ax, ClassAssertion):
            body = f"{self.cls(ax.cls)} {self.iri(ax.individual)}"
        elif isinstance(ax, ObjectPropertyAssertion):
            body = f"{self.iri(ax.prop)} {self.iri(ax.subject)} {self.iri(ax.object)}"
        elif isinstance(ax, DataPropertyAssertion):
            body = f"{self.iri(ax.prop)} {self.iri(ax.subject)} {self.literal(ax.value)}"
        else:
            raise TypeError(f"not an axiom: {ax!r}")
        return f"{name}({body})"


def serialize(ontology: Ontology) -> str:
    w = _Writer(ontology.prefixes)
    lines = [f"Prefix({label}:=<{ns}>)" for label, ns in ontology.prefixes.items()]
    head = "Ontology(" + (str(ontology.iri) if ontology.iri is not None else "")
    lines.append(head)
    lines.extend(w.axiom(ax) for ax in ontology.axioms)
    lines.append(")")
    return "\n".join(lines) + "\n"
