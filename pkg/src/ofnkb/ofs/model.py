"""Value types for the OWL 2 functional-syntax subset.

Every axiom and expression is an immutable dataclass.  Source locations are
carried on axioms but excluded from equality, so two parses of differently
laid-out text compare equal when they denote the same axioms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

OWL = "http://www.w3.org/2002/07/owl#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"


@dataclass(frozen=True, order=True)
class Iri:
    full: str

    def __str__(self) -> str:
        return f"<{self.full}>"


OWL_THING = Iri(OWL + "Thing")
RDF_TYPE = Iri(RDF + "type")
RDFS_LITERAL = Iri(RDFS + "Literal")
XSD_STRING = Iri(XSD + "string")
XSD_INTEGER = Iri(XSD + "integer")


@dataclass(frozen=True, order=True)
class Literal:
    lexical: str
    datatype: Iri = XSD_STRING

    @property
    def is_plain(self) -> bool:
        return self.datatype == RDFS_LITERAL


def literals_match(a: Literal, b: Literal, plain: bool = True) -> bool:
    """Equality on literals, optionally relaxed for ``rdfs:Literal`` typing.

    With ``plain`` on, a literal typed ``rdfs:Literal`` matches any literal
    with the same lexical form, in either direction.
    """
    if a.lexical != b.lexical:
        return False
    if a.datatype == b.datatype:
        return True
    return plain and (a.is_plain or b.is_plain)


@dataclass(frozen=True)
class SourceLoc:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


# --- property expressions -------------------------------------------------


@dataclass(frozen=True)
class ObjectProperty:
    iri: Iri


@dataclass(frozen=True)
class ObjectInverseOf:
    iri: Iri


PropertyExpression = Union[ObjectProperty, ObjectInverseOf]


def prop_parts(p: PropertyExpression) -> tuple[Iri, bool]:
    """Return ``(iri, inverse)`` for a property expression."""
    return p.iri, isinstance(p, ObjectInverseOf)


# --- class expressions ----------------------------------------------------


@dataclass(frozen=True)
class ClassName:
    iri: Iri


@dataclass(frozen=True)
class Thing:
    pass


@dataclass(frozen=True)
class ObjectUnionOf:
    members: tuple


@dataclass(frozen=True)
class ObjectIntersectionOf:
    members: tuple


@dataclass(frozen=True)
class ObjectSomeValuesFrom:
    prop: PropertyExpression
    filler: "ClassExpression"


@dataclass(frozen=True)
class DataSomeValuesFrom:
    prop: Iri
    datarange: Iri


@dataclass(frozen=True)
class ObjectMinCardinality:
    n: int
    prop: PropertyExpression


@dataclass(frozen=True)
class ObjectMaxCardinality:
    n: int
    prop: PropertyExpression


ClassExpression = Union[
    ClassName,
    Thing,
    ObjectUnionOf,
    ObjectIntersectionOf,
    ObjectSomeValuesFrom,
    DataSomeValuesFrom,
    ObjectMinCardinality,
    ObjectMaxCardinality,
]


# --- axioms ---------------------------------------------------------------

_loc = field(default=None, compare=False, repr=False)

DECLARATION_KINDS = ("Class", "ObjectProperty", "DataProperty", "NamedIndividual")


@dataclass(frozen=True)
class Declaration:
    kind: str
    iri: Iri
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class SubClassOf:
    sub: ClassExpression
    sup: ClassExpression
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class EquivalentClasses:
    members: tuple
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class DisjointClasses:
    members: tuple
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class SubObjectPropertyOf:
    sub: PropertyExpression
    sup: PropertyExpression
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class ObjectPropertyDomain:
    prop: Iri
    cls: ClassExpression
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class ObjectPropertyRange:
    prop: Iri
    cls: ClassExpression
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class SubDataPropertyOf:
    sub: Iri
    sup: Iri
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class EquivalentDataProperties:
    members: tuple
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class DisjointDataProperties:
    members: tuple
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class DataPropertyDomain:
    prop: Iri
    cls: ClassExpression
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class ClassAssertion:
    cls: ClassExpression
    individual: Iri
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class ObjectPropertyAssertion:
    prop: Iri
    subject: Iri
    object: Iri
    loc: Optional[SourceLoc] = _loc


@dataclass(frozen=True)
class DataPropertyAssertion:
    prop: Iri
    subject: Iri
    value: Literal
    loc: Optional[SourceLoc] = _loc


Axiom = Union[
    Declaration,
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    SubObjectPropertyOf,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    SubDataPropertyOf,
    EquivalentDataProperties,
    DisjointDataProperties,
    DataPropertyDomain,
    ClassAssertion,
    ObjectPropertyAssertion,
    DataPropertyAssertion,
]

AXIOM_TYPES = (
    Declaration,
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    SubObjectPropertyOf,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    SubDataPropertyOf,
    EquivalentDataProperties,
    DisjointDataProperties,
    DataPropertyDomain,
    ClassAssertion,
    ObjectPropertyAssertion,
    DataPropertyAssertion,
)


@dataclass(frozen=True)
class ParseWarning:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: warning: {self.message}"


@dataclass
class Ontology:
    iri: Optional[Iri]
    prefixes: dict[str, str] = field(default_factory=dict)
    axioms: list = field(default_factory=list)
    warnings: list = field(default_factory=list, compare=False, repr=False)
