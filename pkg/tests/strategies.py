"""Hypothesis strategies for random ontologies and knowledge bases."""

from __future__ import annotations

from hypothesis import strategies as st

from ofnkb.ofs.model import (
    RDFS_LITERAL,
    XSD_INTEGER,
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
    SubClassOf,
    SubDataPropertyOf,
    SubObjectPropertyOf,
    Thing,
)

NS = "http://example.org/t#"
PREFIXES = {"": NS, "xsd": "http://www.w3.org/2001/XMLSchema#", "rdfs": "http://www.w3.org/2000/01/rdf-schema#"}


def iri(name: str) -> Iri:
    return Iri(NS + name)


def names(prefix: str, n: int) -> list[Iri]:
    return [iri(f"{prefix}{i}") for i in range(n)]


def vocabulary(classes=12, props=8, data=3, individuals=20):
    return {
        "C": names("C", classes),
        "P": names("p", props),
        "D": names("d", data),
        "I": names("i", individuals),
    }


@st.composite
def literals(draw, pool=("a", "b", "Poggi", "1820")):
    lex = draw(st.sampled_from(pool))
    dt = draw(st.sampled_from([RDFS_LITERAL, XSD_STRING, XSD_INTEGER]))
    return Literal(lex, dt)


@st.composite
def tbox_axioms(draw, v):
    cls = st.sampled_from(v["C"]).map(ClassName)
    prop = st.sampled_from(v["P"])
    pexpr = st.one_of(prop.map(ObjectProperty), prop.map(ObjectInverseOf))
    filler = st.one_of(st.just(Thing()), cls)
    some = st.builds(ObjectSomeValuesFrom, pexpr, filler)
    dsome = st.sampled_from(v["D"]).map(lambda d: DataSomeValuesFrom(d, RDFS_LITERAL))
    pair = st.lists(cls, min_size=2, max_size=3, unique=True).map(tuple)
    kind = draw(st.integers(0, 13))
    if kind == 0:
        return SubClassOf(draw(cls), draw(cls))
    if kind == 1:
        return SubClassOf(draw(cls), ObjectIntersectionOf(draw(pair)))
    if kind == 2:
        return EquivalentClasses((draw(cls), ObjectUnionOf(draw(pair))))
    if kind == 3:
        return EquivalentClasses((draw(cls), draw(some)))
    if kind == 4:
        return EquivalentClasses((draw(cls), draw(dsome)))
    if kind == 5:
        return SubClassOf(ObjectUnionOf((draw(some), draw(cls))), draw(cls))
    if kind == 6:
        return ObjectPropertyDomain(draw(prop), draw(cls))
    if kind == 7:
        return ObjectPropertyRange(draw(prop), draw(st.one_of(cls, pair.map(ObjectUnionOf))))
    if kind == 8:
        return SubObjectPropertyOf(ObjectProperty(draw(prop)), draw(pexpr))
    if kind == 9:
        d = st.sampled_from(v["D"])
        return SubDataPropertyOf(draw(d), draw(d))
    if kind == 10:
        return EquivalentDataProperties(tuple(draw(st.lists(st.sampled_from(v["D"]), min_size=2, max_size=2))))
    if kind == 11:
        return DataPropertyDomain(draw(st.sampled_from(v["D"])), draw(cls))
    if kind == 12:
        return DisjointClasses(draw(pair))
    n = draw(st.integers(0, 3))
    card = ObjectMinCardinality if draw(st.booleans()) else ObjectMaxCardinality
    return SubClassOf(draw(cls), card(n, draw(pexpr)))


@st.composite
def abox_axioms(draw, v):
    ind = st.sampled_from(v["I"])
    kind = draw(st.integers(0, 2))
    if kind == 0:
        return ClassAssertion(ClassName(draw(st.sampled_from(v["C"]))), draw(ind))
    if kind == 1:
        return ObjectPropertyAssertion(draw(st.sampled_from(v["P"])), draw(ind), draw(ind))
    return DataPropertyAssertion(draw(st.sampled_from(v["D"])), draw(ind), draw(literals()))


@st.composite
def ontologies(draw, max_tbox=12, max_abox=25, min_abox=0, **sizes):
    """A small ontology whose vocabulary keeps object and data properties apart."""
    v = vocabulary(**sizes)
    tbox = draw(st.lists(tbox_axioms(v), max_size=max_tbox))
    abox = draw(st.lists(abox_axioms(v), min_size=min_abox, max_size=max_abox))
    return Ontology(iri("onto"), dict(PREFIXES), tbox + abox)


def split_abox(ont: Ontology) -> tuple[list, list]:
    asserted = (ClassAssertion, ObjectPropertyAssertion, DataPropertyAssertion)
    tbox = [a for a in ont.axioms if not isinstance(a, asserted)]
    abox = [a for a in ont.axioms if isinstance(a, asserted)]
    return tbox, abox


# --- fuzz ontologies for the round trip -------------------------------------

_LOCAL = st.text(alphabet="abcxyzàèéìòùABC_019-", min_size=1, max_size=8).filter(lambda s: not s[0].isdigit())
_LEXICAL = st.text(alphabet=st.characters(blacklist_categories=("Cs",), max_codepoint=0x2FF), max_size=12)


@st.composite
def fuzz_iris(draw):
    ns = draw(st.sampled_from([NS, "http://example.org/other/", "urn:x:"]))
    return Iri(ns + draw(_LOCAL))


@st.composite
def fuzz_class_exprs(draw, depth=3):
    if depth == 0 or draw(st.integers(0, 3)) == 0:
        return draw(st.one_of(st.just(Thing()), fuzz_iris().map(ClassName)))
    sub = fuzz_class_exprs(depth - 1)
    prop = st.one_of(fuzz_iris().map(ObjectProperty), fuzz_iris().map(ObjectInverseOf))
    kind = draw(st.integers(0, 5))
    if kind == 0:
        return ObjectUnionOf(tuple(draw(st.lists(sub, min_size=2, max_size=3))))
    if kind == 1:
        return ObjectIntersectionOf(tuple(draw(st.lists(sub, min_size=2, max_size=3))))
    if kind == 2:
        return ObjectSomeValuesFrom(draw(prop), draw(sub))
    if kind == 3:
        return DataSomeValuesFrom(draw(fuzz_iris()), RDFS_LITERAL)
    if kind == 4:
        return ObjectMinCardinality(draw(st.integers(0, 9)), draw(prop))
    return ObjectMaxCardinality(draw(st.integers(0, 9)), draw(prop))


@st.composite
def fuzz_axioms(draw):
    c = fuzz_class_exprs()
    i = fuzz_iris()
    prop = st.one_of(i.map(ObjectProperty), i.map(ObjectInverseOf))
    two = st.lists(c, min_size=2, max_size=3).map(tuple)
    kind = draw(st.integers(0, 13))
    builders = [
        lambda: Declaration(draw(st.sampled_from(["Class", "ObjectProperty", "DataProperty", "NamedIndividual"])), draw(i)),
        lambda: SubClassOf(draw(c), draw(c)),
        lambda: EquivalentClasses(draw(two)),
        lambda: DisjointClasses(draw(two)),
        lambda: SubObjectPropertyOf(draw(prop), draw(prop)),
        lambda: ObjectPropertyDomain(draw(i), draw(c)),
        lambda: ObjectPropertyRange(draw(i), draw(c)),
        lambda: SubDataPropertyOf(draw(i), draw(i)),
        lambda: EquivalentDataProperties(tuple(draw(st.lists(i, min_size=2, max_size=3)))),
        lambda: DisjointDataProperties(tuple(draw(st.lists(i, min_size=2, max_size=3)))),
        lambda: DataPropertyDomain(draw(i), draw(c)),
        lambda: ClassAssertion(draw(c), draw(i)),
        lambda: ObjectPropertyAssertion(draw(i), draw(i), draw(i)),
        lambda: DataPropertyAssertion(draw(i), draw(i), Literal(draw(_LEXICAL), draw(i))),
    ]
    return builders[kind]()


@st.composite
def fuzz_ontologies(draw):
    prefixes = dict(PREFIXES)
    if draw(st.booleans()):
        prefixes["o"] = "http://example.org/other/"
    onto_iri = draw(st.one_of(st.none(), fuzz_iris()))
    return Ontology(onto_iri, prefixes, draw(st.lists(fuzz_axioms(), max_size=15)))
