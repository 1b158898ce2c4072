"""Indexed knowledge base built from parsed ontologies.

Every axiom is compiled into one of three things: a derivation rule the
reasoner fires, a constraint the linter checks, or a clash condition.  All
indices are a pure function of the deduplicated axiom set.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Union

from .ofs.model import (
    RDFS_LITERAL,
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
    prop_parts,
)


class KbError(ValueError):
    pass


# --- terms ----------------------------------------------------------------


class TermTable:
    """Dense integer handles for IRIs, numbered in sorted IRI order.

    Numbering by sort order makes ids independent of merge order and makes
    integer comparison agree with IRI comparison.
    """

    def __init__(self, iris: Iterable[Iri]):
        self._iris: tuple[Iri, ...] = tuple(sorted(set(iris)))
        self._ids = {iri: i for i, iri in enumerate(self._iris)}

    def __len__(self) -> int:
        return len(self._iris)

    def __contains__(self, iri: Iri) -> bool:
        return iri in self._ids

    def intern(self, iri: Iri) -> int:
        try:
            return self._ids[iri]
        except KeyError:
            raise KbError(f"unknown term {iri}") from None

    def lookup(self, iri: Iri) -> Optional[int]:
        return self._ids.get(iri)

    def resolve(self, tid: int) -> Iri:
        return self._iris[tid]


# --- facts ----------------------------------------------------------------


class Member(NamedTuple):
    ind: int
    cls: int


class Edge(NamedTuple):
    prop: int
    subj: int
    obj: int


class Value(NamedTuple):
    prop: int
    subj: int
    lit: Literal


Fact = Union[Member, Edge, Value]


def fact_key(f: Fact) -> tuple:
    """Total order over facts of all three kinds."""
    if isinstance(f, Member):
        return (0, f.ind, f.cls)
    if isinstance(f, Edge):
        return (1, f.prop, f.subj, f.obj)
    return (2, f.prop, f.subj, f.lit.lexical, f.lit.datatype.full)


# --- compiled axioms --------------------------------------------------------


@dataclass(frozen=True)
class ExistsRule:
    """``trigger ⊑ cls`` where the trigger is an edge or a data value.

    ``data`` rules fire on values of ``prop`` (``datarange`` filters them);
    object rules fire on edges of ``prop`` and type the subject, or the
    object when ``inverse`` is set.  A ``filler`` adds a second premise: the
    node at the far end must be a member of it.
    """

    rule: str
    prop: int
    inverse: bool
    data: bool
    cls: int
    filler: Optional[int] = None
    datarange: Optional[Iri] = None


@dataclass(frozen=True)
class ClassPattern:
    cls: int


@dataclass(frozen=True)
class EdgePattern:
    """Focus on the subject of ``prop`` edges, or on the object if ``inverse``."""

    prop: int
    inverse: bool
    filler: Optional[int] = None


@dataclass(frozen=True)
class DataPattern:
    prop: int


Trigger = Union[ClassPattern, EdgePattern, DataPattern]


@dataclass(frozen=True)
class Requirement:
    """One way of satisfying a constraint at a focus node."""

    kind: str  # "edge" | "data" | "member"
    prop: Optional[int] = None
    inverse: bool = False
    cls: Optional[int] = None


@dataclass(frozen=True)
class Constraint:
    """Every focus node matched by ``trigger`` must meet one alternative."""

    trigger: Trigger
    alternatives: tuple[Requirement, ...]


@dataclass(frozen=True)
class Cardinality:
    trigger: Trigger
    prop: int
    inverse: bool
    min: Optional[int] = None
    max: Optional[int] = None


@dataclass
class KnowledgeBase:
    ontology_iris: list[Iri]
    prefixes: dict[str, str]
    terms: TermTable
    axioms: tuple
    classes: frozenset[int]
    object_properties: frozenset[int]
    data_properties: frozenset[int]
    individuals: frozenset[int]
    subclass: dict[int, frozenset[int]]
    union_supers: dict[int, frozenset[int]]
    exists_rules: tuple[ExistsRule, ...]
    subprops: dict[int, frozenset[int]]
    inverse_subprops: dict[int, frozenset[int]]
    equivalent_data: dict[int, frozenset[int]]
    disjoint_classes: tuple[tuple[int, int], ...]
    disjoint_data: tuple[tuple[int, int], ...]
    constraints: tuple[Constraint, ...]
    cardinalities: tuple[Cardinality, ...]
    asserted: frozenset
    skipped: list[str] = field(default_factory=list)

    def iri(self, tid: int) -> Iri:
        return self.terms.resolve(tid)

    def term(self, iri: Iri) -> Optional[int]:
        return self.terms.lookup(iri)


def direct_superclasses(kb: KnowledgeBase, cls: Union[int, Iri]) -> set[int]:
    tid = _as_class(kb, cls)
    return set(kb.subclass.get(tid, ()))


def mandatory_participations(kb: KnowledgeBase, cls: Union[int, Iri]) -> list[Constraint]:
    tid = _as_class(kb, cls)
    return [c for c in kb.constraints if c.trigger == ClassPattern(tid)]


def _as_class(kb: KnowledgeBase, cls: Union[int, Iri]) -> int:
    tid = kb.terms.lookup(cls) if isinstance(cls, Iri) else cls
    if tid is None or tid not in kb.classes:
        raise KbError(f"unknown class {cls}")
    return tid


# --- building ---------------------------------------------------------------


def _dedup(ontologies: Iterable[Ontology]) -> list:
    seen = set()
    out = []
    for onto in ontologies:
        for ax in onto.axioms:
            if ax not in seen:
                seen.add(ax)
                out.append(ax)
    return out


class _Collector:
    """First pass: sort IRIs into entity kinds and catch role conflicts."""

    def __init__(self):
        self.classes: set[Iri] = set()
        self.objprops: set[Iri] = set()
        self.dataprops: set[Iri] = set()
        self.individuals: set[Iri] = set()
        self.other: set[Iri] = set()

    def cls(self, c) -> None:
        if isinstance(c, ClassName):
            self.classes.add(c.iri)
        elif isinstance(c, (ObjectUnionOf, ObjectIntersectionOf)):
            for m in c.members:
                self.cls(m)
        elif isinstance(c, ObjectSomeValuesFrom):
            self.objprops.add(c.prop.iri)
            self.cls(c.filler)
        elif isinstance(c, DataSomeValuesFrom):
            self.dataprops.add(c.prop)
            self.other.add(c.datarange)
        elif isinstance(c, (ObjectMinCardinality, ObjectMaxCardinality)):
            self.objprops.add(c.prop.iri)

    def axiom(self, ax) -> None:
        if isinstance(ax, Declaration):
            {
                "Class": self.classes,
                "ObjectProperty": self.objprops,
                "DataProperty": self.dataprops,
                "NamedIndividual": self.individuals,
            }[ax.kind].add(ax.iri)
        elif isinstance(ax, SubClassOf):
            self.cls(ax.sub)
            self.cls(ax.sup)
        elif isinstance(ax, (EquivalentClasses, DisjointClasses)):
            for m in ax.members:
                self.cls(m)
        elif isinstance(ax, SubObjectPropertyOf):
            self.objprops.update((ax.sub.iri, ax.sup.iri))
        elif isinstance(ax, (ObjectPropertyDomain, ObjectPropertyRange)):
            self.objprops.add(ax.prop)
            self.cls(ax.cls)
        elif isinstance(ax, DataPropertyDomain):
            self.dataprops.add(ax.prop)
            self.cls(ax.cls)
        elif isinstance(ax, SubDataPropertyOf):
            self.dataprops.update((ax.sub, ax.sup))
        elif isinstance(ax, (EquivalentDataProperties, DisjointDataProperties)):
            self.dataprops.update(ax.members)
        elif isinstance(ax, ClassAssertion):
            if not isinstance(ax.cls, ClassName):
                where = f" at {ax.loc}" if ax.loc else ""
                raise KbError(f"complex class expression in ClassAssertion{where}")
            self.classes.add(ax.cls.iri)
            self.individuals.add(ax.individual)
        elif isinstance(ax, ObjectPropertyAssertion):
            self.objprops.add(ax.prop)
            self.individuals.update((ax.subject, ax.object))
        elif isinstance(ax, DataPropertyAssertion):
            self.dataprops.add(ax.prop)
            self.individuals.add(ax.subject)
            self.other.add(ax.value.datatype)

    def check(self) -> None:
        both = self.objprops & self.dataprops
        if both:
            first = min(both)
            raise KbError(f"{first} is used as both an object property and a data property")

    def all_iris(self) -> set[Iri]:
        return self.classes | self.objprops | self.dataprops | self.individuals | self.other


class _Compiler:
    def __init__(self, terms: TermTable):
        self.t = terms
        self.subclass: dict[int, set[int]] = defaultdict(set)
        self.union_supers: dict[int, set[int]] = defaultdict(set)
        self.exists: set[ExistsRule] = set()
        self.subprops: dict[int, set[int]] = defaultdict(set)
        self.inverse_subprops: dict[int, set[int]] = defaultdict(set)
        self.equivalent_data: dict[int, set[int]] = defaultdict(set)
        self.disjoint_classes: set[tuple[int, int]] = set()
        self.disjoint_data: set[tuple[int, int]] = set()
        self.constraints: set[Constraint] = set()
        self.cards: dict[tuple, list] = {}
        self.skipped: list[str] = []

    def id(self, iri: Iri) -> int:
        return self.t.intern(iri)

    # ``sub ⊑ sup`` for arbitrary supported expressions
    def sub(self, lhs, rhs, rule: str = "R-SUB", from_union: bool = False) -> None:
        if isinstance(lhs, ObjectUnionOf):
            for m in lhs.members:
                self.sub(m, rhs, rule, from_union=True)
            return
        if isinstance(rhs, ObjectIntersectionOf):
            for m in rhs.members:
                self.sub(lhs, m, rule, from_union)
            return
        if isinstance(rhs, Thing):
            return
        if isinstance(lhs, ClassName) and isinstance(rhs, ClassName):
            if from_union and rule == "R-UNI":
                self.union_supers[self.id(lhs.iri)].add(self.id(rhs.iri))
            else:
                self.subclass[self.id(lhs.iri)].add(self.id(rhs.iri))
            return
        trigger = self.trigger(lhs)
        if trigger is None:
            self.skipped.append(f"left-hand side {type(lhs).__name__} is outside the Horn fragment")
            return
        if isinstance(rhs, ClassName):
            if isinstance(trigger, ClassPattern):
                return
            self.exists_rule(lhs, self.id(rhs.iri), "R-SOME" if rule in ("R-SUB", "R-UNI") else rule)
            return
        if isinstance(rhs, (ObjectMinCardinality, ObjectMaxCardinality)):
            p, inv = prop_parts(rhs.prop)
            key = (trigger, self.id(p), inv)
            lo, hi = self.cards.get(key, (None, None))
            if isinstance(rhs, ObjectMinCardinality):
                lo = rhs.n if lo is None else max(lo, rhs.n)
            else:
                hi = rhs.n if hi is None else min(hi, rhs.n)
            self.cards[key] = (lo, hi)
            return
        alts = self.alternatives(rhs)
        if alts is None:
            self.skipped.append(f"right-hand side {type(rhs).__name__} is not checkable")
            return
        self.constraints.add(Constraint(trigger, alts))

    def trigger(self, c) -> Optional[Trigger]:
        if isinstance(c, ClassName):
            return ClassPattern(self.id(c.iri))
        if isinstance(c, ObjectSomeValuesFrom):
            p, inv = prop_parts(c.prop)
            filler = None
            if isinstance(c.filler, ClassName):
                filler = self.id(c.filler.iri)
            elif not isinstance(c.filler, Thing):
                return None
            return EdgePattern(self.id(p), inv, filler)
        if isinstance(c, DataSomeValuesFrom) and c.datarange == RDFS_LITERAL:
            return DataPattern(self.id(c.prop))
        return None

    def requirement(self, c) -> Optional[Requirement]:
        if isinstance(c, ClassName):
            return Requirement("member", cls=self.id(c.iri))
        if isinstance(c, ObjectSomeValuesFrom):
            p, inv = prop_parts(c.prop)
            if isinstance(c.filler, Thing):
                return Requirement("edge", self.id(p), inv)
            if isinstance(c.filler, ClassName):
                return Requirement("edge", self.id(p), inv, self.id(c.filler.iri))
            return None
        if isinstance(c, DataSomeValuesFrom) and c.datarange == RDFS_LITERAL:
            return Requirement("data", self.id(c.prop))
        return None

    def alternatives(self, c) -> Optional[tuple[Requirement, ...]]:
        members = c.members if isinstance(c, ObjectUnionOf) else (c,)
        reqs = [self.requirement(m) for m in members]
        if any(r is None for r in reqs):
            return None
        return tuple(sorted(set(reqs), key=_req_key))

    def exists_rule(self, lhs, cls: int, rule: str) -> None:
        if isinstance(lhs, ObjectSomeValuesFrom):
            p, inv = prop_parts(lhs.prop)
            filler = self.id(lhs.filler.iri) if isinstance(lhs.filler, ClassName) else None
            self.exists.add(ExistsRule(rule, self.id(p), inv, False, cls, filler))
        else:
            self.exists.add(ExistsRule(rule, self.id(lhs.prop), False, True, cls, datarange=lhs.datarange))

    def axiom(self, ax) -> None:
        if isinstance(ax, SubClassOf):
            self.sub(ax.sub, ax.sup)
        elif isinstance(ax, EquivalentClasses):
            for a in ax.members:
                for b in ax.members:
                    if a is not b:
                        # a named class defined as a union: members fall under it by R-UNI
                        rule = "R-UNI" if isinstance(a, ObjectUnionOf) and isinstance(b, ClassName) else "R-SUB"
                        self.sub(a, b, rule)
        elif isinstance(ax, DisjointClasses):
            named = sorted(self.id(m.iri) for m in ax.members if isinstance(m, ClassName))
            if len(named) != len(ax.members):
                self.skipped.append("DisjointClasses over complex expressions")
            for i, a in enumerate(named):
                for b in named[i + 1:]:
                    if a != b:
                        self.disjoint_classes.add((a, b))
        elif isinstance(ax, ObjectPropertyDomain):
            self.sub(ObjectSomeValuesFrom(ObjectProperty(ax.prop), Thing()), ax.cls, "R-DOM")
        elif isinstance(ax, ObjectPropertyRange):
            self.sub(ObjectSomeValuesFrom(ObjectInverseOf(ax.prop), Thing()), ax.cls, "R-RNG")
        elif isinstance(ax, DataPropertyDomain):
            self.sub(DataSomeValuesFrom(ax.prop, RDFS_LITERAL), ax.cls, "R-DOM")
        elif isinstance(ax, SubObjectPropertyOf):
            (p, pinv), (q, qinv) = prop_parts(ax.sub), prop_parts(ax.sup)
            p, q = self.id(p), self.id(q)
            if pinv == qinv:
                if p != q:
                    self.subprops[p].add(q)
            else:
                self.inverse_subprops[p].add(q)
        elif isinstance(ax, SubDataPropertyOf):
            if ax.sub != ax.sup:
                self.subprops[self.id(ax.sub)].add(self.id(ax.sup))
        elif isinstance(ax, EquivalentDataProperties):
            ids = [self.id(m) for m in ax.members]
            for a in ids:
                for b in ids:
                    if a != b:
                        self.equivalent_data[a].add(b)
        elif isinstance(ax, DisjointDataProperties):
            ids = sorted({self.id(m) for m in ax.members})
            for i, a in enumerate(ids):
                for b in ids[i + 1:]:
                    self.disjoint_data.add((a, b))


def build_kb(ontologies: Iterable[Ontology]) -> KnowledgeBase:
    ontologies = list(ontologies)
    axioms = _dedup(ontologies)
    col = _Collector()
    for ax in axioms:
        col.axiom(ax)
    col.check()
    terms = TermTable(col.all_iris())

    comp = _Compiler(terms)
    asserted = set()
    for ax in axioms:
        if isinstance(ax, ClassAssertion):
            asserted.add(Member(terms.intern(ax.individual), terms.intern(ax.cls.iri)))
        elif isinstance(ax, ObjectPropertyAssertion):
            asserted.add(Edge(terms.intern(ax.prop), terms.intern(ax.subject), terms.intern(ax.object)))
        elif isinstance(ax, DataPropertyAssertion):
            asserted.add(Value(terms.intern(ax.prop), terms.intern(ax.subject), ax.value))
        else:
            comp.axiom(ax)

    prefixes: dict[str, str] = {}
    for onto in ontologies:
        for label, ns in onto.prefixes.items():
            prefixes.setdefault(label, ns)
    iris = []
    for onto in ontologies:
        if onto.iri is not None and onto.iri not in iris:
            iris.append(onto.iri)

    def frozen(d):
        return {k: frozenset(v) for k, v in sorted(d.items()) if v}

    ids = lambda s: frozenset(terms.intern(i) for i in s)  # noqa: E731
    return KnowledgeBase(
        ontology_iris=sorted(iris),
        prefixes=dict(sorted(prefixes.items())),
        terms=terms,
        axioms=tuple(axioms),
        classes=ids(col.classes),
        object_properties=ids(col.objprops),
        data_properties=ids(col.dataprops),
        individuals=ids(col.individuals),
        subclass=frozen(comp.subclass),
        union_supers=frozen(comp.union_supers),
        exists_rules=tuple(sorted(comp.exists, key=_rule_sort_key)),
        subprops=frozen(comp.subprops),
        inverse_subprops=frozen(comp.inverse_subprops),
        equivalent_data=frozen(comp.equivalent_data),
        disjoint_classes=tuple(sorted(comp.disjoint_classes)),
        disjoint_data=tuple(sorted(comp.disjoint_data)),
        constraints=tuple(sorted(comp.constraints, key=_constraint_sort_key)),
        cardinalities=tuple(
            sorted(
                (Cardinality(t, p, inv, lo, hi) for (t, p, inv), (lo, hi) in comp.cards.items()),
                key=lambda c: (_trigger_sort_key(c.trigger), c.prop, c.inverse),
            )
        ),
        asserted=frozenset(asserted),
        skipped=comp.skipped,
    )


def _rule_sort_key(r: ExistsRule) -> tuple:
    return (r.rule, r.prop, r.inverse, r.data, r.cls, -1 if r.filler is None else r.filler,
            "" if r.datarange is None else r.datarange.full)


def _trigger_sort_key(t: Trigger) -> tuple:
    if isinstance(t, ClassPattern):
        return (0, t.cls, 0, -1)
    if isinstance(t, EdgePattern):
        return (1, t.prop, int(t.inverse), -1 if t.filler is None else t.filler)
    return (2, t.prop, 0, -1)


def _constraint_sort_key(c: Constraint) -> tuple:
    return (_trigger_sort_key(c.trigger), tuple(_req_key(r) for r in c.alternatives))


def _req_key(r: Requirement) -> tuple:
    return (r.kind, -1 if r.prop is None else r.prop, r.inverse, -1 if r.cls is None else r.cls)
