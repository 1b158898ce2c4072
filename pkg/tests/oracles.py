"""Reference implementations used to check the real ones.

None of these import the compiled KB or the reasoner; they work from raw
text or from parsed axioms and favour obviousness over speed.
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from ofnkb.ofs.model import (
    RDFS_LITERAL,
    ClassAssertion,
    ClassName,
    DataPropertyAssertion,
    DataPropertyDomain,
    DataSomeValuesFrom,
    EquivalentClasses,
    EquivalentDataProperties,
    ObjectIntersectionOf,
    ObjectInverseOf,
    ObjectProperty,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    ObjectSomeValuesFrom,
    ObjectUnionOf,
    SubClassOf,
    SubDataPropertyOf,
    SubObjectPropertyOf,
    Thing,
    literals_match,
)

AXIOM_KEYWORDS = (
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
)


# --- text tally -------------------------------------------------------------


def keyword_tally(text: str) -> dict:
    """Count axioms and declared entities by regex over the raw file.

    Relies on the shipped layout: one axiom per line, each starting with
    its keyword.  Prefixes ``modeus:`` and ``:`` share a namespace in the
    corpus, so names are compared by local part.
    """
    heads = re.findall(r"^\s*([A-Za-z]+)\(", text, flags=re.M)
    axioms = sum(1 for h in heads if h in AXIOM_KEYWORDS)
    entities = {}
    for kind in ("Class", "ObjectProperty", "DataProperty", "NamedIndividual"):
        names = re.findall(rf"^\s*Declaration\({kind}\(([^)\s]+)\)\)", text, flags=re.M)
        entities[kind] = {_local(n) for n in names}
    return {"axioms": axioms, "entities": entities}


def _local(name: str) -> str:
    if name.startswith("<"):
        return re.split(r"[#/]", name[1:-1])[-1]
    return name.split(":", 1)[1]


# --- subsumption by matrix squaring ----------------------------------------


def _named(c):
    return [c.iri] if isinstance(c, ClassName) else []


def subsumption_edges(axioms) -> set:
    """Direct named-to-named subsumptions stated by the axioms."""
    edges = set()

    def sub(lhs, rhs):
        lhs_names = [m.iri for m in lhs.members if isinstance(m, ClassName)] if isinstance(lhs, ObjectUnionOf) else _named(lhs)
        rhs_names = [m.iri for m in rhs.members if isinstance(m, ClassName)] if isinstance(rhs, ObjectIntersectionOf) else _named(rhs)
        edges.update(itertools.product(lhs_names, rhs_names))

    for ax in axioms:
        if isinstance(ax, SubClassOf):
            sub(ax.sub, ax.sup)
        elif isinstance(ax, EquivalentClasses):
            for a, b in itertools.permutations(ax.members, 2):
                sub(a, b)
    return edges


def matrix_closure(classes, edges) -> dict:
    """Reflexive-transitive closure by repeated boolean squaring."""
    classes = sorted(classes, key=str)
    index = {c: i for i, c in enumerate(classes)}
    n = len(classes)
    m = np.eye(n, dtype=bool)
    for a, b in edges:
        m[index[a], index[b]] = True
    while True:
        nxt = m | ((m.astype(np.int64) @ m.astype(np.int64)) > 0)
        if (nxt == m).all():
            break
        m = nxt
    return {c: {classes[j] for j in np.flatnonzero(m[i])} for i, c in enumerate(classes)}


# --- naive materialization --------------------------------------------------


def _prop_ext(edges, pe):
    if isinstance(pe, ObjectInverseOf):
        return {(o, s) for (p, s, o) in edges if p == pe.iri}
    return {(s, o) for (p, s, o) in edges if p == pe.iri}


def _instances(c, members, edges, values):
    """Individuals that fall under a trigger-shaped class expression."""
    if isinstance(c, ClassName):
        return {i for (i, k) in members if k == c.iri}
    if isinstance(c, ObjectUnionOf):
        out = set()
        for m in c.members:
            out |= _instances(m, members, edges, values)
        return out
    if isinstance(c, ObjectSomeValuesFrom):
        pairs = _prop_ext(edges, c.prop)
        if isinstance(c.filler, Thing):
            return {s for s, _ in pairs}
        if isinstance(c.filler, ClassName):
            return {s for s, o in pairs if (o, c.filler.iri) in members}
        return set()
    if isinstance(c, DataSomeValuesFrom) and c.datarange == RDFS_LITERAL:
        return {s for (d, s, _) in values if d == c.prop}
    return set()


def _targets(c):
    if isinstance(c, ClassName):
        return [c.iri]
    if isinstance(c, ObjectIntersectionOf):
        return [t for m in c.members for t in _targets(m)]
    return []


def naive_closure(axioms) -> set:
    """Apply every axiom everywhere until nothing changes.

    Facts are tuples ``("member", ind, cls)``, ``("edge", p, s, o)`` and
    ``("data", d, s, literal)`` over full IRIs.
    """
    members, edges, values = set(), set(), set()
    for ax in axioms:
        if isinstance(ax, ClassAssertion):
            members.add((ax.individual, ax.cls.iri))
        elif isinstance(ax, ObjectPropertyAssertion):
            edges.add((ax.prop, ax.subject, ax.object))
        elif isinstance(ax, DataPropertyAssertion):
            values.add((ax.prop, ax.subject, ax.value))

    inclusions = []
    for ax in axioms:
        if isinstance(ax, SubClassOf):
            inclusions.append((ax.sub, ax.sup))
        elif isinstance(ax, EquivalentClasses):
            inclusions.extend(itertools.permutations(ax.members, 2))
        elif isinstance(ax, ObjectPropertyDomain):
            inclusions.append((ObjectSomeValuesFrom(ObjectProperty(ax.prop), Thing()), ax.cls))
        elif isinstance(ax, ObjectPropertyRange):
            inclusions.append((ObjectSomeValuesFrom(ObjectInverseOf(ax.prop), Thing()), ax.cls))
        elif isinstance(ax, DataPropertyDomain):
            inclusions.append((DataSomeValuesFrom(ax.prop, RDFS_LITERAL), ax.cls))

    changed = True
    while changed:
        before = (len(members), len(edges), len(values))
        for lhs, rhs in inclusions:
            targets = _targets(rhs)
            if not targets:
                continue
            for i in _instances(lhs, members, edges, values):
                for t in targets:
                    members.add((i, t))
        for ax in axioms:
            if isinstance(ax, SubObjectPropertyOf):
                for s, o in list(_prop_ext(edges, ax.sub)):
                    if isinstance(ax.sup, ObjectInverseOf):
                        edges.add((ax.sup.iri, o, s))
                    else:
                        edges.add((ax.sup.iri, s, o))
            elif isinstance(ax, SubDataPropertyOf):
                for d, s, v in list(values):
                    if d == ax.sub:
                        values.add((ax.sup, s, v))
            elif isinstance(ax, EquivalentDataProperties):
                for d, s, v in list(values):
                    if d in ax.members:
                        for e in ax.members:
                            values.add((e, s, v))
        changed = before != (len(members), len(edges), len(values))

    return (
        {("member", i, c) for i, c in members}
        | {("edge", p, s, o) for p, s, o in edges}
        | {("data", d, s, v) for d, s, v in values}
    )


# --- nested-loop query evaluation ------------------------------------------


def brute_force_query(query, facts, plain=True) -> set:
    """Try every assignment of the query's variables over the term universe.

    ``facts`` uses the tuple shape of :func:`naive_closure`.  A variable in
    object position of a data pattern must equal the stored literal; a
    literal written in the query matches under the plain-literal rule.
    """
    from ofnkb.ofs.model import RDF_TYPE, Literal
    from ofnkb.sparql import Var

    universe = set()
    for f in facts:
        universe.update(x for x in f[1:])
    universe = sorted(universe, key=lambda t: (isinstance(t, Literal), str(t), str(getattr(t, "datatype", ""))))
    variables = []
    for p in query.patterns:
        for t in (p.subject, p.object):
            if isinstance(t, Var) and t not in variables:
                variables.append(t)

    def holds(p, env):
        def val(t):
            return env[t.name] if isinstance(t, Var) else t

        s, o = val(p.subject), val(p.object)
        if p.predicate == RDF_TYPE:
            return ("member", s, o) in facts
        if ("edge", p.predicate, s, o) in facts:
            return True
        if isinstance(o, Literal):
            if isinstance(p.object, Var):
                return ("data", p.predicate, s, o) in facts
            return any(
                f[0] == "data" and f[1] == p.predicate and f[2] == s and literals_match(o, f[3], plain) for f in facts
            )
        return False

    rows = set()
    for combo in itertools.product(universe, repeat=len(variables)):
        env = {v.name: x for v, x in zip(variables, combo)}
        if all(holds(p, env) for p in query.patterns):
            rows.add(tuple(env[v.name] for v in query.select))
    return rows
