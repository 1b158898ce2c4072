"""Materialization, clash detection, completeness lints and proofs."""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .kb import (
    Cardinality,
    ClassPattern,
    Constraint,
    DataPattern,
    Edge,
    EdgePattern,
    Fact,
    KnowledgeBase,
    Member,
    Requirement,
    Value,
    _constraint_sort_key,
    _trigger_sort_key,
    fact_key,
)
from .ofs.model import RDFS_LITERAL, Iri, literals_match

ASSERTED = "ASSERTED"
RULES = ("R-SUB", "R-DOM", "R-RNG", "R-INV", "R-SPO", "R-SOME", "R-EQD", "R-UNI")
_RULE_ORDER = {r: i for i, r in enumerate(RULES)}
# steps that only climb the class taxonomy; proofs prefer these
TAXONOMIC = frozenset({"R-SUB", "R-UNI"})

ONE_TO_ONE_PROPERTY = Iri("http://modeus.uniroma1.it/ontology#rappresentazione_particella_ha_intestazione")


@dataclass(frozen=True)
class ReasonerConfig:
    una: bool = True
    plain_literals: bool = True
    one_to_one_lint: bool = False


Support = tuple  # (rule, premises)


class Closure:
    """The materialized fact store with every support of every fact."""

    def __init__(self, kb: KnowledgeBase):
        self.kb = kb
        self.supports: dict[Fact, set[Support]] = {}
        self.members: dict[int, set[int]] = defaultdict(set)  # ind -> classes
        self.instances: dict[int, set[int]] = defaultdict(set)  # class -> inds
        self.out_edges: dict[tuple[int, int], set[int]] = defaultdict(set)  # (p, s) -> objects
        self.in_edges: dict[tuple[int, int], set[int]] = defaultdict(set)  # (p, o) -> subjects
        self.edges_by_prop: dict[int, set[tuple[int, int]]] = defaultdict(set)
        self.values: dict[tuple[int, int], set] = defaultdict(set)  # (d, s) -> literals
        self.values_by_prop: dict[int, set[tuple[int, object]]] = defaultdict(set)
        self._best: Optional[dict] = None

    def __contains__(self, fact: Fact) -> bool:
        return fact in self.supports

    def __len__(self) -> int:
        return len(self.supports)

    def __iter__(self):
        return iter(sorted(self.supports, key=fact_key))

    @property
    def facts(self) -> frozenset:
        return frozenset(self.supports)

    def is_asserted(self, fact: Fact) -> bool:
        return (ASSERTED, ()) in self.supports.get(fact, ())

    def add(self, fact: Fact, support: Support) -> bool:
        """Record ``support`` for ``fact``; True when the fact is new."""
        sup = self.supports.get(fact)
        if sup is not None:
            sup.add(support)
            return False
        self.supports[fact] = {support}
        if isinstance(fact, Member):
            self.members[fact.ind].add(fact.cls)
            self.instances[fact.cls].add(fact.ind)
        elif isinstance(fact, Edge):
            self.out_edges[(fact.prop, fact.subj)].add(fact.obj)
            self.in_edges[(fact.prop, fact.obj)].add(fact.subj)
            self.edges_by_prop[fact.prop].add((fact.subj, fact.obj))
        else:
            self.values[(fact.prop, fact.subj)].add(fact.lit)
            self.values_by_prop[fact.prop].add((fact.subj, fact.lit))
        self._best = None
        return True

    def successors(self, prop: int, node: int, inverse: bool = False) -> set[int]:
        table = self.in_edges if inverse else self.out_edges
        return table.get((prop, node), set())


# --- materialization --------------------------------------------------------


class _RuleIndex:
    def __init__(self, kb: KnowledgeBase):
        self.on_edge = defaultdict(list)  # (prop, inverse) -> rules
        self.on_value = defaultdict(list)  # prop -> rules
        self.on_filler = defaultdict(list)  # filler class -> rules
        for r in kb.exists_rules:
            if r.data:
                self.on_value[r.prop].append(r)
            else:
                self.on_edge[(r.prop, r.inverse)].append(r)
                if r.filler is not None:
                    self.on_filler[r.filler].append(r)


def _fire(kb: KnowledgeBase, idx: _RuleIndex, cl: Closure, f: Fact):
    """Yield (conclusion, rule, premises) for every rule instance using f."""
    if isinstance(f, Member):
        for d in sorted(kb.subclass.get(f.cls, ())):
            yield Member(f.ind, d), "R-SUB", (f,)
        for d in sorted(kb.union_supers.get(f.cls, ())):
            yield Member(f.ind, d), "R-UNI", (f,)
        for r in idx.on_filler.get(f.cls, ()):
            # f is the far end; find the near ends
            for near in sorted(cl.successors(r.prop, f.ind, inverse=not r.inverse)):
                edge = Edge(r.prop, f.ind, near) if r.inverse else Edge(r.prop, near, f.ind)
                yield Member(near, r.cls), r.rule, (edge, f)
    elif isinstance(f, Edge):
        for inverse in (False, True):
            near, far = (f.obj, f.subj) if inverse else (f.subj, f.obj)
            for r in idx.on_edge.get((f.prop, inverse), ()):
                if r.filler is None:
                    yield Member(near, r.cls), r.rule, (f,)
                elif r.filler in cl.members.get(far, ()):
                    yield Member(near, r.cls), r.rule, (f, Member(far, r.filler))
        for q in sorted(kb.subprops.get(f.prop, ())):
            yield Edge(q, f.subj, f.obj), "R-SPO", (f,)
        for q in sorted(kb.inverse_subprops.get(f.prop, ())):
            yield Edge(q, f.obj, f.subj), "R-INV", (f,)
    else:
        for r in idx.on_value.get(f.prop, ()):
            if r.datarange in (None, RDFS_LITERAL) or r.datarange == f.lit.datatype:
                yield Member(f.subj, r.cls), r.rule, (f,)
        for q in sorted(kb.subprops.get(f.prop, ())):
            yield Value(q, f.subj, f.lit), "R-SPO", (f,)
        for q in sorted(kb.equivalent_data.get(f.prop, ())):
            yield Value(q, f.subj, f.lit), "R-EQD", (f,)


def materialize(kb: KnowledgeBase, facts: Optional[Iterable[Fact]] = None) -> Closure:
    """Least fixpoint of the rule set over the asserted facts.

    Semi-naive: each round only fires rules on facts that were new in the
    previous round.  Two-premise rules join the new fact against everything
    already in the store, so every rule instance is seen at least once and
    every support of every fact is recorded.
    """
    cl = Closure(kb)
    idx = _RuleIndex(kb)
    delta = []
    for f in sorted(kb.asserted if facts is None else facts, key=fact_key):
        if cl.add(f, (ASSERTED, ())):
            delta.append(f)
    while delta:
        fresh = []
        for f in delta:
            for concl, rule, premises in _fire(kb, idx, cl, f):
                if cl.add(concl, (rule, premises)):
                    fresh.append(concl)
        delta = sorted(fresh, key=fact_key)
    return cl


def classify(kb: KnowledgeBase) -> dict[int, frozenset[int]]:
    """Reflexive-transitive subsumption between named classes."""
    graph: dict[int, set[int]] = defaultdict(set)
    for src in (kb.subclass, kb.union_supers):
        for c, sups in src.items():
            graph[c].update(sups)
    result = {}
    for c in sorted(kb.classes):
        seen = {c}
        stack = [c]
        while stack:
            for d in graph.get(stack.pop(), ()):
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        result[c] = frozenset(seen)
    return result


# --- proofs -----------------------------------------------------------------


@dataclass(frozen=True)
class ProofNode:
    rule: str
    fact: Fact
    children: tuple = ()

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def steps(self) -> int:
        return (self.rule != ASSERTED) + sum(c.steps() for c in self.children)


def _rule_cost(rule: str) -> tuple[int, int]:
    if rule == ASSERTED:
        return (0, 0)
    return (0 if rule in TAXONOMIC else 1, 1)


def _best_supports(cl: Closure) -> dict[Fact, Support]:
    """Cheapest support per fact by Knuth's generalization of Dijkstra.

    Cost is (non-taxonomic steps, total steps) summed over the proof tree, so
    a chain of subclass steps beats a single domain or existential step.
    Every rule adds at least one step, which makes the greedy order sound.
    Ties break on rule order, then on the premises' fact order.
    """
    if cl._best is not None:
        return cl._best
    waiting: dict[Fact, list] = defaultdict(list)
    pending: dict[tuple, int] = {}
    heap = []
    for fact, sups in cl.supports.items():
        for rule, premises in sups:
            if not premises:
                c = _rule_cost(rule)
                heapq.heappush(heap, (c, _RULE_ORDER.get(rule, -1), (), fact_key(fact), fact, rule, premises))
                continue
            key = (fact, rule, premises)
            pending[key] = len(set(premises))
            for p in set(premises):
                waiting[p].append(key)
    cost: dict[Fact, tuple[int, int]] = {}
    best: dict[Fact, Support] = {}
    while heap:
        c, _, _, _, fact, rule, premises = heapq.heappop(heap)
        if fact in best:
            continue
        best[fact] = (rule, premises)
        cost[fact] = c
        for key in waiting.get(fact, ()):
            pending[key] -= 1
            if pending[key] == 0:
                concl, r, prem = key
                if concl in best:
                    continue
                rc = _rule_cost(r)
                total = (rc[0] + sum(cost[p][0] for p in prem), rc[1] + sum(cost[p][1] for p in prem))
                heapq.heappush(
                    heap,
                    (total, _RULE_ORDER[r], tuple(fact_key(p) for p in prem), fact_key(concl), concl, r, prem),
                )
    cl._best = best
    return best


class NotEntailed(LookupError):
    pass


def explain(cl: Closure, fact: Fact) -> ProofNode:
    if fact not in cl:
        raise NotEntailed("not entailed")
    best = _best_supports(cl)

    def build(f: Fact) -> ProofNode:
        rule, premises = best[f]
        return ProofNode(rule, f, tuple(build(p) for p in premises))

    return build(fact)


# --- clashes ----------------------------------------------------------------


@dataclass(frozen=True)
class Clash:
    kind: str  # disjoint-classes | disjoint-data-properties | max-cardinality
    individual: int
    details: tuple
    facts: tuple = field(default=(), compare=False)


def check_consistency(kb: KnowledgeBase, cl: Closure, config: ReasonerConfig = ReasonerConfig()) -> list[Clash]:
    clashes = []
    for a, b in kb.disjoint_classes:
        for ind in sorted(cl.instances.get(a, set()) & cl.instances.get(b, set())):
            clashes.append(Clash("disjoint-classes", ind, (a, b), (Member(ind, a), Member(ind, b))))
    for d1, d2 in kb.disjoint_data:
        for (s, lit1) in sorted(cl.values_by_prop.get(d1, ()), key=lambda x: (x[0], x[1])):
            for lit2 in sorted(cl.values.get((d2, s), ())):
                if literals_match(lit1, lit2, config.plain_literals):
                    clashes.append(
                        Clash("disjoint-data-properties", s, (d1, d2, lit1, lit2), (Value(d1, s, lit1), Value(d2, s, lit2)))
                    )
    if config.una:
        for card in kb.cardinalities:
            if card.max is None:
                continue
            for ind in sorted(_focus_nodes(cl, card.trigger)):
                succ = cl.successors(card.prop, ind, card.inverse)
                if len(succ) > card.max:
                    clashes.append(Clash("max-cardinality", ind, (card.prop, card.inverse, card.max, len(succ))))
    clashes.sort(key=lambda c: (c.kind, c.individual, _detail_key(c.details)))
    return clashes


def _detail_key(details: tuple) -> tuple:
    return tuple((x.lexical, x.datatype.full) if hasattr(x, "lexical") else (str(x), "") for x in details)


# --- lints ------------------------------------------------------------------


@dataclass(frozen=True)
class Lint:
    kind: str
    individual: int
    constraint: object
    have: Optional[int] = None
    need: Optional[int] = None


def _focus_nodes(cl: Closure, trigger) -> set[int]:
    if isinstance(trigger, ClassPattern):
        return set(cl.instances.get(trigger.cls, ()))
    if isinstance(trigger, EdgePattern):
        nodes = set()
        for s, o in cl.edges_by_prop.get(trigger.prop, ()):
            near, far = (o, s) if trigger.inverse else (s, o)
            if trigger.filler is None or trigger.filler in cl.members.get(far, ()):
                nodes.add(near)
        return nodes
    if isinstance(trigger, DataPattern):
        return {s for s, _ in cl.values_by_prop.get(trigger.prop, ())}
    raise TypeError(trigger)


def _satisfied(cl: Closure, node: int, req: Requirement) -> bool:
    if req.kind == "member":
        return req.cls in cl.members.get(node, ())
    if req.kind == "data":
        return bool(cl.values.get((req.prop, node)))
    succ = cl.successors(req.prop, node, req.inverse)
    if req.cls is None:
        return bool(succ)
    return any(req.cls in cl.members.get(o, ()) for o in succ)


def lint_kind(constraint: Constraint) -> str:
    alts = constraint.alternatives
    if not isinstance(constraint.trigger, ClassPattern) and all(r.kind == "member" for r in alts):
        return "range-union-untyped"
    if len(alts) > 1:
        return "at-least-one-of-unsatisfied"
    if alts[0].kind == "data":
        return "missing-mandatory-data-property"
    if alts[0].kind == "edge":
        return "missing-mandatory-object-participation"
    return "at-least-one-of-unsatisfied"


def lint_completeness(kb: KnowledgeBase, cl: Closure, config: ReasonerConfig = ReasonerConfig()) -> list[Lint]:
    lints = []
    for con in kb.constraints:
        kind = lint_kind(con)
        for node in sorted(_focus_nodes(cl, con.trigger)):
            if not any(_satisfied(cl, node, r) for r in con.alternatives):
                lints.append(Lint(kind, node, con))
    for card in kb.cardinalities:
        if card.min is None:
            continue
        for node in sorted(_focus_nodes(cl, card.trigger)):
            have = len(cl.successors(card.prop, node, card.inverse))
            if have < card.min:
                lints.append(Lint("exact-cardinality-shortfall", node, card, have, card.min))
    if config.one_to_one_lint:
        p = kb.term(ONE_TO_ONE_PROPERTY)
        if p is not None:
            for inverse in (False, True):
                nodes = {o if inverse else s for s, o in cl.edges_by_prop.get(p, ())}
                for node in sorted(nodes):
                    have = len(cl.successors(p, node, inverse))
                    if have > 1:
                        con = Cardinality(EdgePattern(p, inverse), p, inverse, None, 1)
                        lints.append(Lint("one-to-one-violation", node, con, have, 1))
    lints.sort(key=_lint_key)
    return lints


def _lint_key(lint: Lint) -> tuple:
    con = lint.constraint
    if isinstance(con, Constraint):
        ck = _constraint_sort_key(con)
    else:
        ck = (_trigger_sort_key(con.trigger), ((str(con.prop), con.inverse),))
    return (lint.kind, lint.individual, ck)
