"""Classification, realization and negative-assertion consistency checking.

Realization is a worklist forward chainer over five rules:

* ``R1`` taxonomy: C(a), C ⊑ D  ⟹  D(a)
* ``R2`` domain:   r(a, b), Domain(r, C)  ⟹  C(a)
* ``R3`` range:    r(a, b), Range(r, C)  ⟹  C(b)
* ``R4`` definition firing: E ≡ ⊓ conjuncts and ``a`` satisfies every conjunct
  ⟹  E(a)
* ``R5`` definition unfolding: E(a), E ≡ ⊓ conjuncts  ⟹  C(a) per named conjunct

A definition conjunct is a named class or ``∃r.F`` with ``F`` named or a union
of named classes. Axioms outside that fragment are reported as warnings.
"""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from .kb import CycleError, KnowledgeBase, find_cycle, named_equivalences
from .ofn import render_axiom
from .terms import (
    MAX_EXPRESSION_DEPTH,
    ClassAssertion,
    ClassExpression,
    EquivalentClasses,
    IntersectionOf,
    Iri,
    Named,
    NegativeObjectPropertyAssertion,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    SomeValuesFrom,
    UnionOf,
    depth,
)

log = logging.getLogger(__name__)

ASSERTED = "asserted"


class ExpressionTooDeep(ValueError):
    pass


@dataclass(frozen=True)
class SubsumptionIndex:
    """Reflexive-transitive subclass closure over named classes."""

    supers: Mapping[Iri, frozenset]
    equivalents: Mapping[Iri, frozenset]

    def is_subclass(self, sub: Iri, sup: Iri) -> bool:
        if sub is sup:
            return True
        return sup in self.supers.get(sub, ())

    def superclasses(self, c: Iri) -> frozenset:
        return self.supers.get(c, frozenset((c,)))

    def subclasses(self, c: Iri) -> frozenset:
        return frozenset(s for s, sups in self.supers.items() if c in sups) | {c}

    def pairs(self) -> set:
        return {(a, b) for a, sups in self.supers.items() for b in sups}


@dataclass(frozen=True)
class Definition:
    """A definition in the supported fragment: ``defined ≡ ⊓ conjuncts``."""

    defined: Iri
    named: tuple  # named conjuncts
    existentials: tuple  # (property, frozenset of filler classes)
    axiom: EquivalentClasses


@dataclass
class RealizationResult:
    types: Mapping[Iri, Mapping[Iri, str]]
    warnings: list = field(default_factory=list)

    def types_of(self, individual: Iri) -> frozenset:
        return frozenset(self.types.get(individual, ()))

    def provenance(self, individual: Iri, cls: Iri) -> Optional[str]:
        return self.types.get(individual, {}).get(cls)

    def inferred(self, individual: Iri) -> frozenset:
        return frozenset(c for c, tag in self.types.get(individual, {}).items() if tag != ASSERTED)

    def as_pairs(self) -> set:
        return {(a, c) for a, cs in self.types.items() for c in cs}


@dataclass(frozen=True)
class Clash:
    prop: Iri
    subject: Iri
    object: Iri

    def __str__(self) -> str:
        return (f"{self.subject.display} {self.prop.display} {self.object.display}: "
                "asserted and negated")


@dataclass(frozen=True)
class ConsistencyReport:
    clashes: tuple = ()

    @property
    def consistent(self) -> bool:
        return not self.clashes


# ---------------------------------------------------------------------------


def classify(kb: KnowledgeBase) -> SubsumptionIndex:
    edges: dict[Iri, set] = defaultdict(set)
    for c in kb.classes:
        edges[c].update(kb.direct_supers(c))
    cycle = find_cycle(edges)
    if cycle:
        raise CycleError(cycle)
    for a, b in named_equivalences(kb):
        edges[a].add(b)
    supers = {}
    for c in sorted(edges):
        seen = {c}
        todo = [c]
        while todo:
            for s in edges.get(todo.pop(), ()):
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
        supers[c] = frozenset(seen)
    equivalents = {c: frozenset(s for s in sups if c in supers.get(s, ())) for c, sups in supers.items()}
    return SubsumptionIndex(MappingProxyType(supers), MappingProxyType(equivalents))


def _filler_classes(expr: ClassExpression) -> Optional[frozenset]:
    if isinstance(expr, Named):
        return frozenset((expr.iri,))
    if isinstance(expr, UnionOf) and all(isinstance(op, Named) for op in expr.operands):
        return frozenset(op.iri for op in expr.operands)
    return None


def _definition(defined: Iri, body: ClassExpression, axiom) -> Optional[Definition]:
    conjuncts = body.operands if isinstance(body, IntersectionOf) else (body,)
    named, exists = [], []
    for c in conjuncts:
        if isinstance(c, Named):
            named.append(c.iri)
        elif isinstance(c, SomeValuesFrom):
            fillers = _filler_classes(c.filler)
            if fillers is None:
                return None
            exists.append((c.prop, fillers))
        else:
            return None
    return Definition(defined, tuple(named), tuple(exists), axiom)


def definitions(kb: KnowledgeBase) -> tuple[list, list]:
    """Supported definitions and warnings for the unsupported ones."""
    defs, warnings = [], []
    for ax in kb.by_kind(EquivalentClasses):
        names = [op.iri for op in ax.operands if isinstance(op, Named)]
        bodies = [op for op in ax.operands if not isinstance(op, Named)]
        if not bodies:
            continue  # named-named, handled by classify
        for body in bodies:
            if not names:
                warnings.append(f"skipped {_short(ax)}: no named class to define")
                continue
            d = _definition(names[0], body, ax)
            if d is None:
                warnings.append(f"skipped {_short(ax)}: definition outside the supported fragment")
                continue
            for n in names:
                defs.append(Definition(n, d.named, d.existentials, ax))
    return defs, warnings


def _short(ax) -> str:
    return render_axiom(ax)


def _named_parts(expr: ClassExpression) -> Optional[list]:
    """Named classes implied by membership in ``expr``, if it is that simple."""
    if isinstance(expr, Named):
        return [expr.iri]
    if isinstance(expr, IntersectionOf) and all(isinstance(op, Named) for op in expr.operands):
        return [op.iri for op in expr.operands]
    return None


def realize(kb: KnowledgeBase, index: Optional[SubsumptionIndex] = None) -> RealizationResult:
    index = index or classify(kb)
    defs, warnings = definitions(kb)

    types: dict[Iri, dict[Iri, str]] = defaultdict(dict)
    edges: dict[Iri, dict[Iri, set]] = defaultdict(lambda: defaultdict(set))  # prop -> a -> {b}
    inverse: dict[Iri, list] = defaultdict(list)  # b -> [(prop, a)]
    work: deque = deque()

    def add(ind: Iri, cls: Iri, tag: str) -> None:
        if cls not in types[ind]:
            types[ind][cls] = tag
            work.append((ind, cls))

    for ind in kb.individuals:
        types[ind]  # every known individual gets an entry

    for ax in kb.by_kind(ClassAssertion):
        parts = _named_parts(ax.cls)
        if parts is None:
            warnings.append(f"skipped {_short(ax)}: complex class assertion")
            continue
        for c in parts:
            add(ax.individual, c, ASSERTED)

    for ax in kb.by_kind(ObjectPropertyAssertion):
        edges[ax.prop][ax.subject].add(ax.object)
        inverse[ax.object].append((ax.prop, ax.subject))

    for kind, rule, pick in (
        (ObjectPropertyDomain, "R2", lambda ax: ax.domain),
        (ObjectPropertyRange, "R3", lambda ax: ax.range),
    ):
        for ax in kb.by_kind(kind):
            parts = _named_parts(pick(ax))
            if parts is None:
                warnings.append(f"skipped {_short(ax)}: complex domain or range")
                continue
            prop_edges = edges.get(ax.prop, {})
            for a in sorted(prop_edges):
                for b in sorted(prop_edges[a]):
                    target = a if rule == "R2" else b
                    for c in parts:
                        add(target, c, rule)

    by_named: dict[Iri, list] = defaultdict(list)
    by_filler: dict[Iri, list] = defaultdict(list)
    by_defined: dict[Iri, list] = defaultdict(list)
    for d in defs:
        by_defined[d.defined].append(d)
        for c in d.named:
            by_named[c].append(d)
        for prop, fillers in d.existentials:
            for f in fillers:
                by_filler[f].append((d, prop))

    def satisfies(ind: Iri, d: Definition) -> bool:
        have = types.get(ind, {})
        if any(c not in have for c in d.named):
            return False
        for prop, fillers in d.existentials:
            succ = edges.get(prop, {}).get(ind, ())
            if not any(any(f in types.get(b, {}) for f in fillers) for b in succ):
                return False
        return True

    def fire(ind: Iri, d: Definition) -> None:
        if d.defined not in types[ind] and satisfies(ind, d):
            add(ind, d.defined, "R4")

    for ind in sorted(types):
        for d in defs:
            fire(ind, d)

    while work:
        ind, cls = work.popleft()
        for sup in sorted(index.superclasses(cls)):
            if sup is not cls:
                add(ind, sup, "R1")
        for d in by_defined.get(cls, ()):
            for c in d.named:
                add(ind, c, "R5")
        for d in by_named.get(cls, ()):
            fire(ind, d)
        for d, prop in by_filler.get(cls, ()):
            for p, a in inverse.get(ind, ()):
                if p is prop:
                    fire(a, d)

    for w in warnings:
        log.warning(w)
    frozen = MappingProxyType({k: MappingProxyType(dict(v)) for k, v in types.items()})
    return RealizationResult(frozen, warnings)


def instance_of(
    kb: KnowledgeBase,
    index: SubsumptionIndex,
    realization: RealizationResult,
    individual: Iri,
    expr: ClassExpression,
) -> bool:
    """Evaluate ``expr`` for ``individual`` against realized types."""
    if depth(expr) > MAX_EXPRESSION_DEPTH:
        raise ExpressionTooDeep(f"expression depth {depth(expr)} exceeds {MAX_EXPRESSION_DEPTH}")
    def check(a: Iri, e: ClassExpression) -> bool:
        if isinstance(e, Named):
            return any(index.is_subclass(t, e.iri) for t in realization.types.get(a, ()))
        if isinstance(e, IntersectionOf):
            return all(check(a, op) for op in e.operands)
        if isinstance(e, UnionOf):
            return any(check(a, op) for op in e.operands)
        return any(check(b, e.filler) for b in kb.successors(e.prop, a))

    return check(individual, expr)


def check_consistency(kb: KnowledgeBase) -> ConsistencyReport:
    positive = {(ax.prop, ax.subject, ax.object) for ax in kb.by_kind(ObjectPropertyAssertion)}
    clashes = sorted(
        (Clash(ax.prop, ax.subject, ax.object)
         for ax in kb.by_kind(NegativeObjectPropertyAssertion)
         if (ax.prop, ax.subject, ax.object) in positive),
        key=lambda c: (c.subject, c.prop, c.object),
    )
    return ConsistencyReport(tuple(clashes))
