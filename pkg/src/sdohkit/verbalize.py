"""Template verbalization of axioms and evaluator agreement scoring."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .kb import KnowledgeBase
from .terms import (
    Axiom,
    ClassAssertion,
    ClassExpression,
    DataPropertyAssertion,
    EquivalentClasses,
    IntersectionOf,
    Iri,
    Named,
    NegativeObjectPropertyAssertion,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    SomeValuesFrom,
    SubClassOf,
    is_logical,
)

UNVERBALIZABLE = "[unverbalizable]"

LabelFn = Callable[[Iri], str]


def article(word: str) -> str:
    return "an" if word[:1].lower() in "aeiou" else "a"


def _with_article(word: str) -> str:
    return f"{article(word)} {word}"


def default_labels(kb: Optional[KnowledgeBase] = None) -> LabelFn:
    if kb is None:
        return lambda iri: iri.local.lower()
    return lambda iri: kb.labels_for(iri).pref.lower()


def noun_phrase(expr: ClassExpression, label: LabelFn) -> str:
    if isinstance(expr, Named):
        return _with_article(label(expr.iri))
    if isinstance(expr, SomeValuesFrom):
        return f"something that {label(expr.prop)} {noun_phrase(expr.filler, label)}"
    parts = [noun_phrase(op, label) for op in expr.operands]
    head = ", ".join(parts[:-1])
    if isinstance(expr, IntersectionOf):
        return f"both {head} and {parts[-1]}"
    return f"either {head} or {parts[-1]}"


def verbalize_axiom(axiom: Axiom, label: Optional[LabelFn] = None) -> tuple[str, str]:
    """Return ``(pattern_id, sentence)`` for one axiom."""
    label = label or default_labels()
    if isinstance(axiom, SubClassOf):
        sub = label(axiom.sub.iri)
        sup = axiom.sup
        if isinstance(sup, Named):
            return "subclass", f"every {sub} is {_with_article(label(sup.iri))}"
        if isinstance(sup, SomeValuesFrom):
            return "subclass-some", f"every {sub} is {noun_phrase(sup, label)}"
        return "subclass-complex", f"every {sub} is {noun_phrase(sup, label)}"
    if isinstance(axiom, EquivalentClasses):
        names = [op for op in axiom.operands if isinstance(op, Named)]
        if not names:
            return "unverbalizable", UNVERBALIZABLE
        head = names[0]
        rest = [op for op in axiom.operands if op is not head]
        body = " and as ".join(noun_phrase(op, label) for op in rest)
        return "equivalent", f"every {label(head.iri)} is defined as {body}"
    if isinstance(axiom, ObjectPropertyDomain):
        return "domain", (f"anything that {label(axiom.prop)} something is "
                          f"{noun_phrase(axiom.domain, label)}")
    if isinstance(axiom, ObjectPropertyRange):
        return "range", (f"anything that something {label(axiom.prop)} is "
                         f"{noun_phrase(axiom.range, label)}")
    if isinstance(axiom, ClassAssertion):
        return "class-assertion", f"{label(axiom.individual)} is {noun_phrase(axiom.cls, label)}"
    if isinstance(axiom, ObjectPropertyAssertion):
        return "property-assertion", (f"{label(axiom.subject)} {label(axiom.prop)} "
                                      f"{label(axiom.object)}")
    if isinstance(axiom, NegativeObjectPropertyAssertion):
        return "negative-assertion", (f"it is not the case that {label(axiom.subject)} "
                                      f"{label(axiom.prop)} {label(axiom.object)}")
    if isinstance(axiom, DataPropertyAssertion):
        return "data-assertion", (f"{label(axiom.subject)} {label(axiom.prop)} "
                                  f"{axiom.value.lexical}")
    return "unverbalizable", UNVERBALIZABLE


@dataclass(frozen=True)
class Statement:
    id: int
    axiom: Axiom
    sentence: str
    pattern: str


def verbalize_all(kb: KnowledgeBase) -> list[Statement]:
    label = default_labels(kb)
    out = []
    for ax in kb.canonical_axioms():
        if not is_logical(ax):
            continue
        pattern, sentence = verbalize_axiom(ax, label)
        out.append(Statement(len(out) + 1, ax, sentence, pattern))
    return out


def statements_tsv(statements: Sequence[Statement]) -> str:
    return "".join(f"{s.id}\t{s.sentence}\n" for s in statements)


def statements_csv(statements: Sequence[Statement]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "pattern", "sentence"])
    for s in statements:
        w.writerow([s.id, s.pattern, s.sentence])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Agreement

VERDICTS = ("rational", "irrational")


class VerdictError(ValueError):
    pass


@dataclass(frozen=True)
class VerdictMatrix:
    """Rows are statements, columns evaluators; ``True`` means rational."""

    statement_ids: tuple
    evaluator_ids: tuple
    rational: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rational, dtype=bool)
        if r.ndim != 2 or r.shape != (len(self.statement_ids), len(self.evaluator_ids)):
            raise VerdictError("verdict matrix shape does not match its labels")
        r.setflags(write=False)
        object.__setattr__(self, "rational", r)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[str]], evaluators: Optional[Sequence[str]] = None,
                  statement_ids: Optional[Sequence] = None) -> "VerdictMatrix":
        if not rows:
            raise VerdictError("empty verdict matrix")
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise VerdictError(f"ragged verdict matrix: row {i + 1} has {len(row)} verdicts, "
                                   f"expected {width}")
            for v in row:
                if v not in VERDICTS:
                    raise VerdictError(f"verdict must be rational or irrational, got {v!r}")
        evaluators = tuple(evaluators or (f"evaluator_{j + 1}" for j in range(width)))
        ids = tuple(statement_ids or range(1, len(rows) + 1))
        return cls(ids, evaluators, np.array([[v == "rational" for v in row] for row in rows]))


def read_verdicts(text: str) -> VerdictMatrix:
    """Parse ``statement_id,evaluator_1,...`` CSV text."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise VerdictError("empty verdict matrix")
    header = [c.strip() for c in rows[0]]
    if not header or header[0] != "statement_id" or len(header) < 2:
        raise VerdictError("header must start with statement_id followed by evaluator columns")
    body = [[c.strip() for c in r] for r in rows[1:]]
    for i, r in enumerate(body):
        if len(r) != len(header):
            raise VerdictError(f"ragged verdict matrix at data row {i + 1}")
    return VerdictMatrix.from_rows(
        [r[1:] for r in body], evaluators=header[1:], statement_ids=[r[0] for r in body]
    )


@dataclass(frozen=True)
class AgreementScores:
    inter_evaluator: float
    rational: float
    mode: str
    statements: int
    evaluators: int


def score_agreement(matrix: VerdictMatrix, mode: str = "unanimous") -> AgreementScores:
    """Inter-evaluator and rational agreement.

    ``unanimous`` counts a statement as harmonized when every evaluator gives
    the same verdict; ``majority`` needs a strict majority, so ties are
    disagreement.
    """
    r = matrix.rational
    n_stmt, n_eval = r.shape
    if n_stmt < 1:
        raise VerdictError("need at least one statement")
    if n_eval < 2:
        raise VerdictError("need at least two evaluators")
    yes = r.sum(axis=1)
    no = n_eval - yes
    if mode == "unanimous":
        agreed_rational = yes == n_eval
        agreed = agreed_rational | (no == n_eval)
    elif mode == "majority":
        agreed_rational = 2 * yes > n_eval
        agreed = agreed_rational | (2 * no > n_eval)
    else:
        raise ValueError(f"unknown agreement mode {mode!r}")
    return AgreementScores(
        inter_evaluator=float(agreed.sum()) / n_stmt,
        rational=float(agreed_rational.sum()) / n_stmt,
        mode=mode,
        statements=n_stmt,
        evaluators=n_eval,
    )
