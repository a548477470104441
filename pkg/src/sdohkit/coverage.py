"""Coverage of annotated corpus factors against the ontology's labels."""

from __future__ import annotations

import csv
import io
import re
from collections import defaultdict
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional, Sequence, Union

from . import vocab
from .kb import KnowledgeBase
from .reasoner import SubsumptionIndex, classify
from .terms import ClassAssertion, Iri, Named

LEVELS = ("domain", "concept", "value")


def normalize_label(text: str) -> str:
    key = text.strip().lower()
    key = re.sub(r"[\s\-]+", "_", key)
    key = re.sub(r"[^\w]", "", key)
    key = re.sub(r"_+", "_", key)
    return key.strip("_")


def percent(matched: int, total: int) -> Optional[Decimal]:
    """matched/total as a percentage rounded half-up to two places."""
    if total == 0:
        return None
    return (Decimal(matched) * 100 / Decimal(total)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class AnnotationEntry:
    label: str
    level: str
    count: int = 1

    def __post_init__(self):
        if not self.label.strip():
            raise ValueError("annotation label must be non-empty")
        if self.level not in LEVELS:
            raise ValueError(f"annotation level must be one of {LEVELS}, got {self.level!r}")
        if self.count < 1:
            raise ValueError(f"annotation count must be >= 1, got {self.count}")


@dataclass(frozen=True)
class AnnotationSet:
    source: str
    entries: tuple = ()


def read_annotations(text: str) -> AnnotationSet:
    """Parse a ``source:`` line followed by ``label,level,count`` CSV."""
    lines = text.splitlines()
    while lines and (not lines[0].strip() or lines[0].lstrip().startswith("#")):
        lines.pop(0)
    if not lines or not lines[0].startswith("source:"):
        raise ValueError("annotation file must start with a 'source:' line")
    source = lines[0][len("source:"):].strip()
    body = [ln for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.reader(body)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["label", "level", "count"]:
        raise ValueError("annotation header must be label,level,count")
    entries = []
    for row in reader:
        if len(row) != 3:
            raise ValueError(f"annotation row needs 3 fields: {row!r}")
        entries.append(AnnotationEntry(row[0].strip(), row[1].strip(), int(row[2])))
    return AnnotationSet(source, tuple(entries))


@dataclass(frozen=True)
class LevelScore:
    matched: int
    total: int

    @property
    def percent(self) -> Optional[Decimal]:
        return percent(self.matched, self.total)


@dataclass(frozen=True)
class ClassCount:
    top_level: Iri
    cls: Iri
    count: int
    percent: Decimal


@dataclass
class CoverageReport:
    source: str
    levels: dict
    class_counts: list = field(default_factory=list)
    concept_total: int = 0
    unmatched: list = field(default_factory=list)
    ambiguous: list = field(default_factory=list)
    matched_domains: tuple = ()


class _Matcher:
    def __init__(self, kb: KnowledgeBase, index: SubsumptionIndex):
        self.kb = kb
        self.index = index
        self.classes = self._label_index(kb.classes)
        measure_classes = {c for c in kb.classes
                           if vocab.Measure_and_Index_and_Score in index.superclasses(c)}
        values = {ax.individual for ax in kb.by_kind(ClassAssertion)
                  if isinstance(ax.cls, Named) and ax.cls.iri in measure_classes}
        self.values = self._label_index(measure_classes | values)
        self.tops = set(kb.top_level())

    def _label_index(self, iris) -> dict:
        out = defaultdict(set)
        for iri in iris:
            labels = self.kb.labels_for(iri)
            for text in (iri.local, labels.pref, *labels.alt):
                out[normalize_label(text)].add(iri)
        return out

    def lookup(self, entry: AnnotationEntry) -> list:
        table = self.values if entry.level == "value" else self.classes
        return sorted(table.get(normalize_label(entry.label), ()))

    def top_of(self, cls: Iri) -> list:
        return sorted(t for t in self.index.superclasses(cls) if t in self.tops)


def match_annotations(kb: KnowledgeBase, annotations: AnnotationSet,
                      index: Optional[SubsumptionIndex] = None) -> CoverageReport:
    """Exact normalized-label matching at domain, concept and value level."""
    matcher = _Matcher(kb, index or classify(kb))
    matched = dict.fromkeys(LEVELS, 0)
    totals = dict.fromkeys(LEVELS, 0)
    per_class: dict[Iri, int] = defaultdict(int)
    domains = set()
    unmatched, ambiguous = [], []
    concept_total = 0
    for entry in annotations.entries:
        totals[entry.level] += 1
        if entry.level == "concept":
            concept_total += entry.count
        hits = matcher.lookup(entry)
        if not hits:
            unmatched.append(entry)
            continue
        if len(hits) > 1:
            ambiguous.append((entry, tuple(hits)))
        cls = hits[0]
        if entry.level == "domain":
            tops = matcher.top_of(cls)
            if not tops:
                unmatched.append(entry)
                continue
            if len(tops) > 1:
                ambiguous.append((entry, tuple(tops)))
            domains.add(tops[0])
        elif entry.level == "concept":
            per_class[cls] += entry.count
        matched[entry.level] += 1

    rows = []
    for cls, count in per_class.items():
        tops = matcher.top_of(cls)
        rows.append(ClassCount(tops[0] if tops else cls, cls, count,
                               percent(count, concept_total)))
    rows.sort(key=lambda r: (r.top_level, r.cls))
    return CoverageReport(
        source=annotations.source,
        levels={lvl: LevelScore(matched[lvl], totals[lvl]) for lvl in LEVELS},
        class_counts=rows,
        concept_total=concept_total,
        unmatched=unmatched,
        ambiguous=ambiguous,
        matched_domains=tuple(sorted(domains)),
    )


def _pct(p: Optional[Decimal]) -> str:
    return "n/a" if p is None else f"{p:.2f}"


def render_report(report: Union[CoverageReport, Sequence[CoverageReport]], fmt: str = "text",
                  kb: Optional[KnowledgeBase] = None) -> str:
    reports = [report] if isinstance(report, CoverageReport) else list(report)
    name = (lambda iri: kb.labels_for(iri).pref) if kb is not None else (lambda iri: iri.local)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["source", "top_level", "class", "count", "percent"])
        for rep in reports:
            for row in rep.class_counts:
                w.writerow([rep.source, name(row.top_level), name(row.cls), row.count, _pct(row.percent)])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    out = []
    for rep in reports:
        out.append(f"Coverage: {rep.source}")
        for lvl in LEVELS:
            s = rep.levels[lvl]
            pct = "n/a" if s.percent is None else f"{s.percent:.2f}%"
            out.append(f"  {lvl:<8} {s.matched}/{s.total}  {pct}")
        out.append(f"  matched top-level domains: {len(rep.matched_domains)}")
        current = None
        for row in rep.class_counts:
            if row.top_level is not current:
                current = row.top_level
                out.append(name(current))
            out.append(f"  {name(row.cls)}  {row.count} ({_pct(row.percent)})")
        if rep.class_counts:
            out.append(f"Total count  {sum(r.count for r in rep.class_counts)}")
        for entry in rep.unmatched:
            out.append(f"  unmatched [{entry.level}] {entry.label}")
        for entry, hits in rep.ambiguous:
            out.append(f"  ambiguous [{entry.level}] {entry.label}: "
                       + ", ".join(h.display for h in hits))
        out.append("")
    return "\n".join(out)
