"""Measure linkage queries and the Retail Food Environment Index.

Food swamp rule: the unhealthy-to-healthy establishment ratio strictly exceeds
3.89, or at least four corner stores lie within 0.4 km of home. Distances are
great-circle kilometres and radius filters are inclusive.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import vocab
from .kb import KnowledgeBase
from .reasoner import SubsumptionIndex, classify
from .terms import ClassAssertion, Iri, Named, SomeValuesFrom, SubClassOf

EARTH_RADIUS_KM = 6371.0

RFEI_THRESHOLD = 3.89
CORNER_RADIUS_KM = 0.4
CORNER_COUNT = 4
DEFAULT_RFEI_RADIUS_KM = 0.8
# slack for "within": a point placed exactly on the radius can land a few
# nanometres outside it after trigonometric rounding
DISTANCE_TOLERANCE_KM = 1e-9


def haversine_km(lat1, lon1, lat2, lon2):
    """Great-circle distance in km; accepts scalars or numpy arrays."""
    lat1, lon1, lat2, lon2 = map(np.radians, (lat1, lon1, lat2, lon2))
    a = np.sin((lat2 - lat1) / 2) ** 2 + np.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2) ** 2
    d = 2 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(np.clip(a, 0.0, 1.0)))
    return float(d) if np.ndim(d) == 0 else d


@dataclass(frozen=True)
class Establishment:
    id: str
    kind: str
    corner_store: bool
    lat: float
    lon: float

    def __post_init__(self):
        if self.kind not in ("healthy", "unhealthy"):
            raise ValueError(f"establishment kind must be healthy or unhealthy, got {self.kind!r}")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude out of range: {self.lat}")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude out of range: {self.lon}")


def read_establishments(text: str) -> list[Establishment]:
    """Parse ``id,kind,corner_store,lat,lon`` CSV text with a header row."""
    reader = csv.DictReader(io.StringIO(text))
    expected = ["id", "kind", "corner_store", "lat", "lon"]
    if [f.strip() for f in reader.fieldnames or []] != expected:
        raise ValueError(f"establishment header must be {','.join(expected)}")
    out = []
    for n, row in enumerate(reader, start=2):
        flag = row["corner_store"].strip()
        if flag not in ("0", "1"):
            raise ValueError(f"line {n}: corner_store must be 0 or 1")
        out.append(Establishment(row["id"].strip(), row["kind"].strip(), flag == "1",
                                 float(row["lat"]), float(row["lon"])))
    return out


def _distances(home: tuple, establishments: Sequence[Establishment]) -> np.ndarray:
    if not establishments:
        return np.zeros(0)
    lat = np.fromiter((e.lat for e in establishments), float, len(establishments))
    lon = np.fromiter((e.lon for e in establishments), float, len(establishments))
    return np.atleast_1d(haversine_km(home[0], home[1], lat, lon))


@dataclass(frozen=True)
class RfeiResult:
    unhealthy: int
    healthy: int
    radius_km: float

    @property
    def ratio(self) -> Optional[float]:
        """unhealthy/healthy; ``inf`` with no healthy outlets; ``None`` when both are 0."""
        if self.healthy > 0:
            return self.unhealthy / self.healthy
        if self.unhealthy > 0:
            return math.inf
        return None

    @property
    def status(self) -> str:
        r = self.ratio
        if r is None:
            return "undefined"
        return "infinite" if math.isinf(r) else "finite"


def rfei(home: tuple, establishments: Sequence[Establishment],
         radius_km: float = DEFAULT_RFEI_RADIUS_KM) -> RfeiResult:
    if not radius_km > 0:
        raise ValueError("radius_km must be positive")
    inside = _distances(home, establishments) <= radius_km + DISTANCE_TOLERANCE_KM
    kinds = np.array([e.kind == "unhealthy" for e in establishments], dtype=bool)
    unhealthy = int(np.count_nonzero(inside & kinds)) if len(kinds) else 0
    healthy = int(np.count_nonzero(inside & ~kinds)) if len(kinds) else 0
    return RfeiResult(unhealthy, healthy, radius_km)


@dataclass(frozen=True)
class SwampConfig:
    rfei_radius_km: float = DEFAULT_RFEI_RADIUS_KM


@dataclass(frozen=True)
class SwampVerdict:
    rfei: RfeiResult
    corner_stores: int
    triggered: tuple = field(default=())

    @property
    def is_food_swamp(self) -> bool:
        return bool(self.triggered)


def classify_food_swamp(home: tuple, establishments: Sequence[Establishment],
                        config: SwampConfig = SwampConfig()) -> SwampVerdict:
    result = rfei(home, establishments, config.rfei_radius_km)
    near = _distances(home, establishments) <= CORNER_RADIUS_KM + DISTANCE_TOLERANCE_KM
    corners = sum(1 for e, ok in zip(establishments, near) if ok and e.corner_store)
    triggered = []
    ratio = result.ratio
    if ratio is not None and ratio > RFEI_THRESHOLD:
        triggered.append("ratio_exceeds_threshold")
    if corners >= CORNER_COUNT:
        triggered.append("corner_store_density")
    return SwampVerdict(result, corners, tuple(triggered))


# ---------------------------------------------------------------------------
# Ontology queries


class UnknownClassError(KeyError):
    pass


def measures_for(kb: KnowledgeBase, factor: Iri,
                 index: Optional[SubsumptionIndex] = None) -> list[Iri]:
    """Measures linked by ``has_measure`` to ``factor`` or any of its superclasses."""
    if factor not in kb.classes:
        raise UnknownClassError(factor.display)
    index = index or classify(kb)
    found = set()
    for sup in index.superclasses(factor):
        for ax in kb.by_subject(sup):
            if (isinstance(ax, SubClassOf) and isinstance(ax.sup, SomeValuesFrom)
                    and ax.sup.prop is vocab.has_measure and isinstance(ax.sup.filler, Named)):
                found.add(ax.sup.filler.iri)
    return sorted(found)


def applicable_values(kb: KnowledgeBase, measure: Iri) -> list[Iri]:
    """Declared individuals asserted directly into ``measure``."""
    if measure not in kb.classes:
        raise UnknownClassError(measure.display)
    target = Named(measure)
    return sorted(
        ax.individual
        for ax in kb.by_kind(ClassAssertion)
        if ax.cls == target and kb.is_declared(ax.individual, "NamedIndividual")
    )
