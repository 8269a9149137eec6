from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .braid import demazure_trace
from .errors import EmptyVariety
from .logger import LogLevel, log

TAG = "plabic"


class Marker(Enum):
    OVER = "over"
    UNDER = "under"


class ColumnKind(Enum):
    CROSSING = "crossing"
    BRIDGE = "bridge"


@dataclass(frozen=True)
class PlabicColumn:
    kind: ColumnKind
    gap: int
    position: int

    @property
    def is_bridge(self):
        return self.kind is ColumnKind.BRIDGE


@dataclass(frozen=True)
class PlabicDiagram:
    n: int
    columns: tuple[PlabicColumn, ...]
    bridge_positions: tuple[int, ...]

    @property
    def k(self):
        return len(self.columns)

    def column(self, position):
        return self.columns[position - 1]


@dataclass(frozen=True)
class Sheet:
    """One connected piece of a film's cross-section, covering gaps low..high."""
    low: int
    high: int
    multiplicity: int = 1
    markers: tuple[tuple[int, Marker], ...] = ()

    def marker(self, strand):
        return dict(self.markers).get(strand)

    def covers(self, gap):
        return self.low <= gap <= self.high

    def with_markers(self, low, high, markers):
        kept = tuple(sorted((s, m) for s, m in markers.items() if low < s <= high))
        return Sheet(low, high, self.multiplicity, kept)


@dataclass
class AnomalyCounters:
    pinched: int = 0
    interior_swaps: int = 0
    high_multiplicity: int = 0

    def as_dict(self):
        return {
            "pinched": self.pinched,
            "interior_swaps": self.interior_swaps,
            "high_multiplicity": self.high_multiplicity,
        }


@dataclass(frozen=True)
class FilmSlice:
    n: int
    sheets: tuple[Sheet, ...] = ()

    @classmethod
    def of(cls, n, sheets):
        merged = Counter()
        for sheet in sheets:
            merged[(sheet.low, sheet.high, sheet.markers)] += sheet.multiplicity
        sheets = [Sheet(low, high, mult, markers) for (low, high, markers), mult in merged.items()]
        sheets.sort(key=lambda s: (s.low, s.high, [(strand, m.value) for strand, m in s.markers]))
        return cls(n, tuple(sheets))

    def multiplicity(self, gap):
        """Total multiplicity over a gap; gaps outside 1..n-1 are empty."""
        return sum(s.multiplicity for s in self.sheets if s.covers(gap))

    def gap_vector(self):
        return tuple(self.multiplicity(g) for g in range(1, self.n))

    def is_empty(self):
        return not self.sheets


def step_crossing(state, i, counters=None):
    """Carry a slice leftward through a positive crossing at gap i."""
    sheets = []
    for sheet in state.sheets:
        lo, hi = sheet.low, sheet.high
        markers = dict(sheet.markers)
        if hi < i - 1 or lo > i + 1:
            sheets.append(sheet)
        elif lo == hi == i:
            if counters is not None:
                counters.pinched += 1
            sheets.append(sheet)
        elif lo == i + 1:
            markers[i + 1] = Marker.OVER
            sheets.append(sheet.with_markers(i, hi, markers))
        elif hi == i - 1:
            markers[i] = Marker.UNDER
            sheets.append(sheet.with_markers(lo, i, markers))
        elif lo == i:
            markers.pop(i + 1, None)
            sheets.append(sheet.with_markers(i + 1, hi, markers))
        elif hi == i:
            markers.pop(i, None)
            sheets.append(sheet.with_markers(lo, i - 1, markers))
        else:
            lower, upper = markers.pop(i, None), markers.pop(i + 1, None)
            if upper is not None:
                markers[i] = upper
            if lower is not None:
                markers[i + 1] = lower
            if counters is not None:
                counters.interior_swaps += 1
            sheets.append(sheet.with_markers(lo, hi, markers))
    return FilmSlice.of(state.n, sheets)


def step_bridge(state, i):
    """Carry a slice leftward through a bridge at gap i.

    Returns the new slice and the local multiplicities (a, b, c, d): a above
    the bridge, b and d in the bridge gap right and left of it, c below.
    """
    sheets = []
    for sheet in state.sheets:
        if not sheet.covers(i):
            sheets.append(sheet)
            continue
        if sheet.marker(i + 1) is Marker.OVER or sheet.marker(i) is Marker.UNDER:
            sheets.append(sheet)
            continue
        markers = dict(sheet.markers)
        if sheet.low <= i - 1:
            sheets.append(sheet.with_markers(sheet.low, i - 1, markers))
        if i + 1 <= sheet.high:
            sheets.append(sheet.with_markers(i + 1, sheet.high, markers))
    after = FilmSlice.of(state.n, sheets)
    local = (
        state.multiplicity(i + 1),
        state.multiplicity(i),
        state.multiplicity(i - 1),
        after.multiplicity(i),
    )
    return after, local


@dataclass
class SoapFilm:
    origin: int
    gap: int
    boundary: tuple[int, ...]
    bridge_local: dict[int, tuple[int, int, int, int]]
    coverage: dict[int, tuple[int, ...]] = field(default_factory=dict)
    vertex_id: int = 0

    @property
    def frozen(self):
        return any(self.boundary)


def build_diagram(u, beta, trace=None):
    trace = trace or demazure_trace(u, beta)
    if not trace.nonempty:
        raise EmptyVariety(f"{u} is not a subword of beta={beta}")
    columns = tuple(
        PlabicColumn(
            ColumnKind.BRIDGE if j in trace.J else ColumnKind.CROSSING,
            beta.letters[j - 1],
            j,
        )
        for j in range(1, len(beta) + 1)
    )
    return PlabicDiagram(beta.n, columns, tuple(trace.bridge_positions()))


def propagate_film(diagram, origin, counters=None):
    """Sweep the film born at a bridge leftward to the boundary."""
    column = diagram.column(origin)
    state = FilmSlice.of(diagram.n, [Sheet(column.gap, column.gap)])
    local = {origin: (0, 0, 0, 1)}
    coverage = {origin: state.gap_vector()}
    for position in range(origin - 1, 0, -1):
        column = diagram.column(position)
        if column.is_bridge:
            state, local[position] = step_bridge(state, column.gap)
        else:
            state = step_crossing(state, column.gap, counters)
        coverage[position] = state.gap_vector()
        if counters is not None and any(m > 1 for m in coverage[position]):
            counters.high_multiplicity += 1
    return SoapFilm(origin, diagram.column(origin).gap, state.gap_vector(), local, coverage)


def propagate_films(diagram, counters=None):
    """All films, in canonical vertex order: mutables then frozens, each by origin."""
    films = [propagate_film(diagram, origin, counters) for origin in diagram.bridge_positions]
    films.sort(key=lambda film: (film.frozen, film.origin))
    for vertex_id, film in enumerate(films, start=1):
        film.vertex_id = vertex_id
    log(
        LogLevel.DEBUG,
        TAG,
        f"{len(films)} films, {sum(not f.frozen for f in films)} mutable",
    )
    return films
