"""Legendrian fronts as event words.

A front diagram is read left to right as a finite word of cusp and
crossing events acting on a stack of horizontal strands numbered from
the top, starting at 1.  ``L(i)`` opens a left cusp whose new strands
occupy positions i and i+1, ``R(i)`` closes the strands at i and i+1
into a right cusp, and ``X(i)`` crosses the strands at i and i+1.
A word is closed when the strand count starts and ends at zero.

The geometry between two consecutive events is a "slice".  Slice k is
the vertical line after the first k events; a cell ``(k, p)`` is the
strand at position p in slice k.  Everything else in the package
(components, orientations, invariants, rewriting) is phrased in terms
of cells.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence


class FrontError(ValueError):
    """Base class for malformed front words and bad sites."""


class IndexOutOfRange(FrontError):
    def __init__(self, event_index: int, message: str):
        super().__init__(f"event {event_index}: {message}")
        self.event_index = event_index


class NegativeStrandCount(FrontError):
    def __init__(self, event_index: int, message: str):
        super().__init__(f"event {event_index}: {message}")
        self.event_index = event_index


class NonClosed(FrontError):
    def __init__(self, final_count: int):
        super().__init__(f"word leaves {final_count} strands open")
        self.final_count = final_count


class InvalidSite(FrontError):
    pass


class EventKind(enum.Enum):
    LEFT_CUSP = "L"
    RIGHT_CUSP = "R"
    CROSSING = "X"


# Sort rank used by the canonical form: left cusps first, right cusps last.
_RANK = {EventKind.LEFT_CUSP: 0, EventKind.CROSSING: 1, EventKind.RIGHT_CUSP: 2}
_DELTA = {EventKind.LEFT_CUSP: 2, EventKind.CROSSING: 0, EventKind.RIGHT_CUSP: -2}


@dataclass(frozen=True)
class Event:
    kind: EventKind
    pos: int

    def __str__(self) -> str:
        return f"{self.kind.value}{self.pos}"

    def __repr__(self) -> str:
        return f"Event({self})"

    @property
    def delta(self) -> int:
        return _DELTA[self.kind]

    @property
    def sort_key(self) -> tuple[int, int]:
        return (_RANK[self.kind], self.pos)


def L(pos: int) -> Event:
    return Event(EventKind.LEFT_CUSP, pos)


def R(pos: int) -> Event:
    return Event(EventKind.RIGHT_CUSP, pos)


def X(pos: int) -> Event:
    return Event(EventKind.CROSSING, pos)


def strand_counts(events: Sequence[Event], start: int = 0) -> tuple[int, ...]:
    """Validate event positions and return the strand count at every slice.

    Raises IndexOutOfRange / NegativeStrandCount with the offending event
    index.  Closure is *not* checked here; callers that need a closed word
    check the final count themselves.
    """
    n = start
    counts = [n]
    for k, ev in enumerate(events):
        i = ev.pos
        if ev.kind is EventKind.LEFT_CUSP:
            if not 1 <= i <= n + 1:
                raise IndexOutOfRange(k, f"{ev} on {n} strands")
            n += 2
        else:
            if ev.kind is EventKind.RIGHT_CUSP and n < 2:
                raise NegativeStrandCount(k, f"{ev} on {n} strands")
            if not 1 <= i <= n - 1:
                raise IndexOutOfRange(k, f"{ev} on {n} strands")
            if ev.kind is EventKind.RIGHT_CUSP:
                n -= 2
        counts.append(n)
    return tuple(counts)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def _trace(events: Sequence[Event], start: int = 0, closed: bool = True):
    """Trace strands through a word.

    Returns (counts, offsets, comp, flags, seg) where comp/flags/seg are
    flat lists indexed by cell id = offsets[slice] + pos - 1.  When
    ``closed`` is false the word is treated as a tangle on ``start``
    strands and the right boundary is glued back to the left (the closure
    used by satellite patterns).
    """
    counts = strand_counts(events, start)
    if counts[-1] != (start if not closed else 0):
        if closed:
            raise NonClosed(counts[-1])
        raise NonClosed(counts[-1] - start)
    offsets = [0]
    for c in counts:
        offsets.append(offsets[-1] + c)
    total = offsets[-1]

    def cid(k: int, p: int) -> int:
        return offsets[k] + p - 1

    comp_uf = _UnionFind(total)
    seg_uf = _UnionFind(total)
    # (cell, cell, flips_flag) adjacency used to propagate orientation flags
    links: list[tuple[int, int, bool]] = []

    def join(a: int, b: int, flip: bool, same_segment: bool) -> None:
        comp_uf.union(a, b)
        if same_segment:
            seg_uf.union(a, b)
        links.append((a, b, flip))

    for k, ev in enumerate(events):
        n = counts[k]
        i = ev.pos
        if ev.kind is EventKind.LEFT_CUSP:
            for p in range(1, n + 1):
                q = p if p < i else p + 2
                join(cid(k, p), cid(k + 1, q), False, True)
            join(cid(k + 1, i), cid(k + 1, i + 1), True, False)
        elif ev.kind is EventKind.RIGHT_CUSP:
            for p in range(1, n + 1):
                if p in (i, i + 1):
                    continue
                q = p if p < i else p - 2
                join(cid(k, p), cid(k + 1, q), False, True)
            join(cid(k, i), cid(k, i + 1), True, False)
        else:
            for p in range(1, n + 1):
                if p == i:
                    q = i + 1
                elif p == i + 1:
                    q = i
                else:
                    q = p
                join(cid(k, p), cid(k + 1, q), False, p not in (i, i + 1))
    if not closed:
        m = len(events)
        for p in range(1, start + 1):
            join(cid(m, p), cid(0, p), False, True)

    comp = _renumber(comp_uf, total)
    seg = _renumber(seg_uf, total)

    # Orientation flags: +1 means the strand runs left to right in this cell.
    # Flags flip exactly at cusp junctions; BFS per component from its
    # lex-least cell, which is seeded +1.
    adj: list[list[tuple[int, bool]]] = [[] for _ in range(total)]
    for a, b, flip in links:
        adj[a].append((b, flip))
        adj[b].append((a, flip))
    flags = [0] * total
    for c in range(total):
        if flags[c]:
            continue
        flags[c] = 1
        stack = [c]
        while stack:
            a = stack.pop()
            for b, flip in adj[a]:
                want = -flags[a] if flip else flags[a]
                if flags[b] == 0:
                    flags[b] = want
                    stack.append(b)
                elif flags[b] != want:
                    raise AssertionError("inconsistent orientation flags")
    return counts, offsets, comp, flags, seg


def _renumber(uf: _UnionFind, total: int) -> list[int]:
    ids: dict[int, int] = {}
    out = []
    for c in range(total):
        r = uf.find(c)
        if r not in ids:
            ids[r] = len(ids)
        out.append(ids[r])
    return out


@dataclass(frozen=True)
class FrontDiagram:
    """A validated closed front word plus a choice of component orientations.

    Construction validates the word and traces strands; all derived data
    (slice counts, components, orientation flags, segments) is stored on
    the instance.  Equality and hashing look at the word and orientations
    only.
    """

    events: tuple[Event, ...]
    orientations: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        counts, offsets, comp, flags, seg = _trace(events)
        ncomp = (max(comp) + 1) if comp else 0
        orient = self.orientations
        if orient is None:
            orient = (1,) * ncomp
        else:
            orient = tuple(orient)
            if len(orient) != ncomp or any(o not in (1, -1) for o in orient):
                raise FrontError(
                    f"need {ncomp} orientation signs, got {orient!r}")
        object.__setattr__(self, "orientations", orient)
        object.__setattr__(self, "_counts", counts)
        object.__setattr__(self, "_offsets", offsets)
        object.__setattr__(self, "_comp", comp)
        object.__setattr__(self, "_flags", flags)
        object.__setattr__(self, "_seg", seg)
        object.__setattr__(self, "_ncomp", ncomp)
        object.__setattr__(self, "_nseg", (max(seg) + 1) if seg else 0)

    # -- cell accessors ------------------------------------------------

    def _cid(self, k: int, p: int) -> int:
        if not (0 <= k < len(self._offsets) - 1):
            raise InvalidSite(f"slice {k} out of range")
        if not (1 <= p <= self._counts[k]):
            raise InvalidSite(f"no strand {p} in slice {k}")
        return self._offsets[k] + p - 1

    @property
    def strand_counts(self) -> tuple[int, ...]:
        return self._counts

    @property
    def component_count(self) -> int:
        return self._ncomp

    @property
    def segment_count(self) -> int:
        return self._nseg

    def component_at(self, k: int, p: int) -> int:
        return self._comp[self._cid(k, p)]

    def segment_at(self, k: int, p: int) -> int:
        return self._seg[self._cid(k, p)]

    def raw_flag(self, k: int, p: int) -> int:
        return self._flags[self._cid(k, p)]

    def effective_flag(self, k: int, p: int) -> int:
        c = self._cid(k, p)
        return self._flags[c] * self.orientations[self._comp[c]]

    def with_orientations(self, orientations: Sequence[int]) -> "FrontDiagram":
        return FrontDiagram(self.events, tuple(orientations))

    def reversed_component(self, component: int) -> "FrontDiagram":
        orient = list(self.orientations)
        orient[component] = -orient[component]
        return FrontDiagram(self.events, tuple(orient))

    def crossings(self) -> list[tuple[int, int]]:
        """(event index, position) of every crossing, in word order."""
        return [(k, ev.pos) for k, ev in enumerate(self.events)
                if ev.kind is EventKind.CROSSING]

    def cells(self) -> Iterator[tuple[int, int]]:
        for k, n in enumerate(self._counts):
            for p in range(1, n + 1):
                yield (k, p)

    def __str__(self) -> str:
        return " ".join(str(e) for e in self.events) if self.events else "(empty)"


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rot: tuple[int, ...]
    writhe: int
    right_cusps: int
    up_cusps: int
    down_cusps: int

    @property
    def rot_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.rot))


def classical_invariants(d: FrontDiagram) -> ClassicalInvariants:
    """Thurston-Bennequin and per-component rotation numbers.

    Crossing sign is +1 iff the two strands run the same horizontal way;
    a left cusp points up iff its upper branch runs rightward, a right
    cusp points down iff its upper branch runs rightward.
    """
    writhe = 0
    rc = 0
    up = [0] * d.component_count
    down = [0] * d.component_count
    for k, ev in enumerate(d.events):
        i = ev.pos
        if ev.kind is EventKind.CROSSING:
            writhe += 1 if d.effective_flag(k, i) == d.effective_flag(k, i + 1) else -1
        elif ev.kind is EventKind.LEFT_CUSP:
            c = d.component_at(k + 1, i)
            if d.effective_flag(k + 1, i) == 1:
                up[c] += 1
            else:
                down[c] += 1
        else:
            rc += 1
            c = d.component_at(k, i)
            if d.effective_flag(k, i) == 1:
                down[c] += 1
            else:
                up[c] += 1
    rot = []
    for c in range(d.component_count):
        diff = down[c] - up[c]
        if diff % 2:
            raise AssertionError("odd cusp imbalance on a closed component")
        rot.append(diff // 2)
    return ClassicalInvariants(
        tb=writhe - rc,
        rot=tuple(rot),
        writhe=writhe,
        right_cusps=rc,
        up_cusps=sum(up),
        down_cusps=sum(down),
    )


@dataclass(frozen=True)
class MaslovPotential:
    """Integer potential on segments, normalized to minimum 0 per component."""

    values: tuple[int, ...]  # indexed by segment id
    diagram: FrontDiagram = field(compare=False, repr=False)

    def at(self, k: int, p: int) -> int:
        return self.values[self.diagram.segment_at(k, p)]


def maslov_potential(d: FrontDiagram) -> Optional[MaslovPotential]:
    """Potential with upper cusp branch = lower + 1, constant through
    crossings; None when no consistent assignment exists (some component
    has nonzero rotation)."""
    edges: list[list[tuple[int, int]]] = [[] for _ in range(d.segment_count)]

    def constrain(sa: int, sb: int, diff: int) -> None:
        # value[sa] = value[sb] + diff
        edges[sa].append((sb, diff))
        edges[sb].append((sa, -diff))

    for k, ev in enumerate(d.events):
        i = ev.pos
        if ev.kind is EventKind.LEFT_CUSP:
            constrain(d.segment_at(k + 1, i), d.segment_at(k + 1, i + 1), 1)
        elif ev.kind is EventKind.RIGHT_CUSP:
            constrain(d.segment_at(k, i), d.segment_at(k, i + 1), 1)
        else:
            constrain(d.segment_at(k, i), d.segment_at(k + 1, i + 1), 0)
            constrain(d.segment_at(k, i + 1), d.segment_at(k + 1, i), 0)

    values: list[Optional[int]] = [None] * d.segment_count
    group = [0] * d.segment_count
    ngroups = 0
    for s in range(d.segment_count):
        if values[s] is not None:
            continue
        values[s] = 0
        group[s] = ngroups
        stack = [s]
        while stack:
            a = stack.pop()
            for b, diff in edges[a]:
                want = values[a] - diff
                if values[b] is None:
                    values[b] = want
                    group[b] = ngroups
                    stack.append(b)
                elif values[b] != want:
                    return None
        ngroups += 1

    # Shift each constraint group so its least value is 0.  Shifting per
    # diagram component instead would break the crossing constraints that
    # tie components together.
    gmin: dict[int, int] = {}
    for s, v in enumerate(values):
        g = group[s]
        gmin[g] = v if g not in gmin else min(gmin[g], v)
    out = tuple(values[s] - gmin[group[s]] for s in range(d.segment_count))
    return MaslovPotential(out, d)


# -- canonical form ----------------------------------------------------

def _footprint_after(ev: Event) -> tuple[int, int]:
    # Vertical extent in middle-slice coordinates, doubled to stay integral.
    i = ev.pos
    if ev.kind is EventKind.RIGHT_CUSP:
        return (2 * i - 1, 2 * i - 1)
    return (2 * i, 2 * i + 2)


def _footprint_before(ev: Event) -> tuple[int, int]:
    j = ev.pos
    if ev.kind is EventKind.LEFT_CUSP:
        return (2 * j - 1, 2 * j - 1)
    return (2 * j, 2 * j + 2)


def commuted_pair(a: Event, b: Event) -> Optional[tuple[Event, Event]]:
    """Slide two adjacent events past each other when their vertical
    footprints are disjoint; returns the reindexed pair or None."""
    alo, ahi = _footprint_after(a)
    blo, bhi = _footprint_before(b)
    if not (ahi < blo or bhi < alo):
        return None
    b_above = bhi < alo
    new_b = b.pos if b_above else b.pos - a.delta
    new_a = a.pos + b.delta if b_above else a.pos
    if new_b < 1 or new_a < 1:
        return None
    return (Event(b.kind, new_b), Event(a.kind, new_a))


def canonical_form(d: "FrontDiagram | Sequence[Event]") -> tuple[Event, ...]:
    """Bubble commuting adjacent events into (kind rank, position) order
    until no swap lowers the word lexicographically."""
    word = list(d.events if isinstance(d, FrontDiagram) else d)
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            swapped = commuted_pair(word[k], word[k + 1])
            if swapped is None:
                continue
            if (swapped[0].sort_key, swapped[1].sort_key) < (
                    word[k].sort_key, word[k + 1].sort_key):
                word[k], word[k + 1] = swapped
                changed = True
    return tuple(word)


# -- orientation transfer and stabilization ----------------------------

def transfer_orientations(
    old: FrontDiagram,
    new: FrontDiagram,
    cell_map: Iterable[tuple[tuple[int, int], tuple[int, int]]],
    flips: Optional[Mapping[int, int]] = None,
) -> tuple[FrontDiagram, frozenset[tuple[int, int]]]:
    """Carry component orientations from ``old`` onto ``new`` through a
    map of unchanged cells.  ``flips`` multiplies the orientation of the
    given old components by -1 before the transfer.  Returns the
    reoriented diagram and the old/new component incidence relation
    (a split old component pairs with two new ones, a merge pairs two
    old components with one new).

    Components of ``new`` not hit by the map keep orientation +1.
    """
    flips = dict(flips or {})
    mult: dict[int, int] = {}
    pairs: set[tuple[int, int]] = set()
    for (k, p), (k2, p2) in cell_map:
        c_old = old.component_at(k, p)
        eff = old.effective_flag(k, p) * flips.get(c_old, 1)
        c_new = new.component_at(k2, p2)
        m = eff * new.raw_flag(k2, p2)
        prev = mult.setdefault(c_new, m)
        if prev != m:
            raise AssertionError("incoherent orientation transfer")
        pairs.add((c_old, c_new))
    orient = tuple(mult.get(c, 1) for c in range(new.component_count))
    return new.with_orientations(orient), frozenset(pairs)


def identity_cell_map(
    old: FrontDiagram, cut: int, removed: int, inserted: int
) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Cell map for a rewrite replacing ``removed`` events at index
    ``cut`` by ``inserted`` events, where every template preserves the
    ambient strand positions at the window boundary."""
    shift = inserted - removed
    pairs = []
    for k, n in enumerate(old.strand_counts):
        if cut < k < cut + removed:
            continue
        k2 = k if k <= cut else k + shift
        for p in range(1, n + 1):
            pairs.append(((k, p), (k2, p)))
    return pairs


def stabilize(d: FrontDiagram, site: tuple[int, int], sign: int) -> FrontDiagram:
    """Insert a cusp zigzag on the strand at cell ``site``.

    ``sign`` +1 raises the component's rotation number by 1, -1 lowers
    it; tb always drops by 1.
    """
    if sign not in (1, -1):
        raise InvalidSite(f"stabilization sign must be +-1, got {sign!r}")
    k, p = site
    flag = d.effective_flag(k, p)  # validates the site
    if (sign == 1) == (flag == 1):
        zig = (L(p + 1), R(p))  # hangs below the strand
    else:
        zig = (L(p), R(p + 1))  # pokes above the strand
    events = d.events[:k] + zig + d.events[k:]
    new = FrontDiagram(events)
    out, _ = transfer_orientations(d, new, identity_cell_map(d, k, 0, 2))
    return out
