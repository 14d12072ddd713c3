"""Satellites of front words: parallel copies with a pattern spliced in.

The companion knot is replaced by n parallel translated copies (cusps
become nested cusp stacks, each crossing becomes an n-by-n block swap),
then a pattern tangle on n strands is cut into the copies at a chosen
left-to-right oriented point of the companion.  Patterns live on a
circle: the word's right end glues back to its left end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .front import Event, EventKind, FrontDiagram, L, R, X, _trace


class NotAKnot(ValueError):
    pass


class BadSite(ValueError):
    pass


class StrandMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PatternTangle:
    """A front word on ``strands`` horizontal levels, equal count at both
    ends, with the two ends identified.  ``orientations`` gives the
    travel direction (+1 rightward) of the strand at each left-boundary
    position; omitted, each closure cycle is seeded rightward at its
    least position."""

    strands: int
    events: tuple[Event, ...]
    orientations: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.strands < 1:
            raise StrandMismatch("a pattern needs at least one strand")
        object.__setattr__(self, "events", tuple(self.events))
        counts, offsets, comp, flags, _ = _trace(
            self.events, start=self.strands, closed=False)
        object.__setattr__(self, "_counts", counts)
        boundary_comp = [comp[j] for j in range(self.strands)]
        boundary_flag = [flags[j] for j in range(self.strands)]
        if self.orientations is None:
            mult: dict[int, int] = {}
            orient = []
            for j in range(self.strands):
                c = boundary_comp[j]
                mult.setdefault(c, boundary_flag[j])  # +1 at least position
                orient.append(mult[c] * boundary_flag[j])
            object.__setattr__(self, "orientations", tuple(orient))
        else:
            orient = tuple(self.orientations)
            if len(orient) != self.strands or any(
                    o not in (1, -1) for o in orient):
                raise StrandMismatch(
                    f"need {self.strands} orientation signs, got {orient!r}")
            object.__setattr__(self, "orientations", orient)
            mult = {}
            for j in range(self.strands):
                c = boundary_comp[j]
                m = orient[j] * boundary_flag[j]
                if mult.setdefault(c, m) != m:
                    raise StrandMismatch(
                        "orientations disagree along a closure cycle")
        object.__setattr__(self, "_boundary_comp", tuple(boundary_comp))

    @property
    def closure_components(self) -> int:
        counts, offsets, comp, _, _ = _trace(
            self.events, start=self.strands, closed=False)
        return max(comp) + 1 if comp else 0


def trivial_pattern() -> PatternTangle:
    return PatternTangle(1, ())


def clasp_pattern() -> PatternTangle:
    """Two antiparallel strands clasped once; doubling a companion with
    it gives its Legendrian Whitehead double."""
    return PatternTangle(2, (L(2), X(1), X(3), R(2)))


def full_twist(n: int) -> PatternTangle:
    """The n-strand staircase repeated n times; one strand cannot twist."""
    if n < 1:
        raise StrandMismatch("a pattern needs at least one strand")
    word = tuple(X(i) for _ in range(n) for i in range(1, n))
    return PatternTangle(n, word)


def compose(p1: PatternTangle, p2: PatternTangle) -> PatternTangle:
    if p1.strands != p2.strands:
        raise StrandMismatch(
            f"cannot compose tangles on {p1.strands} and {p2.strands} "
            f"strands")
    return PatternTangle(p1.strands, p1.events + p2.events)


def power(p: PatternTangle, t: int) -> PatternTangle:
    if t < 0:
        raise StrandMismatch("tangle powers are nonnegative")
    return PatternTangle(p.strands, p.events * t)


# -- copy expansion ------------------------------------------------------

def _gather_word(base: int, n: int) -> list[Event]:
    # sort [U,D,U,D,...] into [U,...,U,D,...,D] by adjacent swaps
    state = ["U", "D"] * n
    word: list[Event] = []
    changed = True
    while changed:
        changed = False
        for j in range(2 * n - 1):
            if state[j] == "D" and state[j + 1] == "U":
                state[j], state[j + 1] = state[j + 1], state[j]
                word.append(X(base + j + 1))
                changed = True
    return word


def _block_swap(a: int, n: int) -> list[Event]:
    # positive word exchanging strand blocks [a+1..a+n] and [a+n+1..a+2n]
    word = []
    for s in range(n):
        word.extend(X(a + q) for q in range(n - s, 2 * n - s))
    return word


def _expand_event(ev: Event, n: int) -> list[Event]:
    base = n * (ev.pos - 1)
    if ev.kind is EventKind.LEFT_CUSP:
        return [L(base + 1)] * n + _gather_word(base, n)
    if ev.kind is EventKind.RIGHT_CUSP:
        return list(reversed(_gather_word(base, n))) + [R(base + 1)] * n
    return _block_swap(base, n)


def _oriented_from_demands(
    word: tuple[Event, ...],
    demands: list[tuple[int, int, int]],
) -> FrontDiagram:
    d = FrontDiagram(word)
    mult: dict[int, int] = {}
    for k, p, eff in demands:
        c = d.component_at(k, p)
        m = eff * d.raw_flag(k, p)
        if mult.setdefault(c, m) != m:
            raise AssertionError("copy orientations disagree")
    orient = tuple(mult.get(c, 1) for c in range(d.component_count))
    return d.with_orientations(orient)


def n_copy(d: FrontDiagram, n: int) -> FrontDiagram:
    """n parallel translated copies of a knot, each oriented like it."""
    if d.component_count != 1:
        raise NotAKnot(f"companion has {d.component_count} components")
    if n < 1:
        raise StrandMismatch("need at least one copy")
    blocks = [_expand_event(ev, n) for ev in d.events]
    word = tuple(e for b in blocks for e in b)
    first_slice = len(blocks[0])
    demands = [
        (first_slice, n * (p - 1) + j, d.effective_flag(1, p))
        for p in range(1, d.strand_counts[1] + 1)
        for j in range(1, n + 1)
    ]
    return _oriented_from_demands(word, demands)


def default_site(d: FrontDiagram) -> tuple[int, int]:
    """First cell, in slice order, where the knot runs left to right."""
    for k, p in d.cells():
        if d.effective_flag(k, p) == 1:
            return (k, p)
    raise BadSite("no left-to-right oriented point")


def satellite(
    companion: FrontDiagram,
    pattern: PatternTangle,
    site: Optional[tuple[int, int]] = None,
) -> FrontDiagram:
    """Splice ``pattern`` into the n-copy of ``companion`` at ``site``.

    The site must be oriented left to right; orientations of the result
    come from the pattern's strand orientations.
    """
    if companion.component_count != 1:
        raise NotAKnot(f"companion has {companion.component_count} "
                       f"components")
    n = pattern.strands
    if site is None:
        site = default_site(companion)
    k, p = site
    try:
        eff = companion.effective_flag(k, p)
    except Exception as exc:
        raise BadSite(str(exc)) from None
    if eff != 1:
        raise BadSite(f"cell {site} runs right to left; satellites cut "
                      f"along a left-to-right point")
    blocks = [_expand_event(ev, n) for ev in companion.events]
    cut = sum(len(b) for b in blocks[:k])
    offset = n * (p - 1)
    inserted = tuple(Event(e.kind, e.pos + offset) for e in pattern.events)
    word = (tuple(e for b in blocks[:k] for e in b) + inserted
            + tuple(e for b in blocks[k:] for e in b))
    demands = [(cut, offset + j, pattern.orientations[j - 1])
               for j in range(1, n + 1)]
    return _oriented_from_demands(word, demands)
