"""Local rewrites on front words: the cobordism move catalog.

Three families:

* isotopy templates (the front Reidemeister moves, all reflections and
  both cusp-side variants), applied in either direction;
* saddles, which delete an adjacent ``R(i) L(i)`` pair and join the
  strands straight through, legal only toward the top of a cobordism;
* zero handles, which insert a tiny eye below all active strands.

Every template keeps the ambient strand positions outside its window
fixed, so orientations carry over through the identity cell map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .front import (
    Event,
    EventKind,
    FrontDiagram,
    FrontError,
    L,
    R,
    identity_cell_map,
    transfer_orientations,
)

FORWARD = "forward"
BACKWARD = "backward"

REID_I = "ReidI"
REID_II = "ReidII"
REID_III = "ReidIII"
SADDLE = "Saddle"
ZERO_HANDLE = "ZeroHandle"

_VARIANT_ORDER = {REID_I: 0, REID_II: 1, REID_III: 2, SADDLE: 3,
                  ZERO_HANDLE: 4}


class MoveNotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class Site:
    """Word index where the rewrite window starts, plus the position
    parameter of the template."""

    index: int
    pos: int


@dataclass(frozen=True)
class Move:
    variant: str
    template_id: str
    site: Site
    direction: str

    def __str__(self) -> str:
        return (f"{self.template_id}:{self.direction}"
                f"@{self.site.index},p{self.site.pos}")


# Patterns are (kind, offset) pairs; an instance at parameter p uses
# position p + offset for each event.
_Pattern = tuple[tuple[EventKind, int], ...]

_LC, _RC, _XX = EventKind.LEFT_CUSP, EventKind.RIGHT_CUSP, EventKind.CROSSING


@dataclass(frozen=True)
class RewriteTemplate:
    template_id: str
    variant: str
    left: _Pattern
    right: _Pattern

    def instantiate(self, pattern: _Pattern, p: int) -> tuple[Event, ...]:
        return tuple(Event(kind, p + off) for kind, off in pattern)

    def match(self, events: tuple[Event, ...], k: int, pattern: _Pattern
              ) -> Optional[int]:
        """Parameter p if ``pattern`` matches at word index k, else None."""
        if not pattern or k + len(pattern) > len(events):
            return None
        p = events[k].pos - pattern[0][1]
        if p < 1:
            return None
        for ev, (kind, off) in zip(events[k:], pattern):
            if ev.kind is not kind or ev.pos != p + off:
                return None
        return p

    def sides(self, direction: str) -> tuple[_Pattern, _Pattern]:
        if direction == FORWARD:
            return self.left, self.right
        if direction == BACKWARD:
            return self.right, self.left
        raise MoveNotApplicable(f"unknown direction {direction!r}")


_ISOTOPY_TEMPLATES = (
    RewriteTemplate("r1a", REID_I, (), ((_LC, 1), (_XX, 0), (_RC, 1))),
    RewriteTemplate("r1b", REID_I, (), ((_LC, 0), (_XX, 1), (_RC, 0))),
    RewriteTemplate("r2la", REID_II, ((_LC, 1),),
                    ((_LC, 0), (_XX, 1), (_XX, 0))),
    RewriteTemplate("r2lb", REID_II, ((_LC, 0),),
                    ((_LC, 1), (_XX, 0), (_XX, 1))),
    RewriteTemplate("r2ra", REID_II, ((_RC, 0),),
                    ((_XX, 1), (_XX, 0), (_RC, 1))),
    RewriteTemplate("r2rb", REID_II, ((_RC, 1),),
                    ((_XX, 0), (_XX, 1), (_RC, 0))),
    RewriteTemplate("r3", REID_III, ((_XX, 0), (_XX, 1), (_XX, 0)),
                    ((_XX, 1), (_XX, 0), (_XX, 1))),
)

_SADDLE_TEMPLATE = RewriteTemplate(
    "saddle", SADDLE, ((_RC, 0), (_LC, 0)), ())
_ZERO_TEMPLATE = RewriteTemplate(
    "zerohandle", ZERO_HANDLE, (), ((_LC, 0), (_RC, 0)))

_BY_ID = {t.template_id: t for t in
          _ISOTOPY_TEMPLATES + (_SADDLE_TEMPLATE, _ZERO_TEMPLATE)}


def rewrite_templates() -> tuple[RewriteTemplate, ...]:
    """The full fixed catalog, isotopy templates first."""
    return _ISOTOPY_TEMPLATES + (_SADDLE_TEMPLATE, _ZERO_TEMPLATE)


def template_deltas(template_id: str, direction: str) -> tuple[int, int, int]:
    """(event, right-cusp, crossing) count changes of one application."""
    src, dst = _BY_ID[template_id].sides(direction)

    def tally(pattern: _Pattern) -> tuple[int, int]:
        rc = sum(1 for kind, _ in pattern if kind is _RC)
        nx = sum(1 for kind, _ in pattern if kind is _XX)
        return rc, nx

    src_rc, src_nx = tally(src)
    dst_rc, dst_nx = tally(dst)
    return len(dst) - len(src), dst_rc - src_rc, dst_nx - src_nx


@dataclass(frozen=True)
class ApplyResult:
    diagram: FrontDiagram
    # old/new component incidence; a birth has no pair
    comp_pairs: frozenset[tuple[int, int]]
    new_components: tuple[int, ...]
    flipped: tuple[int, ...] = ()  # old components reoriented by the move
    saddle_pair: Optional[tuple[int, int]] = None  # (cusp-side, flat-side)


def _rewrite(d: FrontDiagram, k: int, removed: int,
             inserted: tuple[Event, ...],
             flips: Optional[dict[int, int]] = None) -> ApplyResult:
    if not 0 <= k <= len(d.events) - removed:
        raise MoveNotApplicable(f"window at {k} out of range")
    events = d.events[:k] + inserted + d.events[k + removed:]
    try:
        new = FrontDiagram(events)
    except FrontError as exc:
        raise MoveNotApplicable(str(exc)) from None
    out, pairs = transfer_orientations(
        d, new, identity_cell_map(d, k, removed, len(inserted)), flips)
    seen = {n for _, n in pairs}
    born = tuple(c for c in range(out.component_count) if c not in seen)
    return ApplyResult(out, pairs, born,
                       tuple(sorted((flips or {}).keys())))


def _apply_isotopy(d: FrontDiagram, m: Move) -> ApplyResult:
    t = _BY_ID[m.template_id]
    src, dst = t.sides(m.direction)
    k, p = m.site.index, m.site.pos
    if src:
        if t.match(d.events, k, src) != p:
            raise MoveNotApplicable(
                f"{m.template_id} {m.direction} does not match at {m.site}")
    elif not 0 <= k <= len(d.events):
        raise MoveNotApplicable(f"window at {k} out of range")
    res = _rewrite(d, k, len(src), t.instantiate(dst, p))
    if res.new_components or res.diagram.component_count != d.component_count:
        raise AssertionError("isotopy changed the component count")
    return res


def saddle_sides(d: FrontDiagram, k: int
                 ) -> tuple[int, int, int, int]:
    """Components entering the R/L pair at word index k from the left
    and from the right, with their upper-strand effective flags."""
    i = d.events[k].pos
    return (d.component_at(k, i), d.component_at(k + 2, i),
            d.effective_flag(k, i), d.effective_flag(k + 2, i))


def _apply_saddle(d: FrontDiagram, m: Move,
                  flip_side: Optional[str] = None) -> ApplyResult:
    if m.direction != FORWARD:
        raise MoveNotApplicable(
            "a saddle layer always runs toward the top; use the forward "
            "direction")
    k, i = m.site.index, m.site.pos
    w = d.events
    if not (0 <= k < len(w) - 1 and w[k] == R(i) and w[k + 1] == L(i)):
        raise MoveNotApplicable(f"no R{i} L{i} pair at index {k}")
    comp_a, comp_b, eff_a, eff_b = saddle_sides(d, k)
    flips: dict[int, int] = {}
    if eff_a != eff_b:
        if comp_a == comp_b:
            raise MoveNotApplicable(
                "pinch within one component needs compatible orientations")
        flips = {comp_a if flip_side == "left" else comp_b: -1}
    res = _rewrite(d, k, 2, (), flips)
    return ApplyResult(res.diagram, res.comp_pairs, res.new_components,
                       res.flipped, saddle_pair=(comp_a, comp_b))


def _apply_zero_handle(d: FrontDiagram, m: Move) -> ApplyResult:
    if m.direction != FORWARD:
        raise MoveNotApplicable(
            "a zero handle always runs toward the top; use the forward "
            "direction")
    k = m.site.index
    if not 0 <= k <= len(d.events):
        raise MoveNotApplicable(f"window at {k} out of range")
    n = d.strand_counts[k]
    if m.site.pos != n + 1:
        raise MoveNotApplicable(
            f"zero handle at index {k} sits below all strands: pos must "
            f"be {n + 1}")
    return _rewrite(d, k, 0, (L(n + 1), R(n + 1)))


def apply_move_ex(d: FrontDiagram, m: Move, *,
                  flip_side: Optional[str] = None) -> ApplyResult:
    """Apply a move and report how components map across it.

    ``flip_side`` picks which component a merging saddle reorients when
    the two sides disagree: "left" for the component entering the window
    from the left, "right" (the default) for the one leaving it.
    """
    t = _BY_ID.get(m.template_id)
    if t is None:
        raise MoveNotApplicable(f"unknown template {m.template_id!r}")
    if t.variant != m.variant:
        raise MoveNotApplicable(
            f"template {m.template_id} belongs to {t.variant}, "
            f"not {m.variant}")
    if m.variant == SADDLE:
        return _apply_saddle(d, m, flip_side)
    if m.variant == ZERO_HANDLE:
        return _apply_zero_handle(d, m)
    return _apply_isotopy(d, m)


def apply_move(d: FrontDiagram, m: Move) -> FrontDiagram:
    return apply_move_ex(d, m).diagram


def _try(d: FrontDiagram, m: Move, out: list[Move]) -> None:
    try:
        apply_move_ex(d, m)
    except MoveNotApplicable:
        return
    out.append(m)


def candidate_moves(d: FrontDiagram) -> list[Move]:
    """Moves whose source pattern matches ``d``, deterministically
    ordered but not validated: applying one may still raise
    MoveNotApplicable when the rewritten word fails validation.  Cheap
    enumeration for callers that filter before applying."""
    w = d.events
    counts = d.strand_counts
    out: list[Move] = []
    for t in _ISOTOPY_TEMPLATES:
        for direction in (FORWARD, BACKWARD):
            src, _ = t.sides(direction)
            if src:
                for k in range(len(w) - len(src) + 1):
                    p = t.match(w, k, src)
                    if p is not None:
                        out.append(Move(t.variant, t.template_id,
                                        Site(k, p), direction))
            else:
                for k in range(len(w) + 1):
                    for p in range(1, counts[k] + 1):
                        out.append(Move(t.variant, t.template_id,
                                        Site(k, p), direction))
    for k in range(len(w) - 1):
        if (w[k].kind is EventKind.RIGHT_CUSP
                and w[k + 1].kind is EventKind.LEFT_CUSP
                and w[k].pos == w[k + 1].pos):
            out.append(Move(SADDLE, "saddle", Site(k, w[k].pos), FORWARD))
    for k in range(len(w) + 1):
        out.append(Move(ZERO_HANDLE, "zerohandle",
                        Site(k, counts[k] + 1), FORWARD))
    out.sort(key=lambda m: (_VARIANT_ORDER[m.variant], m.site.index,
                            m.template_id, m.direction, m.site.pos))
    return out


def applicable_moves(d: FrontDiagram) -> list[Move]:
    """Every move in the catalog applicable to ``d``, deterministically
    ordered; isotopy moves come in both directions, saddles and zero
    handles only forward."""
    w = d.events
    counts = d.strand_counts
    out: list[Move] = []
    for t in _ISOTOPY_TEMPLATES:
        for direction in (FORWARD, BACKWARD):
            src, _ = t.sides(direction)
            if src:
                for k in range(len(w) - len(src) + 1):
                    p = t.match(w, k, src)
                    if p is not None:
                        _try(d, Move(t.variant, t.template_id,
                                     Site(k, p), direction), out)
            else:
                for k in range(len(w) + 1):
                    for p in range(1, counts[k] + 1):
                        _try(d, Move(t.variant, t.template_id,
                                     Site(k, p), direction), out)
    for k in range(len(w) - 1):
        if (w[k].kind is EventKind.RIGHT_CUSP
                and w[k + 1].kind is EventKind.LEFT_CUSP
                and w[k].pos == w[k + 1].pos):
            _try(d, Move(SADDLE, "saddle", Site(k, w[k].pos), FORWARD), out)
    for k in range(len(w) + 1):
        out.append(Move(ZERO_HANDLE, "zerohandle",
                        Site(k, counts[k] + 1), FORWARD))
    out.sort(key=lambda m: (_VARIANT_ORDER[m.variant], m.site.index,
                            m.template_id, m.direction, m.site.pos))
    return out
