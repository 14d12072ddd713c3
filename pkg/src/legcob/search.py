"""Bounded search for a decomposable movie between two front diagrams.

The move graph is infinite, so the search is honest about its limits.
A budget caps depth, diagram size and wall time, and a feasibility
prune turns cheap invariant mismatches into INFEASIBLE verdicts before
any state is expanded.  Within those bounds the procedure is
iterative-deepening breadth-first search over ``applicable_moves`` with
canonical-form deduplication, so the outcome is deterministic for a
fixed budget.  A FOUND result always carries a movie that replays and
verifies; EXHAUSTED and TIMED_OUT carry no existence claim either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from time import monotonic
from typing import Callable, Optional, Union

from .front import EventKind, FrontDiagram, canonical_form, classical_invariants
from .moves import (
    REID_I,
    REID_II,
    REID_III,
    SADDLE,
    ZERO_HANDLE,
    MoveNotApplicable,
    apply_move_ex,
    candidate_moves,
    rewrite_templates,
    template_deltas,
)
from .movie import Movie
from .rulings import ruling_count

ALL_MOVE_KINDS = (REID_I, REID_II, REID_III, SADDLE, ZERO_HANDLE)

GENUS_ANY = "any"

FOUND = "found"
EXHAUSTED = "exhausted"
TIMED_OUT = "timed_out"
PRUNED_INFEASIBLE = "pruned_infeasible"


@dataclass(frozen=True)
class SearchBudget:
    """Hard caps the search obeys; states violating them are never expanded."""

    max_steps: int = 6
    max_strands: int = 6
    max_events: int = 24
    time_limit: Optional[float] = None
    allowed_move_kinds: tuple[str, ...] = ALL_MOVE_KINDS

    def __post_init__(self):
        for name in ("max_steps", "max_strands", "max_events"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        bad = set(self.allowed_move_kinds) - set(ALL_MOVE_KINDS)
        if bad:
            raise ValueError(f"unknown move kinds: {sorted(bad)}")


@dataclass(frozen=True)
class SearchStats:
    expanded: int = 0
    dedup_hits: int = 0


@dataclass(frozen=True)
class SearchResult:
    outcome: str
    stats: SearchStats = field(default_factory=SearchStats)
    movie: Optional[Movie] = None
    reason: Optional[str] = None

    @property
    def found(self) -> bool:
        return self.outcome == FOUND


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    reason: Optional[str] = None


def feasibility_prune(
    lower: FrontDiagram,
    upper: FrontDiagram,
    genus: Union[int, str] = GENUS_ANY,
) -> Feasibility:
    """Cheap necessary conditions for a decomposable movie lower -> upper.

    Three checks, each INFEASIBLE with a reason when violated: the
    rotation multisets of the two ends must agree (empty ends are
    unconstrained), the tb difference must be realizable by some
    nonnegative saddle and zero-handle counts (exactly pinned when a
    genus is forced and the surface is assumed connected), and the
    bottom end may not carry more rulings than the top.
    """
    lo, up = classical_invariants(lower), classical_invariants(upper)
    if lower.events and upper.events:
        if sorted(lo.rot) != sorted(up.rot):
            return Feasibility(
                False,
                f"rotation multisets differ: {sorted(lo.rot)} vs {sorted(up.rot)}",
            )
    delta = up.tb - lo.tb
    if genus != GENUS_ANY:
        g = int(genus)
        if g < 0:
            raise ValueError("genus must be nonnegative or 'any'")
        chi = 2 - 2 * g - lower.component_count - upper.component_count
        if delta != -chi:
            return Feasibility(
                False,
                f"tb difference {delta} incompatible with Euler "
                f"characteristic {chi} forced by genus {g}",
            )
    if lower.events and upper.events:
        lo_r, up_r = ruling_count(lower), ruling_count(upper)
        if lo_r > up_r:
            return Feasibility(
                False,
                f"ruling count {lo_r} at the bottom exceeds {up_r} at the top",
            )
    return Feasibility(True, None)


def _counts(events) -> tuple[int, int]:
    rc = nx = 0
    for e in events:
        if e.kind is EventKind.RIGHT_CUSP:
            rc += 1
        elif e.kind is EventKind.CROSSING:
            nx += 1
    return rc, nx


_DELTAS = {
    (t.template_id, direction): template_deltas(t.template_id, direction)
    for t in rewrite_templates()
    for direction in ("forward", "backward")
}


def _lower_bound(n_ev: int, rc: int, nx: int, comps: int,
                 t_len: int, t_rc: int, t_nx: int, t_comps: int) -> int:
    """Admissible remaining-move bound: one move shifts the event count
    by at most 3, the right-cusp count by at most 1, the crossing count
    by at most 2, the component count by at most 1."""
    return max(
        (abs(n_ev - t_len) + 2) // 3,
        abs(rc - t_rc),
        (abs(nx - t_nx) + 1) // 2,
        abs(comps - t_comps),
    )


def search_decomposable(
    lower: FrontDiagram,
    upper: FrontDiagram,
    budget: Optional[SearchBudget] = None,
    genus: Union[int, str] = GENUS_ANY,
    stop: Optional[Callable[[], bool]] = None,
) -> SearchResult:
    """Search for a movie from ``lower`` to ``upper`` within ``budget``.

    Feasibility is pruned before any expansion.  Then, for each depth
    limit up to ``max_steps``, a breadth-first pass expands states in
    the deterministic ``applicable_moves`` order, deduplicating on
    canonical forms and skipping successors that exceed the event or
    strand caps or provably cannot reach the target in the remaining
    depth.  The first state whose canonical form matches the target
    yields the movie.

    ``stop`` is polled between expansions; returning True ends the
    search as TIMED_OUT, which lets callers abort from another thread.
    """
    budget = budget or SearchBudget()
    feas = feasibility_prune(lower, upper, genus)
    if not feas.feasible:
        return SearchResult(PRUNED_INFEASIBLE, reason=feas.reason)

    target = canonical_form(upper)
    if canonical_form(lower) == target:
        return SearchResult(FOUND, movie=Movie(lower, (), upper))

    allowed = set(budget.allowed_move_kinds)
    deadline = None
    if budget.time_limit is not None:
        deadline = monotonic() + budget.time_limit
    t_len, t_comps = len(upper.events), upper.component_count
    t_rc, t_nx = _counts(upper.events)
    expanded = dedup = 0

    for limit in range(1, budget.max_steps + 1):
        frontier: list[tuple[FrontDiagram, tuple]] = [(lower, ())]
        seen = {canonical_form(lower): 0}
        for depth in range(limit):
            nxt: list[tuple[FrontDiagram, tuple]] = []
            remaining = limit - depth - 1
            for d, path in frontier:
                timed = deadline is not None and monotonic() > deadline
                if timed or (stop is not None and stop()):
                    return SearchResult(
                        TIMED_OUT, SearchStats(expanded, dedup))
                expanded += 1
                n_ev = len(d.events)
                rc, nx = _counts(d.events)
                comps = d.component_count
                for mv in candidate_moves(d):
                    if mv.variant not in allowed:
                        continue
                    d_ev, d_rc, d_nx = _DELTAS[mv.template_id, mv.direction]
                    if n_ev + d_ev > budget.max_events:
                        continue
                    if mv.variant == ZERO_HANDLE:
                        c2 = comps + 1
                    elif mv.variant == SADDLE:
                        # a saddle merges or splits; optimistic choice
                        # keeps the bound admissible
                        c2 = min(max(comps - 1, t_comps), comps + 1)
                    else:
                        c2 = comps
                    bound = _lower_bound(
                        n_ev + d_ev, rc + d_rc, nx + d_nx, c2,
                        t_len, t_rc, t_nx, t_comps)
                    if bound > remaining:
                        continue
                    try:
                        nd = apply_move_ex(d, mv).diagram
                    except MoveNotApplicable:
                        continue
                    if max(nd.strand_counts) > budget.max_strands:
                        continue
                    key = canonical_form(nd)
                    if key == target:
                        movie = Movie(lower, path + (mv,), upper)
                        return SearchResult(
                            FOUND, SearchStats(expanded, dedup), movie=movie)
                    prev = seen.get(key)
                    if prev is not None and prev <= depth + 1:
                        dedup += 1
                        continue
                    seen[key] = depth + 1
                    nxt.append((nd, path + (mv,)))
            frontier = nxt
            if not frontier:
                break
    return SearchResult(EXHAUSTED, SearchStats(expanded, dedup))
