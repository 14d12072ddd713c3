"""Cobordism movies: move sequences from a bottom front to a top front.

Verification replays the moves, tracks how slice components trace out
surface pieces (zero handles seed pieces, merging saddles unite them),
and reports the Euler characteristic and genus bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .front import FrontDiagram, canonical_form, classical_invariants
from .moves import (
    BACKWARD,
    FORWARD,
    SADDLE,
    ZERO_HANDLE,
    ApplyResult,
    Move,
    MoveNotApplicable,
    apply_move_ex,
)

PASS = "PASS"
FAIL = "FAIL"


class StepNotApplicable(ValueError):
    def __init__(self, step_index: int, reason: str):
        super().__init__(f"step {step_index}: {reason}")
        self.step_index = step_index
        self.reason = reason


class EndpointMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Movie:
    start: FrontDiagram
    steps: tuple[Move, ...]
    claimed_end: FrontDiagram


@dataclass(frozen=True)
class CobordismSummary:
    chi: int
    zero_handles: int
    saddles: int
    surface_components: int
    genus: Optional[int]  # None when the surface is disconnected
    genus_per_component: tuple[int, ...]
    boundary_components_minus: int
    boundary_components_plus: int


class _Pieces:
    """Union-find over surface pieces with per-piece counters."""

    def __init__(self, start: FrontDiagram):
        self.parent: list[int] = []
        self.zh: list[int] = []
        self.sd: list[int] = []
        self.bminus: list[int] = []
        # current slice component -> piece id
        self.of: dict[int, int] = {}
        for c in range(start.component_count):
            self.of[c] = self._new(bminus=1)

    def _new(self, *, bminus: int = 0, zh: int = 0) -> int:
        pid = len(self.parent)
        self.parent.append(pid)
        self.zh.append(zh)
        self.sd.append(0)
        self.bminus.append(bminus)
        return pid

    def find(self, pid: int) -> int:
        while self.parent[pid] != pid:
            self.parent[pid] = self.parent[self.parent[pid]]
            pid = self.parent[pid]
        return pid

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.zh[ra] += self.zh[rb]
        self.sd[ra] += self.sd[rb]
        self.bminus[ra] += self.bminus[rb]
        return ra

    def is_fresh(self, comp: int) -> bool:
        """A piece with no bottom boundary and a single current slice
        component; reorienting that component reorients the whole piece,
        which is the only kind of orientation flip verification allows."""
        root = self.find(self.of[comp])
        if self.bminus[root] != 0:
            return False
        return sum(1 for c, p in self.of.items()
                   if self.find(p) == root) == 1

    def step(self, res: ApplyResult, is_saddle: bool) -> None:
        new_of: dict[int, int] = {}
        for old, new in sorted(res.comp_pairs):
            pid = self.find(self.of[old])
            if new in new_of:
                new_of[new] = self.union(new_of[new], pid)
            else:
                new_of[new] = pid
        for born in res.new_components:
            new_of[born] = self._new(zh=1)
        if is_saddle:
            a, b = res.saddle_pair  # type: ignore[misc]
            root = self.union(self.of[a], self.of[b])
            self.sd[root] += 1
        self.of = new_of

    def summary(self, end: FrontDiagram) -> CobordismSummary:
        bplus: dict[int, int] = {}
        for c in range(end.component_count):
            root = self.find(self.of[c])
            bplus[root] = bplus.get(root, 0) + 1
        roots = sorted({self.find(p) for p in range(len(self.parent))})
        genera = []
        for r in roots:
            chi_r = self.zh[r] - self.sd[r]
            b_r = self.bminus[r] + bplus.get(r, 0)
            assert b_r > 0, "a movie layer cannot cap off a piece"
            g2 = 2 - chi_r - b_r
            assert g2 % 2 == 0 and g2 >= 0, "surface bookkeeping broke"
            genera.append(g2 // 2)
        chi = sum(self.zh[r] - self.sd[r] for r in roots)
        return CobordismSummary(
            chi=chi,
            zero_handles=sum(self.zh[r] for r in roots),
            saddles=sum(self.sd[r] for r in roots),
            surface_components=len(roots),
            genus=genera[0] if len(roots) == 1 else None,
            genus_per_component=tuple(genera),
            boundary_components_minus=sum(self.bminus[r] for r in roots),
            boundary_components_plus=end.component_count,
        )


def replay(m: Movie) -> tuple[FrontDiagram, CobordismSummary]:
    """Fold the moves over the start diagram; returns the final diagram
    as computed (with transported orientations) plus the summary."""
    cur = m.start
    pieces = _Pieces(cur)
    for k, step in enumerate(m.steps):
        try:
            res = apply_move_ex(cur, step)
        except MoveNotApplicable as exc:
            raise StepNotApplicable(k, str(exc)) from None
        if res.flipped:
            ok = all(pieces.is_fresh(c) for c in res.flipped)
            if not ok and step.variant == SADDLE:
                other = res.saddle_pair[0]  # type: ignore[index]
                if pieces.is_fresh(other):
                    res = apply_move_ex(cur, step, flip_side="left")
                    ok = True
            if not ok:
                raise StepNotApplicable(
                    k, "orientation flip would reorient a piece that "
                       "already has fixed boundary")
        pieces.step(res, step.variant == SADDLE)
        cur = res.diagram
    if canonical_form(cur) != canonical_form(m.claimed_end):
        raise EndpointMismatch(
            f"movie ends at [{cur}], claimed [{m.claimed_end}]")
    return cur, pieces.summary(cur)


def verify(m: Movie) -> CobordismSummary:
    """Summary iff every step applies and the end matches; otherwise
    StepNotApplicable or EndpointMismatch."""
    return replay(m)[1]


@dataclass(frozen=True)
class CheckReport:
    verdict: str
    violations: tuple[str, ...]


def classical_check(lower: Optional[FrontDiagram],
                    upper: Optional[FrontDiagram],
                    chi: int) -> CheckReport:
    """The two classical equations a cobordism must satisfy:
    tb(top) - tb(bottom) = -chi, and equal rotation-number totals.

    For knot endpoints the rotation condition is the usual equality of
    rotation numbers; totals extend it to multi-component and empty
    ends (an empty end contributes 0).
    """
    def tb_rot(d: Optional[FrontDiagram]) -> tuple[int, int]:
        if d is None or not d.events:
            return 0, 0
        inv = classical_invariants(d)
        return inv.tb, sum(inv.rot)

    tb_lo, rot_lo = tb_rot(lower)
    tb_hi, rot_hi = tb_rot(upper)
    violations = []
    if tb_hi - tb_lo != -chi:
        violations.append(
            f"tb(top) - tb(bottom) = {tb_hi - tb_lo}, expected -chi = {-chi}")
    if rot_lo != rot_hi:
        violations.append(
            f"rotation totals differ: bottom {rot_lo}, top {rot_hi}")
    return CheckReport(PASS if not violations else FAIL, tuple(violations))


def summary_consistency(m: Movie) -> str:
    """classical_check on the movie's endpoints with its computed chi;
    every verified movie passes this."""
    summary = verify(m)
    return classical_check(m.start, m.claimed_end, summary.chi).verdict


def concatenate(a: Movie, b: Movie) -> Movie:
    """Stack b on top of a; valid when a ends where b starts."""
    if canonical_form(a.claimed_end) != canonical_form(b.start):
        raise EndpointMismatch("concatenation ends do not meet")
    # b's steps address b.start's word; replaying a must land on it
    final, _ = replay(a)
    if final.events != b.start.events:
        raise EndpointMismatch(
            "concatenation needs the exact same word at the junction")
    return Movie(a.start, a.steps + b.steps, b.claimed_end)


def reversed_isotopy(m: Movie) -> Movie:
    """Reverse of a movie containing only isotopy steps."""
    if any(s.variant in (SADDLE, ZERO_HANDLE) for s in m.steps):
        raise MoveNotApplicable("only isotopy movies reverse")
    flipped = tuple(
        Move(s.variant, s.template_id, s.site,
             BACKWARD if s.direction == FORWARD else FORWARD)
        for s in reversed(m.steps))
    return Movie(m.claimed_end, flipped, m.start)
