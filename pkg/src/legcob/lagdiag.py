"""Area-decorated planar curve diagrams and their surgery moves.

A diagram is a 4-valent combinatorial map: crossings carry a sign and a
counterclockwise cyclic order of four half-edge ids (darts), edges pair
darts, and embedded crossingless circles are kept as dartless free
loops.  Every dart is assigned the region on its own side of its edge
(the face traced by following next-counterclockwise-after-crossing),
regions carry positive rational areas, and one region is the unbounded
outer one.  Loops record the regions on their two sides.

Winding numbers of each curve component over each region are recovered
by walking the dual graph from the outer region; validity demands the
full set of edge relations be consistent, which is the planarity check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union


class LagError(ValueError):
    pass


class PreconditionFailed(LagError):
    def __init__(self, condition: str):
        super().__init__(condition)
        self.condition = condition


class SiteNotFound(LagError):
    pass


class UnknownComponent(LagError):
    pass


@dataclass(frozen=True)
class Crossing:
    sign: int
    darts: tuple[int, int, int, int]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise LagError(f"crossing sign must be +-1, got {self.sign}")
        object.__setattr__(self, "darts", tuple(self.darts))
        if len(set(self.darts)) != 4:
            raise LagError(f"crossing needs 4 distinct darts: {self.darts}")


SiteRef = Union[int, tuple[str, int]]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=False)
class DecoratedDiagram:
    crossings: tuple[Crossing, ...] = ()
    edges: tuple[tuple[int, int], ...] = ()
    loops: Mapping[int, tuple[str, str]] = field(default_factory=dict)
    region_of: Mapping[int, str] = field(default_factory=dict)
    areas: Mapping[str, Fraction] = field(default_factory=dict)
    outer: str = "r0"

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(
            self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "loops", dict(self.loops))
        object.__setattr__(self, "region_of", dict(self.region_of))
        object.__setattr__(
            self, "areas",
            {k: _frac(v) for k, v in dict(self.areas).items()})
        self._build()
        self._validate()

    # -- derived structure ------------------------------------------------

    def _build(self):
        sigma: dict[int, int] = {}
        origin: dict[int, int] = {}
        for vi, c in enumerate(self.crossings):
            for j, d in enumerate(c.darts):
                if d in origin:
                    raise LagError(f"dart {d} used twice")
                origin[d] = vi
                sigma[d] = c.darts[(j + 1) % 4]
        alpha: dict[int, int] = {}
        for a, b in self.edges:
            if a == b or a in alpha or b in alpha:
                raise LagError(f"bad edge ({a}, {b})")
            alpha[a] = b
            alpha[b] = a
        if set(alpha) != set(origin):
            raise LagError("edges must pair exactly the crossing darts")
        object.__setattr__(self, "_sigma", sigma)
        object.__setattr__(self, "_alpha", alpha)
        object.__setattr__(self, "_origin", origin)

        seen: set[int] = set()
        faces = []
        for d in sorted(alpha):
            if d in seen:
                continue
            orbit = []
            x = d
            while True:
                orbit.append(x)
                seen.add(x)
                x = sigma[alpha[x]]
                if x == d:
                    break
            faces.append(tuple(orbit))
        object.__setattr__(self, "_faces", tuple(faces))

        # curve components: edge darts linked across edges and straight
        # through crossings
        parent: dict[int, int] = {d: d for d in alpha}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        for a, b in self.edges:
            union(a, b)
        for c in self.crossings:
            union(c.darts[0], c.darts[2])
            union(c.darts[1], c.darts[3])
        comp_of = {d: f"p{find(d)}" for d in alpha}
        object.__setattr__(self, "_comp_of", comp_of)
        comps = sorted(set(comp_of.values()))
        comps += [f"l{i}" for i in sorted(self.loops)]
        object.__setattr__(self, "components", tuple(comps))

    def _travel_darts(self) -> set[int]:
        # one dart per edge, the one used when each piece is traversed
        # starting outward from its least dart
        used: set[int] = set()
        visited: set[int] = set()
        for d0 in sorted(self._alpha):
            if d0 in visited:
                continue
            x = d0
            while True:
                used.add(x)
                visited.add(x)
                visited.add(self._alpha[x])
                x = self._sigma[self._sigma[self._alpha[x]]]
                if x == d0:
                    break
        return used

    def _windings(self) -> dict[str, dict[str, int]]:
        regions = set(self.areas) | {self.outer}
        relations = []  # (lower_region, higher_region, component)
        for d in self._travel_darts():
            relations.append((
                self.region_of[d],
                self.region_of[self._alpha[d]],
                self._comp_of[d],
            ))
        for lid, (lo, li) in self.loops.items():
            relations.append((lo, li, f"l{lid}"))
        w: dict[str, dict[str, int]] = {self.outer: {}}
        frontier = [self.outer]
        adj: dict[str, list[tuple[str, str, int]]] = {r: [] for r in regions}
        for lo_r, hi_r, c in relations:
            adj[lo_r].append((hi_r, c, 1))
            adj[hi_r].append((lo_r, c, -1))
        while frontier:
            r = frontier.pop()
            for other, c, delta in adj[r]:
                cand = dict(w[r])
                cand[c] = cand.get(c, 0) + delta
                if cand[c] == 0:
                    del cand[c]
                if other not in w:
                    w[other] = cand
                    frontier.append(other)
        if set(w) != regions:
            raise LagError("region structure is not connected to the "
                           "outer region")
        for lo_r, hi_r, c in relations:
            if w[hi_r].get(c, 0) - w[lo_r].get(c, 0) != 1:
                raise LagError("winding numbers are inconsistent; the "
                               "embedding data does not describe a plane "
                               "diagram")
        return w

    def _validate(self):
        regions = set(self.areas) | {self.outer}
        if self.outer in self.areas:
            raise LagError("the outer region cannot carry an area")
        for k, v in self.areas.items():
            if v <= 0:
                raise LagError(f"region {k} has nonpositive area {v}")
        if set(self.region_of) != set(self._alpha):
            raise LagError("region_of must cover exactly the darts")
        used = set(self.region_of.values())
        for lo, li in self.loops.values():
            used.add(lo)
            used.add(li)
        if not used <= regions:
            raise LagError(f"unknown region keys: {sorted(used - regions)}")
        if self._alpha or self.loops:
            if not regions <= used:
                raise LagError(
                    f"dangling region keys: {sorted(regions - used)}")
        for orbit in self._faces:
            vals = {self.region_of[d] for d in orbit}
            if len(vals) > 1:
                raise LagError(f"face {orbit} spans regions {sorted(vals)}")
        object.__setattr__(self, "windings", self._windings())

    # -- queries ------------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.crossings and not self.loops

    def faces(self) -> tuple[tuple[int, ...], ...]:
        return self._faces

    def face_of_region(self, key: str) -> tuple[int, ...]:
        hits = [o for o in self._faces if self.region_of[o[0]] == key]
        if len(hits) != 1:
            raise SiteNotFound(
                f"region {key!r} is bounded by {len(hits)} faces")
        return hits[0]

    def area(self, key: str) -> Optional[Fraction]:
        return None if key == self.outer else self.areas[key]

    def component_of(self, ref: SiteRef) -> str:
        if isinstance(ref, tuple):
            kind, i = ref
            if kind == "l":
                if i not in self.loops:
                    raise SiteNotFound(f"no loop {i}")
                return f"l{i}"
            ref = i
        if ref not in self._alpha:
            raise SiteNotFound(f"no dart {ref}")
        return self._comp_of[ref]

    def incident_regions(self, comp: str) -> set[str]:
        if comp not in self.components:
            raise UnknownComponent(comp)
        if comp.startswith("l"):
            lo, li = self.loops[int(comp[1:])]
            return {lo, li}
        out = set()
        for d, c in self._comp_of.items():
            if c == comp:
                out.add(self.region_of[d])
        return out


def empty_diagram() -> DecoratedDiagram:
    return DecoratedDiagram()


# -- moves ----------------------------------------------------------------

_VARIANTS = ("R0", "R2create", "R2eliminate", "R3",
             "Hplus", "Hminus", "F", "C")


@dataclass(frozen=True)
class LinMove:
    variant: str
    site: tuple = ()
    amounts: tuple = ()

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise LagError(f"unknown move variant {self.variant!r}")
        object.__setattr__(self, "site", tuple(self.site))
        object.__setattr__(
            self, "amounts", tuple(_frac(a) for a in self.amounts))


def _next_dart(d: DecoratedDiagram) -> int:
    return max(d._alpha, default=-1) + 1


def _next_region(d: DecoratedDiagram, taken: Iterable[str] = ()) -> str:
    used = set(d.areas) | {d.outer} | set(taken)
    i = 0
    while f"r{i}" in used:
        i += 1
    return f"r{i}"


def _bounded_debit(d: DecoratedDiagram, areas: dict, key: str,
                   amount: Fraction, condition: str):
    if key == d.outer:
        return
    if areas[key] - amount <= 0:
        raise PreconditionFailed(condition)
    areas[key] -= amount


def _bounded_credit(d: DecoratedDiagram, areas: dict, key: str,
                    amount: Fraction):
    if key != d.outer:
        areas[key] += amount


def _apply_f(d: DecoratedDiagram, m: LinMove) -> DecoratedDiagram:
    region = m.site[0] if m.site else d.outer
    if region != d.outer and region not in d.areas:
        raise SiteNotFound(f"no region {region!r}")
    (a,) = m.amounts
    if a <= 0:
        raise PreconditionFailed("lobe area must be positive")
    areas = dict(d.areas)
    _bounded_debit(d, areas, region, 2 * a,
                   "host region has no room for two lobes")
    n = _next_dart(d)
    r1 = _next_region(d)
    r2 = _next_region(d, (r1,))
    areas[r1] = a
    areas[r2] = a
    region_of = dict(d.region_of)
    region_of.update({n: region, n + 1: r1, n + 2: region, n + 3: r2})
    return DecoratedDiagram(
        d.crossings + (Crossing(-1, (n, n + 1, n + 2, n + 3)),),
        d.edges + ((n, n + 1), (n + 2, n + 3)),
        d.loops, region_of, areas, d.outer)


def _figure_eight_parts(d: DecoratedDiagram, vi: int):
    # petals, lobe regions and host region of a standalone figure eight
    if not 0 <= vi < len(d.crossings):
        raise SiteNotFound(f"no crossing {vi}")
    c = d.crossings[vi]
    d0 = c.darts[0]
    al = d._alpha
    if al[d0] == c.darts[1]:
        petals = ((c.darts[0], c.darts[1]), (c.darts[2], c.darts[3]))
    elif al[d0] == c.darts[3]:
        petals = ((c.darts[3], c.darts[0]), (c.darts[1], c.darts[2]))
    else:
        raise SiteNotFound(f"crossing {vi} is not a figure eight")
    lobes = []
    host = None
    for orbit in d._faces:
        if set(orbit) <= set(c.darts):
            if len(orbit) == 1:
                lobes.append(d.region_of[orbit[0]])
            else:
                host = d.region_of[orbit[0]]
    if len(lobes) != 2 or host is None:
        raise SiteNotFound(f"crossing {vi} is not a standalone figure "
                           f"eight")
    return petals, lobes, host


def _apply_c(d: DecoratedDiagram, m: LinMove) -> DecoratedDiagram:
    (vi,) = m.site
    petals, lobes, host = _figure_eight_parts(d, vi)
    if d.crossings[vi].sign != 1:
        raise SiteNotFound("C removes the mirror figure eight, whose "
                           "crossing is positive")
    own = set(d.crossings[vi].darts)
    for lobe in lobes:
        if any(key == lobe and dd not in own
               for dd, key in d.region_of.items()):
            raise SiteNotFound(f"lobe {lobe!r} is not empty")
        if any(lobe in pair for pair in d.loops.values()):
            raise SiteNotFound(f"lobe {lobe!r} is not empty")
    if d.areas[lobes[0]] != d.areas[lobes[1]]:
        raise PreconditionFailed("C needs equal lobes")
    dead = set(d.crossings[vi].darts)
    areas = dict(d.areas)
    _bounded_credit(d, areas, host, areas[lobes[0]] + areas[lobes[1]])
    del areas[lobes[0]]
    del areas[lobes[1]]
    return DecoratedDiagram(
        d.crossings[:vi] + d.crossings[vi + 1:],
        tuple(e for e in d.edges if e[0] not in dead),
        d.loops,
        {k: v for k, v in d.region_of.items() if k not in dead},
        areas, d.outer)


def _apply_r0(d: DecoratedDiagram, m: LinMove) -> DecoratedDiagram:
    src, dst = m.site
    (amount,) = m.amounts
    if amount <= 0:
        raise PreconditionFailed("transfer amount must be positive")
    regions = set(d.areas) | {d.outer}
    if src not in regions or dst not in regions or src == dst:
        raise SiteNotFound(f"bad region pair ({src!r}, {dst!r})")
    adjacent = False
    for a, b in d.edges:
        sides = {d.region_of[a], d.region_of[b]}
        if sides == {src, dst}:
            adjacent = True
            break
    for lo, li in d.loops.values():
        if {lo, li} == {src, dst}:
            adjacent = True
            break
    if not adjacent:
        raise SiteNotFound(f"regions {src!r} and {dst!r} share no edge")
    areas = dict(d.areas)
    _bounded_debit(d, areas, src, amount,
                   "transfer would exhaust the source region")
    _bounded_credit(d, areas, dst, amount)
    return DecoratedDiagram(d.crossings, d.edges, d.loops, d.region_of,
                            areas, d.outer)


def _region_area(d: DecoratedDiagram, key: str) -> Optional[Fraction]:
    return None if key == d.outer else d.areas[key]


def _min_ok(limit: Optional[Fraction], value: Fraction) -> bool:
    return limit is None or value < limit


def _normalize_site(ref) -> tuple[str, int]:
    if isinstance(ref, int):
        return ("d", ref)
    try:
        kind, i = ref
    except (TypeError, ValueError):
        raise SiteNotFound(f"bad site {ref!r}") from None
    if kind not in ("d", "l") or not isinstance(i, int):
        raise SiteNotFound(f"bad site {ref!r}")
    return (kind, i)


def _apply_hplus(d: DecoratedDiagram, m: LinMove) -> DecoratedDiagram:
    s1, s2 = (_normalize_site(s) for s in m.site)
    n = _next_dart(d)
    areas = dict(d.areas)
    region_of = dict(d.region_of)
    loops = dict(d.loops)
    x = Crossing(1, (n, n + 1, n + 2, n + 3))

    if s1[0] == "l" and s2[0] == "l":
        l1, l2 = s1[1], s2[1]
        if l1 not in loops or l2 not in loops:
            raise SiteNotFound("no such loop")
        if l1 == l2:
            lo, li = loops.pop(l1)
            (split,) = m.amounts
            if not 0 < split < areas[li]:
                raise PreconditionFailed("split must leave both lobes "
                                         "positive")
            new = _next_region(d)
            areas[new] = split
            areas[li] -= split
            region_of.update({n: lo, n + 1: li, n + 2: lo, n + 3: new})
        else:
            lo1, li1 = loops[l1]
            lo2, li2 = loops[l2]
            if m.amounts:
                raise PreconditionFailed("joining two circles takes no "
                                         "amounts")
            if lo1 == lo2:
                region_of.update(
                    {n: lo1, n + 1: li1, n + 2: lo1, n + 3: li2})
            elif li1 == lo2:
                region_of.update(
                    {n: li1, n + 1: li2, n + 2: li1, n + 3: lo1})
            elif li2 == lo1:
                region_of.update(
                    {n: li2, n + 1: li1, n + 2: li2, n + 3: lo2})
            else:
                raise SiteNotFound("loops do not share a region")
            del loops[l1]
            del loops[l2]
        return DecoratedDiagram(d.crossings + (x,), d.edges
                                + ((n, n + 1), (n + 2, n + 3)),
                                loops, region_of, areas, d.outer)

    if s2[0] == "l":
        s1, s2 = s2, s1
    if s1[0] == "l":
        lid = s1[1]
        d1 = s2[1]
        if lid not in loops:
            raise SiteNotFound("no such loop")
        if d1 not in d._alpha:
            raise SiteNotFound(f"no dart {d1}")
        lo, li = loops[lid]
        g = d.region_of[d1]
        if g != lo:
            raise SiteNotFound("strand and loop do not share a region")
        if m.amounts:
            raise PreconditionFailed("joining a strand to a circle takes "
                                     "no amounts")
        f1 = d._alpha[d1]
        edges = tuple(e for e in d.edges if d1 not in e)
        edges += ((d1, n + 1), (f1, n), (n + 2, n + 3))
        region_of.update({n: g, n + 1: d.region_of[f1],
                          n + 2: g, n + 3: li})
        del loops[lid]
        return DecoratedDiagram(d.crossings + (x,), edges, loops,
                                region_of, areas, d.outer)

    d1, d2 = s1[1], s2[1]
    if d1 not in d._alpha or d2 not in d._alpha:
        raise SiteNotFound("no such dart")
    if d2 in (d1, d._alpha[d1]):
        raise SiteNotFound("need two distinct strand arcs")
    g = d.region_of[d1]
    if d.region_of[d2] != g:
        raise SiteNotFound("strands do not bound a common region")
    f1, f2 = d._alpha[d1], d._alpha[d2]
    edges = tuple(e for e in d.edges if d1 not in e and d2 not in e)
    edges += ((d1, n + 1), (f1, n), (f2, n + 2), (d2, n + 3))
    region_of.update({n: g, n + 1: d.region_of[f1],
                      n + 2: g, n + 3: d.region_of[f2]})
    sigma = dict(d._sigma)
    for j, dd in enumerate(x.darts):
        sigma[dd] = x.darts[(j + 1) % 4]
    alpha = {}
    for a, b in edges:
        alpha[a] = b
        alpha[b] = a
    piece = [d2]
    y = sigma[alpha[d2]]
    while y != d2:
        piece.append(y)
        y = sigma[alpha[y]]
    if d1 in piece:
        # the arcs lay on separate boundary cycles of the region, so
        # the junction joins them without cutting the region in two
        if m.amounts:
            raise PreconditionFailed("this junction does not split the "
                                     "region; it takes no amount")
        return DecoratedDiagram(d.crossings + (x,), edges, loops,
                                region_of, areas, d.outer)
    if len(m.amounts) != 1:
        raise PreconditionFailed("cutting the region in two needs the "
                                 "area kept on the second arc's side")
    (split,) = m.amounts
    if g != d.outer:
        if not 0 < split < areas[g]:
            raise PreconditionFailed("split must leave both parts positive")
    elif split <= 0:
        raise PreconditionFailed("split must be positive")
    new_key = _next_region(d)
    for y in piece:
        region_of[y] = new_key
    areas[new_key] = split
    _bounded_debit(d, areas, g, split, "split must leave both parts "
                                       "positive")
    return DecoratedDiagram(d.crossings + (x,), edges, loops, region_of,
                            areas, d.outer)


def _splice(d: DecoratedDiagram, dead_vertices: set[int],
            joins: list[tuple[int, int]]):
    """Remove crossings, fusing strand ends as directed by ``joins``.

    Each join (a, b) glues the strand end entering dead dart a to the
    one entering dead dart b.  Returns the surviving edges plus, for
    every strand piece that closed into a free circle, the set of join
    darts it passed through."""
    dead = set()
    for vi in dead_vertices:
        dead |= set(d.crossings[vi].darts)
    link: dict[int, tuple[str, int]] = {}
    edges = []
    for a, b in d.edges:
        if a in dead and b in dead:
            link[a] = ("dead", b)
            link[b] = ("dead", a)
        elif a in dead:
            link[a] = ("live", b)
        elif b in dead:
            link[b] = ("live", a)
        else:
            edges.append((a, b))
    joined: dict[int, int] = {}
    for a, b in joins:
        joined[a] = b
        joined[b] = a
    if set(joined) != dead:
        raise LagError("every dart at a removed crossing needs a join")
    cycles: list[frozenset[int]] = []
    visited: set[int] = set()
    for a0, b0 in joins:
        if a0 in visited:
            continue
        crossed = {a0, b0}
        terminals = []
        closed = False
        for start, goal in ((a0, b0), (b0, a0)):
            x = start
            while True:
                visited.add(x)
                kind, y = link[x]
                if kind == "live":
                    terminals.append(y)
                    break
                visited.add(y)
                if y == goal:
                    closed = True
                    break
                crossed.add(y)
                crossed.add(joined[y])
                x = joined[y]
            if closed:
                break
        if closed:
            cycles.append(frozenset(crossed))
            continue
        t0, t1 = terminals
        kept = [e for e in edges if set(e) != {t0, t1}]
        if len(kept) < len(edges):
            # the two stubs were ends of one surviving arc: it closes up
            edges = kept
            cycles.append(frozenset(crossed))
        else:
            edges.append((t0, t1))
    return tuple(edges), cycles


def _apply_hminus(d: DecoratedDiagram, m: LinMove) -> DecoratedDiagram:
    vi, dart = m.site
    if not 0 <= vi < len(d.crossings):
        raise SiteNotFound(f"no crossing {vi}")
    c = d.crossings[vi]
    if dart not in c.darts:
        raise SiteNotFound(f"dart {dart} is not at crossing {vi}")
    if c.sign != -1:
        raise PreconditionFailed("Hminus removes a negative crossing")
    s = d._sigma
    pair1 = (dart, s[dart])
    pair2 = (s[s[dart]], s[s[s[dart]]])
    # the two sectors between the new arcs merge through the old vertex
    f_a = d.region_of[s[s[dart]]]
    f_b = d.region_of[dart]
    areas = dict(d.areas)
    region_of = dict(d.region_of)
    loops = dict(d.loops)
    survivor, gone = f_a, f_b
    if gone == d.outer:
        survivor, gone = f_b, f_a
    if survivor != gone:
        if gone != d.outer:
            _bounded_credit(d, areas, survivor, areas.pop(gone))
        for k, v in list(region_of.items()):
            if v == gone:
                region_of[k] = survivor
        for lid, (lo, li) in loops.items():
            loops[lid] = (survivor if lo == gone else lo,
                          survivor if li == gone else li)
    # each new arc hugs the corner it cuts off; a circle made from one
    # join wraps that corner, one made from both wraps the merged zone
    hug = {pair1[0]: region_of[s[dart]],
           pair2[0]: region_of[s[s[s[dart]]]]}
    edges, cycles = _splice(d, {vi}, [pair1, pair2])
    for dd in c.darts:
        del region_of[dd]
    for jset in cycles:
        if len(jset) == 2:
            li = hug[pair1[0] if pair1[0] in jset else pair2[0]]
            lo = survivor
        else:
            li = survivor
            lo = hug[pair1[0]]
        loops[_next_loop_id(loops)] = (lo, li)
    return DecoratedDiagram(d.crossings[:vi] + d.crossings[vi + 1:],
                            edges, loops, region_of, areas, d.outer)


def _next_loop_id(loops: dict) -> int:
    return max(loops, default=-1) + 1


def _apply_r2create(d: DecoratedDiagram, m: LinMove) -> DecoratedDiagram:
    d1, d2 = m.site
    if not m.amounts:
        raise PreconditionFailed("the overlap lens needs an area")
    inner = m.amounts[0]
    if d1 not in d._alpha or d2 not in d._alpha:
        raise SiteNotFound("no such dart")
    if d2 in (d1, d._alpha[d1]):
        raise SiteNotFound("need two distinct strand arcs")
    g = d.region_of[d1]
    if d.region_of[d2] != g:
        raise SiteNotFound("strands do not bound a common region")
    f1, f2 = d._alpha[d1], d._alpha[d2]
    delta = _region_area(d, d.region_of[f1])
    eta = _region_area(d, d.region_of[f2])
    if inner <= 0 or not (_min_ok(delta, inner) and _min_ok(eta, inner)):
        raise PreconditionFailed("finger tip must be smaller than both "
                                 "flanking regions")
    n = _next_dart(d)
    x = Crossing(-1, (n, n + 1, n + 2, n + 3))
    y = Crossing(1, (n + 4, n + 5, n + 6, n + 7))
    edges = tuple(e for e in d.edges if d1 not in e and d2 not in e)
    edges += ((d1, n + 1), (f1, n + 5),
              (f2, n + 2), (n, n + 6), (d2, n + 4),
              (n + 3, n + 7))
    areas = dict(d.areas)
    region_of = dict(d.region_of)
    b_key = _next_region(d)
    region_of.update({
        n + 1: d.region_of[f1], n + 6: d.region_of[f1],
        n + 3: d.region_of[f2], n + 4: d.region_of[f2],
        n: b_key, n + 7: b_key,
        n + 2: g, n + 5: g,
    })
    areas[b_key] = inner
    _bounded_debit(d, areas, d.region_of[f2], inner,
                   "finger tip must be smaller than both flanking regions")
    sigma = dict(d._sigma)
    for c in (x, y):
        for j, dd in enumerate(c.darts):
            sigma[dd] = c.darts[(j + 1) % 4]
    alpha = {}
    for a, b in edges:
        alpha[a] = b
        alpha[b] = a
    piece = [n + 5]
    z = sigma[alpha[n + 5]]
    while z != n + 5:
        piece.append(z)
        z = sigma[alpha[z]]
    if d1 in piece:
        # the finger reached across from one boundary cycle of the
        # region to another, so the region stays in one piece
        if len(m.amounts) != 1:
            raise PreconditionFailed("the region is not cut in two; only "
                                     "the lens area applies")
        return DecoratedDiagram(d.crossings + (x, y), edges,
                                dict(d.loops), region_of, areas, d.outer)
    if len(m.amounts) != 2:
        raise PreconditionFailed("cutting the region in two needs the "
                                 "area left beyond the finger")
    split = m.amounts[1]
    g_area = _region_area(d, g)
    if split <= 0 or not _min_ok(g_area, split):
        raise PreconditionFailed("split must leave both parts positive")
    e_key = _next_region(d, (b_key,))
    for z in piece:
        region_of[z] = e_key
    areas[e_key] = split
    _bounded_debit(d, areas, g, split, "split must leave both parts "
                                       "positive")
    return DecoratedDiagram(d.crossings + (x, y), edges, dict(d.loops),
                            region_of, areas, d.outer)


def _apply_r2eliminate(d: DecoratedDiagram, m: LinMove) -> DecoratedDiagram:
    bigon_key, to_key = m.site
    orbit = d.face_of_region(bigon_key)
    if len(orbit) != 2:
        raise SiteNotFound(f"region {bigon_key!r} is not a bigon")
    b1, b2 = orbit
    x_i, y_i = d._origin[b1], d._origin[b2]
    if x_i == y_i:
        raise SiteNotFound("bigon is a kink, not a two-strand overlap")
    if d.crossings[x_i].sign == d.crossings[y_i].sign:
        raise PreconditionFailed("bigon crossings must have opposite "
                                 "signs")
    s = d._sigma
    q1 = next(dd for dd in d.crossings[x_i].darts if s[dd] == b1)
    c1 = d._alpha[b1]
    f_p = d.region_of[c1]
    f_q = d.region_of[q1]
    if to_key not in (f_p, f_q):
        raise SiteNotFound("the freed area must go to a region flanking "
                           "the bigon")
    areas = dict(d.areas)
    region_of = dict(d.region_of)
    loops = dict(d.loops)
    _bounded_credit(d, areas, to_key, areas.pop(bigon_key))
    gw = d.region_of[s[s[b1]]]
    ge = d.region_of[s[s[b2]]]
    survivor, gone = gw, ge
    if gone == d.outer:
        survivor, gone = ge, gw
    if survivor != gone:
        if gone != d.outer:
            _bounded_credit(d, areas, survivor, areas.pop(gone))
        for k, v in list(region_of.items()):
            if v == gone:
                region_of[k] = survivor
        for lid, (lo, li) in loops.items():
            loops[lid] = (survivor if lo == gone else lo,
                          survivor if li == gone else li)
        if to_key == gone:
            to_key = survivor
    # straighten both strands: fuse opposite darts at each crossing
    joins = [(b1, s[s[b1]]), (c1, s[s[c1]]),
             (q1, s[s[q1]]), (b2, s[s[b2]])]
    li_p = region_of[q1]
    li_q = region_of[c1]
    edges, cycles = _splice(d, {x_i, y_i}, joins)
    for vi in (x_i, y_i):
        for dd in d.crossings[vi].darts:
            del region_of[dd]
    for jset in cycles:
        li = li_p if b1 in jset or c1 in jset else li_q
        loops[_next_loop_id(loops)] = (survivor, li)
    keep = tuple(c for i, c in enumerate(d.crossings)
                 if i not in (x_i, y_i))
    return DecoratedDiagram(keep, edges, loops, region_of, areas, d.outer)


def _apply_r3(d: DecoratedDiagram, m: LinMove) -> DecoratedDiagram:
    (tri_key,) = m.site
    if tri_key == d.outer:
        raise SiteNotFound("the outer region cannot slide")
    orbit = d.face_of_region(tri_key)
    if len(orbit) != 3:
        raise SiteNotFound(f"region {tri_key!r} is not a triangle")
    if len({d._origin[x] for x in orbit}) != 3:
        raise SiteNotFound("triangle must have three distinct crossings")
    t_area = d.areas[tri_key]
    s = d._sigma
    al = d._alpha
    for x in orbit:
        flank = _region_area(d, d.region_of[al[x]])
        if not _min_ok(flank, t_area):
            raise PreconditionFailed("triangle must be smaller than all "
                                     "three flanking regions")
    # each strand's middle arc flips to the far side of its two
    # crossings; the four darts it slides over trade region sides
    t1, t2, t3 = orbit
    sub: dict[int, int] = {}
    region_of = dict(d.region_of)
    for ti, tprev in ((t1, t3), (t2, t1), (t3, t2)):
        m1, m2 = ti, al[ti]
        f1, f2 = s[s[m1]], s[s[m2]]
        sub[m1] = f1
        sub[f1] = m2
        sub[m2] = f2
        sub[f2] = m1
        region_of[m1] = d.region_of[f2]
        region_of[m2] = d.region_of[f1]
        region_of[f1] = d.region_of[m1]
        region_of[f2] = d.region_of[s[s[tprev]]]
    edges = tuple((sub.get(a, a), sub.get(b, b)) for a, b in d.edges)
    return DecoratedDiagram(d.crossings, edges, d.loops, region_of,
                            d.areas, d.outer)


def apply_lin(d: DecoratedDiagram, m: LinMove) -> DecoratedDiagram:
    table = {
        "F": _apply_f,
        "C": _apply_c,
        "R0": _apply_r0,
        "Hplus": _apply_hplus,
        "Hminus": _apply_hminus,
        "R2create": _apply_r2create,
        "R2eliminate": _apply_r2eliminate,
        "R3": _apply_r3,
    }
    try:
        return table[m.variant](d, m)
    except LagError:
        raise
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise SiteNotFound(
            f"malformed site for {m.variant}: {m.site!r}") from exc


# -- exactness ------------------------------------------------------------

@dataclass(frozen=True)
class ExactnessReport:
    per_component: Mapping[str, Fraction]
    ok: bool


def exactness_E1(d: DecoratedDiagram) -> ExactnessReport:
    totals = {c: Fraction(0) for c in d.components}
    for region, area in d.areas.items():
        for c, w in d.windings[region].items():
            totals[c] += w * area
    return ExactnessReport(totals, all(v == 0 for v in totals.values()))


SPLIT = "SPLIT"
NOT_SPLIT = "NOT SPLIT"


def exactness_E2(d: DecoratedDiagram, comp_a: str, comp_b: str) -> str:
    if comp_a == comp_b:
        raise UnknownComponent("E2 compares two distinct components")
    for one, other in ((comp_a, comp_b), (comp_b, comp_a)):
        for region in d.incident_regions(one):
            if d.windings[region].get(other, 0) != 0:
                return NOT_SPLIT
    return SPLIT


@dataclass(frozen=True)
class LinStepReport:
    index: int
    variant: str
    error: Optional[str]
    e1_ok: Optional[bool]
    merge_e2: Optional[str]


@dataclass(frozen=True)
class LinSequenceReport:
    initial_e1_ok: bool
    steps: tuple[LinStepReport, ...]
    verdict: str
    final: Optional[DecoratedDiagram]


def verify_lin_sequence(initial: DecoratedDiagram,
                        moves: Iterable[LinMove]) -> LinSequenceReport:
    state = initial
    steps = []
    e1_bad = not exactness_E1(state).ok
    e2_bad = False
    initial_ok = not e1_bad
    for k, mv in enumerate(moves):
        merge_e2 = None
        if mv.variant == "Hplus":
            try:
                comps = {state.component_of(_normalize_site(s))
                         for s in mv.site}
            except LagError:
                comps = set()
            if len(comps) == 2:
                merge_e2 = exactness_E2(state, *sorted(comps))
                if merge_e2 == NOT_SPLIT:
                    e2_bad = True
        try:
            state = apply_lin(state, mv)
        except LagError as exc:
            steps.append(LinStepReport(k, mv.variant, str(exc), None,
                                       merge_e2))
            return LinSequenceReport(
                initial_ok, tuple(steps),
                f"INVALID(step {k}: {exc})", None)
        rep = exactness_E1(state)
        if not rep.ok:
            e1_bad = True
        steps.append(LinStepReport(k, mv.variant, None, rep.ok, merge_e2))
    if e1_bad and e2_bad:
        verdict = "NON-EXACT(E1,E2)"
    elif e1_bad:
        verdict = "NON-EXACT(E1)"
    elif e2_bad:
        verdict = "NON-EXACT(E2)"
    else:
        verdict = "EXACT"
    return LinSequenceReport(initial_ok, tuple(steps), verdict, state)
