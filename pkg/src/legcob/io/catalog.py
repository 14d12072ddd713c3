"""Named reference fronts, movies, and patterns shared by tests, the
CLI, and the service.

Every front fixture records the (tb, rotation) pair it is documented
to have; the test suite recomputes both from scratch and fails on any
drift.  Words are frozen as text in the same grammar parse_front
accepts, so the catalog doubles as format documentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..front import FrontDiagram
from ..moves import Move, Site
from ..movie import Movie
from ..satellite import PatternTangle, clasp_pattern, trivial_pattern
from .text import parse_front

# Plat-form word found by exhaustive profile search: 3 left cusps, 10
# crossings, writhe 2, hence tb -1; plat closure has the 9_46 Jones
# polynomial, and tb -1 forces the mirror chirality.
_M946_WORD: Optional[str] = "L1 L1 L1 X2 X4 X3 X3 X2 X1 X4 X4 X3 X5 R2 R2 R1"


@dataclass(frozen=True)
class FrontFixture:
    word: str
    tb: int
    rot: tuple[int, ...]
    note: str


_FRONTS: dict[str, FrontFixture] = {
    "unknot": FrontFixture(
        "L1 R1", -1, (0,),
        "the eye; maximal Thurston-Bennequin unknot"),
    "trefoil": FrontFixture(
        "L1 L3 X2 X2 X2 R1 R1", 1, (0,),
        "maximal-tb positive trefoil"),
    "two_eyes": FrontFixture(
        "L1 R1 L1 R1", -2, (0, 0),
        "two disjoint maximal unknots"),
    "knot_6_1": FrontFixture(
        "L1 L3 X2 X2 X2 X2 L3 X2 X4 R3 R1 R1", -5, (0,),
        "maximal-tb representative of the twist knot 6_1"),
    "knot_6_1_stabilized": FrontFixture(
        "L1 L1 R2 L2 R1 L3 X2 X2 X2 X2 L3 X2 X4 R3 R1 R1", -7, (0,),
        "6_1 after one up and one down stabilization"),
    "unknot_tb_minus_7": FrontFixture(
        "L1 L1 R2 L2 R1 L1 R2 L2 R1 L1 R2 L2 R1 R1", -7, (0,),
        "unknot after three balanced stabilization pairs"),
}


def front_names() -> tuple[str, ...]:
    names = list(_FRONTS)
    if _M946_WORD is not None:
        names.insert(4, "knot_m9_46")
    return tuple(names)


def front_fixture(name: str) -> FrontFixture:
    if name == "knot_m9_46":
        if _M946_WORD is None:
            raise KeyError("knot_m9_46 fixture is not wired yet")
        return FrontFixture(
            _M946_WORD, -1, (0,),
            "maximal-tb representative of the mirror 9_46 knot")
    return _FRONTS[name]


def front(name: str) -> FrontDiagram:
    return parse_front(front_fixture(name).word)


def pattern(name: str) -> PatternTangle:
    if name == "clasp":
        return clasp_pattern()
    if name == "trivial":
        return trivial_pattern()
    raise KeyError(name)


def satellite_pair_lower() -> FrontDiagram:
    """Bottom end of the conjectured non-decomposable concordance."""
    return front("trefoil")


def satellite_pair_upper() -> FrontDiagram:
    """Top end: the Legendrian Whitehead double of the m9_46 fixture."""
    from ..satellite import satellite

    return satellite(front("knot_m9_46"), clasp_pattern())


def trefoil_filling() -> Movie:
    """Filling of the maximal-tb trefoil from nothing: one birth, three
    kinks, two pinches; Euler characteristic -1, genus 1."""
    start = FrontDiagram(())
    steps = (
        Move("ZeroHandle", "zerohandle", Site(0, 1), "forward"),
        Move("ReidI", "r1a", Site(1, 2), "forward"),
        Move("ReidI", "r1a", Site(1, 2), "forward"),
        Move("ReidI", "r1a", Site(1, 2), "forward"),
        Move("Saddle", "saddle", Site(3, 3), "forward"),
        Move("Saddle", "saddle", Site(4, 3), "forward"),
    )
    return Movie(start, steps, front("trefoil"))


def movies() -> dict[str, Movie]:
    return {"trefoil_filling": trefoil_filling()}
