"""JSON shapes for machine-produced objects: movies, decorated
Lagrangian diagrams, and move sequences.

Fronts stay in the human-editable text format even inside JSON
documents (a movie's ``start`` is a front string), keeping one parser
for each representation.  Exact rational areas serialize as "p/q"
strings so round trips never lose precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from ..lagdiag import Crossing, DecoratedDiagram, LinMove
from ..moves import Move, Site
from ..movie import Movie
from .text import format_front, parse_front

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


def _require(obj: dict, key: str, kind=None):
    if key not in obj:
        raise FormatError(f"missing key {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise FormatError(f"key {key!r} has wrong type {type(val).__name__}")
    return val


def _check_version(obj: dict) -> None:
    version = _require(obj, "format_version", int)
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version}")


# -- movies ---------------------------------------------------------------


def move_to_json(m: Move) -> dict[str, Any]:
    return {
        "variant": m.variant,
        "template_id": m.template_id,
        "index": m.site.index,
        "pos": m.site.pos,
        "direction": m.direction,
    }


def move_from_json(obj: dict) -> Move:
    return Move(
        _require(obj, "variant", str),
        _require(obj, "template_id", str),
        Site(_require(obj, "index", int), _require(obj, "pos", int)),
        _require(obj, "direction", str),
    )


def movie_to_json(m: Movie) -> dict[str, Any]:
    out: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "start": format_front(m.start),
        "steps": [move_to_json(s) for s in m.steps],
    }
    out["end"] = None if m.claimed_end is None else format_front(m.claimed_end)
    return out


def movie_from_json(obj: dict) -> Movie:
    _check_version(obj)
    start = parse_front(_require(obj, "start", str))
    steps = tuple(move_from_json(s) for s in _require(obj, "steps", list))
    end_text = obj.get("end")
    end = None if end_text is None else parse_front(end_text)
    return Movie(start, steps, end)


# -- decorated Lagrangian diagrams ----------------------------------------


def _frac_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _frac_from_json(x) -> Fraction:
    if isinstance(x, bool):
        raise FormatError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational: {x!r}") from exc
    raise FormatError(f"not a rational: {x!r}")


def lagdiag_to_json(d: DecoratedDiagram) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "crossings": [
            {"sign": c.sign, "darts": list(c.darts)} for c in d.crossings
        ],
        "edges": [list(e) for e in d.edges],
        "loops": {str(k): list(v) for k, v in sorted(d.loops.items())},
        "regions": {str(k): v for k, v in sorted(d.region_of.items())},
        "areas": {k: _frac_to_str(v) for k, v in sorted(d.areas.items())},
        "outer": d.outer,
    }


def lagdiag_from_json(obj: dict) -> DecoratedDiagram:
    _check_version(obj)
    crossings = tuple(
        Crossing(_require(c, "sign", int),
                 tuple(_require(c, "darts", list)))
        for c in _require(obj, "crossings", list)
    )
    edges = tuple(tuple(e) for e in _require(obj, "edges", list))
    loops = {int(k): tuple(v)
             for k, v in _require(obj, "loops", dict).items()}
    regions = {int(k): v
               for k, v in _require(obj, "regions", dict).items()}
    areas = {k: _frac_from_json(v)
             for k, v in _require(obj, "areas", dict).items()}
    return DecoratedDiagram(
        crossings=crossings, edges=edges, loops=loops,
        region_of=regions, areas=areas, outer=_require(obj, "outer", str))


# -- move sequences over decorated diagrams -------------------------------


def lin_move_to_json(m: LinMove) -> dict[str, Any]:
    return {
        "variant": m.variant,
        "site": [list(s) if isinstance(s, tuple) else s for s in m.site],
        "amounts": [_frac_to_str(a) for a in m.amounts],
    }


def lin_move_from_json(obj: dict) -> LinMove:
    site = tuple(
        tuple(s) if isinstance(s, list) else s
        for s in _require(obj, "site", list))
    amounts = tuple(_frac_from_json(a)
                    for a in _require(obj, "amounts", list))
    return LinMove(_require(obj, "variant", str), site, amounts)


def lin_sequence_to_json(initial: DecoratedDiagram,
                         moves) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "initial": lagdiag_to_json(initial),
        "moves": [lin_move_to_json(m) for m in moves],
    }


def lin_sequence_from_json(obj: dict) -> tuple[DecoratedDiagram, tuple[LinMove, ...]]:
    _check_version(obj)
    initial = lagdiag_from_json(_require(obj, "initial", dict))
    moves = tuple(lin_move_from_json(m)
                  for m in _require(obj, "moves", list))
    return initial, moves
