"""Command-line surface.

Every command takes files (or ``-`` for stdin) holding front text or
movie/diagram JSON, prints a human-readable line by default and a JSON
document with ``--json``.  Budget defaults honor the environment
variables LEGCOB_MAX_STEPS, LEGCOB_MAX_STRANDS, LEGCOB_TIMEOUT.

Search exit codes: 0 found, 2 exhausted, 3 timed out, 4 pruned.
"""

from __future__ import annotations

import json
import sys

import click

from ..front import FrontDiagram, classical_invariants
from ..moves import MoveNotApplicable, applicable_moves, apply_move
from ..movie import classical_check, summary_consistency, verify
from ..rulings import (OBSTRUCTED, count_obstruction,
                       polynomial_obstruction, ruling_count,
                       ruling_polynomial)
from ..satellite import clasp_pattern, satellite, trivial_pattern
from ..search import (EXHAUSTED, FOUND, PRUNED_INFEASIBLE, TIMED_OUT,
                      GENUS_ANY, SearchBudget, search_decomposable)
from ..lagdiag import verify_lin_sequence
from . import catalog
from .jsonio import (FormatError, lin_sequence_from_json, move_from_json,
                     move_to_json, movie_from_json, movie_to_json)
from .text import LexError, format_front, format_pattern, parse_front, \
    parse_pattern


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_front(path: str) -> FrontDiagram:
    return parse_front(_read(path))


def _fail(message: str, code: int = 1):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(as_json: bool, payload: dict, human: str):
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(human)


_SEARCH_EXIT = {FOUND: 0, EXHAUSTED: 2, TIMED_OUT: 3, PRUNED_INFEASIBLE: 4}


def _env_int(name: str, fallback: int) -> int:
    import os

    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"{name} must be an integer, got {raw!r}")


def _env_float(name: str):
    import os

    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        raise click.UsageError(f"{name} must be a number, got {raw!r}")


@click.group()
def main():
    """Front diagrams, movies, and their invariants."""


@main.command("parse")
@click.argument("front", type=str)
@click.option("--json", "as_json", is_flag=True)
def parse_cmd(front, as_json):
    """Validate a front file and echo its normalized word."""
    try:
        d = _load_front(front)
    except (LexError, ValueError) as exc:
        _fail(str(exc))
    _emit(as_json,
          {"events": len(d.events), "components": d.component_count,
           "front": format_front(d)},
          format_front(d))


@main.command("invariants")
@click.argument("front", type=str)
@click.option("--json", "as_json", is_flag=True)
def invariants_cmd(front, as_json):
    """Print tb, rotation numbers, writhe, cusp counts."""
    try:
        d = _load_front(front)
    except (LexError, ValueError) as exc:
        _fail(str(exc))
    inv = classical_invariants(d)
    _emit(as_json,
          {"tb": inv.tb, "rot": list(inv.rot), "writhe": inv.writhe,
           "right_cusps": inv.right_cusps,
           "components": d.component_count},
          f"tb {inv.tb}  rot {list(inv.rot)}  writhe {inv.writhe}  "
          f"right cusps {inv.right_cusps}")


@main.command("rulings")
@click.argument("front", type=str)
@click.option("--graded", is_flag=True, help="graded rulings only")
@click.option("--poly", is_flag=True, help="print the ruling polynomial")
@click.option("--json", "as_json", is_flag=True)
def rulings_cmd(front, graded, poly, as_json):
    """Count normal rulings; optionally print the polynomial."""
    try:
        d = _load_front(front)
        count = ruling_count(d, graded=graded)
    except (LexError, ValueError) as exc:
        _fail(str(exc))
    payload = {"count": count, "graded": graded}
    human = f"{'graded ' if graded else ''}rulings {count}"
    if poly:
        rp = ruling_polynomial(d, graded=graded)
        payload["polynomial"] = str(rp)
        human += f"  polynomial {rp}"
    _emit(as_json, payload, human)


@main.command("obstruct")
@click.argument("front_a", type=str)
@click.argument("front_b", type=str)
@click.option("--chi", type=int, required=True,
              help="Euler characteristic of the candidate cobordism")
@click.option("--q", "qs", default="2,3,4,5,7,8,9", show_default=True,
              help="comma-separated prime powers")
@click.option("--json", "as_json", is_flag=True)
def obstruct_cmd(front_a, front_b, chi, qs, as_json):
    """Ruling-polynomial obstructions for a cobordism bottom -> top."""
    try:
        lower = _load_front(front_a)
        upper = _load_front(front_b)
        q_list = [int(tok) for tok in qs.split(",") if tok.strip()]
        count_verdict = count_obstruction(lower, upper)
        reports = polynomial_obstruction(lower, upper, chi, q_list)
    except (LexError, ValueError) as exc:
        _fail(str(exc))
    obstructed = (count_verdict == OBSTRUCTED
                  or any(r.verdict == OBSTRUCTED for r in reports))
    overall = OBSTRUCTED if obstructed else "PASS"
    payload = {"verdict": overall,
               "count_check": count_verdict,
               "per_q": [{"q": r.q, "lhs": str(r.lhs), "rhs": str(r.rhs),
                          "verdict": r.verdict} for r in reports]}
    lines = [f"count {count_verdict}"]
    lines += [f"q={r.q} {r.verdict}  ({r.lhs} vs {r.rhs})" for r in reports]
    lines.append(f"verdict {overall}")
    _emit(as_json, payload, "\n".join(lines))
    if obstructed:
        sys.exit(2)


@main.command("moves")
@click.argument("front", type=str)
@click.option("--json", "as_json", is_flag=True)
def moves_cmd(front, as_json):
    """List every applicable move of the front."""
    try:
        d = _load_front(front)
    except (LexError, ValueError) as exc:
        _fail(str(exc))
    ms = applicable_moves(d)
    payload = {"moves": [move_to_json(m) for m in ms]}
    human = "\n".join(
        f"{m.variant} {m.template_id} @({m.site.index},{m.site.pos}) "
        f"{m.direction}" for m in ms) or "(no moves)"
    _emit(as_json, payload, human)


@main.command("apply")
@click.argument("front", type=str)
@click.argument("move_json", type=str)
@click.option("--json", "as_json", is_flag=True)
def apply_cmd(front, move_json, as_json):
    """Apply one move (JSON literal or @file) and print the new front."""
    try:
        d = _load_front(front)
        raw = _read(move_json[1:]) if move_json.startswith("@") else move_json
        mv = move_from_json(json.loads(raw))
        nd = apply_move(d, mv)
    except MoveNotApplicable as exc:
        _fail(f"move not applicable: {exc}", code=2)
    except (LexError, FormatError, ValueError) as exc:
        _fail(str(exc))
    _emit(as_json, {"front": format_front(nd)}, format_front(nd))


@main.command("verify-movie")
@click.argument("movie_file", type=str)
@click.option("--json", "as_json", is_flag=True)
def verify_movie_cmd(movie_file, as_json):
    """Replay a movie file and print its cobordism summary."""
    try:
        m = movie_from_json(json.loads(_read(movie_file)))
        s = verify(m)
    except (FormatError, ValueError) as exc:
        _fail(str(exc))
    consistency = summary_consistency(m)
    check = classical_check(m.start, m.claimed_end, s.chi)
    payload = {
        "chi": s.chi, "zero_handles": s.zero_handles, "saddles": s.saddles,
        "surface_components": s.surface_components, "genus": s.genus,
        "consistency": consistency, "classical_check": check.verdict,
    }
    _emit(as_json, payload,
          f"chi {s.chi}  genus {s.genus}  zero handles {s.zero_handles}  "
          f"saddles {s.saddles}  consistency {consistency}  "
          f"classical {check.verdict}")
    if consistency != "PASS" or check.verdict != "PASS":
        sys.exit(2)


@main.command("satellite")
@click.argument("companion", type=str)
@click.argument("pattern", type=str)
@click.option("--twists", type=int, default=0, show_default=True,
              help="extra full twists inserted into the pattern")
@click.option("--json", "as_json", is_flag=True)
def satellite_cmd(companion, pattern, twists, as_json):
    """Satellite of a companion front; pattern file or builtin:clasp."""
    from ..satellite import compose, full_twist, power

    try:
        d = _load_front(companion)
        if pattern == "builtin:clasp":
            p = clasp_pattern()
        elif pattern == "builtin:trivial":
            p = trivial_pattern()
        else:
            p = parse_pattern(_read(pattern))
        if twists < 0:
            raise ValueError("twist count must be nonnegative")
        if twists:
            p = compose(p, power(full_twist(p.strands), twists))
        s = satellite(d, p)
    except (LexError, ValueError) as exc:
        _fail(str(exc))
    _emit(as_json, {"front": format_front(s)}, format_front(s))


@main.command("search")
@click.argument("front_from", type=str)
@click.argument("front_to", type=str)
@click.option("--max-steps", type=int, default=None,
              help="step budget [env LEGCOB_MAX_STEPS, else 6]")
@click.option("--max-strands", type=int, default=None,
              help="strand budget [env LEGCOB_MAX_STRANDS, else 6]")
@click.option("--timeout", type=float, default=None,
              help="wall-clock seconds [env LEGCOB_TIMEOUT, else none]")
@click.option("--genus", default=GENUS_ANY, show_default=True,
              help="'any' or a non-negative integer")
@click.option("--json", "as_json", is_flag=True)
def search_cmd(front_from, front_to, max_steps, max_strands, timeout,
               genus, as_json):
    """Search for a decomposable movie between two fronts.

    Exit codes: 0 found, 2 exhausted, 3 timed out, 4 pruned infeasible.
    """
    try:
        lower = _load_front(front_from)
        upper = _load_front(front_to)
        if genus != GENUS_ANY:
            genus = int(genus)
        budget = SearchBudget(
            max_steps=(max_steps if max_steps is not None
                       else _env_int("LEGCOB_MAX_STEPS", 6)),
            max_strands=(max_strands if max_strands is not None
                         else _env_int("LEGCOB_MAX_STRANDS", 6)),
            time_limit=(timeout if timeout is not None
                        else _env_float("LEGCOB_TIMEOUT")),
        )
        result = search_decomposable(lower, upper, budget, genus=genus)
    except (LexError, ValueError) as exc:
        _fail(str(exc))
    payload = {"outcome": result.outcome,
               "expanded": result.stats.expanded,
               "dedup_hits": result.stats.dedup_hits}
    if result.reason:
        payload["reason"] = result.reason
    if result.movie is not None:
        payload["movie"] = movie_to_json(result.movie)
    human = f"{result.outcome}  expanded {result.stats.expanded}"
    if result.reason:
        human += f"  ({result.reason})"
    if result.movie is not None and not as_json:
        human += f"\nsteps {len(result.movie.steps)}"
    _emit(as_json, payload, human)
    sys.exit(_SEARCH_EXIT[result.outcome])


@main.group("lagdiag")
def lagdiag_group():
    """Decorated Lagrangian-projection diagrams."""


@lagdiag_group.command("verify")
@click.argument("seq_file", type=str)
@click.option("--json", "as_json", is_flag=True)
def lagdiag_verify_cmd(seq_file, as_json):
    """Check a Lagrangian diagram move sequence step by step."""
    try:
        initial, lin_moves = lin_sequence_from_json(json.loads(_read(seq_file)))
        report = verify_lin_sequence(initial, lin_moves)
    except (FormatError, ValueError) as exc:
        _fail(str(exc))
    payload = {
        "verdict": report.verdict,
        "initial_e1_ok": report.initial_e1_ok,
        "steps": [{"index": s.index, "variant": s.variant, "error": s.error,
                   "e1_ok": s.e1_ok, "merge_e2": s.merge_e2}
                  for s in report.steps],
    }
    lines = [f"initial E1 {'ok' if report.initial_e1_ok else 'violated'}"]
    for s in report.steps:
        if s.error is not None:
            lines.append(f"step {s.index} {s.variant}: error {s.error}")
        else:
            lines.append(f"step {s.index} {s.variant}: "
                         f"E1 {'ok' if s.e1_ok else 'violated'}"
                         + (f", merge {s.merge_e2}" if s.merge_e2 else ""))
    lines.append(f"verdict {report.verdict}")
    _emit(as_json, payload, "\n".join(lines))
    if report.verdict.startswith("INVALID"):
        sys.exit(2)


@main.command("catalog")
@click.argument("name", type=str, required=False)
@click.option("--json", "as_json", is_flag=True)
def catalog_cmd(name, as_json):
    """List catalog fixtures, or print one by name."""
    if name is None:
        names = catalog.front_names()
        _emit(as_json, {"fronts": list(names)}, "\n".join(names))
        return
    try:
        fx = catalog.front_fixture(name)
    except KeyError as exc:
        _fail(f"unknown fixture: {exc}")
    _emit(as_json,
          {"front": fx.word, "tb": fx.tb, "rot": list(fx.rot),
           "note": fx.note},
          f"{fx.word}\n# tb {fx.tb}, rot {list(fx.rot)}: {fx.note}")


if __name__ == "__main__":
    main()
