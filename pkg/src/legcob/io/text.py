"""Human-editable text format for front words.

Grammar: whitespace-separated tokens ``L<i>``, ``R<i>``, ``X<i>`` with
1-based positions counted from the top strand; ``#`` starts a comment
running to end of line; optional orientation directives ``orient c<k> = +``
or ``... = -`` reverse the default orientation of component k.
"""

from __future__ import annotations

import re

from ..front import Event, EventKind, FrontDiagram
from ..satellite import PatternTangle


class LexError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\S+")
_EVENT = re.compile(r"([LRX])([0-9]+)$")
_COMPONENT = re.compile(r"c([0-9]+)$")


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for m in _TOKEN.finditer(line):
            yield (lineno, m.start() + 1, m.group())


def parse_event(token: str) -> Event:
    m = _EVENT.match(token)
    if not m:
        raise ValueError(f"not an event token: {token!r}")
    pos = int(m.group(2))
    if pos < 1:
        raise ValueError(f"positions are 1-based: {token!r}")
    return Event(EventKind(m.group(1)), pos)


def parse_front(text: str) -> FrontDiagram:
    """Parse a front word with optional orientation directives.

    Raises LexError for token-level problems; word-level problems
    (bad positions, open strands) surface as FrontError from validation.
    """
    events: list[Event] = []
    orient_overrides: dict[int, int] = {}
    stream = _tokens(text)
    for line, col, tok in stream:
        if tok == "orient":
            try:
                parts = [next(stream), next(stream), next(stream)]
            except StopIteration:
                raise LexError(line, col, "orient needs: c<k> = + or -") from None
            (l1, c1, comp_tok), (l2, c2, eq_tok), (l3, c3, sign_tok) = parts
            m = _COMPONENT.match(comp_tok)
            if not m:
                raise LexError(l1, c1, f"expected c<k>, got {comp_tok!r}")
            if eq_tok != "=":
                raise LexError(l2, c2, f"expected '=', got {eq_tok!r}")
            if sign_tok not in ("+", "-"):
                raise LexError(l3, c3, f"expected + or -, got {sign_tok!r}")
            orient_overrides[int(m.group(1))] = 1 if sign_tok == "+" else -1
            continue
        try:
            events.append(parse_event(tok))
        except ValueError as exc:
            raise LexError(line, col, str(exc)) from None
    d = FrontDiagram(tuple(events))
    if not orient_overrides:
        return d
    bad = [k for k in orient_overrides if not 0 <= k < d.component_count]
    if bad:
        raise LexError(0, 0, f"no component c{bad[0]} "
                             f"(diagram has {d.component_count})")
    orient = [orient_overrides.get(c, 1) for c in range(d.component_count)]
    return d.with_orientations(orient)


def format_front(d: FrontDiagram) -> str:
    """Inverse of parse_front on normalized text: word on one line, one
    orient directive per reversed component."""
    lines = [" ".join(str(e) for e in d.events)]
    for c, o in enumerate(d.orientations):
        if o == -1:
            lines.append(f"orient c{c} = -")
    return "\n".join(lines)


def parse_pattern(text: str) -> PatternTangle:
    """Parse a pattern tangle: a mandatory ``strands n`` header followed
    by an event word in the front grammar.  Comments as in parse_front;
    optional ``orient s<j> = +|-`` directives fix boundary directions."""
    stream = _tokens(text)
    try:
        line, col, head = next(stream)
    except StopIteration:
        raise LexError(0, 0, "empty pattern: expected 'strands n'") from None
    if head != "strands":
        raise LexError(line, col, f"expected 'strands', got {head!r}")
    try:
        line, col, count_tok = next(stream)
    except StopIteration:
        raise LexError(line, col, "strands needs a count") from None
    if not count_tok.isdigit() or int(count_tok) < 1:
        raise LexError(line, col, f"bad strand count {count_tok!r}")
    strands = int(count_tok)
    events: list[Event] = []
    orient_overrides: dict[int, int] = {}
    for line, col, tok in stream:
        if tok == "orient":
            try:
                parts = [next(stream), next(stream), next(stream)]
            except StopIteration:
                raise LexError(line, col, "orient needs: s<j> = + or -") from None
            (l1, c1, st_tok), (l2, c2, eq_tok), (l3, c3, sign_tok) = parts
            m = re.match(r"s([0-9]+)$", st_tok)
            if not m or not 1 <= int(m.group(1)) <= strands:
                raise LexError(l1, c1, f"expected s<1..{strands}>, got {st_tok!r}")
            if eq_tok != "=":
                raise LexError(l2, c2, f"expected '=', got {eq_tok!r}")
            if sign_tok not in ("+", "-"):
                raise LexError(l3, c3, f"expected + or -, got {sign_tok!r}")
            orient_overrides[int(m.group(1)) - 1] = 1 if sign_tok == "+" else -1
            continue
        try:
            events.append(parse_event(tok))
        except ValueError as exc:
            raise LexError(line, col, str(exc)) from None
    if not orient_overrides:
        return PatternTangle(strands, tuple(events))
    seeded = PatternTangle(strands, tuple(events))
    orient = tuple(orient_overrides.get(j, seeded.orientations[j])
                   for j in range(strands))
    return PatternTangle(strands, tuple(events), orient)


def format_pattern(p: PatternTangle) -> str:
    """Inverse of parse_pattern on normalized text."""
    lines = [f"strands {p.strands}",
             " ".join(str(e) for e in p.events)]
    default = PatternTangle(p.strands, p.events)
    for j, o in enumerate(p.orientations):
        if o != default.orientations[j]:
            lines.append(f"orient s{j + 1} = {'+' if o == 1 else '-'}")
    return "\n".join(lines)
