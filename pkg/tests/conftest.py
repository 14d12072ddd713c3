"""Session-scoped random sweeps shared by the property and acceptance
suites, so each expensive walk runs once per pytest session.

All randomness is seeded; reruns are bit-identical.
"""

import random

import pytest

from legcob.front import classical_invariants
from legcob.io.text import parse_front
from legcob.moves import (SADDLE, ZERO_HANDLE, applicable_moves,
                          apply_move, template_deltas)
from legcob.movie import Movie, summary_consistency, verify
from legcob.rulings import (enumerate_rulings, ruling_count,
                            ruling_polynomial)

from .ruling_oracle import brute_force_switch_sets

SEEDS = (
    "",
    "L1 R1",
    "L1 R1 L1 R1",
    "L1 L3 X2 X2 X2 R1 R1",
    "L1 L1 R2 L2 R1 R1",
)


def fits(d, m, max_events=24, max_crossings=10):
    d_ev, _, d_nx = template_deltas(m.template_id, m.direction)
    crossings = sum(1 for e in d.events if e.kind.value == "X")
    return (len(d.events) + d_ev <= max_events
            and crossings + d_nx <= max_crossings)


def walk(rng: random.Random, steps: int, kinds=None):
    """Random move walk from a random seed; returns (pairs, end) where
    pairs holds (diagram before, move applied)."""
    d = parse_front(rng.choice(SEEDS))
    out = []
    for _ in range(steps):
        options = [m for m in applicable_moves(d)
                   if (kinds is None or m.variant in kinds) and fits(d, m)]
        if not options:
            break
        m = rng.choice(options)
        out.append((d, m))
        d = apply_move(d, m)
    return out, d


def random_fronts(count: int, seed: int):
    rng = random.Random(seed)
    fronts = []
    while len(fronts) < count:
        _, d = walk(rng, rng.randrange(1, 7))
        if d.events:
            fronts.append(d)
    return fronts


@pytest.fixture(scope="session")
def oracle_sweep():
    """(front, enumerated switch sets, oracle switch sets) over 500
    random fronts with at most 10 crossings."""
    rows = []
    for d in random_fronts(500, seed=20260815):
        got = sorted((frozenset(r.switches) for r in enumerate_rulings(d)),
                     key=sorted)
        want = sorted(brute_force_switch_sets(d), key=sorted)
        rows.append((d, got, want))
    return rows


@pytest.fixture(scope="session")
def movie_monotonicity():
    """200 random verified movies with their end-to-end ruling counts."""
    rng = random.Random(946)
    rows = []
    while len(rows) < 200:
        pairs, end = walk(rng, rng.randrange(1, 9))
        if not pairs:
            continue
        start = pairs[0][0]
        movie = Movie(start, tuple(m for _, m in pairs), end)
        verify(movie)
        rows.append((movie, summary_consistency(movie),
                     ruling_count(start), ruling_count(end)))
    return rows


@pytest.fixture(scope="session")
def isotopy_sweep():
    """10^3 random isotopy template applications with the invariant
    triples before and after."""
    from legcob.moves import REID_I, REID_II, REID_III

    rng = random.Random(331)
    rows = []
    while len(rows) < 1000:
        pairs, _ = walk(rng, rng.randrange(1, 7),
                        kinds=(REID_I, REID_II, REID_III))
        for before, m in pairs:
            after = apply_move(before, m)

            def triple(d):
                inv = classical_invariants(d)
                return inv.tb, tuple(sorted(inv.rot)), ruling_polynomial(d)

            rows.append((m, triple(before), triple(after)))
            if len(rows) >= 1000:
                break
    return rows


@pytest.fixture(scope="session")
def surgery_sweep():
    """At least 60 saddles and 60 zero handles with their tb deltas,
    from walks biased toward surgery moves."""
    rng = random.Random(717)
    rows = []
    saddles = births = 0
    d = parse_front(rng.choice(SEEDS))
    while saddles < 60 or births < 60:
        options = [m for m in applicable_moves(d) if fits(d, m)]
        if not options:
            d = parse_front(rng.choice(SEEDS))
            continue
        surgery = [m for m in options
                   if m.variant in (SADDLE, ZERO_HANDLE)]
        pool = surgery if surgery and rng.random() < 0.75 else options
        m = rng.choice(pool)
        after = apply_move(d, m)
        if m.variant in (SADDLE, ZERO_HANDLE):
            delta = (classical_invariants(after).tb
                     - classical_invariants(d).tb)
            rows.append((m, delta))
            if m.variant == SADDLE:
                saddles += 1
            else:
                births += 1
        d = after
    return rows
