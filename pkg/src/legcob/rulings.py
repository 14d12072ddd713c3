"""Normal rulings, ruling polynomials, and the two ruling obstructions.

A ruling pairs the strands of each slice into an involution without
fixed points.  Left cusps pair their newborn strands, right cusps may
only close mutually paired strands, and at each crossing the branch
either passes through (the pairing is conjugated by the transposition
of the two positions) or switches (the pairing is kept, allowed only
when the two pairs involved are vertically nested or disjoint).  Paired
strands never cross each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .front import EventKind, FrontDiagram, maslov_potential

OBSTRUCTED = "OBSTRUCTED"
INCONCLUSIVE = "INCONCLUSIVE"
PASS = "PASS"


class GradedUndefined(ValueError):
    pass


class NotPrimePower(ValueError):
    def __init__(self, q: int):
        super().__init__(f"{q} is not a prime power >= 2")
        self.q = q


@dataclass(frozen=True)
class NormalRuling:
    """switches: crossing event indices; trace: pairing after each event,
    entry p-1 holding the 1-based partner of strand p."""

    switches: frozenset[int]
    trace: tuple[tuple[int, ...], ...]

    @property
    def switch_count(self) -> int:
        return len(self.switches)


def _pair_left(pi: tuple[int, ...], idx: int) -> tuple[int, ...]:
    shifted = [p if p < idx else p + 2 for p in pi]
    return tuple(shifted[:idx] + [idx + 1, idx] + shifted[idx:])


def _pair_right(pi: tuple[int, ...], idx: int) -> Optional[tuple[int, ...]]:
    if pi[idx] != idx + 1:
        return None
    rest = pi[:idx] + pi[idx + 2:]
    return tuple(p if p < idx else p - 2 for p in rest)


def _normal(idx: int, a: int, b: int) -> bool:
    # Pairs {idx, a} and {idx+1, b} as closed vertical intervals:
    # allowed iff disjoint or strictly nested.
    lo1, hi1 = min(idx, a), max(idx, a)
    lo2, hi2 = min(idx + 1, b), max(idx + 1, b)
    if hi1 < lo2 or hi2 < lo1:
        return True
    return (lo1 < lo2 and hi2 < hi1) or (lo2 < lo1 and hi1 < hi2)


def _pair_cross(pi: tuple[int, ...], idx: int, switch: bool
                ) -> Optional[tuple[int, ...]]:
    a, b = pi[idx], pi[idx + 1]
    if a == idx + 1:
        return None  # paired strands may not cross
    if switch:
        if not _normal(idx, a, b):
            return None
        return pi

    def tau(p: int) -> int:
        if p == idx:
            return idx + 1
        if p == idx + 1:
            return idx
        return p

    return tuple(tau(pi[tau(p)]) for p in range(len(pi)))


def enumerate_rulings(d: FrontDiagram, graded: bool = False
                      ) -> list[NormalRuling]:
    """All normal rulings of ``d``, sorted by switch set.

    The graded variant keeps only rulings whose switches sit at crossings
    of equal Maslov potential; it needs the potential to exist.
    """
    pot = None
    if graded:
        pot = maslov_potential(d)
        if pot is None:
            raise GradedUndefined(
                "graded rulings need a Maslov potential (some rot != 0)")

    events = d.events
    results: list[NormalRuling] = []
    switches: list[int] = []
    trace: list[tuple[int, ...]] = []

    def emit(pi: tuple[int, ...]) -> None:
        trace.append(tuple(p + 1 for p in pi))

    def go(k: int, pi: tuple[int, ...]) -> None:
        if k == len(events):
            results.append(NormalRuling(frozenset(switches), tuple(trace)))
            return
        ev = events[k]
        idx = ev.pos - 1
        if ev.kind is EventKind.LEFT_CUSP:
            nxt = _pair_left(pi, idx)
            emit(nxt)
            go(k + 1, nxt)
            trace.pop()
        elif ev.kind is EventKind.RIGHT_CUSP:
            nxt = _pair_right(pi, idx)
            if nxt is not None:
                emit(nxt)
                go(k + 1, nxt)
                trace.pop()
        else:
            nxt = _pair_cross(pi, idx, False)
            if nxt is not None:
                emit(nxt)
                go(k + 1, nxt)
                trace.pop()
            if pot is None or pot.at(k, ev.pos) == pot.at(k, ev.pos + 1):
                nxt = _pair_cross(pi, idx, True)
                if nxt is not None:
                    switches.append(k)
                    emit(nxt)
                    go(k + 1, nxt)
                    trace.pop()
                    switches.pop()

    go(0, ())
    results.sort(key=lambda r: sorted(r.switches))
    return results


def ruling_count(d: FrontDiagram, graded: bool = False) -> int:
    return len(enumerate_rulings(d, graded))


# -- Laurent polynomials ------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    """Finitely supported integer Laurent polynomial in one variable."""

    coeffs: tuple[tuple[int, int], ...]  # (exponent, coefficient), sorted

    @staticmethod
    def from_dict(d: dict[int, int]) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((e, c) for e, c in d.items() if c)))

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(())

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly(((0, 1),))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self.coeffs)
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    def evaluate(self, z: "QuadNumber") -> "QuadNumber":
        total = QuadNumber(0)
        for e, c in self.coeffs:
            total = total + z ** e * QuadNumber(c)
        return total

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs, reverse=True):
            if e == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}"
                exp = "z" if e == 1 else f"z^{e}"
                parts.append(f"{head}{exp}")
        return " + ".join(parts)


def ruling_polynomial(d: FrontDiagram, graded: bool = False) -> LaurentPoly:
    """Sum of z^(switches - left cusps) over all normal rulings."""
    left_cusps = sum(1 for e in d.events if e.kind is EventKind.LEFT_CUSP)
    out: dict[int, int] = {}
    for r in enumerate_rulings(d, graded):
        e = r.switch_count - left_cusps
        out[e] = out.get(e, 0) + 1
    return LaurentPoly.from_dict(out)


# -- exact arithmetic in Q(sqrt(s)) --------------------------------------

def _squarefree_split(n: int) -> tuple[int, int]:
    # n = f*f*s with s squarefree; returns (f, s)
    f, s = 1, 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            f *= d
        if n % d == 0:
            n //= d
            s *= d
        d += 1
    return f, s * n


class QuadNumber:
    """Exact value a + b*sqrt(s) with rational a, b and squarefree s >= 1.

    Numbers from different quadratic fields cannot be mixed unless one
    side is rational.  Comparison works by sign analysis, no floats.
    """

    __slots__ = ("a", "b", "s")

    def __init__(self, a, b=0, s: int = 1):
        a, b = Fraction(a), Fraction(b)
        if s < 1:
            raise ValueError("radicand must be a positive integer")
        if b == 0:
            s = 1
        elif s > 1:
            f, s = _squarefree_split(s)
            b *= f
        if s == 1:
            a, b = a + b, Fraction(0)
        self.a, self.b, self.s = a, b, s

    @staticmethod
    def sqrt(n: int) -> "QuadNumber":
        return QuadNumber(0, 1, n)

    def _coerce(self, other) -> "QuadNumber":
        if isinstance(other, QuadNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNumber(other)
        return NotImplemented  # type: ignore[return-value]

    def _join(self, other: "QuadNumber") -> int:
        if self.s == 1:
            return other.s
        if other.s == 1 or other.s == self.s:
            return self.s
        raise ValueError(f"mixing sqrt({self.s}) with sqrt({other.s})")

    def __add__(self, other):
        o = self._coerce(other)
        s = self._join(o)
        return QuadNumber(self.a + o.a, self.b + o.b, s)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.s)

    def __sub__(self, other):
        o = self._coerce(other)
        return self + (-o)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        s = self._join(o)
        return QuadNumber(
            self.a * o.a + self.b * o.b * s,
            self.a * o.b + self.b * o.a,
            s,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadNumber":
        den = self.a * self.a - self.b * self.b * self.s
        if den == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("inverse of zero")
            # a^2 = b^2 s with nonzero parts would make sqrt(s) rational
            raise AssertionError("unreachable for squarefree s > 1")
        return QuadNumber(self.a / den, -self.b / den, self.s)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int) -> "QuadNumber":
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadNumber(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 s
        lhs, rhs = a * a, b * b * self.s
        if a > 0:
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.a, self.b, self.s) == (o.a, o.b, o.s)

    def __hash__(self):
        return hash((self.a, self.b, self.s))

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.s)

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}"
        return f"{self.a} + {self.b}*sqrt({self.s})"


def sqrt_power(q: int, k: int) -> QuadNumber:
    """q**(k/2) as an exact QuadNumber."""
    if k % 2 == 0:
        return QuadNumber(Fraction(q) ** (k // 2))
    return QuadNumber(0, Fraction(q) ** ((k - 1) // 2), q)


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True  # n itself prime


# -- obstructions -------------------------------------------------------

def count_obstruction(lower: FrontDiagram, upper: FrontDiagram) -> str:
    """OBSTRUCTED when the bottom end has strictly more normal rulings
    than the top; otherwise INCONCLUSIVE."""
    if ruling_count(lower) > ruling_count(upper):
        return OBSTRUCTED
    return INCONCLUSIVE


@dataclass(frozen=True)
class ObstructionReport:
    q: int
    lhs: QuadNumber
    rhs: QuadNumber
    verdict: str  # PASS or OBSTRUCTED


def polynomial_obstruction(
    lower: Optional[FrontDiagram],
    upper: Optional[FrontDiagram],
    chi: int,
    qs: Iterable[int],
) -> list[ObstructionReport]:
    """Exact test of R_lower(z) <= q^(-chi/2) * R_upper(z) at
    z = sqrt(q) - 1/sqrt(q) for each prime power q.

    ``None`` stands for the empty diagram, whose polynomial is 1.  A
    failed inequality is only conclusive under the cobordism hypotheses
    documented in the README.
    """
    r_lo = LaurentPoly.one() if lower is None else ruling_polynomial(lower)
    r_hi = LaurentPoly.one() if upper is None else ruling_polynomial(upper)
    out = []
    for q in qs:
        if not is_prime_power(q):
            raise NotPrimePower(q)
        z = sqrt_power(q, 1) - sqrt_power(q, -1)
        lhs = r_lo.evaluate(z)
        rhs = sqrt_power(q, -chi) * r_hi.evaluate(z)
        out.append(ObstructionReport(
            q, lhs, rhs, PASS if lhs <= rhs else OBSTRUCTED))
    return out
