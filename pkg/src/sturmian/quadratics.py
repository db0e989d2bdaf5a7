"""Exact arithmetic for quadratic irrationals, continued fractions and GL(2,Z).

Values of the form (p + q*sqrt(d))/r with integer p, q, r and d a positive
nonsquare are kept in a canonical form so that structural equality is value
equality.  All arithmetic is integer arithmetic; there is no floating point
anywhere in this module.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class RationalValueError(ValueError):
    """Raised when a requested quadratic irrational is actually rational."""


class BudgetExceededError(RuntimeError):
    """An iteration budget ran out before the computation stabilised."""


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (s, f) with d = s*s*f and f squarefree."""
    s, f = 1, 1
    n = d
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
        p += 1 if p == 2 else 2
    return s, f * n


def _as_fraction(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QuadraticIrrational:
    """(p + q*sqrt(d))/r in canonical form.

    Canonical means: d squarefree (square factors absorbed into q), r > 0,
    gcd(p, q, r) = 1 and q != 0.  Two instances are numerically equal iff
    they are structurally equal.
    """

    p: int
    q: int
    d: int
    r: int

    def __post_init__(self):
        p, q, d, r = self.p, self.q, self.d, self.r
        if r == 0:
            raise ZeroDivisionError("zero denominator")
        if d <= 0:
            raise ValueError("radicand must be positive")
        s, f = _squarefree_split(d)
        q *= s
        if q == 0 or f == 1:
            raise RationalValueError("rational value, not a quadratic irrational")
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(p, q), r)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)
        object.__setattr__(self, "d", f)
        object.__setattr__(self, "r", r // g)

    # -- arithmetic --------------------------------------------------------

    def _same_field(self, other: "QuadraticIrrational"):
        if self.d != other.d:
            raise ValueError("values live in different quadratic fields")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            return _build(
                self.p * f.denominator + f.numerator * self.r,
                self.q * f.denominator,
                self.d,
                self.r * f.denominator,
            )
        if isinstance(other, QuadraticIrrational):
            self._same_field(other)
            return _build(
                self.p * other.r + other.p * self.r,
                self.q * other.r + other.q * self.r,
                self.d,
                self.r * other.r,
            )
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QuadraticIrrational(-self.p, -self.q, self.d, self.r)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if isinstance(other, QuadraticIrrational):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            if f == 0:
                return Fraction(0)
            return _build(
                self.p * f.numerator, self.q * f.numerator, self.d, self.r * f.denominator
            )
        if isinstance(other, QuadraticIrrational):
            self._same_field(other)
            return _build(
                self.p * other.p + self.q * other.q * self.d,
                self.p * other.q + self.q * other.p,
                self.d,
                self.r * other.r,
            )
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticIrrational":
        norm = self.p * self.p - self.q * self.q * self.d
        out = _build(self.r * self.p, -self.r * self.q, self.d, norm)
        assert isinstance(out, QuadraticIrrational)
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _as_fraction(other)
            if f == 0:
                raise ZeroDivisionError
            return self * Fraction(f.denominator, f.numerator)
        if isinstance(other, QuadraticIrrational):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    # -- ordering ----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the value; never 0 (the value is irrational)."""
        p, q = self.p, self.q
        if p >= 0 and q > 0:
            return 1
        if p <= 0 and q < 0:
            return -1
        # mixed signs: compare p^2 with q^2 d
        lhs, rhs = p * p, q * q * self.d
        if p > 0:  # q < 0
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, Fraction):
            # only reachable when other is a same-field irrational
            return (diff > 0) - (diff < 0)
        return diff.sign()

    def __lt__(self, other):
        if isinstance(other, (int, Fraction, QuadraticIrrational)):
            return self._cmp(other) < 0
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (int, Fraction, QuadraticIrrational)):
            return self._cmp(other) < 0 or self == other
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (int, Fraction, QuadraticIrrational)):
            return self._cmp(other) > 0
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Fraction, QuadraticIrrational)):
            return self._cmp(other) > 0 or self == other
        return NotImplemented

    def __floor__(self) -> int:
        q2d = self.q * self.q * self.d
        fs = math.isqrt(q2d) if self.q > 0 else -math.isqrt(q2d) - 1
        n = (self.p + fs) // self.r
        while self._cmp(n + 1) > 0:
            n += 1
        while self._cmp(n) < 0:
            n -= 1
        return n

    def __str__(self):
        return f"({self.p}{self.q:+d}*sqrt({self.d}))/{self.r}"


def _build(p: int, q: int, d: int, r: int) -> Union[Fraction, QuadraticIrrational]:
    """Construct (p + q*sqrt(d))/r, degrading to Fraction when rational."""
    s, f = _squarefree_split(d)
    q *= s
    if q == 0:
        return Fraction(p, r)
    if f == 1:
        return Fraction(p + q, r)
    return QuadraticIrrational(p, q, f, r)


def normalize(p: int, q: int, d: int, r: int) -> QuadraticIrrational:
    """Canonical quadratic irrational (p + q*sqrt(d))/r."""
    return QuadraticIrrational(p, q, d, r)


def compare_to_rational(x: QuadraticIrrational, num: int, den: int) -> str:
    """Exact ordering of x against num/den: "LT" or "GT" (never equal)."""
    if den <= 0:
        raise ValueError("denominator must be a positive integer")
    return "LT" if x._cmp(Fraction(num, den)) < 0 else "GT"


# -- continued fractions ---------------------------------------------------


def _minimal_period(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for p in range(1, n + 1):
        if n % p == 0 and period == period[:p] * (n // p):
            return period[:p]
    return period


@dataclass(frozen=True)
class ContinuedFraction:
    """Eventually periodic continued fraction [a0; a1, ..., (b1, ..., bk)].

    Canonical form: the period has minimal length and the preperiod is as
    short as possible, which determines the presentation uniquely.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre = tuple(self.preperiod)
        per = tuple(self.period)
        if not per:
            raise ValueError("period must be nonempty")
        if any(a < 1 for a in per) or any(a < 1 for a in pre[1:]):
            raise ValueError("partial quotients after the first must be >= 1")
        per = _minimal_period(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def digit(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def __str__(self):
        per = "(" + ",".join(map(str, self.period)) + ")"
        if not self.preperiod:
            return f"cf:[{per}]"
        rest = ",".join(list(map(str, self.preperiod[1:])) + [per])
        return f"cf:[{self.preperiod[0]};{rest}]"


def cf_expand(x: QuadraticIrrational, max_steps: int = 256) -> ContinuedFraction:
    """Continued fraction of x, detected periodic via complete-quotient repeats."""
    digits: list[int] = []
    seen: dict[QuadraticIrrational, int] = {}
    y = x
    for step in range(max_steps):
        if y in seen:
            f = seen[y]
            return ContinuedFraction(tuple(digits[:f]), tuple(digits[f:]))
        seen[y] = step
        a = math.floor(y)
        digits.append(a)
        y = (y - a).inverse()
    raise BudgetExceededError(f"no period within {max_steps} steps")


def cf_value(cf: ContinuedFraction) -> QuadraticIrrational:
    """Fold a continued fraction back into its exact value."""
    a, b, c, d = 1, 0, 0, 1
    for digit in cf.period:
        a, b, c, d = a * digit + b, a, c * digit + d, c
    # periodic tail y solves c*y^2 + (d - a)*y - b = 0, take the positive root
    disc = (a - d) * (a - d) + 4 * b * c
    y = _build(a - d, 1, disc, 2 * c)
    if not isinstance(y, QuadraticIrrational):
        raise RationalValueError("period does not define an irrational")
    for digit in reversed(cf.preperiod):
        y = digit + y.inverse()
    return y


def cf_tail_equivalent(a: ContinuedFraction, b: ContinuedFraction) -> bool:
    """True iff the two digit streams agree from some point on.

    For canonical (minimal-period) inputs this holds exactly when the
    periods are rotations of one another.
    """
    if len(a.period) != len(b.period):
        return False
    p = a.period
    return any(p[i:] + p[:i] == b.period for i in range(len(p)))


# -- the GL(2,Z) action ----------------------------------------------------


@dataclass(frozen=True)
class Moebius:
    """Integer linear fractional transformation with determinant +-1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.c * self.b not in (1, -1):
            raise ValueError("determinant must be +1 or -1")

    def __matmul__(self, other: "Moebius") -> "Moebius":
        return Moebius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __call__(self, x: QuadraticIrrational) -> QuadraticIrrational:
        num = x * self.a + self.b if self.a else Fraction(self.b)
        den = x * self.c + self.d if self.c else Fraction(self.d)
        out = num / den
        assert isinstance(out, QuadraticIrrational)
        return out


IDENTITY = Moebius(1, 0, 0, 1)


def gl2z_apply(m: Moebius, x: QuadraticIrrational) -> QuadraticIrrational:
    """Image of x under the linear fractional action of m."""
    return m(x)


# -- parse / print ---------------------------------------------------------

_QUAD_RE = re.compile(r"^quad:(-?\d+),(-?\d+),(\d+),(-?\d+)$")
_CF_RE = re.compile(r"^cf:\[(?:(-?\d+)(?:;((?:-?\d+,)*))?)?\((\d+(?:,\d+)*)\)\]$")


def format_quad(x: QuadraticIrrational) -> str:
    return f"quad:{x.p},{x.q},{x.d},{x.r}"


def parse_quad(text: str) -> QuadraticIrrational:
    m = _QUAD_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed quadratic literal: {text!r}")
    p, q, d, r = map(int, m.groups())
    return QuadraticIrrational(p, q, d, r)


def format_cf(cf: ContinuedFraction) -> str:
    return str(cf)


def parse_cf(text: str) -> ContinuedFraction:
    m = _CF_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed continued fraction literal: {text!r}")
    head, mid, per = m.groups()
    pre: list[int] = []
    if head is not None:
        pre.append(int(head))
        if mid:
            pre.extend(int(t) for t in mid.rstrip(",").split(","))
    return ContinuedFraction(tuple(pre), tuple(int(t) for t in per.split(",")))
