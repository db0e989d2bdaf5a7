"""Finite quotients of a Sturmian subshift by prefix/past equivalence.

A point x is equivalent to x' at level (k,l) when they share their length-k
prefix and the length-l past of their k-th shift.  The quotients form a
projective system under the partial order (k1,l1) <= (k2,l2) iff k1 <= k2
and l1-k1 <= l2-k2; threads are compatible families of classes across a
truncated index grid and approximate elements of the projective limit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

from .quadratics import QuadraticIrrational
from .words import (
    OrbitPoint,
    TwoSidedPoint,
    Word,
    branch_point,
    code_letter,
    code_word,
    cylinder_arc,
    intersect_arcs,
    is_admissible,
    letter_arc,
    partition_by_rotates,
    past_set,
    word_arc,
)

DEFAULT_SEED = 974831


class IndexPair(NamedTuple):
    k: int
    l: int


class UnresolvedTruncationError(RuntimeError):
    """The truncation grid is too small to decide the question asked."""


class IncompleteEnumerationError(RuntimeError):
    """Random cross-checking found a class missing from an enumeration."""


def _check_index(idx) -> IndexPair:
    idx = IndexPair(*idx)
    if idx.k < 0 or idx.k > idx.l:
        raise ValueError(f"index pair must satisfy 0 <= k <= l: {idx}")
    return idx


def index_leq(a, b) -> bool:
    """The projective-system order: k1 <= k2 and l1-k1 <= l2-k2."""
    a, b = _check_index(a), _check_index(b)
    return a.k <= b.k and a.l - a.k <= b.l - b.k


@dataclass(frozen=True)
class EqClass:
    """A prefix/past equivalence class, with one witnessing point."""

    index: IndexPair
    prefix: Word
    past: frozenset[Word]
    representative: OrbitPoint = field(compare=False)

    def __post_init__(self):
        if len(self.prefix) != self.index.k:
            raise ValueError("prefix length must equal k")
        if not self.past or len(self.past) > 2:
            raise ValueError("past sets have one or two elements")
        if any(len(w) != self.index.l for w in self.past):
            raise ValueError("past words must have length l")


def eq_class(alpha: QuadraticIrrational, x: OrbitPoint, idx) -> EqClass:
    if x.alpha != alpha:
        raise ValueError("point belongs to a different parameter")
    idx = _check_index(idx)
    return EqClass(idx, code_word(x, idx.k), past_set(x.shift(idx.k), idx.l), x)


def equivalent(alpha: QuadraticIrrational, x: OrbitPoint, y: OrbitPoint, idx) -> bool:
    return eq_class(alpha, x, idx) == eq_class(alpha, y, idx)


@dataclass(frozen=True)
class FiniteQuotient:
    index: IndexPair
    classes: frozenset[EqClass]

    def class_of(self, x: OrbitPoint) -> EqClass:
        c = eq_class(x.alpha, x, self.index)
        if c not in self.classes:
            raise IncompleteEnumerationError(f"class of {x} missing at {self.index}")
        return c

    def __len__(self):
        return len(self.classes)


def _quotient_representatives(alpha: QuadraticIrrational, idx: IndexPair) -> list[OrbitPoint]:
    k, l = idx
    reps: list[OrbitPoint] = []
    for arc in partition_by_rotates(alpha, range(k + l + 1)):
        reps.append(OrbitPoint(alpha, arc.midpoint(), "L"))
        reps.append(OrbitPoint(alpha, arc.lo, "L"))
        reps.append(OrbitPoint(alpha, arc.lo, "R"))
    # interior points of the partition actually cutting the past window
    # [k-l, k); guarantees every unique-past class gets a representative
    for arc in partition_by_rotates(alpha, range(k - l, k + 1)):
        reps.append(OrbitPoint(alpha, arc.interior_point_off_orbit(alpha), "L"))
    om = branch_point(alpha)
    for j in range(k + l + 1):
        reps.append(om.shift(j))
    return reps


@lru_cache(maxsize=None)
def _quotient_cached(alpha, k, l, depth_budget, seed) -> FiniteQuotient:
    idx = IndexPair(k, l)
    classes: set[EqClass] = set()
    for x in _quotient_representatives(alpha, idx):
        classes.add(eq_class(alpha, x, idx))
    rng = random.Random(seed)
    for _ in range(depth_budget):
        t = Fraction(rng.randint(1, 10**12 - 1), 10**12)
        if eq_class(alpha, OrbitPoint(alpha, t, "L"), idx) not in classes:
            raise IncompleteEnumerationError(f"sampled point escapes enumeration at {idx}")
    return FiniteQuotient(idx, frozenset(classes))


def quotient(
    alpha: QuadraticIrrational, idx, depth_budget: int = 32, seed: int = DEFAULT_SEED
) -> FiniteQuotient:
    """All equivalence classes at idx, cross-checked by random sampling."""
    idx = _check_index(idx)
    return _quotient_cached(alpha, idx.k, idx.l, depth_budget, seed)


def q_map(c: EqClass, idx1) -> EqClass:
    """Connecting surjection: the class of the same representative lower down."""
    idx1 = _check_index(idx1)
    if not index_leq(idx1, c.index):
        raise ValueError(f"{idx1} is not below {c.index} in the projective order")
    x = c.representative
    return eq_class(x.alpha, x, idx1)


def shift_map(c: EqClass) -> EqClass:
    """Image of a class under the induced shift: (k,l) -> (k-1,l)."""
    k, l = c.index
    if k < 1:
        raise ValueError("shift map needs k >= 1")
    x = c.representative
    return eq_class(x.alpha, x.shift(), IndexPair(k - 1, l))


# -- threads ----------------------------------------------------------------


class Thread:
    """A compatible family of classes over the truncated grid k<=K, l<=L.

    Identity is the family itself; the base point records which subshift
    element the thread sits over but does not enter equality.
    """

    __slots__ = ("base", "K", "L", "_levels")

    def __init__(self, base: OrbitPoint, K: int, L: int, levels: dict[IndexPair, EqClass]):
        if not 0 <= K <= L:
            raise ValueError("need 0 <= K <= L")
        for l in range(L + 1):
            for k in range(min(K, l) + 1):
                if IndexPair(k, l) not in levels:
                    raise ValueError(f"thread is missing level {(k, l)}")
        self.base = base
        self.K = K
        self.L = L
        self._levels = dict(levels)

    def class_at(self, k: int, l: int) -> EqClass:
        return self._levels[IndexPair(k, l)]

    def levels(self) -> Iterator[tuple[IndexPair, EqClass]]:
        return iter(sorted(self._levels.items()))

    def __eq__(self, other):
        if not isinstance(other, Thread):
            return NotImplemented
        return (self.K, self.L) == (other.K, other.L) and self._levels == other._levels

    def __hash__(self):
        return hash((self.K, self.L, frozenset(self._levels.items())))

    def __repr__(self):
        top = self._levels[IndexPair(min(self.K, self.L), self.L)]
        return f"Thread(K={self.K}, L={self.L}, top prefix={top.prefix!r}, past={sorted(top.past)})"

    def table(self) -> str:
        """Render the thread as a level -> (prefix, past) table."""
        lines = []
        for (k, l), c in sorted(self._levels.items()):
            past = ",".join(w or "-" for w in sorted(c.past))
            lines.append(f"({k},{l}): prefix={c.prefix or '-'} past={{{past}}}")
        return "\n".join(lines)


def _grid(K: int, L: int) -> Iterator[IndexPair]:
    for l in range(L + 1):
        for k in range(min(K, l) + 1):
            yield IndexPair(k, l)


def thread_of(alpha: QuadraticIrrational, x: OrbitPoint, K: int, L: int) -> Thread:
    """The canonical thread through x (the section of the factor map)."""
    levels = {idx: eq_class(alpha, x, idx) for idx in _grid(K, L)}
    return Thread(x, K, L, levels)


def shift_thread(th: Thread) -> Thread:
    """Image of a thread under the induced shift; truncation drops to K-1."""
    if th.K < 1:
        raise ValueError("shift needs K >= 1")
    levels = {}
    for l in range(th.L + 1):
        for k in range(min(th.K - 1, l) + 1):
            if k + 1 <= l:
                levels[IndexPair(k, l)] = shift_map(th.class_at(k + 1, l))
            else:  # k = l = the diagonal: shift the (k+1, l+1) class and project
                c = shift_map(th.class_at(k + 1, l + 1))
                levels[IndexPair(k, l)] = q_map(c, IndexPair(k, l))
    return Thread(th.base.shift(), th.K - 1, th.L, levels)


def property_star_witness(alpha: QuadraticIrrational, mu: Word) -> OrbitPoint:
    """A point whose length-|mu| past is exactly {mu}, off the branch orbit."""
    if mu == "":
        return OrbitPoint(alpha, Fraction(1, 2), "L")
    arc = cylinder_arc(alpha, mu)
    if arc is None:
        raise ValueError(f"word is not admissible: {mu!r}")
    t = arc.interior_point_off_orbit(alpha)
    return OrbitPoint(alpha, t, "L").shift(len(mu))


def construct_fibre_element(
    alpha: QuadraticIrrational, x: OrbitPoint, past_letter: str, K: int, L: int
) -> Thread:
    """The non-section fibre element over a branch-orbit point x.

    Over forward-orbit points the thread follows the backward coding chain
    selected by past_letter; over backward-orbit points the chain is the
    point's own and past_letter must match it.
    """
    if past_letter not in ("0", "1"):
        raise ValueError("past letter must be '0' or '1'")
    pos = x.orbit_position()
    if pos is None:
        raise ValueError("the point is not in the orbit of the branch point")
    kind, _ = pos
    if kind == "backward":
        forced = "0" if x.variant == "L" else "1"
        if past_letter != forced:
            raise ValueError(f"the past letter of this backward point is forced to {forced!r}")
        chain_variant = x.variant
    else:
        chain_variant = "L" if past_letter == "0" else "R"

    levels = {}
    for idx in _grid(K, L):
        k, l = idx
        prefix = code_word(x, k)
        chain = OrbitPoint(alpha, x.t + x.alpha * (k - l), chain_variant)
        w = code_word(chain, l)
        rep = property_star_witness(alpha, w).shift(-k)
        levels[idx] = EqClass(idx, prefix, frozenset({w}), rep)
    return Thread(x, K, L, levels)


ClassData = tuple[Word, frozenset[Word]]


def _chain_candidates(
    alpha: QuadraticIrrational, prefix: Word, n: int
) -> dict[ClassData, Optional[OrbitPoint]]:
    """All classes at level (n, 2n) whose prefix is the given word.

    Singleton-past classes are exactly the admissible length-2n words ending
    in the prefix (the past window covers positions [-n, n)) and map to
    None; the two-past classes each belong to a unique branch-orbit point,
    which is returned alongside.
    """
    singles = {prefix}
    for _ in range(n):
        singles = {a + w for w in singles for a in "01" if is_admissible(alpha, a + w)}
    out: dict[ClassData, Optional[OrbitPoint]] = {(prefix, frozenset({w})): None for w in singles}
    om = branch_point(alpha)
    window = code_word(om, 2 * n)
    for j in range(n):
        if window[j : j + n] == prefix:
            y = om.shift(j)
            out[(prefix, past_set(y.shift(n), 2 * n))] = y
    for m in range(1, n + 1):
        for var in ("L", "R"):
            y = OrbitPoint(alpha, alpha * (1 - m), var)
            if code_word(y, n) == prefix:
                out[(prefix, past_set(y.shift(n), 2 * n))] = y
    return out


def _chain_parent(data: ClassData) -> ClassData:
    """Connecting map along the chain (n, 2n) -> (n-1, 2n-2), symbolically.

    Past windows cover positions [-n, n); dropping one letter at each end
    gives the window at the level below.  The prefix loses its last letter.
    """
    prefix, past = data
    return prefix[:-1], frozenset(w[1 : len(w) - 1] for w in past)


def _known_fibre_threads(
    alpha: QuadraticIrrational, x: OrbitPoint, K: int, L: int
) -> list[Thread]:
    pos = x.orbit_position()
    out = [thread_of(alpha, x, K, L)]
    if pos is None:
        return out
    if pos[0] == "forward":
        out.append(construct_fibre_element(alpha, x, "0", K, L))
        out.append(construct_fibre_element(alpha, x, "1", K, L))
    else:
        forced = "0" if x.variant == "L" else "1"
        out.append(construct_fibre_element(alpha, x, forced, K, L))
    return out


def _thread_chain_data(alpha, x: OrbitPoint, n: int, chain_variant: Optional[str]) -> ClassData:
    """Class data at level (n, 2n) of iota(x) or of a constructed element."""
    prefix = code_word(x, n)
    if chain_variant is None:
        return prefix, past_set(x.shift(n), 2 * n)
    chain = OrbitPoint(alpha, x.t - alpha * n, chain_variant)
    return prefix, frozenset({code_word(chain, 2 * n)})


def fibre(
    alpha: QuadraticIrrational, x: OrbitPoint, K: int, L: int, max_depth: Optional[int] = None
) -> set[Thread]:
    """All threads over x at truncation (K, L), by exhaustive chain search.

    Every compatible family over the truncated grid is the projection of a
    single class at the chain level (n0, 2n0) with n0 = max(K, L), and the
    families extending to arbitrarily deep levels are exactly the fibre of
    the projective limit.  The search enumerates every class at (n0, 2n0)
    whose prefix matches x and certifies each non-fibre candidate dead by
    walking its unique chain forward until it breaks: a singleton-past
    class survives to depth n exactly while its past window glued to x's
    prefix stays admissible, and a two-past class belongs to one concrete
    branch-orbit point and survives only while that point's coding agrees
    with x.  Both certificates terminate; exceeding max_depth first raises
    an unresolved-truncation diagnostic.
    """
    if not 0 <= K <= L:
        raise ValueError("need 0 <= K <= L")
    n0 = max(L, 1)
    if max_depth is None:
        max_depth = 16 * n0 + 2000

    pos = x.orbit_position()
    variants: list[Optional[str]]
    if pos is None:
        variants = [None]
    elif pos[0] == "forward":
        variants = [None, "L", "R"]
    else:
        variants = [None, x.variant]
    target = {_thread_chain_data(alpha, x, n0, v) for v in variants}

    xw = code_word(x, max_depth)
    candidates = _chain_candidates(alpha, xw[:n0], n0)
    if not target <= set(candidates):
        raise IncompleteEnumerationError("constructed elements missing from candidates")

    stubborn = []
    for data, orbit_pt in candidates.items():
        if data in target:
            continue
        if orbit_pt is None:
            (w,) = data[1]
            arc = word_arc(alpha, w)
            dead = False
            for i in range(n0, max_depth):
                arc = intersect_arcs(arc, letter_arc(alpha, xw[i], n0 + i))
                if arc is None:
                    dead = True
                    break
        else:
            dead = code_word(orbit_pt, max_depth) != xw
        if not dead:
            stubborn.append(data)
    if stubborn:
        raise UnresolvedTruncationError(
            f"{len(stubborn)} candidate classes still alive at depth {max_depth}"
        )
    return set(_known_fibre_threads(alpha, x, K, L))


def expected_fibre_size(x: OrbitPoint) -> int:
    """Fibre cardinality dictated by the cover theorem: 3 / 2 / 1."""
    pos = x.orbit_position()
    if pos is None:
        return 1
    return 3 if pos[0] == "forward" else 2


@dataclass(frozen=True)
class FibreReport:
    """Fibre search outcome; resolved when the truncation separates the fibre."""

    point: OrbitPoint
    K: int
    L: int
    threads: frozenset[Thread]
    expected: int
    min_K: int
    min_L: int

    @property
    def count(self) -> int:
        return len(self.threads)

    @property
    def resolved(self) -> bool:
        return self.count == self.expected


def fibre_report(alpha: QuadraticIrrational, x: OrbitPoint, K: int, L: int, **kw) -> FibreReport:
    pos = x.orbit_position()
    dist = 0 if pos is None else pos[1]
    min_K, min_L = dist + 1, dist + 3
    threads = fibre(alpha, x, K, L, **kw)
    return FibreReport(x, K, L, frozenset(threads), expected_fibre_size(x), min_K, min_L)


def is_isolated(alpha: QuadraticIrrational, th: Thread) -> bool:
    """Whether the thread is the section of a branch-orbit point.

    Uses the singleton basic sets: iota(sigma^k omega) is cut out at level
    (0, k+1) and iota(mu.omega) at level (|mu|, |mu|).
    """
    x = th.base
    pos = x.orbit_position()
    if pos is None:
        return False
    kind, n = pos
    if kind == "forward":
        k, l = 0, n + 1
    else:
        k, l = n, n
    if l > th.L or k > th.K:
        raise UnresolvedTruncationError(f"need level {(k, l)} inside the truncation")
    return th.class_at(k, l) == eq_class(alpha, x, IndexPair(k, l))


def two_sided_embed(alpha: QuadraticIrrational, x: TwoSidedPoint, K: int, L: int) -> Thread:
    """The non-isolated thread over the truncation of a two-sided point.

    The choice among fibre elements is read off the negative coordinates,
    which is exactly how the two-sided system sits inside the cover.
    """
    plus = x.restrict()
    pos = plus.orbit_position()
    if pos is None:
        return thread_of(alpha, plus, K, L)
    kind, n = pos
    if kind == "forward":
        a = code_letter(x, -(n + 1))
        return construct_fibre_element(alpha, plus, a, K, L)
    forced = "0" if plus.variant == "L" else "1"
    return construct_fibre_element(alpha, plus, forced, K, L)
