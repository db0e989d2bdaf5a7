"""Arrows over the cover and the two-set chain bound behind dimension one.

Arrows are triples (range thread, cocycle, source thread) with an exact
witness equation on base points.  The witness construction for dynamic
asymptotic dimension one picks two words, covers the unit space by the
shifted cylinders of one word and the complement, and bounds how many
cocycle jumps a chain can make while staying on one side: the cylinder
union forms a barrier wider than any single jump, and recurrence forces
the orbit into it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quadratics import QuadraticIrrational
from .words import OrbitPoint, Word, language, recurrence_bound
from .cover import Thread, thread_of


@dataclass(frozen=True)
class Arrow:
    """Groupoid arrow: target <- source with integer cocycle.

    The witness (k, l) certifies shift^k(target base) = shift^l(source
    base) and cocycle = k - l; the equation is checked exactly.
    """

    target: Thread
    cocycle: int
    source: Thread
    witness: tuple[int, int]

    def __post_init__(self):
        k, l = self.witness
        if k < 0 or l < 0 or k - l != self.cocycle:
            raise ValueError("witness must consist of naturals with k - l = cocycle")
        if not self.target.base.shift(k).denotes_same(self.source.base.shift(l)):
            raise ValueError("witness equation fails on base points")

    def inverse(self) -> "Arrow":
        k, l = self.witness
        return Arrow(self.source, -self.cocycle, self.target, (l, k))


def unit(th: Thread) -> Arrow:
    return Arrow(th, 0, th, (0, 0))


def compose(a: Arrow, b: Arrow) -> Arrow:
    """(x, p, y)(y, q, z) = (x, p + q, z); the middle threads must agree."""
    if a.source != b.target:
        raise ValueError("arrows are not composable")
    return Arrow(
        a.target,
        a.cocycle + b.cocycle,
        b.source,
        (a.witness[0] + b.witness[0], a.witness[1] + b.witness[1]),
    )


@dataclass(frozen=True)
class BisectionReport:
    """The one-shift bisection on the isolated part of the cover.

    Arrows run from the section of each point nu.1.omega one step forward;
    sources exhaust those sections while the range misses exactly the
    section of 1.omega.
    """

    arrows: tuple[Arrow, ...]
    sources_distinct: bool
    range_omits_one_omega: bool

    @property
    def cocycles_all_one(self) -> bool:
        return all(a.cocycle == 1 for a in self.arrows)


def bisection_arrows(
    alpha: QuadraticIrrational, K: int, L: int, nu_len_max: int
) -> BisectionReport:
    """Truncated arrow family of the bisection, with its range report."""
    if nu_len_max < 1:
        raise ValueError("need nu_len_max >= 1")
    arrows = []
    chain = [thread_of(alpha, OrbitPoint(alpha, alpha * (-j), "R"), K, L) for j in range(nu_len_max + 1)]
    for j in range(1, nu_len_max + 1):
        arrows.append(Arrow(chain[j], 1, chain[j - 1], (1, 0)))
    sources = [a.source for a in arrows]
    targets = {a.target for a in arrows}
    distinct = all(sources[i] != sources[j] for i in range(len(sources)) for j in range(i))
    omits = chain[0] not in targets and targets == set(chain[1:])
    return BisectionReport(tuple(arrows), distinct, omits)


# -- the two-set witness ----------------------------------------------------


@dataclass(frozen=True)
class DadWitness:
    """Data certifying the two-set cover used in the dimension bound.

    The first set is the preimage of the union of cylinders of the left
    shifts sigma^j(mu) for j < lbar; the second is its complement.  The
    words mu and nu have length 2*lbar with distinct length-lbar suffixes.
    """

    cocycle_values: tuple[int, ...]
    lbar: int
    mu: Word
    nu: Word
    mu_shifts: tuple[Word, ...]
    nu_shifts: tuple[Word, ...]
    beta_mu: int
    beta_nu: int

    @property
    def u_description(self) -> str:
        return "preimage of Z(" + " | ".join(self.mu_shifts) + ")"

    @property
    def v_description(self) -> str:
        return "complement of " + self.u_description


def _shift_cylinders_disjoint(mu: Word, nu: Word, lbar: int) -> bool:
    a = [mu[j:] for j in range(lbar)]
    b = [nu[j:] for j in range(lbar)]
    return not any(x.startswith(y) or y.startswith(x) for x in a for y in b)


def dad_witness(alpha: QuadraticIrrational, values) -> DadWitness:
    """Build the deterministic two-set witness for the given cocycle values.

    The words are the lexicographically first pair (suffixes, then their
    left-extensions to twice the length) whose shifted cylinders are
    disjoint; not every suffix pair admits disjoint extensions, so the
    suffix choice is part of the search.
    """
    values = tuple(sorted(set(int(v) for v in values)))
    if not values or values[0] < 0:
        raise ValueError("cocycle values must be nonnegative integers")
    lbar = values[-1]
    if lbar < 1:
        raise ValueError("the largest cocycle value must be at least 1")
    short_words = sorted(language(alpha, lbar))
    long_words = sorted(language(alpha, 2 * lbar))
    for i, s1 in enumerate(short_words):
        for s2 in short_words[i + 1 :]:
            for mu in (w for w in long_words if w.endswith(s1)):
                for nu in (w for w in long_words if w.endswith(s2)):
                    if _shift_cylinders_disjoint(mu, nu, lbar):
                        return DadWitness(
                            values,
                            lbar,
                            mu,
                            nu,
                            tuple(mu[j:] for j in range(lbar)),
                            tuple(nu[j:] for j in range(lbar)),
                            recurrence_bound(alpha, mu),
                            recurrence_bound(alpha, nu),
                        )
    raise RuntimeError("no disjoint witness words at this length")


@dataclass(frozen=True)
class WitnessCheck:
    """Exhaustive window verification of the two-set chain bounds."""

    witness: DadWitness
    window: int
    covered: bool
    max_first_hit: int
    max_chain_v: int
    max_chain_u: int
    cocycle_bound: int

    @property
    def passed(self) -> bool:
        return (
            self.covered
            and self.max_chain_v <= self.witness.beta_mu
            and self.max_chain_u <= self.witness.beta_nu
        )

    def to_dict(self) -> dict:
        return {
            "F": list(self.witness.cocycle_values),
            "mu": self.witness.mu,
            "nu": self.witness.nu,
            "beta_mu": self.witness.beta_mu,
            "beta_nu": self.witness.beta_nu,
            "max_chain_V": self.max_chain_v,
            "max_chain_U": self.max_chain_u,
            "cocycle_bound": self.cocycle_bound,
            "window": self.window,
            "pass": self.passed,
        }


def _u_positions(w: DadWitness, word: Word, limit: int) -> set[int]:
    return {
        s
        for s in range(limit + 1)
        if any(word.startswith(shift, s) for shift in w.mu_shifts)
    }


def _longest_chain(allowed: set[int], jumps) -> int:
    best: dict[int, int] = {}
    for s in sorted(allowed, reverse=True):
        best[s] = max(
            (1 + best[s + f] for f in jumps if s + f in best), default=0
        )
    return max(best.values(), default=0)


def check_witness(alpha: QuadraticIrrational, w: DadWitness, window: int) -> WitnessCheck:
    """Verify the chain bounds over every admissible window of given length.

    (a) every window meets the cylinder union within beta_mu shifts; (b)
    chains of same-side arrows with jumps among the cocycle values are no
    longer than beta_mu on the complement side and beta_nu on the cylinder
    side.
    """
    need = 2 * w.lbar * max(w.beta_mu, w.beta_nu)
    if window < need:
        raise ValueError(f"window must be at least {need}")
    limit = window - 2 * w.lbar
    jumps = [v for v in w.cocycle_values if v >= 1]
    covered = True
    max_first = 0
    max_v = max_u = 0
    for word in language(alpha, window):
        upos = _u_positions(w, word, limit)
        first = min(upos, default=limit + 1)
        covered = covered and first <= w.beta_mu
        max_first = max(max_first, first)
        vpos = set(range(limit + 1)) - upos
        max_v = max(max_v, _longest_chain(vpos, jumps))
        max_u = max(max_u, _longest_chain(upos, jumps))
    bound = w.lbar * max(max_v, max_u)
    return WitnessCheck(w, window, covered, max_first, max_v, max_u, bound)


def degenerate_cover_chain(alpha: QuadraticIrrational, values, window: int) -> int:
    """Longest chain when a single set covers everything: no barrier at all."""
    values = tuple(sorted(set(int(v) for v in values)))
    jumps = [v for v in values if v >= 1]
    if not jumps:
        raise ValueError("need a positive cocycle value")
    limit = window - 2 * values[-1]
    return _longest_chain(set(range(limit + 1)), jumps)
