"""Decision procedures for conjugacy and flow equivalence of the subshifts.

Both invariants reduce to exact arithmetic on the parameters: two-sided
conjugacy (equivalently orbit equivalence, and isomorphism of the unital
ordered groups Z + alpha*Z) holds iff alpha = beta or alpha = 1 - beta,
and flow equivalence (equivalently Morita equivalence of the associated
algebras, and plain ordered-group isomorphism) holds iff the parameters
have tail-equivalent continued fractions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quadratics import QuadraticIrrational, cf_expand, cf_tail_equivalent


def _check_unit_interval(x: QuadraticIrrational):
    if not (x > 0 and x < 1):
        raise ValueError("parameters must lie in (0,1)")


def conjugate(alpha: QuadraticIrrational, beta: QuadraticIrrational) -> bool:
    """Two-sided conjugacy of the subshifts: alpha = beta or alpha = 1 - beta.

    Also decides one-sided conjugacy, orbit equivalence, unital ordered-group
    isomorphism of Z + alpha*Z, and star-isomorphism of the associated
    algebras; all of these coincide for this family.
    """
    _check_unit_interval(alpha)
    _check_unit_interval(beta)
    return alpha == beta or alpha == 1 - beta


# the listed relations are all equivalent to conjugacy for these systems
orbit_equivalent = conjugate
unital_order_isomorphic = conjugate


def flow_equivalent(alpha: QuadraticIrrational, beta: QuadraticIrrational) -> bool:
    """Flow equivalence of the suspensions: equivalence of the irrationals.

    Decided via tail equivalence of the continued fractions; also decides
    Morita equivalence of the associated algebras and ordered-group
    isomorphism of Z + alpha*Z without the unit.
    """
    return cf_tail_equivalent(cf_expand(alpha), cf_expand(beta))


morita_equivalent = flow_equivalent
order_isomorphic = flow_equivalent


@dataclass(frozen=True)
class OrderedGroupDescriptor:
    """Z + alpha*Z as an ordered subgroup of the reals with order unit 1.

    Elements are pairs (n, m) standing for n + m*alpha; positivity is
    decided exactly.
    """

    alpha: QuadraticIrrational
    description: str = "Z + alpha*Z with order unit 1"
    unit: tuple[int, int] = (1, 0)

    def value_positive(self, n: int, m: int) -> bool:
        if m == 0:
            return n > 0
        return self.alpha * m + n > 0

    def compare(self, a: tuple[int, int], b: tuple[int, int]) -> int:
        if a == b:
            return 0
        return 1 if self.value_positive(a[0] - b[0], a[1] - b[1]) else -1


def k_theory_report(alpha: QuadraticIrrational) -> OrderedGroupDescriptor:
    """The ordered invariant attached to the parameter: K0 data, K1 = 0."""
    _check_unit_interval(alpha)
    return OrderedGroupDescriptor(alpha)


@dataclass(frozen=True)
class InvariantReport:
    alpha: QuadraticIrrational
    beta: QuadraticIrrational
    conjugate: bool
    flow_equivalent: bool
    k0_description: str = "Z+alphaZ"
    k1_description: str = "0"

    def to_dict(self) -> dict:
        return {
            "conjugate": self.conjugate,
            "flow_equivalent": self.flow_equivalent,
            "k0": self.k0_description,
            "k1": self.k1_description,
        }


def compare_parameters(alpha: QuadraticIrrational, beta: QuadraticIrrational) -> InvariantReport:
    c = conjugate(alpha, beta)
    f = flow_equivalent(alpha, beta)
    assert f or not c  # conjugacy refines flow equivalence
    return InvariantReport(alpha, beta, c, f)
