"""Two exact evaluators for Haar-orthogonal matrix-entry moments.

``theorem3_moment`` follows the block-factorised recipe: group positions by
row index and multiply per-block averages of the standard invariants.
``exact_moment`` solves the normal equations G alpha = b over every pairing
of the positions, which is the orthogonal Weingarten formula. The two agree
when the query has a single distinct row index and can disagree otherwise;
``compare_methods`` reports both next to a Monte Carlo estimate and never
substitutes one for the other.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from django.conf import settings

from combinat.pairings import enumerate_pairings
from common.exceptions import ArgumentError
from invariants.gram import gram_matrix
from invariants.linalg import solve_consistent
from moments.sphere import p_poly
from montecarlo.estimators import Estimate, SamplerConfig, estimate_query_moment
from weingarten.queries import MomentQuery, delta, group_by_first_index

logger = logging.getLogger(__name__)


def theorem3_moment(q: MomentQuery) -> Fraction:
    grouped = group_by_first_index(q)
    value = Fraction(1)
    for sigma in grouped.sigma_blocks:
        if len(sigma) % 2:
            return Fraction(0)
        k = len(sigma) // 2
        # (2k-1)!! cancels against the 1/(2k-1)!! normalisation of the average.
        satisfied = sum(delta(p, sigma) for p in enumerate_pairings(k))
        value *= Fraction(satisfied, p_poly(k)(q.n))
    return value


def exact_moment(q: MomentQuery, column_order: Optional[Sequence[int]] = None) -> Fraction:
    """Weingarten value sum over P, Q of Delta_P(rows) alpha_Q Delta_Q(cols).

    ``alpha`` is any exact solution of G alpha = Delta(rows) at dimension n;
    ``column_order`` changes the pivot order used to find it.
    """
    if q.m % 2:
        return Fraction(0)
    k = q.m // 2
    pairings = enumerate_pairings(k)
    rhs = [delta(p, q.rows) for p in pairings]
    readout = [delta(p, q.cols) for p in pairings]
    if not any(rhs) or not any(readout):
        return Fraction(0)
    gram = gram_matrix(k).evaluate(q.n)
    alpha = solve_consistent(gram, rhs, column_order=column_order)
    value = sum((a for a, c in zip(alpha, readout) if c), Fraction(0))
    logger.debug("Exact moment %s at n=%s: %s", q, q.n, value)
    return value


def corollary4_moment(spec: Sequence[Tuple[int, int, int]], n: int) -> Fraction:
    """E(x_{i1 j1}^{2k_1} ... x_{il jl}^{2k_l}) for pairwise distinct rows i_t.

    Expands the powers into a query and evaluates it with ``theorem3_moment``.
    """
    rows = [i for i, _, _ in spec]
    if len(set(rows)) != len(rows):
        raise ArgumentError(
            "row indices repeat; use theorem3_moment or exact_moment on the full query"
        )
    factors = []
    for i, j, exponent in spec:
        if exponent < 2 or exponent % 2:
            raise ArgumentError(f"exponent of x_{i}{j} must be positive and even, got {exponent}")
        factors.extend([(i, j)] * exponent)
    return theorem3_moment(MomentQuery(tuple(factors), n))


@dataclass(frozen=True)
class MethodComparison:
    query: MomentQuery
    theorem3: Fraction
    exact: Fraction
    mc: Estimate
    accept_sigmas: float
    arbitrate_sigmas: float

    @property
    def theorem3_agrees(self) -> bool:
        return self.mc.agrees(self.theorem3, self.accept_sigmas)

    @property
    def exact_agrees(self) -> bool:
        return self.mc.agrees(self.exact, self.accept_sigmas)

    @property
    def supported(self) -> Tuple[str, ...]:
        """Evaluators whose value the Monte Carlo estimate accepts."""
        return tuple(
            name
            for name, value in (("theorem3", self.theorem3), ("exact", self.exact))
            if self.mc.agrees(value, self.accept_sigmas)
        )

    @property
    def rejected(self) -> Tuple[str, ...]:
        """Evaluators the estimate contradicts beyond the arbitration threshold."""
        return tuple(
            name
            for name, value in (("theorem3", self.theorem3), ("exact", self.exact))
            if self.mc.z_score(value) > self.arbitrate_sigmas
        )

    @property
    def status(self) -> str:
        if self.theorem3 == self.exact:
            return "agree" if self.supported else "mc-disagrees"
        if self.rejected and self.supported:
            return "resolved"
        return "inconclusive"


def compare_methods(q: MomentQuery, mc_config: SamplerConfig) -> MethodComparison:
    comparison = MethodComparison(
        query=q,
        theorem3=theorem3_moment(q),
        exact=exact_moment(q),
        mc=estimate_query_moment(q, mc_config),
        accept_sigmas=settings.ORTHO_ACCEPT_SIGMAS,
        arbitrate_sigmas=settings.ORTHO_ARBITRATE_SIGMAS,
    )
    if comparison.status == "inconclusive":
        logger.warning("Monte Carlo could not arbitrate %s at n=%s", q, q.n)
    else:
        logger.info("Compared methods for %s at n=%s: %s", q, q.n, comparison.status)
    return comparison
