"""Acceptance suites run by the ``verify`` command.

Every suite is a function of a ``VerificationContext`` that returns a list
of ``CheckResult``. Exact checks pass or fail; checks that compare two
exact evaluators through Monte Carlo may also come back inconclusive,
which is reported but does not fail the run.
"""
import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from combinat.pairings import Pairing, double_factorial, enumerate_pairings
from combinat.partitions import (
    SetPartition,
    join,
    join_size,
    restricted_growth_strings,
)
from combinat.permutations import (
    IndexPermutation,
    apply_permutation,
    permutations_of,
)
from common.exceptions import ArgumentError
from invariants.combinations import combination_inner, evaluate_combination_dense
from invariants.gram import gram_average, gram_matrix, gram_rank, gram_row_sum
from invariants.structure import (
    corollary1_identity,
    corollary2_check,
    extract_basis,
    project_onto_invariants,
    sft_relation,
)
from moments.expectations import (
    generalized_expectation,
    pair_moment_cor3,
    veronese_expectation,
)
from moments.sphere import mu, p_poly
from montecarlo.estimators import (
    SamplerConfig,
    estimate_dot_power,
    estimate_lemma3,
    estimate_pair_moment,
    estimate_query_moment,
    estimate_tensor_expectation,
)
from montecarlo.samplers import make_generator, sample_haar_batch
from tensors.dense import inner, standard_invariant_dense, veronese
from weingarten.evaluators import (
    compare_methods,
    corollary4_moment,
    exact_moment,
    theorem3_moment,
)
from weingarten.queries import MomentQuery

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

# Rational unit vectors, so the float Veronese tensors are as exact as possible.
UNIT_VECTORS = ((0.6, 0.8), (2 / 3, 1 / 3, 2 / 3))

SFT_CASES = (
    (2, 1, True),
    (3, 1, True),
    (3, 2, True),
    (4, 3, True),
    (2, 2, False),
    (3, 3, False),
)

MC_QUERIES = (
    (2, ((1, 1), (1, 1))),
    (2, ((1, 1),) * 4),
    (2, ((1, 1), (1, 1), (2, 2), (2, 2))),
    (2, ((1, 1), (1, 2), (2, 1), (2, 2))),
    (2, ((1, 1), (1, 1), (1, 2), (1, 2))),
    (2, ((1, 2), (1, 2), (2, 1), (2, 1))),
    (3, ((1, 1),) * 4),
    (3, ((1, 1), (1, 1), (2, 2), (2, 2))),
    (3, ((1, 1), (2, 2), (3, 3), (1, 1), (2, 2), (3, 3))),
    (3, ((1, 1), (1, 2), (2, 1), (2, 2))),
    (3, ((1, 1),) * 6),
    (3, ((1, 2), (1, 2), (2, 3), (2, 3))),
)


@dataclass(frozen=True)
class VerificationContext:
    seed: int
    samples: int
    workers: int = 1

    @classmethod
    def from_settings(
        cls, seed=None, samples=None, workers=None
    ) -> "VerificationContext":
        """Fill unset values from the ORTHO_MC_* settings and validate them."""
        config = SamplerConfig.from_settings(
            1, seed=seed, samples=samples, workers=workers
        )
        return cls(seed=config.seed, samples=config.samples, workers=config.workers)

    def sampler(self, n: int) -> SamplerConfig:
        return SamplerConfig(
            seed=self.seed, samples=self.samples, n=n, workers=self.workers
        )


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    status: str
    details: Dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    suite: str
    seed: int
    samples: int
    workers: int
    checks: List[CheckResult]

    @property
    def counts(self) -> Dict[str, int]:
        tally = Counter(check.status for check in self.checks)
        return {status: tally.get(status, 0) for status in (PASS, FAIL, INCONCLUSIVE)}

    @property
    def passed(self) -> bool:
        return self.counts[FAIL] == 0


def _check(suite: str, name: str, passed: bool, **details) -> CheckResult:
    return CheckResult(
        suite=suite, name=name, status=PASS if passed else FAIL, details=details
    )


def combinat_suite(context: VerificationContext) -> List[CheckResult]:
    results = []
    for k in range(1, 6):
        pairings = enumerate_pairings(k)
        expected = double_factorial(k)
        results.append(
            _check(
                "combinat",
                f"pairing count k={k}",
                len(pairings) == expected and len(set(pairings)) == expected,
                count=len(pairings),
                expected=expected,
            )
        )
        results.append(
            _check(
                "combinat", f"canonical order k={k}", pairings == sorted(pairings), k=k
            )
        )

    rng = random.Random(context.seed)
    violations = 0
    for _ in range(200):
        m = rng.randrange(1, 9)
        p, q, r = (
            SetPartition.from_labels([rng.randrange(1, m + 1) for _ in range(m)])
            for _ in range(3)
        )
        if join(p, q) != join(q, p) or join(join(p, q), r) != join(p, join(q, r)):
            violations += 1
        if join(p, p) != p:
            violations += 1
    results.append(
        _check(
            "combinat",
            "join lattice laws",
            violations == 0,
            trials=200,
            violations=violations,
        )
    )

    for k in (2, 3):
        m = 2 * k
        orbit = {
            apply_permutation(sigma, Pairing.standard(k))
            for sigma in permutations_of(range(1, m + 1), m)
        }
        results.append(
            _check(
                "combinat",
                f"orbit of the standard pairing k={k}",
                orbit == set(enumerate_pairings(k)),
                orbit_size=len(orbit),
            )
        )

    mismatches = 0
    for _ in range(100):
        images = list(range(1, 7))
        rng.shuffle(images)
        sigma = IndexPermutation(tuple(images))
        rng.shuffle(images)
        tau = IndexPermutation(tuple(images))
        p = rng.choice(enumerate_pairings(3))
        composed = apply_permutation(sigma.compose(tau), p)
        if composed != apply_permutation(sigma, apply_permutation(tau, p)):
            mismatches += 1
    results.append(
        _check(
            "combinat", "action respects composition", mismatches == 0, trials=100
        )
    )
    return results


def gram_suite(context: VerificationContext) -> List[CheckResult]:
    results = []
    for k, n in itertools.product(range(1, 4), (1, 2, 3)):
        pairings = enumerate_pairings(k)
        dense = {p: standard_invariant_dense(p, n) for p in pairings}
        wrong = sum(
            inner(dense[p], dense[q]) != n ** join_size(p, q)
            for p, q in itertools.product(pairings, repeat=2)
        )
        results.append(
            _check(
                "gram",
                f"dense inner products k={k} n={n}",
                wrong == 0,
                pairs=len(pairings) ** 2,
                wrong=wrong,
            )
        )

    for k in range(1, 6):
        try:
            row_sum = gram_row_sum(k)
        except AssertionError as e:
            results.append(_check("gram", f"row sum k={k}", False, error=str(e)))
            continue
        results.append(
            _check(
                "gram",
                f"row sum k={k}",
                row_sum == p_poly(k),
                row_sum=str(row_sum),
                expected=str(p_poly(k)),
            )
        )

    for k, n in itertools.product(range(1, 5), (2, 3, 5)):
        average = gram_average(k, n)
        results.append(
            _check(
                "gram",
                f"entry average k={k} n={n}",
                average == 1 / mu(k, n),
                average=str(average),
            )
        )

    for k, n in itertools.product(range(1, 5), (1, 2, 3, 5)):
        alpha = Fraction(1, p_poly(k)(n))
        holds = all(
            sum(alpha * entry for entry in row) == 1
            for row in gram_matrix(k).evaluate(n)
        )
        results.append(
            _check("gram", f"normal equations k={k} n={n}", holds, alpha=str(alpha))
        )

    for k, n in ((2, 1), (2, 2), (3, 2), (3, 3)):
        rank, basis = gram_rank(k, n), len(extract_basis(k, n))
        results.append(
            _check("gram", f"rank k={k} n={n}", rank == basis, rank=rank, basis=basis)
        )
    return results


def moments_suite(context: VerificationContext) -> List[CheckResult]:
    results = []
    for k, n in itertools.product(range(1, 5), (2, 3, 5)):
        expectation = veronese_expectation(2 * k, n)
        norm = combination_inner(expectation, expectation, n)
        results.append(
            _check(
                "moments",
                f"squared norm k={k} n={n}",
                norm == mu(k, n),
                norm=str(norm),
                mu=str(mu(k, n)),
            )
        )

    for x, k in itertools.product(UNIT_VECTORS, (1, 2, 3)):
        n = len(x)
        dense = evaluate_combination_dense(veronese_expectation(2 * k, n), n)
        value = inner(dense, veronese(x, 2 * k))
        results.append(
            _check(
                "moments",
                f"pairing with a Veronese tensor k={k} n={n}",
                abs(value - float(mu(k, n))) < 1e-12,
                value=value,
                mu=str(mu(k, n)),
            )
        )

    for x in UNIT_VECTORS:
        n = len(x)
        projection = project_onto_invariants(veronese(x, 4))
        expected = evaluate_combination_dense(veronese_expectation(4, n), n)
        gap = projection.tensor.max_abs_difference(expected)
        results.append(
            _check(
                "moments",
                f"projection of a Veronese tensor n={n}",
                gap < 1e-10,
                max_abs_difference=gap,
            )
        )

    for m, n in ((2, 3), (4, 2), (6, 3)):
        partition = SetPartition.single_block(m)
        single = generalized_expectation(partition, n).as_combination()
        results.append(
            _check(
                "moments",
                f"single block m={m} n={n}",
                single == veronese_expectation(m, n),
                m=m,
                n=n,
            )
        )

    for k, n in itertools.product(range(1, 4), (2, 3)):
        pairings = enumerate_pairings(k)
        wrong = sum(
            pair_moment_cor3(p, q, n) * n ** (2 * k) != n ** join_size(p, q)
            for p, q in itertools.product(pairings, repeat=2)
        )
        results.append(
            _check("moments", f"pair moments k={k} n={n}", wrong == 0, wrong=wrong)
        )
    return results


def sft_suite(context: VerificationContext) -> List[CheckResult]:
    results = []
    for k, n, vanishes in SFT_CASES:
        zero = evaluate_combination_dense(sft_relation(k), n).is_zero()
        results.append(
            _check(
                "sft",
                f"relation k={k} n={n}",
                zero == vanishes,
                vanishes=zero,
                expected=vanishes,
            )
        )
    return results


def corollary1_suite(context: VerificationContext) -> List[CheckResult]:
    results = []
    for k, n in ((1, 2), (2, 1), (2, 3), (3, 2)):
        identity = corollary1_identity(k, n)
        results.append(
            _check(
                "corollary1",
                f"basis row sums k={k} n={n}",
                identity.holds,
                basis=[p.to_json() for p in identity.basis],
                row_sums=[str(s) for s in identity.row_sums],
                residual=str(identity.residual),
            )
        )
    return results


def corollary2_suite(context: VerificationContext) -> List[CheckResult]:
    results = []
    for k in range(1, 5):
        check = corollary2_check(k)
        results.append(
            _check(
                "corollary2",
                f"Kronecker row profile k={k}",
                check.passed,
                row_profile={f"n^{e}": count for e, count in check.row_profile},
                rows=len(check.rows),
            )
        )
    return results


def _single_row_checks() -> List[CheckResult]:
    # Column relabelling leaves the moment unchanged, so one query per set
    # partition of the positions covers every single-row query.
    results = []
    for n in (2, 3, 5):
        mismatches = []
        count = 0
        for m in range(1, 7):
            for labels in restricted_growth_strings(m, max_blocks=n):
                q = MomentQuery(tuple((1, j) for j in labels), n)
                count += 1
                if theorem3_moment(q) != exact_moment(q):
                    mismatches.append(str(q))
        results.append(
            _check(
                "weingarten",
                f"single row index n={n}",
                not mismatches,
                queries=count,
                mismatches=mismatches,
            )
        )
    return results


def _arbitration_checks(context: VerificationContext) -> List[CheckResult]:
    results = []
    for n, factors in MC_QUERIES:
        q = MomentQuery(factors, n)
        comparison = compare_methods(q, context.sampler(n))
        details = {
            "query": q.to_json(),
            "n": n,
            "theorem3": str(comparison.theorem3),
            "exact": str(comparison.exact),
            "mc": comparison.mc.to_json(),
        }
        results.append(
            _check(
                "weingarten",
                f"exact vs Monte Carlo {q} n={n}",
                comparison.exact_agrees,
                **details,
            )
        )
        if comparison.theorem3 == comparison.exact:
            continue
        results.append(
            CheckResult(
                suite="weingarten",
                name=f"arbitration {q} n={n}",
                status=PASS if comparison.status == "resolved" else INCONCLUSIVE,
                details={
                    **details,
                    "supported": list(comparison.supported),
                    "rejected": list(comparison.rejected),
                },
            )
        )
    return results


def weingarten_suite(context: VerificationContext) -> List[CheckResult]:
    results = _single_row_checks()

    for n in (2, 3, 5):
        value = corollary4_moment([(1, 1, 4)], n)
        results.append(
            _check(
                "weingarten",
                f"fourth power of an entry n={n}",
                value == Fraction(3, n * (n + 2)),
                value=str(value),
            )
        )

    rng = random.Random(context.seed)
    reversed_pivots = range(14, -1, -1)
    for _ in range(10):
        factors = [(rng.randint(1, 2), rng.randint(1, 2)) for _ in range(6)]
        q = MomentQuery(tuple(factors), 2)
        first = exact_moment(q)
        second = exact_moment(q, column_order=reversed_pivots)
        results.append(
            _check(
                "weingarten",
                f"pivot order {q}",
                first == second,
                first=str(first),
                second=str(second),
            )
        )

    results.extend(_arbitration_checks(context))
    return results


def montecarlo_suite(context: VerificationContext) -> List[CheckResult]:
    results = []
    matrices = sample_haar_batch(5, 100, make_generator(context.seed))
    products = np.einsum("bji,bjk->bik", matrices, matrices)
    error = float(np.abs(products - np.eye(5)).max())
    results.append(
        _check(
            "montecarlo",
            "Haar samples are orthogonal",
            error < 1e-10,
            max_error=error,
        )
    )

    for k, n in itertools.product((1, 2, 3), (2, 3, 5)):
        estimate = estimate_dot_power(n, k, context.sampler(n))
        results.append(
            _check(
                "montecarlo",
                f"dot product moment k={k} n={n}",
                estimate.agrees(mu(k, n)),
                mu=str(mu(k, n)),
                estimate=estimate.to_json(),
                z=estimate.z_score(mu(k, n)),
            )
        )

    tensor_cases = [(SetPartition.single_block(4), 2), (SetPartition.single_block(4), 3)]
    tensor_cases.append((SetPartition(((1, 3), (2, 4))), 2))
    for partition, n in tensor_cases:
        estimate = estimate_tensor_expectation(partition, n, context.sampler(n))
        expected = generalized_expectation(partition, n).to_dense().entries
        results.append(
            _check(
                "montecarlo",
                f"placed tensor {partition} n={n}",
                estimate.within(expected),
                max_z=estimate.max_z(expected),
            )
        )

    p1 = Pairing.standard(1)
    p0, crossed, nested = enumerate_pairings(2)
    pairs = [
        (p1, p1),
        (p0, p0),
        (p0, crossed),
        (p0, nested),
        (crossed, crossed),
        (crossed, nested),
    ]
    for (p, q), n in itertools.product(pairs, (2, 3)):
        expected = pair_moment_cor3(p, q, n)
        estimate = estimate_pair_moment(p, q, n, context.sampler(n))
        results.append(
            _check(
                "montecarlo",
                f"pair moment {p} {q} n={n}",
                estimate.agrees(expected),
                expected=str(expected),
                estimate=estimate.to_json(),
            )
        )

    for n, m in ((3, 4), (2, 2), (3, 3)):
        check = estimate_lemma3(n, m, context.sampler(n))
        results.append(
            _check(
                "montecarlo",
                f"dot moment vs squared norm n={n} m={m}",
                check.agrees,
                rhs=str(check.rhs),
                estimate=check.lhs.to_json(),
            )
        )

    dot = estimate_dot_power(1, 2, context.sampler(1))
    entry = estimate_query_moment(MomentQuery(((1, 1),) * 4, 1), context.sampler(1))
    results.append(
        _check(
            "montecarlo",
            "dimension one is exact",
            (dot.mean, dot.stderr, entry.mean, entry.stderr) == (1.0, 0.0, 1.0, 0.0),
            dot=dot.to_json(),
            entry=entry.to_json(),
        )
    )
    return results


SUITES: Dict[str, Callable[[VerificationContext], List[CheckResult]]] = {
    "combinat": combinat_suite,
    "gram": gram_suite,
    "moments": moments_suite,
    "sft": sft_suite,
    "corollary1": corollary1_suite,
    "corollary2": corollary2_suite,
    "weingarten": weingarten_suite,
    "montecarlo": montecarlo_suite,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, context: VerificationContext) -> VerificationReport:
    if name not in SUITE_NAMES:
        raise ArgumentError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        )
    selected = list(SUITES) if name == "all" else [name]
    checks = []
    for suite in selected:
        logger.info("Running suite %s", suite)
        checks.extend(SUITES[suite](context))
    report = VerificationReport(
        suite=name,
        seed=context.seed,
        samples=context.samples,
        workers=context.workers,
        checks=checks,
    )
    for check in checks:
        if check.status == FAIL:
            logger.error("Check failed: %s / %s", check.suite, check.name)
        elif check.status == INCONCLUSIVE:
            logger.warning("Check inconclusive: %s / %s", check.suite, check.name)
    logger.info("Suite %s finished: %s", name, report.counts)
    return report
