from combinat.partitions import SetPartition
from common.exceptions import ArgumentError
from common.management import JsonCommand
from common.serializers import EstimateSerializer
from invariants.combinations import evaluate_combination_dense
from moments.expectations import generalized_expectation, pair_moment_cor3
from moments.sphere import mu
from montecarlo.estimators import (
    estimate_dot_power,
    estimate_lemma3,
    estimate_pair_moment,
    estimate_tensor_expectation,
)
from verification.options import (
    add_sampler_arguments,
    parse_blocks,
    parse_pairing,
    sampler_from_options,
)

TARGETS = ("dot", "pair", "tensor", "lemma3")


class Command(JsonCommand):
    help = "Run one Monte Carlo estimator and report it next to its exact value."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--what", choices=TARGETS, required=True)
        parser.add_argument("--n", type=int, required=True, help="dimension")
        parser.add_argument("--k", type=int, help="half the power of <x, y> (dot)")
        parser.add_argument("--m", type=int, help="tensor order (tensor, lemma3)")
        parser.add_argument("--blocks", type=str, help='tensor blocks, e.g. "1,2|3,4"')
        parser.add_argument("--p1", type=str, help='first pairing, e.g. "1,2|3,4"')
        parser.add_argument("--p2", type=str, help='second pairing, e.g. "1,3|2,4"')
        add_sampler_arguments(parser)

    def build(self, **options):
        n = options["n"]
        config = sampler_from_options(n, options)
        what = options["what"]
        if what == "dot":
            k = self.require(options, "k")
            exact = mu(k, n)
            estimate = estimate_dot_power(n, k, config)
            return {
                "what": what,
                "n": n,
                "k": k,
                "exact": str(exact),
                **self.summary(estimate, exact),
            }
        if what == "pair":
            p = parse_pairing(self.require(options, "p1"))
            q = parse_pairing(self.require(options, "p2"))
            exact = pair_moment_cor3(p, q, n)
            estimate = estimate_pair_moment(p, q, n, config)
            return {
                "what": what,
                "n": n,
                "p": p.to_json(),
                "q": q.to_json(),
                "exact": str(exact),
                **self.summary(estimate, exact),
            }
        if what == "lemma3":
            m = self.require(options, "m")
            check = estimate_lemma3(n, m, config)
            return {
                "what": what,
                "n": n,
                "m": m,
                "exact": str(check.rhs),
                **self.summary(check.lhs, check.rhs),
            }
        if options.get("blocks"):
            partition = parse_blocks(options["blocks"])
        else:
            partition = SetPartition.single_block(self.require(options, "m"))
        expected = evaluate_combination_dense(
            generalized_expectation(partition, n).as_combination(), n
        ).entries
        estimate = estimate_tensor_expectation(partition, n, config)
        return {
            "what": what,
            "n": n,
            "blocks": partition.to_json(),
            "mean": estimate.mean.ravel().tolist(),
            "stderr": estimate.stderr.ravel().tolist(),
            "max_z": estimate.max_z(expected),
            "agrees": estimate.within(expected),
            "samples": estimate.samples,
            "seed": estimate.seed,
            "workers": estimate.workers,
        }

    def require(self, options, name):
        value = options.get(name)
        if value is None:
            raise ArgumentError(f"--what {options['what']} needs --{name}")
        return value

    def summary(self, estimate, exact):
        return {
            "mc": EstimateSerializer(estimate).data,
            "z": estimate.z_score(exact),
            "agrees": estimate.agrees(exact),
        }
