from common.management import JsonCommand
from invariants.combinations import evaluate_combination_dense
from invariants.structure import sft_relation
from verification.serializers import SftSerializer


class Command(JsonCommand):
    help = (
        "Print the alternating sum over the even positions of the standard "
        "pairing; with --n, report whether it vanishes in that dimension."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--n", type=int)

    def build(self, **options):
        k, n = options["k"], options.get("n")
        relation = sft_relation(k)
        report = {"k": k, "combination": relation}
        if n is not None:
            report.update(n=n, vanishes=evaluate_combination_dense(relation, n).is_zero())
        return SftSerializer(report).data
