from common.management import JsonCommand
from invariants.structure import corollary1_identity
from verification.serializers import BasisSerializer


class Command(JsonCommand):
    help = (
        "Extract a basis of the invariants of order 2k in R^n and check that the "
        "inverse basis Gram row sums reproduce mu times the average invariant."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--n", type=int, required=True)

    def build(self, **options):
        return BasisSerializer(corollary1_identity(options["k"], options["n"])).data
