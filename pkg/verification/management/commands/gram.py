from common.exceptions import ArgumentError
from common.management import JsonCommand
from invariants.gram import gram_matrix, gram_row_sum
from verification.serializers import GramSerializer


class Command(JsonCommand):
    help = (
        "Print the Gram matrix of the standard invariants of order 2k, "
        "symbolically in n or evaluated at --n."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--k", type=int, required=True, help="number of pairs")
        parser.add_argument("--n", type=int, help="evaluate at this dimension")
        parser.add_argument(
            "--row-sum",
            action="store_true",
            help="also report the common row sum as a polynomial in n",
        )

    def build(self, **options):
        k, n = options["k"], options.get("n")
        if n is not None and n < 1:
            raise ArgumentError(f"dimension must be positive, got n={n}")
        gram = gram_matrix(k)
        report = {"k": k, "ordering": list(gram.ordering), "entries": gram.entry_strings(n)}
        if n is not None:
            report["n"] = n
        if options.get("row_sum"):
            report["row_sum"] = gram_row_sum(k)
        return GramSerializer(report).data
