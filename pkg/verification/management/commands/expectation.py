from combinat.partitions import SetPartition
from common.exceptions import ArgumentError
from common.limits import check_dense_entries
from common.management import JsonCommand
from moments.expectations import generalized_expectation
from verification.options import parse_blocks
from verification.serializers import ExpectationSerializer


class Command(JsonCommand):
    help = (
        "Print the exact expectation of a (generalized) Veronese tensor as a "
        "combination of standard invariants."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--m", type=int, help="tensor order, one block")
        parser.add_argument("--n", type=int, required=True, help="dimension")
        parser.add_argument(
            "--blocks",
            type=str,
            help='independent vectors per block, for example "1,2|3,4"',
        )
        parser.add_argument(
            "--dense", action="store_true", help="include the flattened dense tensor"
        )

    def build(self, **options):
        m, n, blocks = options.get("m"), options["n"], options.get("blocks")
        if blocks:
            partition = parse_blocks(blocks)
            if m is not None and m != partition.m:
                raise ArgumentError(f"--m {m} does not match blocks over {partition.m} positions")
        elif m is not None:
            if m < 1:
                raise ArgumentError(f"tensor order must be positive, got m={m}")
            partition = SetPartition.single_block(m)
        else:
            raise ArgumentError("give --m or --blocks")
        if options.get("dense"):
            check_dense_entries(n, partition.m)
        expectation = generalized_expectation(partition, n)
        report = {
            "m": partition.m,
            "n": n,
            "blocks": partition.to_json(),
            "zero": expectation.is_zero(),
            "scalar": expectation.scalar,
            "combination": expectation.as_combination(),
        }
        if options.get("dense"):
            report["dense"] = expectation.to_dense().flat.tolist()
        return ExpectationSerializer(report).data
