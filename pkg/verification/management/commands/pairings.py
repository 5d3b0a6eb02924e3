from combinat.pairings import enumerate_pairings
from common.management import JsonCommand
from verification.serializers import PairingListSerializer


class Command(JsonCommand):
    help = "List every pairing of {1, ..., 2k} in canonical order."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--k", type=int, required=True, help="number of pairs")

    def build(self, **options):
        k = options["k"]
        return PairingListSerializer({"k": k, "pairings": enumerate_pairings(k)}).data
