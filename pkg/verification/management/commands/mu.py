from common.management import JsonCommand
from moments.sphere import mu, p_poly
from verification.serializers import MuSerializer


class Command(JsonCommand):
    help = "Print P(n, k) and, with --n, the moment E(<x, y>^2k) on the sphere."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--n", type=int)

    def build(self, **options):
        k, n = options["k"], options.get("n")
        report = {"k": k, "p_poly": p_poly(k)}
        if n is not None:
            report.update(n=n, mu=mu(k, n))
        return MuSerializer(report).data
