import logging

from common.management import JsonCommand
from montecarlo.estimators import estimate_query_moment
from verification.options import add_sampler_arguments, sampler_from_options
from verification.serializers import MomentReportSerializer
from weingarten.evaluators import compare_methods, exact_moment, theorem3_moment
from weingarten.queries import parse_query

logger = logging.getLogger(__name__)

METHODS = ("theorem3", "exact", "mc", "all")


class Command(JsonCommand):
    help = (
        'Evaluate E(x_{i1 j1} ... x_{im jm}) for a Haar-random orthogonal matrix. '
        'Queries are written "i,j;i,j;...", 1-based.'
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--q", type=str, required=True, help='query, e.g. "1,1;2,2"')
        parser.add_argument("--n", type=int, required=True, help="matrix dimension")
        parser.add_argument("--method", choices=METHODS, default="all")
        add_sampler_arguments(parser)

    def build(self, **options):
        query = parse_query(options["q"], options["n"])
        method = options["method"]
        report = {"query": query}
        if method == "all":
            comparison = compare_methods(query, sampler_from_options(query.n, options))
            report.update(
                theorem3=comparison.theorem3,
                exact=comparison.exact,
                mc=comparison.mc,
                supported=list(comparison.supported),
                status=comparison.status,
            )
        elif method == "theorem3":
            report["theorem3"] = theorem3_moment(query)
        elif method == "exact":
            report["exact"] = exact_moment(query)
        else:
            report["mc"] = estimate_query_moment(query, sampler_from_options(query.n, options))
        logger.info("Evaluated %s at n=%s with method %s", query, query.n, method)
        return MomentReportSerializer(report).data
