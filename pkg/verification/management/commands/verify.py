from django.core.management.base import CommandError

from common.management import EXIT_CHECK_FAILED, JsonCommand
from verification.options import add_sampler_arguments
from verification.serializers import VerificationReportSerializer
from verification.suites import SUITE_NAMES, VerificationContext, run_suite


class Command(JsonCommand):
    help = (
        "Run acceptance suites and print a pass/fail report. Exits with 1 when "
        "any check fails; inconclusive Monte Carlo arbitration does not fail."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--suite", choices=SUITE_NAMES, default="all")
        add_sampler_arguments(parser)

    def build(self, **options):
        context = VerificationContext.from_settings(
            seed=options.get("seed"),
            samples=options.get("samples"),
            workers=options.get("workers"),
        )
        self.report = run_suite(options["suite"], context)
        return VerificationReportSerializer(self.report).data

    def handle(self, *args, **options):
        super().handle(*args, **options)
        if not self.report.passed:
            raise CommandError(
                f"{self.report.counts['fail']} verification checks failed",
                returncode=EXIT_CHECK_FAILED,
            )
