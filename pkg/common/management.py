import logging
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from common.exceptions import ArgumentError, OrthoMomentsError, SizeLimitError
from common.serializers import render_json

logger = logging.getLogger(__name__)

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE_LIMIT = 3


class JsonCommand(BaseCommand):
    """A management command whose only stdout output is one JSON document.

    Subclasses implement ``build(**options)`` and return JSON-ready data.
    Validation problems exit with 2 and exceeded caps with 3.
    """

    def add_arguments(self, parser):
        parser.add_argument(
            "--out",
            type=str,
            help="write the JSON report to this path instead of stdout",
        )

    def build(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            payload = self.build(**options)
        except ValidationError as e:
            raise CommandError("; ".join(e.messages), returncode=EXIT_USAGE)
        except SizeLimitError as e:
            raise CommandError(str(e), returncode=EXIT_RESOURCE_LIMIT)
        except ArgumentError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)
        except OrthoMomentsError as e:
            logger.exception("Command failed", exc_info=e)
            raise CommandError(str(e), returncode=EXIT_CHECK_FAILED)
        self.emit(payload, options.get("out"))
        return None

    def emit(self, payload, out=None):
        document = render_json(payload)
        if out:
            Path(out).write_text(document + "\n", encoding="utf-8")
            logger.info("Wrote report to %s", out)
        else:
            self.stdout.write(document)
