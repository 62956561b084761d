import json
import logging

from django.core.management import BaseCommand, CommandError

from subshift.config import ConfigError, RunConfig
from subshift.ktheory import KTheoryError
from subshift.labeled_space import CertificateFailure, LabeledSpaceError
from subshift.language import LanguageError
from subshift.matrices import MatrixError
from subshift.measures import MeasureError
from subshift.reports import SubshiftJSONEncoder
from subshift.seqgen import SequenceError
from subshift.verification import RunContext

logger = logging.getLogger(__name__)

USAGE = 2
FAILURE = 1

PRECONDITION_ERRORS = (
    ConfigError,
    SequenceError,
    LanguageError,
    LabeledSpaceError,
    MeasureError,
    KTheoryError,
    MatrixError,
)


class SubshiftCommand(BaseCommand):
    """
    Shared surface of the analysis commands: an optional run file plus
    flags that override it. Exit status 1 means a verification failed,
    exit status 2 means the run could not be set up.
    """

    analysis = None

    def add_arguments(self, parser):
        parser.add_argument("config", nargs="?", help="INI run file with [source] and [run].")
        parser.add_argument("--window", type=int, help="Window size per side.")
        parser.add_argument("--depth", type=int, help="Language depth L.")
        parser.add_argument("--output-dir", dest="output_dir", help="Artifact directory.")
        parser.add_argument(
            "--format",
            dest="formats",
            action="append",
            choices=("json", "csv", "dot"),
            help="Artifact format; repeat for several. Defaults to all.",
        )

    def load_config(self, options):
        return RunConfig.load(
            options.get("config"),
            window=options.get("window"),
            depth=options.get("depth"),
            output_dir=options.get("output_dir"),
            formats=options.get("formats"),
        )

    def run(self, context):
        return self.analysis(context)

    def handle(self, *args, **options):
        try:
            context = RunContext(self.load_config(options))
            outcome = self.run(context)
        except CertificateFailure as exc:
            detail = {"command": self.command_name, "witness": exc.witness, "error": str(exc)}
            raise CommandError(self._dumps(detail), returncode=FAILURE) from exc
        except PRECONDITION_ERRORS as exc:
            raise CommandError(str(exc), returncode=USAGE) from exc

        for path in outcome.artifacts:
            self.stdout.write(path)
        if not outcome.passed:
            raise CommandError(self._dumps(outcome.failure()), returncode=FAILURE)
        self.stdout.write(self.style.SUCCESS(f"{outcome.name}: pass"))

    @property
    def command_name(self):
        return self.__module__.rpartition(".")[2]

    @staticmethod
    def _dumps(detail):
        return json.dumps(detail, cls=SubshiftJSONEncoder, sort_keys=True)
