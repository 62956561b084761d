from subshift.verification import run_cofinal

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Build strong cofinality certificates for the configured words."
    analysis = staticmethod(run_cofinal)
