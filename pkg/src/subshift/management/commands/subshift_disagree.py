from subshift.verification import run_disagree

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Certify that no word repeats up to the power ceiling."
    analysis = staticmethod(run_disagree)
