from subshift.verification import run_freq

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Compute cylinder frequencies and check their invariance."
    analysis = staticmethod(run_freq)
