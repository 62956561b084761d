from subshift.verification import run_bratteli

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Build the Bratteli diagram of the AF core and its dimension data."
    analysis = staticmethod(run_bratteli)
