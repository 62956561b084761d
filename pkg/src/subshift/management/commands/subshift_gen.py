from subshift.verification import run_gen

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Generate the two-sided window of the configured source."
    analysis = staticmethod(run_gen)
