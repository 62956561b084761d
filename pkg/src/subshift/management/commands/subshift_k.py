from subshift.verification import run_k

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Compute the K0 truncation data across the configured levels."
    analysis = staticmethod(run_k)
