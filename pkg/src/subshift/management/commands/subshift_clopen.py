from subshift.verification import run_clopen

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Verify the crossed-product shift identities on cylinders."
    analysis = staticmethod(run_clopen)
