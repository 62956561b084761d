from subshift.verification import run_verify_all

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Run every analysis; exit nonzero if any check fails."
    analysis = staticmethod(run_verify_all)
