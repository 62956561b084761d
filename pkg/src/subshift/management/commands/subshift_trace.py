from subshift.verification import run_trace

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Evaluate the trace and check the tracial property."
    analysis = staticmethod(run_trace)
