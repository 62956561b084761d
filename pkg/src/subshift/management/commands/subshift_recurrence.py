from subshift.verification import run_recurrence

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Report recurrence gaps of the short factors."
    analysis = staticmethod(run_recurrence)
