from subshift.verification import run_phi

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Compute the (1 - Phi) level maps, their Smith forms and the K1 witness."
    analysis = staticmethod(run_phi)
