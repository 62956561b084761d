from subshift.verification import run_axioms

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Verify the representation axioms as word identities."
    analysis = staticmethod(run_axioms)
