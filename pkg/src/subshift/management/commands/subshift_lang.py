from subshift.verification import run_lang

from ._base import SubshiftCommand


class Command(SubshiftCommand):
    help = "Enumerate the factor language and write its occurrence table."
    analysis = staticmethod(run_lang)
