"""
Verdict objects shared by the verifiers.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one exhaustive identity check. ``witness`` reproduces the
    first failure; ``detail`` carries check-specific data for the reports.
    """

    name: str
    passed: bool
    checked: int = 0
    witness: tuple | None = None
    detail: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.passed


def combine(name, results, **detail):
    """Conjunction of several results; the first failure supplies the witness."""
    results = list(results)
    failed = next((result for result in results if not result.passed), None)
    return CheckResult(
        name,
        failed is None,
        sum(result.checked for result in results),
        None if failed is None else (failed.name, *(failed.witness or ())),
        {"parts": [result.name for result in results], **detail},
    )
