from django.apps import AppConfig
from django.conf import settings
from django.core.checks import Error, Tags, Warning, register


@register(Tags.compatibility)
def check_subshift_settings(app_configs, **kwargs):
    """
    System check that validates the ``SUBSHIFT`` setting.
    """
    from .conf import DEFAULTS

    overrides = getattr(settings, "SUBSHIFT", None) or {}
    findings = []

    for key in sorted(set(overrides) - set(DEFAULTS)):
        findings.append(
            Warning(
                f"SUBSHIFT['{key}'] is not a known setting and is ignored.",
                hint=f"Known settings: {', '.join(sorted(DEFAULTS))}.",
                id="subshift.W001",
            )
        )

    findings.extend(_check_positive(overrides))
    findings.extend(_check_level_ranges(overrides))
    return findings


def _check_positive(overrides):
    errors = []
    for key in (
        "WINDOW",
        "DEPTH",
        "MIN_EMPIRICAL_WINDOW",
        "NUMERIC_PRECISION",
        "CERTIFICATE_WINDOW",
        "CERTIFICATE_LENGTH",
    ):
        value = overrides.get(key)
        if value is not None and (not isinstance(value, int) or value < 1):
            errors.append(
                Error(
                    f"SUBSHIFT['{key}'] must be a positive integer, got {value!r}.",
                    id="subshift.E001",
                )
            )
    return errors


def _check_level_ranges(overrides):
    errors = []
    for key in ("PHI_LEVELS", "K0_LEVELS"):
        value = overrides.get(key)
        if value is None:
            continue
        try:
            first, last = value
            valid = 1 <= int(first) <= int(last)
        except (TypeError, ValueError):
            valid = False
        if not valid:
            errors.append(
                Error(
                    f"SUBSHIFT['{key}'] must be a (first, last) pair with 1 <= first <= last.",
                    id="subshift.E002",
                )
            )
    return errors


class SubshiftConfig(AppConfig):
    name = "subshift"
    verbose_name = "Django Subshift"
