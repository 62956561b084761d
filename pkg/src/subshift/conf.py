"""
Project defaults, overridable through the ``SUBSHIFT`` Django setting.
"""

from django.conf import settings

DEFAULTS = {
    "WINDOW": 2**16,
    "DEPTH": 32,
    "OUTPUT_DIR": "subshift-out",
    "FORMATS": ("json", "csv", "dot"),
    "MIN_EMPIRICAL_WINDOW": 2**16,
    "POWER_CEILING": 4,
    "DISAGREE_LENGTH": 8,
    "AXIOM_LEVEL": 5,
    "TPRIME_LENGTH": 5,
    "BRATTELI_LEVELS": 4,
    "PHI_LEVELS": (1, 10),
    "K0_LEVELS": (4, 10),
    "TRACE_LENGTH": 3,
    "SHIFT_LENGTH": 6,
    "FREQUENCY_DEPTH": 6,
    "NUMERIC_PRECISION": 50,
    "CERTIFICATE_WINDOW": 2**12,
    "CERTIFICATE_LENGTH": 8,
}

OUTPUT_DIR_ENVIRON = "SUBSHIFT_OUTPUT_DIR"


def get_setting(name):
    """
    Return ``settings.SUBSHIFT[name]``, falling back to :data:`DEFAULTS`.
    """
    overrides = getattr(settings, "SUBSHIFT", None) or {}
    return overrides.get(name, DEFAULTS[name])
