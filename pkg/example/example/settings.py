import os

DEBUG = True

PROJECT_ROOT = os.path.dirname(os.path.dirname(__file__))

# Make this unique, and don't share it with anybody.
SECRET_KEY = "example-only-7o$kri-duw99@hq_)va^_kaw9*l)!7"

USE_TZ = True

INSTALLED_APPS = ("subshift",)

# Analysis defaults; run files and command-line flags override these.
SUBSHIFT = {
    "WINDOW": 2**16,
    "DEPTH": 32,
    "OUTPUT_DIR": os.path.join(PROJECT_ROOT, "out"),
    "NUMERIC_PRECISION": 50,
}

# Logging configuration
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "run": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "run",
        }
    },
    "loggers": {
        "subshift": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": True,
        },
        "py.warnings": {
            "handlers": ["console"],
            "level": "WARNING",
        },
    },
}
LOGGING_CONFIG = "logging.config.dictConfig"
