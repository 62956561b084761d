DEBUG = False

SECRET_KEY = "supersecret"

INSTALLED_APPS = [
    "subshift",
]

USE_TZ = False

SUBSHIFT = {
    "WINDOW": 2**16,
    "DEPTH": 32,
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
        },
    },
    "loggers": {
        "subshift": {
            "handlers": ["console"],
            "level": "WARNING",
        },
    },
}
