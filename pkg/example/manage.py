#!/usr/bin/env python
import logging
import os
import sys

if __name__ == "__main__":
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "example.settings")

    # Import subshift from the source tree.
    SRC_ROOT = os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))), "src")
    sys.path.insert(0, SRC_ROOT)

    # FrequencyPrecisionWarning reaches the console through py.warnings.
    logging.captureWarnings(True)

    from django.core.management import execute_from_command_line

    execute_from_command_line(sys.argv)
