r"""
Django Subshift
===============

Finite, exact models of the labeled space attached to a two-sided minimal
subshift: languages, generalized vertices, cylinder calculus, the AF core's
Bratteli diagram, K-theory truncations and invariant-measure traces.
"""

VERSION = "0.3.0"

__title__ = "Django Subshift"
__version__ = VERSION  # version synonym
__author__ = "Django Subshift contributors"
__license__ = "BSD-3-Clause"
__copyright__ = "Copyright 2025-2026, Django Subshift contributors"
