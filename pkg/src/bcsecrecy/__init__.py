"""Secrecy toolkit for two-receiver broadcast channels with an eavesdropper.

Subpackages:

- :mod:`bcsecrecy.ldbc` -- truncation-channel model and bit-level codes
- :mod:`bcsecrecy.leakage` -- exact enumeration oracle (errors + leakage)
- :mod:`bcsecrecy.dmbc` -- finite-distribution rate-region evaluators
- :mod:`bcsecrecy.gaussian` -- Gaussian bounds, frontiers, gap scans
- :mod:`bcsecrecy.fme` -- exact rational Fourier-Motzkin projection
- :mod:`bcsecrecy.cli` -- command-line front end
"""

from . import errors

__version__ = "0.1.0"
