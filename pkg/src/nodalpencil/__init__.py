"""Certified construction of a 12-nodal plane octic with a degree-8 pencil over F_p."""

from .certificate import Certificate, read_certificate, reverify, write_certificate
from .fieldarith import DEFAULT_PRIME
from .pipeline import RetryExhausted, run_construction

__all__ = ["Certificate", "DEFAULT_PRIME", "RetryExhausted", "read_certificate", "reverify",
           "run_construction", "write_certificate"]
__version__ = "0.1.0"
