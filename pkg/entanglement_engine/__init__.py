"""SpinRadar - boundary entanglement of the transverse-field Ising chain.

Free-fermion solver for open and boundary-coupled chains, pairwise
concurrence from the two-spin reduced state, an exact-diagonalization
cross-check and the closed-form two-level system near its ohmic transitions.
"""

__version__ = "1.0.0"
__author__ = "M-Soho"
__license__ = "MIT"

from entanglement_engine.config import get_settings

__all__ = ["__version__", "__author__", "__license__", "get_settings"]
