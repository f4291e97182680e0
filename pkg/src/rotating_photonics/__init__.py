"""Photon interference on rotating platforms: Sagnac fringes, rotating HOM dips
and rotation-controlled anti-coalescence of frequency-entangled pairs."""

__version__ = "0.1.0"
