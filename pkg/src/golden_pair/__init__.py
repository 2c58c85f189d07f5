"""Golden-ratio series identities with Möbius and totient weights, computed to arbitrary precision."""

__version__ = "0.1.0"
