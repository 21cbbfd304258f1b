"""Center-of-mass tomography for multimode quantum states."""

__version__ = "0.1.0"
