"""Source code for the beam/oscillator scattering simulator."""

__version__ = "0.1.0"
