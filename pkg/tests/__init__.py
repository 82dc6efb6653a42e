"""Tests for the beam/oscillator scattering simulator."""
