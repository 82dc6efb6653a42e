"""Utility modules for the scattering simulator."""
