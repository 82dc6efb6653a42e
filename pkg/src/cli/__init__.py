"""CLI module for the scattering simulator."""
