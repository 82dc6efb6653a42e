"""
Model core: physical parameters and the beam/oscillator window function.
"""

from .params import ModelParams
from .window import WindowFunction, WindowKind

__all__ = ['ModelParams', 'WindowFunction', 'WindowKind']
