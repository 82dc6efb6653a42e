"""
Parsers module for reading scenario configuration files.
"""

from .config_parser import ConfigParser, check_known_keys, dumps, flatten, unflatten

__all__ = ['ConfigParser', 'check_known_keys', 'dumps', 'flatten', 'unflatten']
