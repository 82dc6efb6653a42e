"""
Output generation module for scenario result files.
"""

from .formatting import FLOAT_FORMAT, ReportFormatter
from .result_writer import ResultWriter

__all__ = ['FLOAT_FORMAT', 'ReportFormatter', 'ResultWriter']
