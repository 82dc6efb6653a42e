"""
Formatting conventions for scenario output files.

CSV files use commas, a header row, LF line endings and 17 significant
digits in scientific notation so that identical runs produce identical
bytes. JSON uses sorted keys and two-space indentation. The optional
Excel summary shares the header style below.
"""

import json
import math
from typing import Any, Dict
import logging

import numpy as np

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.16e"
LINE_TERMINATOR = "\n"


class ReportFormatter:
    """
    Formatting helpers shared by the CSV, JSON and Excel writers.
    """

    @staticmethod
    def get_header_style() -> Dict[str, Any]:
        """
        Get the xlsxwriter style for header rows.

        Returns:
            Dictionary with style properties for headers
        """
        return {
            'bold': True,
            'bg_color': '#4472C4',
            'font_color': 'white',
            'border': 1,
            'align': 'center',
            'valign': 'vcenter'
        }

    @staticmethod
    def get_number_style() -> Dict[str, Any]:
        """xlsxwriter style for numeric cells."""
        return {
            'num_format': '0.000000E+00',
            'border': 1,
        }

    @staticmethod
    def get_failure_style() -> Dict[str, Any]:
        """xlsxwriter style for rows whose check failed."""
        return {
            'bg_color': '#FFC7CE',
            'font_color': '#9C0006',
            'border': 1,
        }

    @staticmethod
    def format_float(value: float) -> str:
        """Render a float with FLOAT_FORMAT."""
        return FLOAT_FORMAT % value

    @staticmethod
    def json_ready(value: Any) -> Any:
        """
        Convert a value to something json.dumps accepts.

        numpy scalars and arrays become Python numbers and lists, complex
        numbers become {"re", "im"} records, and non-finite floats become
        the strings "inf", "-inf" and "nan".
        """
        if isinstance(value, dict):
            return {str(key): ReportFormatter.json_ready(item) for key, item in value.items()}
        if isinstance(value, (list, tuple)):
            return [ReportFormatter.json_ready(item) for item in value]
        if isinstance(value, np.ndarray):
            return [ReportFormatter.json_ready(item) for item in value.tolist()]
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        if isinstance(value, (int, np.integer)):
            return int(value)
        if isinstance(value, (complex, np.complexfloating)):
            return {"re": ReportFormatter.json_ready(value.real), "im": ReportFormatter.json_ready(value.imag)}
        if isinstance(value, (float, np.floating)):
            value = float(value)
            if math.isfinite(value):
                return value
            return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
        return value

    @staticmethod
    def to_json(record: Dict[str, Any]) -> str:
        """Deterministic JSON text with a trailing newline."""
        return json.dumps(ReportFormatter.json_ready(record), indent=2, sort_keys=True) + LINE_TERMINATOR
