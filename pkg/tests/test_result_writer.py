"""
Tests for the result writer and output formatting.

Covers CSV/JSON layout, byte-identical reruns and the Excel summary.
"""

import json
import math

import numpy as np
import pandas as pd
import pytest
from openpyxl import load_workbook

from src.output.formatting import FLOAT_FORMAT, ReportFormatter
from src.output.result_writer import ResultWriter
from src.utils.error_handling import OutputGenerationError


class TestReportFormatter:
    """Tests for the ReportFormatter class."""

    def test_get_header_style(self):
        """Test header style properties."""
        style = ReportFormatter.get_header_style()

        assert style['bold'] is True
        assert style['bg_color'] == '#4472C4'
        assert style['border'] == 1

    def test_get_failure_style(self):
        """Test failure style has warning colors."""
        style = ReportFormatter.get_failure_style()
        assert style['bg_color'] == '#FFC7CE'

    def test_format_float(self):
        """Test 17 significant digits in scientific notation."""
        assert ReportFormatter.format_float(0.1) == "1.0000000000000001e-01"
        assert float(ReportFormatter.format_float(math.pi)) == math.pi

    def test_json_ready_conversions(self):
        """Test numpy, complex and non-finite values."""
        record = {
            "count": np.int64(3),
            "value": np.float64(0.5),
            "flag": np.bool_(True),
            "amplitude": 1 + 2j,
            "series": np.array([1.0, 2.0]),
            "bad": [math.inf, -math.inf, math.nan],
        }
        ready = ReportFormatter.json_ready(record)
        assert ready["count"] == 3 and isinstance(ready["count"], int)
        assert ready["flag"] is True
        assert ready["amplitude"] == {"re": 1.0, "im": 2.0}
        assert ready["series"] == [1.0, 2.0]
        assert ready["bad"] == ["inf", "-inf", "nan"]

    def test_to_json_sorted(self):
        """Test sorted keys and trailing newline."""
        text = ReportFormatter.to_json({"b": 1, "a": 2})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("}\n")


class TestResultWriter:
    """Tests for the ResultWriter class."""

    def test_init_creates_directory(self, tmp_path):
        """Test the output directory is created."""
        output_dir = tmp_path / "nested" / "out"
        writer = ResultWriter(output_dir)
        assert output_dir.is_dir()
        assert writer.written == []

    def test_csv_layout(self, test_output_dir):
        """Test header, float format and LF line endings."""
        writer = ResultWriter(test_output_dir)
        path = writer.write_csv("table.csv", pd.DataFrame({"t": [0.0, 0.5], "y": [1e-4, -2.5]}))

        raw = path.read_bytes()
        assert b"\r\n" not in raw
        lines = raw.decode().splitlines()
        assert lines[0] == "t,y"
        assert lines[1] == f"{FLOAT_FORMAT % 0.0},{FLOAT_FORMAT % 1e-4}"
        assert writer.written == [path]

    def test_identical_runs_identical_bytes(self, tmp_path):
        """Test writing the same data twice produces the same files."""
        frame = pd.DataFrame({"x": np.linspace(0.0, 1.0, 11), "f": np.exp(-np.linspace(0.0, 1.0, 11))})
        record = {"p1": 1.1556e-6, "k1": math.sqrt(47.0)}
        outputs = []
        for name in ("first", "second"):
            writer = ResultWriter(tmp_path / name)
            outputs.append((
                writer.write_csv("data.csv", frame).read_bytes(),
                writer.write_json("data.json", record).read_bytes(),
            ))
        assert outputs[0] == outputs[1]

    def test_json_round_trip(self, test_output_dir):
        """Test the JSON file parses back."""
        writer = ResultWriter(test_output_dir)
        path = writer.write_json("summary.json", {"c1": 1j, "y_star": math.inf})
        data = json.loads(path.read_text())
        assert data == {"c1": {"re": 0.0, "im": 1.0}, "y_star": "inf"}

    def test_workbook_sheets_and_highlight(self, test_output_dir):
        """Test one sheet per table and a highlighted failure row."""
        writer = ResultWriter(test_output_dir)
        report = pd.DataFrame({
            "check": ["amplitude", "p1_tdse"],
            "relative_difference": [0.001, 0.2],
            "failed": [False, True],
        })
        path = writer.write_workbook("report.xlsx", {"report": report}, failed_column="failed")

        workbook = load_workbook(path)
        assert workbook.sheetnames == ["report"]
        sheet = workbook["report"]
        assert sheet["A1"].value == "check"
        assert sheet["B3"].value == pytest.approx(0.2)
        assert sheet["A1"].font.bold

    def test_csv_write_failure(self, test_output_dir):
        """Test writing into a missing subdirectory raises."""
        writer = ResultWriter(test_output_dir)
        with pytest.raises(OutputGenerationError, match="CSV"):
            writer.write_csv("missing/table.csv", pd.DataFrame({"a": [1.0]}))

    def test_directory_creation_failure(self, tmp_path):
        """Test a file in place of the directory raises."""
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        with pytest.raises(OutputGenerationError, match="output directory"):
            ResultWriter(blocker / "out")
