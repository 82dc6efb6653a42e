"""
Result writer for scenario output files.

Writes CSV tables (pandas), JSON records and an optional Excel summary
workbook into one output directory.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import logging

import pandas as pd

from src.utils.error_handling import OutputGenerationError
from .formatting import FLOAT_FORMAT, LINE_TERMINATOR, ReportFormatter

logger = logging.getLogger(__name__)


class ResultWriter:
    """
    Writer for the files a scenario produces.

    Keeps track of every path written so the CLI can list them.
    """

    def __init__(self, output_dir: Union[str, Path]):
        """
        Initialize the writer.

        Args:
            output_dir: Directory where output files will be saved

        Raises:
            OutputGenerationError: If the output directory cannot be created
        """
        self.output_dir = Path(output_dir)
        self.formatter = ReportFormatter()
        self.written: List[Path] = []

        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except Exception as e:
            raise OutputGenerationError(f"Cannot create output directory: {e}")

        logger.info(f"Initialized result writer with output dir: {self.output_dir}")

    def write_csv(self, name: str, frame: pd.DataFrame) -> Path:
        """
        Write a DataFrame as CSV.

        Args:
            name: File name (relative to the output directory)
            frame: Table to write

        Returns:
            Path to the written file

        Raises:
            OutputGenerationError: If writing fails
        """
        path = self.get_output_path(name)
        try:
            frame.to_csv(
                path,
                index=False,
                float_format=FLOAT_FORMAT,
                lineterminator=LINE_TERMINATOR,
            )
        except Exception as e:
            raise OutputGenerationError(f"Error writing CSV file {path}: {e}")
        return self._record(path)

    def write_json(self, name: str, record: Dict[str, Any]) -> Path:
        """
        Write a JSON record with sorted keys.

        Args:
            name: File name (relative to the output directory)
            record: JSON-ready mapping (numpy and complex values are converted)

        Returns:
            Path to the written file

        Raises:
            OutputGenerationError: If writing fails
        """
        path = self.get_output_path(name)
        try:
            text = self.formatter.to_json(record)
            with open(path, "w", encoding="utf-8", newline=LINE_TERMINATOR) as f:
                f.write(text)
        except Exception as e:
            raise OutputGenerationError(f"Error writing JSON file {path}: {e}")
        return self._record(path)

    def write_workbook(self,
                       name: str,
                       sheets: Dict[str, pd.DataFrame],
                       failed_column: Optional[str] = None) -> Path:
        """
        Write an Excel workbook with one sheet per table.

        Args:
            name: File name ending in .xlsx
            sheets: Sheet name -> table
            failed_column: Boolean column whose true rows are highlighted

        Returns:
            Path to the written file

        Raises:
            OutputGenerationError: If writing fails
        """
        path = self.get_output_path(name)
        try:
            with pd.ExcelWriter(path, engine="xlsxwriter") as writer:
                workbook = writer.book
                header_format = workbook.add_format(self.formatter.get_header_style())
                number_format = workbook.add_format(self.formatter.get_number_style())
                failure_format = workbook.add_format(self.formatter.get_failure_style())

                for sheet_name, frame in sheets.items():
                    frame.to_excel(writer, sheet_name=sheet_name, index=False)
                    worksheet = writer.sheets[sheet_name]
                    for col, column in enumerate(frame.columns):
                        worksheet.write(0, col, column, header_format)
                        width = max(12, len(str(column)) + 2)
                        numeric = pd.api.types.is_float_dtype(frame[column])
                        worksheet.set_column(col, col, width, number_format if numeric else None)

                    if failed_column and failed_column in frame.columns:
                        for row, failed in enumerate(frame[failed_column], start=1):
                            if bool(failed):
                                worksheet.set_row(row, None, failure_format)
        except Exception as e:
            raise OutputGenerationError(f"Error writing workbook {path}: {e}")
        return self._record(path)

    def get_output_path(self, name: str) -> Path:
        """Path of a file inside the output directory."""
        return self.output_dir / name

    def _record(self, path: Path) -> Path:
        self.written.append(path)
        logger.info(f"Wrote {path}")
        return path
