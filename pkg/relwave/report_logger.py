import csv
import logging
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

from .evolve import FieldGrid, write_dump
from .schema import SuiteReport

logger = logging.getLogger(__name__)

CSV_HEADERS = ["suite", "name", "max_residual", "tolerance", "pass", "status", "reason"]


class ReportLogger:
    """Writes reports, per-check CSV rows and field dumps of one run"""

    def __init__(self, session_dir: Optional[Union[str, Path]] = None):
        """
        Args:
            session_dir: Output directory; defaults to a timestamped
                directory under ~/.relwave/
        """
        if session_dir is None:
            session_time = datetime.now().strftime('%Y%m%d_%H%M%S')
            session_dir = Path.home() / '.relwave' / session_time
        self.session_dir = Path(session_dir)
        self.data_dir = self.session_dir / 'data'

        self.session_dir.mkdir(parents=True, exist_ok=True)
        self.data_dir.mkdir(parents=True, exist_ok=True)

        self.checks_file = self.session_dir / 'checks.csv'
        self.setup_csv()

        logger.info(f"Writing run artefacts to: {self.session_dir}")

    def setup_csv(self):
        """Create CSV file with headers"""
        with open(self.checks_file, 'w', newline='') as f:
            writer = csv.writer(f)
            writer.writerow(CSV_HEADERS)

    def log_report(self, report: SuiteReport):
        """Append one row per check"""
        with open(self.checks_file, 'a', newline='') as f:
            writer = csv.writer(f)
            for check in report.checks:
                writer.writerow([
                    report.suite,
                    check.name,
                    f"{check.max_residual:.6e}",
                    f"{check.tolerance:.3e}",
                    check.passed,
                    check.status,
                    check.reason or "",
                ])

    def write_report(self, report: SuiteReport, path: Optional[Union[str, Path]] = None) -> Path:
        """Write the JSON report (default: report.json in the session) and its CSV rows"""
        path = Path(path) if path is not None else self.session_dir / 'report.json'
        path.write_text(report.to_json())
        self.log_report(report)
        logger.info(f"Report for suite {report.suite}: {'pass' if report.overall_pass else 'FAIL'} -> {path}")
        return path

    def log_field(self, grid: FieldGrid, t: float, label: str) -> Path:
        """Dump a field snapshot into the data directory"""
        path = self.data_dir / f"{label}_t{t:.6g}.bin"
        write_dump(path, grid, t)
        logger.debug(f"Field dump {path}")
        return path
