"""
Artifact files: JSON for reports and headers, CSV for grids and plot data.
"""

from pathlib import Path
from typing import Any, Iterable
import csv
import json

from beltrami_cert.transforms.lpstd import LpStd
from beltrami_cert.utils import ConfigError, get_logger

COVER_COLUMNS = ("index", "re", "im", "radius", "kind")
BRANCH_COLUMNS = ("r", "curve_re", "curve_im", "preimage_re", "preimage_im")
SPLIT_COLUMNS = ("cell", "mode", "re", "im", "radius")
LPSTD_COLUMNS = ("mode", "cell", "re", "im", "radius")

log = get_logger(__name__)


class OutputWriter:
    """
    Writes the artifacts of a run into one directory, restricted to the
    configured formats.
    """

    def __init__(self, directory: Path, formats: Iterable[str] = ("json", "csv")):
        self.directory = Path(directory)
        self.formats = set(formats)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ConfigError(f"Output directory {self.directory} is not writable: {e}")

    def write_json(self, name: str, data: dict[str, Any]) -> Path | None:
        if "json" not in self.formats:
            return None
        path = self.directory / f"{name}.json"
        path.write_text(json.dumps(data, indent=2))
        log.info(f"Wrote {path}.")
        return path

    def write_csv(self, name: str, columns: tuple[str, ...], rows: Iterable[tuple]) -> Path | None:
        if "csv" not in self.formats:
            return None
        path = self.directory / f"{name}.csv"
        with path.open("w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(columns)
            writer.writerows(rows)
        log.info(f"Wrote {path}.")
        return path

    def write_lpstd(self, name: str, s: LpStd) -> Path:
        """An L_p standard set as a JSON header plus coefficient CSV, whatever the formats."""
        header = self.directory / f"{name}.json"
        header.write_text(json.dumps(s.header(), indent=2))
        path = self.directory / f"{name}.csv"
        with path.open("w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(LPSTD_COLUMNS)
            writer.writerows(s.rows())
        log.info(f"Wrote {header} and {path}.")
        return path


def read_lpstd(path: Path) -> LpStd:
    """Inverse of `OutputWriter.write_lpstd`, given the CSV path."""
    path = Path(path)
    header = json.loads(path.with_suffix(".json").read_text())
    with path.open(newline="") as f:
        reader = csv.reader(f)
        next(reader)
        return LpStd.from_rows(header, list(reader))
