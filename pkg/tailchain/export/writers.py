"""
Result Writers

Writes every toolkit output to disk: tables as CSV through pandas, structured
results as JSON. Floats use a round-trip format, JSON keys are sorted and
non-finite numbers become null, so the same inputs always give the same bytes.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

import numpy as np
import pandas as pd

from tailchain.asymptotics.extremogram import Extremogram
from tailchain.asymptotics.variance import SeriesResult
from tailchain.config import OutputConfig
from tailchain.constants import OutputFormat
from tailchain.estimators.records import EstimateRecord
from tailchain.exceptions import ExportError
from tailchain.harness.report import McReport
from tailchain.models.base import PathSample
from tailchain.models.serialization import spec_to_dict
from tailchain.tailcore.ted import TailFunctionEval

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy scalars/arrays to plain Python; NaN and inf become None."""
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


class ResultWriter:
    """
    Writes toolkit results into one output directory.

    Example:
        >>> writer = ResultWriter('results')
        >>> writer.write_path(sample)
        PosixPath('results/path.csv')
    """

    def __init__(self, out_dir: Union[str, Path], config: Optional[OutputConfig] = None):
        """
        Initialize the writer.

        Args:
            out_dir: Output directory (created when missing)
            config: Float format and JSON indentation (defaults from OutputConfig)
        """
        self.config = config or OutputConfig()
        self.out_dir = Path(out_dir)
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ExportError(f"Cannot create output directory {self.out_dir}: {e}") from e

    # ==================== Primitives ====================

    def write_json(self, data: Any, name: str) -> Path:
        path = self.out_dir / name
        text = json.dumps(to_jsonable(data), indent=self.config.json_indent, sort_keys=True,
                          allow_nan=False)
        try:
            path.write_text(text + '\n', encoding='utf-8')
        except OSError as e:
            raise ExportError(f"Failed to write {path}: {e}") from e
        logger.info(f"Wrote {path}")
        return path

    def write_frame(self, frame: pd.DataFrame, name: str) -> Path:
        path = self.out_dir / name
        try:
            frame.to_csv(path, index=False, float_format=self.config.float_format,
                         lineterminator=OutputFormat.CSV_LINE_TERMINATOR)
        except OSError as e:
            raise ExportError(f"Failed to write {path}: {e}") from e
        logger.info(f"Wrote {path} ({len(frame)} rows)")
        return path

    def write_rows(self, rows: Iterable[Dict[str, Any]], name: str) -> Path:
        return self.write_frame(pd.DataFrame(list(rows)), name)

    # ==================== Toolkit results ====================

    def write_path(self, sample: PathSample, name: str = 'path') -> List[Path]:
        """Path CSV (t, x) plus a JSON sidecar with seed, burn-in and model."""
        frame = pd.DataFrame({'t': np.arange(sample.n), 'x': sample.values})
        meta = {'n': sample.n, 'seed': sample.seed, 'burn_in': sample.burn_in,
                'model': spec_to_dict(sample.model) if sample.model is not None else None}
        return [self.write_frame(frame, f'{name}.csv'), self.write_json(meta, f'{name}.json')]

    def write_estimates(self, records: List[EstimateRecord], name: str = 'estimates') -> List[Path]:
        return [
            self.write_rows((rec.to_row() for rec in records), f'{name}.csv'),
            self.write_json([rec.to_dict() for rec in records], f'{name}.json'),
        ]

    def write_tail_function(self, evaluation: TailFunctionEval, name: str = 'ted') -> List[Path]:
        return [self.write_frame(evaluation.to_frame(), f'{name}.csv'),
                self.write_json(evaluation.sidecar(), f'{name}.json')]

    def write_extremogram(self, estimate: Extremogram, name: str = 'extremogram') -> List[Path]:
        return [self.write_frame(estimate.to_frame(), f'{name}.csv'),
                self.write_json(estimate.summary(), f'{name}.json')]

    def write_series(self, results: Dict[str, Any], name: str = 'variance') -> Path:
        """Limit variance results; SeriesResult entries keep their truncation diagnostic."""
        data = {key: value.to_dict() if isinstance(value, SeriesResult) else value for key, value in results.items()}
        return self.write_json(data, f'{name}.json')

    def write_report(self, report: McReport, name: str = 'report') -> List[Path]:
        """Full report JSON plus per-replication values CSV."""
        return [self.write_json(report.to_dict(), f'{name}.json'),
                self.write_rows(report.values_table(), f'{name}_values.csv')]

    def write_reports(self, reports: List[McReport], name: str = 'sweep') -> List[Path]:
        paths = []
        for idx, report in enumerate(reports):
            paths.extend(self.write_report(report, f'{name}_{idx:03d}'))
        summary = [{'k': r.config.get('k'), 'mean': r.mean, 'variance': r.variance,
                    'std_error': r.statistics.get('std_error', [math.nan])[0]} for r in reports]
        paths.append(self.write_rows(summary, f'{name}.csv'))
        return paths

    def write_validation(self, report: Dict[str, Any], name: str = 'validation') -> Path:
        return self.write_json(report, f'{name}.json')
