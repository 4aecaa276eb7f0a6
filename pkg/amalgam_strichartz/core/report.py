import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import pandas as pd

from amalgam_strichartz.core.amalgam import NORM_RECORD_COLUMNS
from amalgam_strichartz.version import version

LOG = logging.getLogger(__name__)

REPORT_NAME = 'report.json'
TIMING_NAME = 'timing.json'
NORM_VALUES_NAME = 'norm-values.csv'

ROW_COLUMNS = ("experiment", "case", "predicted", "measured", "tolerance", "passed", "note")


def _jsonable(value: Any) -> Any:
    """Floats become JSON-safe: inf as the string 'inf', nan as null."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, 'item') and not isinstance(value, (str, bytes)):
        value = value.item()
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
    return value


@dataclass(frozen=True)
class ReportRow:
    """One verified case.

    Args:
        experiment (str): Suite name, e.g. 'sharpness'
        case (str): Case id, unique within the experiment
        params (dict): Parameters of the case
        predicted (float): Predicted exponent, bound or ratio; None if the case is a pure check
        measured (float): Measured value
        tolerance (float): Tolerance applied to the comparison
        passed (bool): Whether the case passed
        note (str): Free text, e.g. a warning or an aborted reason
        norm_values (tuple): Norm evaluations behind the case, exported to norm-values.csv
    """
    experiment: str
    case: str
    params: Dict[str, Any] = field(default_factory=dict)
    predicted: Optional[float] = None
    measured: Optional[float] = None
    tolerance: Optional[float] = None
    passed: bool = False
    note: str = ''
    norm_values: Tuple[Dict[str, Any], ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return _jsonable({
            "experiment": self.experiment,
            "case": self.case,
            "params": self.params,
            "predicted": self.predicted,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "passed": bool(self.passed),
            "note": self.note,
        })

    def to_record(self) -> Dict[str, Any]:
        """Flat record with params prefixed by 'param_', used for CSV export."""
        record = {k: getattr(self, k) for k in ROW_COLUMNS}
        record.update({f"param_{k}": v for k, v in self.params.items()})
        return record


class EstimateReport:
    """Ordered collection of verified cases of one run.

    Args:
        config (dict): The configuration echoed into report.json
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self._config = dict(config or {})
        self._rows: List[ReportRow] = []

    @property
    def config(self) -> Dict[str, Any]:
        return self._config

    @property
    def rows(self) -> List[ReportRow]:
        return list(self._rows)

    def add(self, row: ReportRow):
        self._rows.append(row)

    def extend(self, rows: Iterable[ReportRow]):
        for row in rows:
            self.add(row)

    @property
    def experiments(self) -> List[str]:
        seen = []
        for row in self._rows:
            if row.experiment not in seen:
                seen.append(row.experiment)
        return seen

    @property
    def passed(self) -> bool:
        return len(self._rows) > 0 and all(row.passed for row in self._rows)

    @property
    def summary(self) -> Dict[str, Any]:
        by_experiment = {}
        for name in self.experiments:
            rows = [row for row in self._rows if row.experiment == name]
            by_experiment[name] = {"total": len(rows), "passed": sum(1 for row in rows if row.passed)}
        total = len(self._rows)
        passed = sum(1 for row in self._rows if row.passed)
        return {"total": total, "passed": passed, "failed": total - passed, "by_experiment": by_experiment}

    def to_frame(self, experiment: Optional[str] = None) -> pd.DataFrame:
        rows = [row for row in self._rows if experiment is None or row.experiment == experiment]
        frame = pd.DataFrame([row.to_record() for row in rows])
        if frame.empty:
            return pd.DataFrame(columns=list(ROW_COLUMNS))
        return frame

    @property
    def norm_values(self) -> List[Dict[str, Any]]:
        return [record for row in self._rows for record in row.norm_values]

    def norm_frame(self) -> pd.DataFrame:
        """Norm evaluations of all rows, one per line, in NORM_RECORD_COLUMNS order."""
        return pd.DataFrame(self.norm_values, columns=list(NORM_RECORD_COLUMNS))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": version,
            "config": _jsonable(self._config),
            "summary": self.summary,
            "passed": self.passed,
            "rows": [row.to_dict() for row in self._rows],
        }

    def write(self, out_dir: str, wall_time: Optional[float] = None) -> List[str]:
        """Writes report.json, one CSV per experiment, norm-values.csv when rows carry
        norm evaluations and, if given, timing.json.

        report.json depends only on the configuration and the seed.

        Returns:
            The paths written
        """
        os.makedirs(out_dir, exist_ok=True)
        paths = []
        report_path = os.path.join(out_dir, REPORT_NAME)
        with open(report_path, 'w') as fp:
            json.dump(self.to_dict(), fp, indent=2, sort_keys=True)
        paths.append(report_path)
        for name in self.experiments:
            csv_path = os.path.join(out_dir, f"{name}.csv")
            self.to_frame(name).to_csv(csv_path, index=False, float_format='%.12g')
            paths.append(csv_path)
        if self.norm_values:
            values_path = os.path.join(out_dir, NORM_VALUES_NAME)
            self.norm_frame().to_csv(values_path, index=False, float_format='%.12g')
            paths.append(values_path)
        if wall_time is not None:
            timing_path = os.path.join(out_dir, TIMING_NAME)
            with open(timing_path, 'w') as fp:
                json.dump({"wall_time": wall_time}, fp, indent=2)
            paths.append(timing_path)
        LOG.info("report written to %s", out_dir)
        return paths

    def _repr_pretty_(self, p, cycle):
        import pprint
        if cycle:
            p.text(f"EstimateReport({len(self._rows)} rows)")
        else:
            p.text(pprint.pformat(self.summary))

    def __repr__(self):
        summary = self.summary
        return f"EstimateReport(passed={summary['passed']}/{summary['total']})"
