"""Tabular renderings of distributions, test results and log records"""
import json
from datetime import datetime, timedelta
from typing import Mapping, Optional, Sequence

import pandas as pd

from ..fol.structure import Model
from ..fol.syntax import Pred
from ..logging.json_logger import JsonLogger
from ..textio.formatter import format_model, format_rational
from .statistics import EmpiricalDistribution, KsResult, model_index


def distribution_frame(
    distribution: Mapping[tuple, object],
    predicates: Sequence[Pred],
    samples: Optional[EmpiricalDistribution] = None,
) -> pd.DataFrame:
    """One row per count vector: exact probability, and the observed
    frequency when samples are given"""
    data = []
    for key in sorted(set(distribution) | set(samples.counts if samples else ())):
        p = distribution.get(key, 0)
        row = {pred.name: c for pred, c in zip(predicates, key)}
        row['probability'] = format_rational(p)
        row['p'] = float(p)
        if samples is not None:
            row['frequency'] = samples.frequency(key)
        data.append(row)
    return pd.DataFrame(data)


def model_distribution_frame(
    distribution: Mapping[Model, object],
    vocabulary: Sequence[Pred] = (),
) -> pd.DataFrame:
    data = []
    for model, p in distribution.items():
        data.append({
            'index': model_index(model, vocabulary),
            'model': format_model(model),
            'probability': format_rational(p),
            'p': float(p),
        })
    frame = pd.DataFrame(data)
    if len(frame):
        frame = frame.sort_values('index').reset_index(drop=True)
    return frame


def ks_frame(results: Mapping[str, KsResult]) -> pd.DataFrame:
    data = []
    for name, result in results.items():
        data.append({
            'problem': name,
            'samples': result.n_samples,
            'k': result.dimension,
            'max_deviation': round(result.max_deviation, 5),
            'dkw_bound': round(result.dkw_bound, 5),
            'rejected': result.rejected,
        })
    return pd.DataFrame(data)


def scaling_frame(sizes: Sequence[int], seconds: Sequence[float]) -> pd.DataFrame:
    return pd.DataFrame({'n': list(sizes), 'seconds': [round(s, 4) for s in seconds]})


def workflow_frame(log_dir, days: int = 7) -> pd.DataFrame:
    """Summary of the persisted workflow records of the last ``days`` days"""
    logs = JsonLogger(log_dir)
    workflows = logs.get_workflow_logs(start_time=datetime.now() - timedelta(days=days))
    data = []
    for wf in workflows:
        duration = 0.0
        for step_id in wf.step_ids:
            path = logs.step_dir / f"{step_id}.json"
            if path.exists():
                with open(path) as f:
                    step = json.load(f)
                duration += step['duration_ms']
        data.append({
            'workflow_id': wf.workflow_id,
            'problem': wf.problem_hash,
            'success': wf.success,
            'timestamp': wf.start_time,
            'num_steps': len(wf.step_ids),
            'duration_ms': duration,
        })
    return pd.DataFrame(data)
