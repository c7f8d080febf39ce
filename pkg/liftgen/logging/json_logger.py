import gzip
import json
import shutil
from dataclasses import fields, is_dataclass
from datetime import datetime, timedelta
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional

from gmpy2 import mpq, mpz
from logzero import logger

from ..fol.structure import Model
from ..fol.syntax import Formula, Pred, render
from ..textio.formatter import format_model, format_rational
from .base import BaseLogger, StepLog, WorkflowLog


class LoggingEncoder(json.JSONEncoder):
    """JSON encoder for log records; exact rationals become "p/q" strings"""

    def default(self, o):
        if type(o) in (type(mpq()), type(mpz())):
            return format_rational(o)
        if isinstance(o, Model):
            return format_model(o)
        if isinstance(o, Pred):
            return f"{o.name}/{o.arity}"
        if isinstance(o, Formula):
            return render(o)
        if is_dataclass(o) and not isinstance(o, type):
            return {f.name: getattr(o, f.name) for f in fields(o) if f.repr}
        if isinstance(o, Enum):
            return o.value
        if isinstance(o, datetime):
            return o.isoformat()
        if isinstance(o, (set, frozenset, tuple)):
            return list(o)
        return super().default(o)


class JsonLogger(BaseLogger):
    def __init__(
        self,
        log_dir: str = "logs",
        max_log_size_mb: int = 100,
        retention_days: int = 3,
        auto_cleanup: bool = True
    ):
        self.log_dir = Path(log_dir)
        self.step_dir = self.log_dir / "steps"
        self.workflow_dir = self.log_dir / "workflows"
        self.archive_dir = self.log_dir / "archive"
        self.max_log_size = max_log_size_mb * 1024 * 1024
        self.retention_days = retention_days

        for directory in (self.step_dir, self.workflow_dir, self.archive_dir):
            directory.mkdir(parents=True, exist_ok=True)

        if auto_cleanup:
            self.cleanup_old_logs()

    def cleanup_old_logs(self) -> Dict[str, int]:
        cutoff_time = datetime.now() - timedelta(days=self.retention_days)
        deleted_counts = {"steps": 0, "workflows": 0, "archives": 0}
        sources = (
            ("steps", self.step_dir, "*.json"),
            ("workflows", self.workflow_dir, "*.json"),
            ("archives", self.archive_dir, "*.json.gz"),
        )
        for kind, directory, pattern in sources:
            for log_file in directory.glob(pattern):
                if self._is_file_older_than(log_file, cutoff_time):
                    log_file.unlink()
                    deleted_counts[kind] += 1

        total = sum(deleted_counts.values())
        if total > 0:
            logger.info(f"removed {total} expired log files: {deleted_counts}")
        return deleted_counts

    def _is_file_older_than(self, file_path: Path, cutoff_time: datetime) -> bool:
        try:
            return datetime.fromtimestamp(file_path.stat().st_mtime) < cutoff_time
        except OSError:
            return False

    def _rotate_if_needed(self, file_path: Path):
        """Moves an oversized log file into a gzip archive"""
        if file_path.exists() and file_path.stat().st_size > self.max_log_size:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            archive_path = self.archive_dir / f"{file_path.stem}_{timestamp}.json.gz"
            with open(file_path, 'rb') as f_in:
                with gzip.open(archive_path, 'wb') as f_out:
                    shutil.copyfileobj(f_in, f_out)
            file_path.unlink()

    def _write(self, file_path: Path, data: dict) -> None:
        self._rotate_if_needed(file_path)
        with open(file_path, 'w') as f:
            json.dump(data, f, indent=2, cls=LoggingEncoder)

    def log_step(self, step_log: StepLog) -> None:
        self._write(self.step_dir / f"{step_log.step_id}.json", dict(vars(step_log)))

    def log_workflow(self, workflow_log: WorkflowLog) -> None:
        self._write(self.workflow_dir / f"{workflow_log.workflow_id}.json", dict(vars(workflow_log)))

    def get_step_log(self, step_id: str) -> Optional[StepLog]:
        path = self.step_dir / f"{step_id}.json"
        if not path.exists():
            return None
        with open(path) as f:
            data = json.load(f)
        data["timestamp"] = datetime.fromisoformat(data["timestamp"])
        return StepLog(**data)

    def get_workflow_logs(
        self,
        workflow_id: Optional[str] = None,
        start_time: Optional[datetime] = None,
        end_time: Optional[datetime] = None) -> List[WorkflowLog]:
        if workflow_id:
            workflow_files = [self.workflow_dir / f"{workflow_id}.json"]
        else:
            workflow_files = sorted(self.workflow_dir.glob("*.json"))

        workflows = []
        for wf_file in workflow_files:
            if not wf_file.exists():
                continue
            try:
                with open(wf_file) as f:
                    data = json.load(f)
                start = datetime.fromisoformat(data["start_time"])
                end = datetime.fromisoformat(data["end_time"])
                if start_time and start < start_time:
                    continue
                if end_time and end > end_time:
                    continue
                workflows.append(WorkflowLog(
                    workflow_id=data["workflow_id"],
                    problem_hash=data["problem_hash"],
                    step_ids=data["step_ids"],
                    start_time=start,
                    end_time=end,
                    success=data["success"],
                    summary=data.get("summary") or {},
                ))
            except (OSError, ValueError, KeyError) as e:
                logger.warning(f"unreadable workflow log {wf_file}: {e}")
        return sorted(workflows, key=lambda wf: wf.start_time)
