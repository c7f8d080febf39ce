import uuid
from abc import ABC, abstractmethod
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

from ..components.base_component import BaseComponent
from ..logging.base import BaseLogger, StepLog, WorkflowLog
from ..models import Problem
from ..utils.cache import problem_hash


class BaseWorkflow(ABC):
    """Runs components in sequence and records one WorkflowLog per run.

    Step logs are persisted as soon as each component finishes when a
    logger is given.
    """
    def __init__(
        self,
        name: str,
        metadata: Optional[Dict[str, Any]] = None,
        logger: Optional[BaseLogger] = None,
    ):
        self.name = name
        self.metadata = metadata or {}
        self.logger = logger
        self.step_logs: List[StepLog] = []

    @abstractmethod
    def _execute(self, problem: Problem, *args, **kwargs) -> Tuple[Any, Dict[str, Any]]:
        """Execute the workflow and return (result, summary)"""
        pass

    def _record(self, log: Optional[StepLog]) -> None:
        if log is None:
            return
        self.step_logs.append(log)
        if self.logger is not None:
            self.logger.log_step(log)

    def run_step(self, component: BaseComponent, *args, **kwargs) -> Any:
        component.last_log = None
        try:
            result, log = component.execute(*args, **kwargs)
        except Exception:
            self._record(component.last_log)
            raise
        self._record(log)
        return result

    def execute(self, problem: Problem, *args, **kwargs) -> Tuple[Any, WorkflowLog]:
        """Execute with logging"""
        workflow_id = str(uuid.uuid4())
        start_time = datetime.now()
        self.step_logs = []
        key = problem_hash(problem)

        try:
            result, summary = self._execute(problem, *args, **kwargs)
        except Exception as e:
            self._finish(WorkflowLog(
                workflow_id=workflow_id,
                problem_hash=key,
                step_ids=[log.step_id for log in self.step_logs],
                start_time=start_time,
                end_time=datetime.now(),
                success=False,
                summary={"error": str(e), "error_type": e.__class__.__name__},
            ))
            raise

        workflow_log = WorkflowLog(
            workflow_id=workflow_id,
            problem_hash=key,
            step_ids=[log.step_id for log in self.step_logs],
            start_time=start_time,
            end_time=datetime.now(),
            success=True,
            summary=summary,
        )
        self._finish(workflow_log)
        return result, workflow_log

    def _finish(self, workflow_log: WorkflowLog) -> None:
        if self.logger is not None:
            self.logger.log_workflow(workflow_log)
