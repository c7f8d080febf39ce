from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional


@dataclass
class StepLog:
    step_id: str
    step_name: str
    input: Dict[str, Any]
    output: Dict[str, Any]
    metadata: Dict[str, Any]
    timestamp: datetime
    duration_ms: float
    success: bool
    error: Optional[str] = None


@dataclass
class WorkflowLog:
    """One counting or sampling run; ``problem_hash`` identifies the input"""
    workflow_id: str
    problem_hash: str
    step_ids: List[str]
    start_time: datetime
    end_time: datetime
    success: bool
    summary: Dict[str, Any] = field(default_factory=dict)


class BaseLogger(ABC):
    @abstractmethod
    def log_step(self, step_log: StepLog) -> None:
        """Persist a single component call"""
        pass

    @abstractmethod
    def log_workflow(self, workflow_log: WorkflowLog) -> None:
        """Persist a finished workflow"""
        pass

    @abstractmethod
    def get_workflow_logs(
        self,
        workflow_id: Optional[str] = None,
        start_time: Optional[datetime] = None,
        end_time: Optional[datetime] = None) -> List[WorkflowLog]:
        """Retrieve workflow logs with optional filtering"""
        pass

    @abstractmethod
    def get_step_log(self, step_id: str) -> Optional[StepLog]:
        pass
