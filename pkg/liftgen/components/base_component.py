import uuid
from abc import ABC, abstractmethod
from datetime import datetime
from typing import Any, Dict, Optional, Tuple

from ..logging.base import StepLog


class BaseComponent(ABC):
    """Base class for all pipeline stages"""
    def __init__(self, name: str, metadata: Optional[Dict[str, Any]] = None):
        self.name = name
        self.metadata = metadata or {}
        self.last_log: Optional[StepLog] = None

    @abstractmethod
    def _execute(self, *args, **kwargs) -> Any:
        """Internal execution method to be implemented by components"""
        pass

    def summarize_input(self, *args, **kwargs) -> Dict[str, Any]:
        """What the step log keeps of the call arguments"""
        return {"args": [type(a).__name__ for a in args], "kwargs": sorted(kwargs)}

    def summarize_output(self, result: Any) -> Dict[str, Any]:
        return {"result": result}

    def execute(self, *args, **kwargs) -> Tuple[Any, StepLog]:
        """Execute with logging. Don't override this."""
        start_time = datetime.now()
        step_id = str(uuid.uuid4())
        step_input = self.summarize_input(*args, **kwargs)

        try:
            result = self._execute(*args, **kwargs)
        except Exception as e:
            duration = (datetime.now() - start_time).total_seconds() * 1000
            self.last_log = StepLog(
                step_id=step_id,
                step_name=self.name,
                input=step_input,
                output={},
                metadata={**self.metadata, "error_type": e.__class__.__name__},
                timestamp=start_time,
                duration_ms=duration,
                success=False,
                error=str(e)
            )
            raise

        duration = (datetime.now() - start_time).total_seconds() * 1000
        log = StepLog(
            step_id=step_id,
            step_name=self.name,
            input=step_input,
            output=self.summarize_output(result),
            metadata=dict(self.metadata),
            timestamp=start_time,
            duration_ms=duration,
            success=True
        )
        self.last_log = log
        return result, log
