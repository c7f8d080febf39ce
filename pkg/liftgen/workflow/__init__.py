from .base import BaseWorkflow
from .sampling_workflow import SamplingWorkflow

__all__ = ['BaseWorkflow', 'SamplingWorkflow']
