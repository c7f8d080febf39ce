import time
from collections import defaultdict
from datetime import datetime
from typing import Optional

import uvicorn
from fastapi import Depends, FastAPI, HTTPException, status
from fastapi.security import HTTPAuthorizationCredentials, HTTPBearer
from logzero import logger as log
from pydantic import BaseModel, Field

from .components import (
    BruteForceModelCounter, KsDistributionValidator, LiftedModelCounter, LiftedModelSampler,
    ProblemNormalizer,
)
from .config import Settings
from .errors import LiftgenError, ParseError, UnsatisfiableError, UnsupportedFragmentError
from .harness.presets import PRESETS, preset_text
from .harness.statistics import model_index
from .logging.json_logger import JsonLogger
from .models import Problem
from .normalize.mln import mln_to_wfoms
from .textio.formatter import ModelRecord, format_rational
from .textio.parser import parse_mln, parse_problem
from .workflow import SamplingWorkflow

app = FastAPI(title="liftgen")

settings = Settings()
logger = JsonLogger(settings.log_dir, retention_days=settings.log_retention_days)
security = HTTPBearer(auto_error=False)


class RateLimiter:
    def __init__(self, max_requests: int = 100, window: int = 60):
        self.max_requests = max_requests
        self.window = window  # seconds
        self.requests = defaultdict(list)
        self._last_prune = time.time()

    def _recent(self, client_id: str, now: float) -> list:
        return [req_time for req_time in self.requests.get(client_id, ()) if now - req_time < self.window]

    def prune(self, now: Optional[float] = None) -> None:
        """Forget clients with no request inside the window."""
        now = time.time() if now is None else now
        for client_id in list(self.requests):
            recent = self._recent(client_id, now)
            if recent:
                self.requests[client_id] = recent
            else:
                del self.requests[client_id]
        self._last_prune = now

    def is_allowed(self, client_id: str) -> bool:
        now = time.time()
        if now - self._last_prune >= self.window:
            self.prune(now)
        recent = self._recent(client_id, now)
        if len(recent) >= self.max_requests:
            self.requests[client_id] = recent
            return False
        recent.append(now)
        self.requests[client_id] = recent
        return True


rate_limiter = RateLimiter(max_requests=100, window=60)


async def verify_api_key(credentials: Optional[HTTPAuthorizationCredentials] = Depends(security)):
    if not credentials:
        return "anonymous"
    return credentials.credentials


def _workflow(brute: bool = False, validate: bool = False) -> SamplingWorkflow:
    if brute:
        counter = BruteForceModelCounter(settings.oracle_max_domain, settings.oracle_max_atoms)
    else:
        counter = LiftedModelCounter(threads=settings.threads, cache_size=settings.cache_size)
    validator = None
    if validate:
        validator = KsDistributionValidator(
            settings.alpha, settings.threads, settings.oracle_max_domain, settings.oracle_max_atoms,
        )
    sampler = LiftedModelSampler(
        settings.element_selection, settings.threads, settings.validation_chunk, settings.cache_size,
    )
    return SamplingWorkflow(ProblemNormalizer(), counter, sampler, validator, logger=logger)


def _problem(text: str, mln: bool) -> Problem:
    if mln:
        return mln_to_wfoms(parse_mln(text), settings.exp_precision).transformed
    return parse_problem(text)


def _fail(e: Exception) -> HTTPException:
    if isinstance(e, (ParseError, UnsupportedFragmentError)):
        code = status.HTTP_400_BAD_REQUEST
    elif isinstance(e, UnsatisfiableError):
        code = status.HTTP_422_UNPROCESSABLE_ENTITY
    else:
        code = status.HTTP_500_INTERNAL_SERVER_ERROR
    if not isinstance(e, LiftgenError):
        log.exception(e)
    return HTTPException(status_code=code, detail={"error": e.__class__.__name__, "message": str(e)})


def _check_rate(api_key: str) -> None:
    if not rate_limiter.is_allowed(api_key):
        raise HTTPException(
            status_code=status.HTTP_429_TOO_MANY_REQUESTS,
            detail="Rate limit exceeded. Please try again later."
        )


class CountRequest(BaseModel):
    problem: str
    mln: bool = False
    brute: bool = False


class SampleRequest(BaseModel):
    problem: str
    mln: bool = False
    num_samples: int = Field(default=1, ge=1, le=100000)
    seed: int = 0
    validate_samples: bool = False
    mode: str = Field(default="model", pattern="^(model|count)$")


@app.post("/count")
def count(request: CountRequest, api_key: str = Depends(verify_api_key)):
    """Weighted model count of a problem file"""
    _check_rate(api_key)
    try:
        problem = _problem(request.problem, request.mln)
        report, workflow_log = _workflow(brute=request.brute).run(problem)
    except Exception as e:
        raise _fail(e)
    return {
        "count": format_rational(report.count),
        "domain_size": problem.domain_size,
        "fragment": workflow_log.summary["fragment"].value,
        "method": "brute" if request.brute else "lifted",
        "problem_hash": report.problem_hash,
        "workflow_id": workflow_log.workflow_id,
    }


@app.post("/sample")
def sample(request: SampleRequest, api_key: str = Depends(verify_api_key)):
    """Exact samples of a problem file, optionally KS-tested"""
    _check_rate(api_key)
    try:
        problem = _problem(request.problem, request.mln)
        workflow = _workflow(validate=request.validate_samples)
        report, workflow_log = workflow.run(
            problem, request.num_samples, request.seed, mode=request.mode,
        )
    except Exception as e:
        raise _fail(e)
    vocabulary = problem.visible_vocabulary
    samples = [
        ModelRecord(
            index=model_index(s.model, vocabulary),
            atoms=[str(a) for a in s.model.sorted_atoms()],
            probability=format_rational(s.probability),
        ).model_dump()
        for s in report.samples
    ]
    validation = None
    if report.validation is not None:
        v = report.validation
        validation = {
            "max_deviation": v.max_deviation, "dkw_bound": v.dkw_bound,
            "rejected": v.rejected, "alpha": v.alpha, "k": v.dimension,
        }
    return {
        "count": format_rational(report.count),
        "seed": report.seed,
        "problem_hash": report.problem_hash,
        "samples": samples,
        "validation": validation,
        "workflow_id": workflow_log.workflow_id,
    }


@app.get("/presets/{name}")
def get_preset(name: str, n: int = 3, k: Optional[int] = None):
    """Problem text of a catalogue preset"""
    if name not in PRESETS:
        raise HTTPException(status_code=404, detail={"error": "UnknownPreset", "message": name})
    params = {"k": k} if k is not None else {}
    entry = PRESETS[name]
    return {
        "name": name,
        "mln": entry.mln,
        "description": entry.description,
        "text": preset_text(name, n, params),
    }


@app.get("/health")
def health_check():
    """Health check endpoint"""
    return {"status": "healthy"}


@app.get("/logs/workflows")
async def get_workflow_logs(
    workflow_id: Optional[str] = None,
    start_time: Optional[datetime] = None,
    end_time: Optional[datetime] = None
):
    """Get workflow logs with optional filtering"""
    return logger.get_workflow_logs(workflow_id, start_time, end_time)


if __name__ == "__main__":
    uvicorn.run("liftgen.api:app", host=settings.api_host, port=settings.api_port, reload=True)
