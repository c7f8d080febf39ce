import importlib
import time

import pytest
from fastapi.testclient import TestClient

GAMMA_G = (
    "domain 3\n"
    "sentence forall x: forall y: (E(x,y) -> E(y,x)) & ~E(x,x)\n"
    "sentence forall x: exists y: E(x,y)\n"
)


@pytest.fixture
def client(settings):
    import liftgen.api
    api = importlib.reload(liftgen.api)
    return TestClient(api.app)


def test_health(client):
    assert client.get("/health").json() == {"status": "healthy"}


def test_count(client):
    response = client.post("/count", json={"problem": GAMMA_G})
    assert response.status_code == 200
    body = response.json()
    assert body["count"] == "4"
    assert body["fragment"] == "FO2"
    assert body["method"] == "lifted"


def test_brute_count(client):
    body = client.post("/count", json={"problem": GAMMA_G, "brute": True}).json()
    assert body["count"] == "4"
    assert body["method"] == "brute"


def test_sample_with_validation(client):
    response = client.post("/sample", json={
        "problem": GAMMA_G, "num_samples": 200, "seed": 3, "validate_samples": True,
    })
    assert response.status_code == 200
    body = response.json()
    assert len(body["samples"]) == 200
    assert body["samples"][0]["probability"] == "1/4"
    assert set(body["validation"]) == {"max_deviation", "dkw_bound", "rejected", "alpha", "k"}


def test_mln_count(client):
    text = "domain 2\ninf forall x: exists y: fr(x,y)\n0 sm(x)\n"
    body = client.post("/count", json={"problem": text, "mln": True}).json()
    # each xi is weighted (1, 1): 9 relations times 4 smoker sets
    assert body["count"] == "36"


def test_errors(client):
    bad = client.post("/count", json={"problem": "domain 2\nsentence forall z: P(z)\n"})
    assert bad.status_code == 400
    assert bad.json()["detail"]["error"] == "ParseError"
    unsat = client.post("/count", json={
        "problem": "domain 2\nsentence forall x: exists y: E(x,y) & ~E(x,y)\n",
    })
    assert unsat.status_code == 422
    assert client.post("/sample", json={"problem": GAMMA_G, "num_samples": 0}).status_code == 422


def test_presets(client):
    body = client.get("/presets/k-regular", params={"n": 4, "k": 2}).json()
    assert body["text"].startswith("domain 4\n")
    assert client.get("/presets/unknown").status_code == 404


def test_workflow_logs(client):
    client.post("/count", json={"problem": GAMMA_G})
    logs = client.get("/logs/workflows").json()
    assert len(logs) == 1
    assert logs[0]["success"] is True


def test_rate_limiter_forgets_idle_clients(settings):
    from liftgen.api import RateLimiter

    limiter = RateLimiter(max_requests=2, window=60)
    assert limiter.is_allowed("a")
    assert limiter.is_allowed("a")
    assert not limiter.is_allowed("a")
    assert limiter.is_allowed("b")
    later = time.time() + 61
    limiter.prune(now=later)
    assert dict(limiter.requests) == {}


def test_rate_limiter_prunes_during_traffic(settings):
    from liftgen.api import RateLimiter

    limiter = RateLimiter(max_requests=5, window=60)
    limiter.requests["idle"] = [time.time() - 120]
    limiter._last_prune -= 60
    assert limiter.is_allowed("active")
    assert "idle" not in limiter.requests
    assert len(limiter.requests["active"]) == 1
