import random

import pytest

from liftgen.config import Settings
from liftgen.harness.presets import preset
from liftgen.models import Problem
from liftgen.textio.parser import parse_problem

GAMMA_G = """
domain {n}
sentence forall x: forall y: (E(x,y) -> E(y,x)) & ~E(x,x)
sentence forall x: exists y: E(x,y)
"""

SYMMETRIC_LOOPLESS = """
domain {n}
sentence forall x: forall y: (E(x,y) -> E(y,x)) & ~E(x,x)
weight E 3 1
"""


@pytest.fixture
def settings(tmp_path, monkeypatch):
    monkeypatch.setenv("LIFTGEN_LOG_DIR", str(tmp_path / "logs"))
    return Settings()


@pytest.fixture
def log_dir(tmp_path):
    return tmp_path / "logs"


@pytest.fixture
def gamma_g():
    def build(n: int = 3):
        return parse_problem(GAMMA_G.format(n=n))
    return build


@pytest.fixture
def symmetric_loopless():
    def build(n: int = 2):
        return parse_problem(SYMMETRIC_LOOPLESS.format(n=n))
    return build


@pytest.fixture
def two_colored():
    def build(n: int = 4, red: str = "2"):
        return preset("two-colored-graphs", n, {"weights": {"Red": (red, 1)}})
    return build


def _literal(rng: random.Random, binary, unary, variables=("x", "y")) -> str:
    if binary and (not unary or rng.random() < 0.6):
        args = ",".join(rng.choice(variables) for _ in range(2))
        text = f"{rng.choice(binary)}({args})"
    else:
        text = f"{rng.choice(unary)}({rng.choice(variables)})"
    return text if rng.random() < 0.5 else f"~{text}"


def _clause(rng: random.Random, binary, unary, size: int) -> str:
    return " | ".join(_literal(rng, binary, unary) for _ in range(size))


def _with_weights(rng: random.Random, lines) -> Problem:
    """Weight lines only for predicates the sentence mentions"""
    unweighted = parse_problem("\n".join(lines))
    for pred in unweighted.vocabulary:
        if rng.random() < 0.5:
            lines.append(f"weight {pred.name} {rng.choice(['1', '2', '3', '0.5'])} {rng.choice(['1', '2'])}")
    return parse_problem("\n".join(lines))


@pytest.fixture
def random_snf():
    """Seeded sentences in Scott normal form: forall-forall clauses plus
    forall-exists bodies, with random weights"""
    def build(seed: int, n: int, binary=("E", "F"), unary=("P", "Q")):
        rng = random.Random(seed)
        lines = [f"domain {n}"]
        for _ in range(rng.randint(1, 2)):
            lines.append(f"sentence forall x: forall y: {_clause(rng, binary, unary, rng.randint(2, 3))}")
        for _ in range(rng.randint(0, 2)):
            lines.append(f"sentence forall x: exists y: {_clause(rng, binary, unary, rng.randint(1, 2))}")
        return _with_weights(rng, lines)
    return build


NESTED_SHAPES = (
    "forall x: {lx} | (exists y: {c})",
    "forall x: {lx} -> (forall y: {c})",
    "exists x: forall y: {c}",
    "exists x: exists y: {c}",
    "exists x: {lx}",
    "~(exists x: forall y: {c})",
    "forall x: exists y: {c}",
    "forall x: forall y: {c}",
)


@pytest.fixture
def random_fo2():
    """Seeded two-variable sentences with quantifiers nested under
    connectives, so that Scott normal form has work to do"""
    def build(seed: int, n: int = 2, binary=("E", "F"), unary=("P", "Q")):
        rng = random.Random(seed)
        lines = [f"domain {n}"]
        for _ in range(rng.randint(1, 2)):
            shape = rng.choice(NESTED_SHAPES)
            lx = _literal(rng, (), unary, ("x",))
            c = _clause(rng, binary, unary, 2)
            lines.append("sentence " + shape.format(lx=lx, c=c))
        return _with_weights(rng, lines)
    return build
