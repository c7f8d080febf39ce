from typing import List, Optional

from gmpy2 import mpq
from pydantic import BaseModel

from ..fol.structure import Model
from ..fol.syntax import TOP, conjuncts, render
from ..models import MlnSpec, Problem


class ModelRecord(BaseModel):
    """JSON mirror of one model line"""
    index: int
    atoms: List[str]
    probability: Optional[str] = None


def format_rational(value: mpq) -> str:
    value = mpq(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_model(model: Model) -> str:
    """Sorted true literals, comma separated"""
    return ",".join(str(atom) for atom in model.sorted_atoms())


def format_record(index: int, model: Model, probability: Optional[mpq] = None) -> str:
    record = ModelRecord(
        index=index,
        atoms=[str(atom) for atom in model.sorted_atoms()],
        probability=format_rational(probability) if probability is not None else None,
    )
    return record.model_dump_json()


def format_header(seed: int, problem_hash: str) -> str:
    return f"# seed={seed} problem={problem_hash}"


def format_problem(problem: Problem) -> str:
    lines = [f"domain {problem.domain_size}"]
    for part in conjuncts(problem.sentence):
        lines.append(f"sentence {render(part)}")
    for pred in sorted(problem.weights):
        w, wbar = problem.weights[pred]
        lines.append(f"weight {pred.name} {format_rational(w)} {format_rational(wbar)}")
    if problem.constraints != TOP:
        for part in conjuncts(problem.constraints):
            lines.append(f"cc {render(part)}")
    return "\n".join(lines) + "\n"


def format_mln(spec: MlnSpec) -> str:
    lines = [f"domain {spec.domain_size}"]
    for weight, formula in spec.formulas:
        label = "inf" if weight is None else format_rational(weight)
        lines.append(f"{label} {render(formula)}")
    return "\n".join(lines) + "\n"
