"""Catalogue of benchmark problems, written in the problem file syntax"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Tuple

from logzero import logger

from ..models import MlnSpec, Problem
from ..normalize.mln import mln_to_wfoms
from ..textio.parser import parse_mln, parse_problem, parse_weight

TWO_COLORED_GRAPHS = """
sentence forall x: ~E(x,x)
sentence forall x: forall y: E(x,y) -> E(y,x)
sentence forall x: Red(x) | Black(x)
sentence forall x: ~Red(x) | ~Black(x)
sentence forall x: forall y: E(x,y) -> ~(Red(x) & Red(y)) & ~(Black(x) & Black(y))
"""

NO_ISOLATED_VERTICES = """
sentence forall x: forall y: (E(x,y) -> E(y,x)) & ~E(x,x)
sentence forall x: exists y: E(x,y)
"""

K_REGULAR = """
sentence forall x: forall y: E(x,y) -> E(y,x)
sentence forall x: ~E(x,x)
sentence forall x: exists[={k}] y: E(x,y)
"""

FUNCTIONS = """
sentence forall x: exists[=1] y: f(x,y)
"""

FUNCTIONS_NO_FIXPOINT = """
sentence forall x: exists[=1] y: f(x,y)
sentence forall x: ~f(x,x)
"""

PERMUTATIONS = """
sentence forall x: exists[=1] y: Per(x,y)
sentence forall y: exists[=1] x: Per(x,y)
"""

DERANGEMENTS = PERMUTATIONS + """
sentence forall x: ~Per(x,x)
"""

FRIENDS_SMOKERS = """
inf forall x: ~fr(x,x)
inf forall x: forall y: fr(x,y) -> fr(y,x)
inf forall x: exists y: fr(x,y)
0 sm(x)
0.2 fr(x,y) & sm(x) -> sm(y)
"""

EMPLOYMENT = """
1.3 exists y: workfor(x,y) | boss(x)
"""

DESKMATE = """
inf forall x: ~mate(x,x) & ~fr(x,x)
inf forall x: forall y: mate(x,y) -> mate(y,x)
inf forall x: exists[=1] y: mate(x,y)
inf forall y: exists[=1] x: mate(x,y)
1.0 mate(x,y) -> fr(x,y)
"""


@dataclass(frozen=True)
class Preset:
    name: str
    template: str
    mln: bool = False
    parameters: Tuple[str, ...] = ()
    description: str = ""

    def text(self, domain_size: int, **params) -> str:
        missing = [p for p in self.parameters if p not in params]
        if missing:
            raise ValueError(f"preset {self.name} needs parameters {missing}")
        return f"domain {domain_size}\n" + self.template.format(**params).lstrip("\n")


PRESETS: Dict[str, Preset] = {
    p.name: p for p in (
        Preset("two-colored-graphs", TWO_COLORED_GRAPHS,
               description="labeled graphs with a proper 2-coloring"),
        Preset("no-isolated-vertices", NO_ISOLATED_VERTICES,
               description="undirected loopless graphs without isolated vertices"),
        Preset("k-regular", K_REGULAR, parameters=("k",),
               description="undirected loopless graphs with every degree equal to k"),
        Preset("functions", FUNCTIONS, description="total functions on the domain"),
        Preset("functions-no-fixpoint", FUNCTIONS_NO_FIXPOINT,
               description="total functions without fixed points"),
        Preset("permutations", PERMUTATIONS, description="bijections of the domain"),
        Preset("derangements", DERANGEMENTS, description="permutations without fixed points"),
        Preset("friends-smokers", FRIENDS_SMOKERS, mln=True,
               description="friends and smokers network"),
        Preset("employment", EMPLOYMENT, mln=True, description="employment network"),
        Preset("deskmate", DESKMATE, mln=True, description="deskmate network"),
    )
}


def preset_text(name: str, domain_size: int, params: Optional[Mapping[str, object]] = None) -> str:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    params = dict(params or {})
    p = PRESETS[name]
    if name == "k-regular":
        k = int(params.get("k", 2))
        if k >= domain_size:
            logger.warning(f"k-regular with k={k} >= n={domain_size}: the count decides satisfiability")
        params["k"] = k
    return p.text(domain_size, **{k: params[k] for k in p.parameters})


def preset_mln(name: str, domain_size: int) -> MlnSpec:
    spec = parse_mln(preset_text(name, domain_size))
    return MlnSpec(spec.formulas, spec.domain_size, name)


def preset(
    name: str,
    domain_size: int,
    params: Optional[Mapping[str, object]] = None,
    precision: float = 1e-12,
) -> Problem:
    """Builds a preset problem; MLN presets go through the MLN reduction.

    ``params`` may hold ``k`` (k-regular) and ``weights``, a mapping from
    predicate name to a (w, wbar) pair overriding the unit weights.
    """
    params = dict(params or {})
    text = preset_text(name, domain_size, params)
    if PRESETS[name].mln:
        problem = mln_to_wfoms(preset_mln(name, domain_size), precision).transformed
    else:
        problem = parse_problem(text)
    overrides = params.get("weights") or {}
    if overrides:
        weights = dict(problem.weights)
        table = {p.name: p for p in problem.vocabulary}
        for pred_name, (w, wbar) in overrides.items():
            if pred_name not in table:
                raise KeyError(f"preset {name} has no predicate {pred_name}")
            weights[table[pred_name]] = (parse_weight(str(w)), parse_weight(str(wbar)))
        problem = Problem(problem.sentence, problem.domain_size, weights, problem.constraints,
                          problem.name, problem.output_vocabulary)
    return Problem(problem.sentence, problem.domain_size, problem.weights, problem.constraints,
                   name, problem.output_vocabulary)
