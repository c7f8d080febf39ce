from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Set, Tuple, Union

from gmpy2 import mpq

from ..cells.types import TseitinAtom
from ..fol.structure import Model
from ..fol.syntax import Exists, Forall, Formula, Iff, Pred, conjunction
from ..models import Problem


class FreshNames:
    """Allocates reserved ``__<prefix><i>`` predicate names that do not clash
    with any name already in use"""

    def __init__(self, taken: Iterable[Pred] = ()):
        self._taken: Set[str] = {p.name for p in taken}

    def reserve(self, preds: Iterable[Pred]) -> None:
        self._taken.update(p.name for p in preds)

    def pred(self, prefix: str, arity: int) -> Pred:
        i = 1
        while f"__{prefix}{i}" in self._taken:
            i += 1
        name = f"__{prefix}{i}"
        self._taken.add(name)
        return Pred(name, arity)


@dataclass(frozen=True)
class Reduct:
    """Back-map that forgets every predicate outside a vocabulary"""
    vocabulary: Tuple[Pred, ...]

    def __call__(self, model: Model) -> Model:
        return model.reduct(self.vocabulary)


@dataclass(frozen=True)
class SnfSentence:
    """forall x forall y: universal  &  AND_k forall x exists y: existentials[k]"""
    universal: Formula
    existentials: Tuple[Formula, ...] = ()

    def as_formula(self) -> Formula:
        parts = [Forall("x", Forall("y", self.universal))]
        parts.extend(Forall("x", Exists("y", phi)) for phi in self.existentials)
        return conjunction(parts)


@dataclass(frozen=True)
class TseitinSentence:
    """forall x forall y: universal  &  AND_k forall x: Z_k(x) <-> exists y: R_k(x,y).

    Counting and sampling read only ``universal`` and the registry; the Z_k
    obligations are carried by block types instead of atoms.
    """
    universal: Formula
    registry: Tuple[TseitinAtom, ...] = ()

    def as_formula(self) -> Formula:
        parts = [Forall("x", Forall("y", self.universal))]
        for entry in self.registry:
            parts.append(Forall("x", Iff(entry.z("x"), Exists("y", entry.forward()))))
        return conjunction(parts)

    @property
    def auxiliary(self) -> Tuple[Pred, ...]:
        return tuple(entry.z for entry in self.registry)


@dataclass
class Reduction:
    """One normalization step: the transformed problem, a map from its models
    back onto models of the input, and how many transformed models stand
    for each input model"""
    transformed: Problem
    back_map: Reduct
    multiplicity: mpq = field(default_factory=lambda: mpq(1))
    normal_form: Optional[Union[SnfSentence, TseitinSentence]] = None
    notes: List[str] = field(default_factory=list)
