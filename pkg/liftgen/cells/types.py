from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Optional, Tuple

from ..errors import InconsistencyError
from ..fol.syntax import Atom, Pred, substitute

Literal = Tuple[Atom, bool]
BlockType = FrozenSet[int]


def instantiate(literals: Tuple[Literal, ...], mapping: Dict[str, int]) -> Dict[Atom, bool]:
    return {substitute(atom, mapping): value for atom, value in literals}


@dataclass(frozen=True)
class OneType:
    """Maximally consistent set of 1-literals over x (unary atoms and
    reflexive binary atoms)"""
    index: int
    literals: Tuple[Literal, ...]
    valid: bool = field(default=True, compare=False)

    def value(self, atom: Atom) -> Optional[bool]:
        for a, v in self.literals:
            if a == atom:
                return v
        return None

    def positives(self) -> Tuple[Atom, ...]:
        return tuple(a for a, v in self.literals if v)

    def at(self, element: int) -> Dict[Atom, bool]:
        return instantiate(self.literals, {"x": element})

    def __str__(self) -> str:
        parts = [str(a) if v else f"~{a}" for a, v in self.literals]
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class TwoTable:
    """Maximally consistent set of 2-literals: R(x,y) and R(y,x) for every
    binary predicate R"""
    index: int
    literals: Tuple[Literal, ...]

    def value(self, atom: Atom) -> Optional[bool]:
        for a, v in self.literals:
            if a == atom:
                return v
        return None

    def positives(self) -> Tuple[Atom, ...]:
        return tuple(a for a, v in self.literals if v)

    def between(self, first: int, second: int) -> Dict[Atom, bool]:
        return instantiate(self.literals, {"x": first, "y": second})

    def __str__(self) -> str:
        parts = [str(a) if v else f"~{a}" for a, v in self.literals]
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class TseitinAtom:
    """Registry entry k: the obligation Z_k(x) <-> exists y: R_k(x,y)"""
    index: int
    z: Pred
    r: Pred

    def forward(self) -> Atom:
        return self.r("x", "y")

    def backward(self) -> Atom:
        return self.r("y", "x")

    def reflexive(self) -> Atom:
        return self.r("x", "x")


@dataclass(frozen=True)
class CellType:
    block: BlockType
    one_type: OneType

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.one_type.index, tuple(sorted(self.block)))

    def __str__(self) -> str:
        zs = ",".join(f"Z{k}" for k in sorted(self.block))
        return f"({{{zs}}}, tau{self.one_type.index})"


@dataclass(frozen=True)
class Configuration:
    """Part sizes of an ordered partition of ``total`` items"""
    counts: Tuple[int, ...]
    total: int

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise InconsistencyError(f"negative entry in configuration {self.counts}")
        if sum(self.counts) != self.total:
            raise InconsistencyError(f"configuration {self.counts} does not sum to {self.total}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]


@dataclass(frozen=True)
class EvidenceType:
    """Consistent, not necessarily maximal, set of 1-literals"""
    literals: FrozenSet[Literal]

    def __post_init__(self):
        seen: Dict[Atom, bool] = {}
        for atom, value in self.literals:
            if seen.setdefault(atom, value) != value:
                raise InconsistencyError(f"evidence type mentions {atom} with both polarities")

    def admits(self, one_type: OneType) -> bool:
        return all(one_type.value(a) in (None, v) for a, v in self.literals)
