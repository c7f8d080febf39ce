from itertools import product
from typing import Dict, Iterable, List, Sequence, Tuple

from ..errors import LiftgenError
from ..fol.syntax import Atom, BOT, Formula, Pred, TOP, conjunction, simplify, substitute
from .types import BlockType, OneType, TseitinAtom, TwoTable


def one_type_atoms(vocabulary: Iterable[Pred]) -> List[Atom]:
    atoms = []
    for pred in sorted(vocabulary):
        if pred.arity == 1:
            atoms.append(pred("x"))
        elif pred.arity == 2:
            atoms.append(pred("x", "x"))
    return atoms


def two_table_atoms(vocabulary: Iterable[Pred]) -> List[Atom]:
    atoms = []
    for pred in sorted(vocabulary):
        if pred.arity == 2:
            atoms.extend((pred("x", "y"), pred("y", "x")))
    return atoms


def _check_vocabulary(vocabulary: Sequence[Pred]) -> None:
    nullary = [p.name for p in vocabulary if p.arity == 0]
    if nullary:
        raise LiftgenError(f"nullary predicates must be fixed before cell enumeration: {nullary}")


def enumerate_1types(vocabulary: Sequence[Pred], psi: Formula) -> List[OneType]:
    """All 1-types in lexicographic order, flagged by whether psi(x,x) can hold"""
    _check_vocabulary(vocabulary)
    atoms = one_type_atoms(vocabulary)
    diagonal = simplify(substitute(psi, {"y": "x"}))
    types = []
    for index, values in enumerate(product((False, True), repeat=len(atoms))):
        literals = tuple(zip(atoms, values))
        valid = simplify(diagonal, dict(literals)) != BOT
        types.append(OneType(index, literals, valid))
    return types


def enumerate_2tables(vocabulary: Sequence[Pred]) -> List[TwoTable]:
    _check_vocabulary(vocabulary)
    atoms = two_table_atoms(vocabulary)
    return [
        TwoTable(index, tuple(zip(atoms, values)))
        for index, values in enumerate(product((False, True), repeat=len(atoms)))
    ]


def table_index(values: Sequence[bool]) -> int:
    """Position of a 2-table in ``enumerate_2tables`` given its literal values"""
    index = 0
    for v in values:
        index = (index << 1) | int(v)
    return index


def pair_formula(psi: Formula, first: int = 1, second: int = 2) -> Formula:
    """psi(a,b) & psi(b,a) for two distinct elements"""
    return conjunction([
        substitute(psi, {"x": first, "y": second}),
        substitute(psi, {"x": second, "y": first}),
    ])


def coherent(table: TwoTable, first: OneType, second: OneType, psi: Formula) -> bool:
    """Whether table, with first at x and second at y, satisfies psi both ways"""
    assignment: Dict[Atom, bool] = {**first.at(1), **second.at(2), **table.between(1, 2)}
    return simplify(pair_formula(psi), assignment) == TOP


def initial_block(one_type: OneType, registry: Sequence[TseitinAtom]) -> BlockType:
    """Obligations an element of this 1-type does not already satisfy by a
    reflexive atom"""
    return frozenset(
        entry.index for entry in registry if one_type.value(entry.reflexive()) is not True
    )


def relax_block(block: BlockType, table: TwoTable, registry: Sequence[TseitinAtom]) -> BlockType:
    """Block of the y-side element after table is placed between x and y"""
    by_index = {entry.index: entry for entry in registry}
    return frozenset(k for k in block if table.value(by_index[k].backward()) is not True)


def forward_satisfied(table: TwoTable, registry: Sequence[TseitinAtom]) -> Tuple[int, ...]:
    """Obligations of the x-side element that table fulfils"""
    return tuple(entry.index for entry in registry if table.value(entry.forward()) is True)
