from .parser import parse_formula, parse_mln, parse_model, parse_problem, parse_weight
from .formatter import (
    ModelRecord, format_header, format_mln, format_model, format_problem,
    format_rational, format_record,
)

__all__ = [
    'parse_formula', 'parse_mln', 'parse_model', 'parse_problem', 'parse_weight',
    'ModelRecord', 'format_header', 'format_mln', 'format_model', 'format_problem',
    'format_rational', 'format_record',
]
