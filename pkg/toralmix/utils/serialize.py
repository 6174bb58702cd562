"""
Report Serialization

Reports are JSON documents with sorted keys and compact separators so that
identical inputs give byte-identical output. Integers that do not fit in a
signed 64-bit word are written as decimal strings, rationals as "p/q"
strings and complex rationals as {"re": ..., "im": ...}. Objects exposing
``to_dict`` are expanded through it.
"""
import json
from enum import Enum
from fractions import Fraction
from typing import Any

from toralmix.models.trigpoly import ComplexRational

INT64_MAX = (1 << 63) - 1


def to_jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, str, float)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, int):
        return value if -INT64_MAX <= value <= INT64_MAX else str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, ComplexRational):
        return value.to_dict()
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    if hasattr(value, 'to_dict'):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def dumps(value: Any) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, separators=(',', ':'))
