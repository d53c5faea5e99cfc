"""JSON encoding for report dataclasses.

Rationals are serialized as {"num": ..., "den": ...}; dataclasses become
objects in field order; tuples become arrays.  Output is deterministic for
a given report, which is what makes seeded CLI runs byte-identical.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2) + "\n"
