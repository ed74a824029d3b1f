"""
Reading JSON input and rendering reports.
"""
import json
import sys
from fractions import Fraction
from numbers import Integral
from typing import Any, List, Tuple

import numpy as np

from ..config import __hastexttable__
from ..exceptions import PreconditionError

if __hastexttable__:
    from texttable import Texttable

__all__ = ["jsonable", "read_input", "dumps", "render"]


def jsonable(obj: Any) -> Any:
    """
    Returns a structure of dicts, lists, strings, integers and booleans.
    Rationals become strings like "2/3", objects with a `to_dict` method
    are serialized through it.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (Integral, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (list, tuple)) and not hasattr(obj, "to_dict"):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if isinstance(obj, float):
        return obj
    return str(obj)


def read_input(path: str = None, inline: str = None, required: bool = True) -> dict:
    """
    Loads the JSON document of a subcommand from inline text, a file,
    or standard input if the path is "-" or nothing else is given.

    Raises
    ------
    PreconditionError
        If the input is missing or not valid JSON.
    """
    if inline is not None:
        text = inline
    elif path is not None and path != "-":
        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise PreconditionError("Cannot read {}: {}".format(path, e))
    elif path == "-" or (required and not sys.stdin.isatty()):
        text = sys.stdin.read()
    else:
        if required:
            raise PreconditionError("This command needs JSON input.")
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise PreconditionError("Invalid JSON input: {}".format(e))


def dumps(report: Any) -> str:
    return json.dumps(jsonable(report), indent=2, ensure_ascii=False)


def _flatten(obj: Any, prefix: str = "") -> List[Tuple[str, str]]:
    rows = []
    if isinstance(obj, dict) and obj:
        for k, v in obj.items():
            rows.extend(_flatten(v, "{}.{}".format(prefix, k) if prefix else str(k)))
    elif isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        for i, v in enumerate(obj):
            rows.extend(_flatten(v, "{}[{}]".format(prefix, i)))
    else:
        value = obj if isinstance(obj, str) else json.dumps(obj, ensure_ascii=False)
        rows.append((prefix, value))
    return rows


def render(report: Any) -> str:
    """Renders a report as a two column table."""
    rows = _flatten(jsonable(report))
    if __hastexttable__:
        table = Texttable(max_width=120)
        table.set_cols_align(["l", "l"])
        table.header(["key", "value"])
        table.add_rows(rows, header=False)
        return table.draw()
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join("{}  {}".format(k.ljust(width), v) for k, v in rows)
