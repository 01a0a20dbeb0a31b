"""JSON input and output.

An arrangement file looks like::

    {"lines": [["1", "0", "0"], ["0", "1", "0"], ["1", "1", "-1"]],
     "multiplicities": [1, 2, 3]}

Each line is ``[a, b, c]`` for ``a x + b y + c``; coefficients are integers
or strings ``"p/q"``.  A form file holds ``{"degree": d, "coefficients":
[...]}`` in the order documented in :mod:`centerkit.tangent`.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import jsonschema

from .arrangement import ArrangementError, LineArrangement, as_fraction, validate
from .tangent import FoliationForm

_number = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*[-+]?\d+(\s*/\s*[-+]?\d+)?\s*$"}]}

ARRANGEMENT_SCHEMA = {
    "type": "object",
    "required": ["lines", "multiplicities"],
    "properties": {
        "lines": {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 3, "maxItems": 3, "items": _number}},
        "multiplicities": {"type": "array", "minItems": 1, "items": {"type": "integer"}},
        "name": {"type": "string"},
    },
}

FORM_SCHEMA = {
    "type": "object",
    "required": ["degree", "coefficients"],
    "properties": {
        "degree": {"type": "integer", "minimum": 1},
        "coefficients": {"type": "array", "items": _number},
    },
}


class InputError(ValueError):
    """Malformed input; the message names the offending field."""


def _check(data, schema, what: str) -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "(top level)"
        raise InputError(f"{what}: field {where}: {exc.message}") from None


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def arrangement_from_json(data, what: str = "arrangement") -> LineArrangement:
    _check(data, ARRANGEMENT_SCHEMA, what)
    if len(data["lines"]) != len(data["multiplicities"]):
        raise InputError(f"{what}: field multiplicities: {len(data['multiplicities'])} values for {len(data['lines'])} lines")
    try:
        arr = LineArrangement.from_coefficients(data["lines"], data["multiplicities"])
    except (ValueError, ZeroDivisionError, ArrangementError) as exc:
        raise InputError(f"{what}: field lines: {exc}") from None
    rep = validate(arr)
    if not rep.ok:
        field = "multiplicities" if "multiplicit" in rep.violation or "divisor" in rep.violation else "lines"
        raise InputError(f"{what}: field {field}: {rep.message()}")
    return arr


def load_arrangement(path) -> LineArrangement:
    return arrangement_from_json(load_json(path), str(path))


def form_from_json(data, what: str = "form") -> FoliationForm:
    _check(data, FORM_SCHEMA, what)
    try:
        return FoliationForm(int(data["degree"]), tuple(as_fraction(c) for c in data["coefficients"]))
    except ValueError as exc:
        raise InputError(f"{what}: field coefficients: {exc}") from None


def load_form(path) -> FoliationForm:
    return form_from_json(load_json(path), str(path))


def canonical(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def input_hash(arr: LineArrangement) -> str:
    return hashlib.sha256(canonical(arr.to_json()).encode()).hexdigest()


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_json(data, path=None) -> str:
    text = dumps(data)
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text)
    return text
