"""JSON parameter files for the command-line front end.

A parameter file is a flat JSON object.  Field kinds:

* complex: a JSON number, or a two-element list ``[re, im]``;
* integer: a JSON integer literal (``2``, never ``2.0``);
* label: an integer, or a string holding a fraction such as ``"1/2"``;
* real: any JSON number;
* vectors of the above, as JSON lists of fixed length.

Integers and reals are told apart by the JSON literal itself, so parity and
balancing rules can be checked with exact arithmetic when the typed parameter
objects are built.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError


@dataclass(frozen=True)
class Field:
    kind: str  # complex | integer | label | real | bool | string
    length: int | None = None  # None: scalar
    required: bool = True


def C(length=None, required=True):
    return Field("complex", length, required)


def I(length=None, required=True):  # noqa: E743
    return Field("integer", length, required)


def L(length=None, required=True):
    return Field("label", length, required)


def R(required=True):
    return Field("real", None, required)


def B(required=False):
    return Field("bool", None, required)


def S(required=False):
    return Field("string", None, required)


def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


class _Reader:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source

    def fail(self, key: str, msg: str):
        line = _line_of(self.text, key)
        where = f"{self.source}:{line}" if line else self.source
        raise ParseError(f"{where}: field {key!r}: {msg}")

    def number(self, key, v) -> float:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            self.fail(key, f"expected a number, got {v!r}")
        return v

    def scalar(self, key, kind, v):
        if kind == "complex":
            if isinstance(v, list):
                if len(v) != 2:
                    self.fail(key, f"complex pairs are [re, im], got {v!r}")
                return complex(self.number(key, v[0]), self.number(key, v[1]))
            return complex(self.number(key, v))
        if kind == "integer":
            if isinstance(v, bool) or not isinstance(v, int):
                self.fail(key, f"expected an integer literal, got {v!r}")
            return v
        if kind == "label":
            if isinstance(v, bool):
                self.fail(key, f"expected an integer or a fraction string, got {v!r}")
            if isinstance(v, int):
                return Fraction(v)
            if isinstance(v, str):
                try:
                    return Fraction(v.strip())
                except (ValueError, ZeroDivisionError):
                    self.fail(key, f"cannot read {v!r} as a fraction")
            self.fail(key, f"expected an integer or a fraction string, got {v!r}")
        if kind == "real":
            return float(self.number(key, v))
        if kind == "bool":
            if not isinstance(v, bool):
                self.fail(key, f"expected true or false, got {v!r}")
            return v
        if kind == "string":
            if not isinstance(v, str):
                self.fail(key, f"expected a string, got {v!r}")
            return v
        raise AssertionError(kind)

    def value(self, key, f: Field, v):
        if f.length is None:
            return self.scalar(key, f.kind, v)
        if not isinstance(v, list) or len(v) != f.length:
            self.fail(key, f"expected a list of {f.length} entries")
        return tuple(self.scalar(key, f.kind, x) for x in v)


def parse_text(text: str, schema: dict[str, Field], source: str = "<params>") -> dict:
    """Validate ``text`` against ``schema``; unknown keys are rejected."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{source}: top level must be a JSON object")
    rd = _Reader(text, source)
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        rd.fail(unknown[0], f"unknown field; expected one of {sorted(schema)}")
    out = {}
    for key, f in schema.items():
        if key not in raw:
            if f.required:
                raise ParseError(f"{source}: missing required field {key!r}")
            continue
        out[key] = rd.value(key, f, raw[key])
    return out


def parse_file(path: str, schema: dict[str, Field]) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return parse_text(text, schema, path)


def to_json(x):
    """Inverse mapping for output: complex as [re, im], fractions as strings."""
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (tuple, list)):
        return [to_json(v) for v in x]
    if isinstance(x, dict):
        return {k: to_json(v) for k, v in x.items()}
    if hasattr(x, "item"):
        return to_json(x.item())
    return x
