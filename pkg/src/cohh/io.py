"""JSON coalgebra files.

Schema (``"format": 1``)::

    {
      "format": 1,
      "field": "F2",                      # "Q" or "F<p>"
      "max_degree": 8,
      "basis": [["1", 0], ["x", 2], ...],
      "counit": "1",                      # the coaugmentation; counit 1 there, 0 elsewhere
      "comult": [["x", "1", "x", "1"], ...],   # element, left, right, coefficient
      "differential": [["a", "b", "1"], ...],  # optional: element, image, coefficient
      "model": [["x", 2, "DividedPower"], ...] # optional, verified on load
    }

Coefficients are decimal integers or ``"a/b"`` strings; JSON numbers are
accepted only when integral.  Errors name the offending JSON path, or the
line and column for syntax errors.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Tuple

from .coalgebra import (KINDS, CoalgebraPresentation, Generator, Model, PresentationError,
                        monomial_coalgebra)
from .field import Field, FieldError, vec_add_into
from .graded import GradedSpace

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, path: str = "", line: int = 0, col: int = 0):
        where = f"line {line}, column {col}: " if line else (f"{path}: " if path else "")
        super().__init__(where + message)
        self.path = path
        self.line = line
        self.col = col


@dataclass
class LoadedCoalgebra:
    coalgebra: CoalgebraPresentation
    digest: str
    source: str


def digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _scalar(F: Field, value: Any, path: str):
    if isinstance(value, bool):
        raise ParseError("coefficient must be a number or string", path)
    if isinstance(value, int):
        return F(value)
    if isinstance(value, float):
        if value != int(value):
            raise ParseError(f"non-integral float coefficient {value!r}; use \"a/b\"", path)
        return F(int(value))
    if isinstance(value, str):
        try:
            return F.parse_scalar(value)
        except (FieldError, ZeroDivisionError, ValueError) as e:
            raise ParseError(str(e), path) from None
    raise ParseError(f"bad coefficient {value!r}", path)


def _expect(cond: bool, msg: str, path: str) -> None:
    if not cond:
        raise ParseError(msg, path)


def parse_coalgebra(doc: Any) -> CoalgebraPresentation:
    _expect(isinstance(doc, dict), "top level must be an object", "$")
    _expect(doc.get("format") == FORMAT_VERSION, f"expected \"format\": {FORMAT_VERSION}", "format")
    try:
        F = Field.parse(str(doc.get("field", "")))
    except (FieldError, ValueError) as e:
        raise ParseError(str(e), "field") from None
    D = doc.get("max_degree")
    _expect(isinstance(D, int) and not isinstance(D, bool) and D >= 0,
            "max_degree must be a nonnegative integer", "max_degree")
    basis = doc.get("basis")
    _expect(isinstance(basis, list) and basis, "basis must be a nonempty list", "basis")
    items = []
    for i, entry in enumerate(basis):
        p = f"basis[{i}]"
        _expect(isinstance(entry, list) and len(entry) == 2, "expected [name, degree]", p)
        name, deg = entry
        _expect(isinstance(name, str) and name, "name must be a nonempty string", p)
        _expect(isinstance(deg, int) and not isinstance(deg, bool) and 0 <= deg <= D,
                f"degree must be an integer in [0, {D}]", p)
        items.append((name, deg))
    try:
        space = GradedSpace.from_degrees(items, D)
    except ValueError as e:
        raise ParseError(str(e), "basis") from None
    names = list(space.names())
    known = set(names)
    unit = doc.get("counit")
    _expect(isinstance(unit, str) and unit in known, "counit must name a basis element", "counit")
    comult: Dict[str, Dict[Tuple[str, str], Any]] = {n: {} for n in names}
    entries = doc.get("comult")
    _expect(isinstance(entries, list), "comult must be a list", "comult")
    for i, entry in enumerate(entries):
        p = f"comult[{i}]"
        _expect(isinstance(entry, list) and len(entry) == 4,
                "expected [element, left, right, coefficient]", p)
        c, a, b, k = entry
        for x in (c, a, b):
            _expect(isinstance(x, str) and x in known, f"unknown basis element {x!r}", p)
        vec_add_into(F, comult[c], (a, b), _scalar(F, k, p))
    differential = None
    if "differential" in doc:
        entries = doc["differential"]
        _expect(isinstance(entries, list), "differential must be a list", "differential")
        differential = {n: {} for n in names}
        for i, entry in enumerate(entries):
            p = f"differential[{i}]"
            _expect(isinstance(entry, list) and len(entry) == 3,
                    "expected [element, image, coefficient]", p)
            c, a, k = entry
            for x in (c, a):
                _expect(isinstance(x, str) and x in known, f"unknown basis element {x!r}", p)
            vec_add_into(F, differential[c], a, _scalar(F, k, p))
    try:
        pres = CoalgebraPresentation(F, space, comult, unit, differential)
    except PresentationError as e:
        raise ParseError(str(e), "comult") from None
    if "model" in doc:
        pres = _attach_model(pres, doc["model"])
    return pres


def _attach_model(pres: CoalgebraPresentation, model: Any) -> CoalgebraPresentation:
    _expect(isinstance(model, list), "model must be a list", "model")
    gens = []
    for i, entry in enumerate(model):
        p = f"model[{i}]"
        _expect(isinstance(entry, list) and len(entry) == 3, "expected [name, degree, kind]", p)
        name, deg, kind = entry
        _expect(isinstance(name, str) and isinstance(deg, int) and kind in KINDS,
                f"kind must be one of {list(KINDS)}", p)
        gens.append(Generator(name, deg, kind))
    try:
        ref = monomial_coalgebra(pres.field, gens, pres.D)
    except PresentationError as e:
        raise ParseError(str(e), "model") from None
    if ref.space != pres.space or ref.comult != pres.comult or ref.unit != pres.unit \
            or pres.has_differential:
        raise ParseError("declared model does not match the coefficient table", "model")
    return CoalgebraPresentation(pres.field, pres.space, pres.comult, pres.unit, None, ref.model)


def loads(text: str) -> CoalgebraPresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, col=e.colno) from None
    return parse_coalgebra(doc)


def load(path) -> LoadedCoalgebra:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"not UTF-8: {e}") from None
    return LoadedCoalgebra(loads(text), digest_bytes(data), str(path))


def to_document(c: CoalgebraPresentation) -> Dict[str, Any]:
    F = c.field
    doc: Dict[str, Any] = {
        "format": FORMAT_VERSION,
        "field": F.name,
        "max_degree": c.D,
        "basis": [[n, t] for n, t in c.space.items()],
        "counit": c.unit,
        "comult": [[n, a, b, F.format(k)]
                   for n in c.space.names() for (a, b), k in c.comult[n].items()],
    }
    if c.has_differential:
        doc["differential"] = [[n, a, F.format(k)]
                               for n in c.space.names() for a, k in c.d(n).items()]
    if c.model is not None:
        doc["model"] = [[g.name, g.degree, g.kind] for g in c.model.generators]
    return doc


def dumps(c: CoalgebraPresentation) -> str:
    return _dump_compact(to_document(c))


def _dump_compact(doc: Dict[str, Any]) -> str:
    # one list entry per line keeps fixtures diffable
    lines = ["{"]
    keys = list(doc)
    for i, k in enumerate(keys):
        v = doc[k]
        tail = "," if i < len(keys) - 1 else ""
        if isinstance(v, list):
            lines.append(f"  {json.dumps(k)}: [")
            for j, item in enumerate(v):
                sep = "," if j < len(v) - 1 else ""
                lines.append(f"    {json.dumps(item, ensure_ascii=False)}{sep}")
            lines.append(f"  ]{tail}")
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}{tail}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save(c: CoalgebraPresentation, path) -> None:
    Path(path).write_text(dumps(c), encoding="utf-8")


def same_coefficients(a: CoalgebraPresentation, b: CoalgebraPresentation) -> bool:
    """Semantic equality of two presentations (after normalization)."""
    return (a.field == b.field and a.space == b.space and a.unit == b.unit
            and a.comult == b.comult and _nonzero(a.differential) == _nonzero(b.differential))


def _nonzero(d):
    return {k: v for k, v in (d or {}).items() if v}
