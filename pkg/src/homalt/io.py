"""JSON documents for algebras and bimodules.

Rationals are written as ``"p/q"`` (or ``"p"``) strings so that nothing passes
through floating point.  Algebra document::

    {"name": "a7_3", "dim": 3, "basis": ["e1", "e2", "e3"],
     "mul": [[1, 2, 0, "1"], ...], "alpha": ["1", "1", "0", ...]}

``mul`` lists ``[i, j, k, c]`` meaning ``mu(b_i, b_j)`` has coefficient c on
``b_k``; omitted pairs multiply to zero.  ``alpha`` is dense and row-major.
A bimodule document has ``base`` (fixture name or inline algebra document),
``dim``, ``alpha_v``, ``left`` (``[i, p, q, c]``) and ``right`` (``[p, i, q, c]``).
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Callable

from .algebra import HomAlgebra
from .bimodule import HomBimodule
from .errors import MalformedRationalError, ParseError
from .exactlin import Matrix, parse_rational


def rational_text(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(value, locus: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError("coefficients must be integers or 'p/q' strings", locus)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError("coefficient is not text", locus)
    try:
        return parse_rational(value)
    except MalformedRationalError as exc:
        raise MalformedRationalError(f"{locus}: {exc}") from None


def _count(doc: dict, key: str, locus: str) -> int:
    if key not in doc:
        raise ParseError(f"missing field {key!r}", locus)
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ParseError(f"field {key!r} must be a non-negative integer", locus)
    return v


def _index(value, bound: int, locus: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError("index must be an integer", locus)
    if not 0 <= value < bound:
        raise ParseError(f"index {value} out of range 0..{bound - 1}", locus)
    return value


def _dense(values, n: int, locus: str) -> Matrix:
    if not isinstance(values, list):
        raise ParseError("matrix must be a list", locus)
    if values and all(isinstance(r, list) for r in values):
        if len(values) != n or any(len(r) != n for r in values):
            raise ParseError(f"matrix must be {n} x {n}", locus)
        flat = [x for r in values for x in r]
    else:
        flat = values
    if len(flat) != n * n:
        raise ParseError(f"expected {n * n} entries, got {len(flat)}", locus)
    entries = [_rational(x, f"{locus}[{k}]") for k, x in enumerate(flat)]
    return Matrix(n, n, tuple(entries))


def _sparse(rows, bounds: tuple, locus: str) -> list[tuple]:
    if not isinstance(rows, list):
        raise ParseError("expected a list of entries", locus)
    out = []
    for r, row in enumerate(rows):
        here = f"{locus}[{r}]"
        if not isinstance(row, list) or len(row) != 4:
            raise ParseError("entry must be [index, index, index, coefficient]", here)
        idx = tuple(_index(v, b, here) for v, b in zip(row[:3], bounds))
        out.append(idx + (_rational(row[3], here),))
    return out


def algebra_from_document(doc: dict, locus: str = "") -> HomAlgebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be an object", locus)
    pre = f"{locus}." if locus else ""
    n = _count(doc, "dim", locus)
    labels = doc.get("basis")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
            raise ParseError(f"basis must list {n} text labels", f"{pre}basis")
        if len(set(labels)) != n:
            raise ParseError("basis labels must be distinct", f"{pre}basis")
    entries = _sparse(doc.get("mul", []), (n, n, n), f"{pre}mul")
    seen = {}
    for i, j, k, c in entries:
        if (i, j, k) in seen:
            raise ParseError(f"product coefficient ({i}, {j}, {k}) listed twice", f"{pre}mul")
        seen[(i, j, k)] = c
    if "alpha" in doc:
        twist = _dense(doc["alpha"], n, f"{pre}alpha")
    else:
        twist = Matrix.identity(n)
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be text", f"{pre}name")
    return HomAlgebra.from_entries(n, entries, twist, labels, name)


def algebra_to_document(alg: HomAlgebra, comment: str = "") -> dict:
    doc = {
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.labels),
        "mul": [[i, j, k, rational_text(c)] for i, j, k, c in alg.entries()],
        "alpha": [rational_text(x) for x in alg.twist.entries],
    }
    if comment:
        doc["comment"] = comment
    return doc


def _default_resolver(name: str) -> HomAlgebra:
    from . import fixtures

    return fixtures.get(name)


def bimodule_from_document(
    doc: dict, resolve: Callable[[str], HomAlgebra] = _default_resolver
) -> HomBimodule:
    if not isinstance(doc, dict):
        raise ParseError("bimodule document must be an object")
    if "base" not in doc:
        raise ParseError("missing field 'base'")
    base_ref = doc["base"]
    if isinstance(base_ref, str):
        try:
            base = resolve(base_ref)
        except KeyError as exc:
            raise ParseError(str(exc.args[0]), "base") from None
    else:
        base = algebra_from_document(base_ref, "base")
    m = _count(doc, "dim", "")
    n = base.dim
    twist = _dense(doc["alpha_v"], m, "alpha_v") if "alpha_v" in doc else Matrix.identity(m)
    left = _sparse(doc.get("left", []), (n, m, m), "left")
    right = _sparse(doc.get("right", []), (m, n, m), "right")
    name = doc.get("name", "")
    return HomBimodule.from_entries(base, m, left, right, twist, name if isinstance(name, str) else "")


def bimodule_to_document(bim: HomBimodule, base_ref: str | None = None) -> dict:
    base = base_ref if base_ref is not None else algebra_to_document(bim.base)
    return {
        "name": bim.name,
        "base": base,
        "dim": bim.dim,
        "alpha_v": [rational_text(x) for x in bim.module_twist.entries],
        "left": [[i, p, q, rational_text(c)] for i, p, q, c in bim.left_entries()],
        "right": [[p, i, q, rational_text(c)] for p, i, q, c in bim.right_entries()],
    }


def _parse_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def load(text: str, resolve: Callable[[str], HomAlgebra] = _default_resolver):
    """Parse a document into a ``HomAlgebra`` or, if it has a ``base`` key, a ``HomBimodule``."""
    doc = _parse_json(text)
    if isinstance(doc, dict) and "base" in doc:
        return bimodule_from_document(doc, resolve)
    return algebra_from_document(doc)


def save(obj, comment: str = "") -> str:
    if isinstance(obj, HomBimodule):
        doc = bimodule_to_document(obj)
    elif isinstance(obj, HomAlgebra):
        doc = algebra_to_document(obj, comment)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(doc, indent=1) + "\n"


def digest(obj) -> str:
    """Short content hash of the saved document (name excluded)."""
    if isinstance(obj, HomAlgebra):
        doc = algebra_to_document(obj)
    else:
        doc = bimodule_to_document(obj)
    doc.pop("name", None)
    if isinstance(doc.get("base"), dict):
        doc["base"].pop("name", None)
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
