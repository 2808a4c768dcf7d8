"""Reading and writing structure-constant documents.

A document is a JSON object with a ``format`` tag, optional ``title`` and
``parameters``, a list of ``spaces``, and a ``structures`` table keyed by
kind.  Every scalar is an exact rational: a JSON integer, a ``"p/q"``
string, or a parameter template such as ``"2*k"`` resolved against the
document's parameters (possibly overridden by the caller).  Floats are
rejected everywhere.

Sparse tables use 1-based string keys (``"1,2,3"``) mapping to sparse
vectors (``{"4": 1}``); operators and tensors are dense row-major arrays.
Emission is canonical — fixed field order, entries and keys sorted, and
parameters materialized — so a second emission is byte-identical.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .actions import (
    CoherentActionData,
    EmbeddingTensorProblem,
    RepresentationData,
)
from .algebras import (
    LeibnizLieAlgebra,
    LieAlgebra,
    LinearMap,
    ThreeLeibnizAlgebra,
    ThreeLeibnizLieAlgebra,
    ThreeLieAlgebra,
)
from .cohomology import ThreeLeibnizRep
from .deformations import Deformation
from .errors import InputError
from .induced_lie import LieCoherentAction, LieNet, TraceMap
from .linalg import Matrix, Vector, rat
from .multilinear import (
    AlternatingTrilinearTable,
    PairAction,
    Space,
    TrilinearTable,
)

FORMAT = "tensorforge/1"

KIND_ORDER = (
    "lie",
    "three_lie",
    "three_leibniz",
    "leibniz_lie",
    "three_leibniz_lie",
    "representations",
    "actions",
    "nets",
    "three_leibniz_reps",
    "lie_actions",
    "lie_nets",
    "traces",
    "maps",
    "deformations",
)

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_SCALAR_RE = re.compile(
    r"^([+-]?)(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)?$"
)


def _reject_float(text: str):
    raise InputError(
        f"non-integer number {text!r} in document: floats are not exact, "
        "write rationals as strings like \"1/2\""
    )


class _ScalarParser:
    """Resolves document scalars against the active parameter values."""

    def __init__(self, values: dict):
        self.values = values

    def parse(self, raw, path: str) -> Fraction:
        if isinstance(raw, bool):
            raise InputError(f"{path}: expected a scalar, got a boolean")
        if isinstance(raw, int):
            return Fraction(raw)
        if not isinstance(raw, str):
            raise InputError(
                f"{path}: expected an integer or a scalar string, "
                f"got {type(raw).__name__}"
            )
        text = raw.strip()
        m = _SCALAR_RE.match(text)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise InputError(f"{path}: cannot read scalar {raw!r}")
        sign = -1 if m.group(1) == "-" else 1
        try:
            coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{path}: cannot read scalar {raw!r}: {exc}") from None
        name = m.group(3)
        if name is not None:
            if name not in self.values:
                available = ", ".join(sorted(self.values)) or "none declared"
                raise InputError(
                    f"{path}: undefined parameter {name!r} "
                    f"(available: {available})"
                )
            coeff *= self.values[name]
        return sign * coeff


class Document:
    """A parsed document: named spaces plus named structures by kind."""

    def __init__(self, title: str | None = None):
        self.title = title
        self.parameters: dict[str, Fraction] = {}
        self.spaces: dict[str, Space] = {}
        self.entries: dict[str, dict] = {kind: {} for kind in KIND_ORDER}

    def add_space(self, space: Space) -> Space:
        known = self.spaces.get(space.name)
        if known is not None:
            if known != space:
                raise InputError(
                    f"two different spaces are both named {space.name!r}"
                )
            return known
        self.spaces[space.name] = space
        return space

    def add(self, kind: str, name: str, obj):
        if kind not in self.entries:
            raise InputError(f"unknown structure kind {kind!r}")
        if name in self.entries[kind]:
            raise InputError(f"duplicate {kind} entry named {name!r}")
        self.entries[kind][name] = obj
        return obj

    def resolve(self, kind: str, name: str | None = None, flag: str = "--name"):
        """The unique entry of a kind, or the named one when `name` is given."""
        registry = self.entries[kind]
        if name is not None:
            if name not in registry:
                available = ", ".join(sorted(registry)) or "none"
                raise InputError(
                    f"no {kind} entry named {name!r} (available: {available})"
                )
            return registry[name]
        if not registry:
            raise InputError(f"the document declares no {kind} entry")
        if len(registry) > 1:
            raise InputError(
                f"the document declares {len(registry)} {kind} entries; "
                f"choose one with {flag}: " + ", ".join(sorted(registry))
            )
        return next(iter(registry.values()))

    def name_of(self, kind: str, obj) -> str:
        for name, known in self.entries[kind].items():
            if known is obj:
                return name
        raise InputError(
            f"emission needs a {kind} entry for a referenced structure, "
            "but it is not part of the document"
        )


def _expect(value, types, path: str, what: str):
    if isinstance(value, bool) or not isinstance(value, types):
        raise InputError(f"{path}: expected {what}, got {type(value).__name__}")
    return value


def _take(entry: dict, path: str, required: dict, optional: dict) -> dict:
    """Validate an entry's fields against the declared schema."""
    out = {}
    for field, (types, what) in required.items():
        if field not in entry:
            raise InputError(f"{path}: missing required field {field!r}")
        out[field] = _expect(entry[field], types, f"{path}.{field}", what)
    for field, (types, what, default) in optional.items():
        if field in entry:
            out[field] = _expect(entry[field], types, f"{path}.{field}", what)
        else:
            out[field] = default
    known = set(required) | set(optional)
    for field in entry:
        if field not in known:
            raise InputError(f"{path}: unknown field {field!r}")
    return out


def _parse_name(raw, path: str) -> str:
    """Names of spaces and entries: any non-blank string, no edge blanks."""
    name = _expect(raw, str, path, "a name string")
    if not name or name != name.strip():
        raise InputError(f"{path}: {name!r} is not a usable name")
    return name


def _parse_parameter_name(raw, path: str) -> str:
    name = _expect(raw, str, path, "a parameter name")
    if not _NAME_RE.match(name):
        raise InputError(
            f"{path}: {name!r} is not a valid parameter name "
            "(letters, digits, underscores; must not start with a digit)"
        )
    return name


def _parse_key(raw: str, arity: int, path: str) -> tuple:
    parts = raw.split(",")
    if len(parts) != arity:
        raise InputError(
            f"{path}: key {raw!r} must hold {arity} comma-separated indices"
        )
    out = []
    for part in parts:
        part = part.strip()
        if not part.isdecimal() or int(part) < 1:
            raise InputError(
                f"{path}: key {raw!r} must hold positive 1-based indices"
            )
        out.append(int(part) - 1)
    return tuple(out)


def _parse_sparse_vector(raw, space: Space, scalars, path: str) -> Vector:
    _expect(raw, dict, path, "a sparse vector object")
    entries = [Fraction(0)] * space.dim
    for key, value in raw.items():
        key_text = key.strip()
        if not key_text.isdecimal() or int(key_text) < 1:
            raise InputError(
                f"{path}: component key {key!r} must be a positive 1-based index"
            )
        index = int(key_text) - 1
        if index >= space.dim:
            raise InputError(
                f"{path}: component {key!r} exceeds the dimension "
                f"of space {space.name!r} ({space.dim})"
            )
        entries[index] = scalars.parse(value, f"{path}.{key}")
    return Vector(entries)


def _parse_dense_vector(raw, dim: int, scalars, path: str) -> Vector:
    _expect(raw, list, path, "a list of scalars")
    if len(raw) != dim:
        raise InputError(f"{path}: expected {dim} components, got {len(raw)}")
    return Vector(
        [scalars.parse(value, f"{path}[{i}]") for i, value in enumerate(raw)]
    )


def _parse_matrix(raw, nrows: int, ncols: int, scalars, path: str) -> Matrix:
    _expect(raw, list, path, "a list of matrix rows")
    if len(raw) != nrows:
        raise InputError(f"{path}: expected {nrows} rows, got {len(raw)}")
    rows = []
    for i, row in enumerate(raw):
        _expect(row, list, f"{path}[{i}]", "a list of scalars")
        if len(row) != ncols:
            raise InputError(
                f"{path}[{i}]: expected {ncols} columns, got {len(row)}"
            )
        rows.append(
            [scalars.parse(value, f"{path}[{i}][{j}]") for j, value in enumerate(row)]
        )
    return Matrix(rows) if rows else Matrix.zeros(0, ncols)


def _parse_vector_table(raw, arity: int, space: Space, codomain: Space,
                        scalars, path: str) -> dict:
    _expect(raw, dict, path, "a table object")
    out = {}
    for key, value in raw.items():
        indices = _parse_key(key, arity, path)
        for index in indices:
            if index >= space.dim:
                raise InputError(
                    f"{path}: key {key!r} exceeds the dimension "
                    f"of space {space.name!r} ({space.dim})"
                )
        out[indices] = _parse_sparse_vector(
            value, codomain, scalars, f"{path}.{key}"
        )
    return out


def _parse_matrix_table(raw, arity: int, source: Space, target: Space,
                        scalars, path: str) -> dict:
    _expect(raw, dict, path, "a table object")
    out = {}
    for key, value in raw.items():
        indices = _parse_key(key, arity, path)
        for index in indices:
            if index >= source.dim:
                raise InputError(
                    f"{path}: key {key!r} exceeds the dimension "
                    f"of space {source.name!r} ({source.dim})"
                )
        mat = _parse_matrix(
            value, target.dim, target.dim, scalars, f"{path}.{key}"
        )
        out[indices if arity > 1 else indices[0]] = mat
    return out


def _space_ref(doc: Document, raw, path: str) -> Space:
    name = _expect(raw, str, path, "a space name")
    if name not in doc.spaces:
        available = ", ".join(sorted(doc.spaces)) or "none"
        raise InputError(f"{path}: unknown space {name!r} (available: {available})")
    return doc.spaces[name]


def _entry_ref(doc: Document, kind: str, raw, path: str):
    name = _expect(raw, str, path, f"a {kind} entry name")
    registry = doc.entries[kind]
    if name not in registry:
        available = ", ".join(sorted(registry)) or "none"
        raise InputError(
            f"{path}: unknown {kind} entry {name!r} (available: {available})"
        )
    return registry[name]


_TABLE = (dict, "a table object")
_LIST = (list, "a list")
_STR = (str, "a string")


def _parse_lie(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "space": _STR},
        {"brackets": (*_TABLE, {})},
    )
    space = _space_ref(doc, fields["space"], f"{path}.space")
    coords = _parse_vector_table(
        fields["brackets"], 2, space, space, scalars, f"{path}.brackets"
    )
    return fields["name"], LieAlgebra(space, coords)


def _parse_three_lie(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "space": _STR},
        {"brackets": (*_TABLE, {})},
    )
    space = _space_ref(doc, fields["space"], f"{path}.space")
    coords = _parse_vector_table(
        fields["brackets"], 3, space, space, scalars, f"{path}.brackets"
    )
    table = AlternatingTrilinearTable(space, space, coords)
    return fields["name"], ThreeLieAlgebra(space, table)


def _parse_three_leibniz(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "space": _STR},
        {"brackets": (*_TABLE, {})},
    )
    space = _space_ref(doc, fields["space"], f"{path}.space")
    coords = _parse_vector_table(
        fields["brackets"], 3, space, space, scalars, f"{path}.brackets"
    )
    table = TrilinearTable(space, space, coords)
    return fields["name"], ThreeLeibnizAlgebra(space, table)


def _parse_leibniz_lie(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "lie": _STR},
        {"products": (*_TABLE, {})},
    )
    lie = _entry_ref(doc, "lie", fields["lie"], f"{path}.lie")
    coords = _parse_vector_table(
        fields["products"], 2, lie.space, lie.space, scalars, f"{path}.products"
    )
    return fields["name"], LeibnizLieAlgebra(lie, coords)


def _parse_three_leibniz_lie(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "three_lie": _STR},
        {"braces": (*_TABLE, {})},
    )
    lie3 = _entry_ref(doc, "three_lie", fields["three_lie"], f"{path}.three_lie")
    coords = _parse_vector_table(
        fields["braces"], 3, lie3.space, lie3.space, scalars, f"{path}.braces"
    )
    braces = TrilinearTable(lie3.space, lie3.space, coords)
    return fields["name"], ThreeLeibnizLieAlgebra(lie3, braces)


def _parse_representation(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "algebra": _STR, "carrier": _STR},
        {"operators": (*_TABLE, {})},
    )
    algebra = _entry_ref(doc, "three_lie", fields["algebra"], f"{path}.algebra")
    carrier = _space_ref(doc, fields["carrier"], f"{path}.carrier")
    coords = _parse_matrix_table(
        fields["operators"], 2, algebra.space, carrier, scalars,
        f"{path}.operators",
    )
    rho = PairAction(algebra.space, carrier, coords)
    return fields["name"], RepresentationData(algebra, carrier, rho)


def _parse_action(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "representation": _STR},
        {"carrier_brackets": (*_TABLE, {})},
    )
    rep = _entry_ref(
        doc, "representations", fields["representation"], f"{path}.representation"
    )
    coords = _parse_vector_table(
        fields["carrier_brackets"], 3, rep.carrier, rep.carrier, scalars,
        f"{path}.carrier_brackets",
    )
    bracket = AlternatingTrilinearTable(rep.carrier, rep.carrier, coords)
    return fields["name"], CoherentActionData(rep, bracket)


def _parse_net(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "action": _STR, "tensor": _LIST},
        {},
    )
    action = _entry_ref(doc, "actions", fields["action"], f"{path}.action")
    lspace = action.algebra.space
    hspace = action.carrier
    matrix = _parse_matrix(
        fields["tensor"], lspace.dim, hspace.dim, scalars, f"{path}.tensor"
    )
    tensor = LinearMap(hspace, lspace, matrix)
    return fields["name"], EmbeddingTensorProblem(action, tensor)


def _parse_three_leibniz_rep(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "algebra": _STR, "carrier": _STR},
        {
            "left": (*_TABLE, {}),
            "middle": (*_TABLE, {}),
            "right": (*_TABLE, {}),
        },
    )
    algebra = _entry_ref(doc, "three_leibniz", fields["algebra"], f"{path}.algebra")
    carrier = _space_ref(doc, fields["carrier"], f"{path}.carrier")
    tables = {
        slot: _parse_matrix_table(
            fields[slot], 2, algebra.space, carrier, scalars, f"{path}.{slot}"
        )
        for slot in ("left", "middle", "right")
    }
    rep = ThreeLeibnizRep(
        algebra, carrier, tables["left"], tables["middle"], tables["right"]
    )
    return fields["name"], rep


def _parse_lie_action(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "algebra": _STR, "carrier": _STR},
        {"operators": (*_TABLE, {})},
    )
    lie = _entry_ref(doc, "lie", fields["algebra"], f"{path}.algebra")
    carrier = _entry_ref(doc, "lie", fields["carrier"], f"{path}.carrier")
    rho = _parse_matrix_table(
        fields["operators"], 1, lie.space, carrier.space, scalars,
        f"{path}.operators",
    )
    return fields["name"], LieCoherentAction(lie, carrier, rho)


def _parse_lie_net(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "action": _STR, "tensor": _LIST},
        {},
    )
    action = _entry_ref(doc, "lie_actions", fields["action"], f"{path}.action")
    lspace = action.lie.space
    hspace = action.carrier.space
    matrix = _parse_matrix(
        fields["tensor"], lspace.dim, hspace.dim, scalars, f"{path}.tensor"
    )
    return fields["name"], LieNet(action, LinearMap(hspace, lspace, matrix))


def _parse_trace(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "space": _STR, "covector": _LIST},
        {},
    )
    space = _space_ref(doc, fields["space"], f"{path}.space")
    covector = _parse_dense_vector(
        fields["covector"], space.dim, scalars, f"{path}.covector"
    )
    return fields["name"], TraceMap(space, covector)


def _parse_map(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "source": _STR, "target": _STR, "matrix": _LIST},
        {},
    )
    source = _space_ref(doc, fields["source"], f"{path}.source")
    target = _space_ref(doc, fields["target"], f"{path}.target")
    matrix = _parse_matrix(
        fields["matrix"], target.dim, source.dim, scalars, f"{path}.matrix"
    )
    return fields["name"], LinearMap(source, target, matrix)


def _parse_deformation(doc, body, scalars, path):
    fields = _take(
        body, path,
        {"name": _STR, "net": _STR, "direction": _LIST},
        {},
    )
    problem = _entry_ref(doc, "nets", fields["net"], f"{path}.net")
    lspace, hspace = problem.l_space, problem.h_space
    matrix = _parse_matrix(
        fields["direction"], lspace.dim, hspace.dim, scalars, f"{path}.direction"
    )
    direction = LinearMap(hspace, lspace, matrix)
    return fields["name"], Deformation(problem, direction)


_KIND_PARSERS = {
    "lie": _parse_lie,
    "three_lie": _parse_three_lie,
    "three_leibniz": _parse_three_leibniz,
    "leibniz_lie": _parse_leibniz_lie,
    "three_leibniz_lie": _parse_three_leibniz_lie,
    "representations": _parse_representation,
    "actions": _parse_action,
    "nets": _parse_net,
    "three_leibniz_reps": _parse_three_leibniz_rep,
    "lie_actions": _parse_lie_action,
    "lie_nets": _parse_lie_net,
    "traces": _parse_trace,
    "maps": _parse_map,
    "deformations": _parse_deformation,
}


def parse_document(text: str, overrides: dict | None = None) -> Document:
    """Parse document text; `overrides` replaces declared parameter values."""
    try:
        data = json.loads(
            text,
            parse_float=lambda s: _reject_float(s),
            parse_constant=lambda s: _reject_float(s),
        )
    except json.JSONDecodeError as exc:
        raise InputError(f"document is not valid JSON: {exc}") from None
    _expect(data, dict, "document", "a JSON object")

    top = _take(
        data, "document",
        {"format": _STR},
        {
            "title": (*_STR, None),
            "parameters": (*_TABLE, {}),
            "spaces": (*_LIST, []),
            "structures": (*_TABLE, {}),
        },
    )
    if top["format"] != FORMAT:
        raise InputError(
            f"document.format is {top['format']!r}, expected {FORMAT!r}"
        )

    doc = Document(title=top["title"])

    plain = _ScalarParser({})
    for name, raw in top["parameters"].items():
        _parse_parameter_name(name, "document.parameters")
        doc.parameters[name] = plain.parse(raw, f"document.parameters.{name}")
    for name, raw in (overrides or {}).items():
        if name not in doc.parameters:
            available = ", ".join(sorted(doc.parameters)) or "none declared"
            raise InputError(
                f"cannot set parameter {name!r}: the document declares "
                f"{available}"
            )
        doc.parameters[name] = rat(raw)
    scalars = _ScalarParser(doc.parameters)

    for index, body in enumerate(top["spaces"]):
        path = f"document.spaces[{index}]"
        _expect(body, dict, path, "a space object")
        fields = _take(
            body, path,
            {"name": _STR, "dim": (int, "an integer")},
            {"labels": (*_LIST, None)},
        )
        name = _parse_name(fields["name"], f"{path}.name")
        labels = fields["labels"]
        if labels is not None:
            labels = tuple(
                _expect(lab, str, f"{path}.labels[{i}]", "a label string")
                for i, lab in enumerate(labels)
            )
        if name in doc.spaces:
            raise InputError(f"{path}: duplicate space name {name!r}")
        doc.add_space(Space(name, fields["dim"], labels or ()))

    structures = top["structures"]
    for kind in structures:
        if kind not in _KIND_PARSERS:
            raise InputError(
                f"document.structures: unknown kind {kind!r} "
                f"(known: {', '.join(KIND_ORDER)})"
            )
    for kind in KIND_ORDER:
        if kind not in structures:
            continue
        bodies = _expect(
            structures[kind], list, f"document.structures.{kind}", "a list"
        )
        for index, body in enumerate(bodies):
            path = f"document.structures.{kind}[{index}]"
            _expect(body, dict, path, "an entry object")
            name, obj = _KIND_PARSERS[kind](doc, body, scalars, path)
            name = _parse_name(name, f"{path}.name")
            if name in doc.entries[kind]:
                raise InputError(f"{path}: duplicate {kind} name {name!r}")
            doc.add(kind, name, obj)
    return doc


def load_document(path: str, overrides: dict | None = None) -> Document:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_document(text, overrides)


# --- emission ---------------------------------------------------------------


def _emit_scalar(q: Fraction):
    return int(q) if q.denominator == 1 else str(q)


def _emit_sparse_vector(v: Vector) -> dict:
    return {str(i + 1): _emit_scalar(c) for i, c in v.iter_nonzero()}


def _emit_dense_vector(v: Vector) -> list:
    return [_emit_scalar(c) for c in v.entries]


def _emit_matrix(m: Matrix) -> list:
    return [[_emit_scalar(c) for c in row] for row in m.rows]


def _emit_vector_table(items) -> dict:
    return {
        ",".join(str(x + 1) for x in key): _emit_sparse_vector(vec)
        for key, vec in sorted(items)
    }


def _emit_matrix_table(items) -> dict:
    out = {}
    for key, mat in sorted(items):
        if isinstance(key, int):
            key = (key,)
        out[",".join(str(x + 1) for x in key)] = _emit_matrix(mat)
    return out


def _space_entry(space: Space) -> dict:
    return {
        "name": space.name,
        "dim": space.dim,
        "labels": list(space.basis_labels),
    }


def _spaces_of(kind: str, obj) -> list:
    if kind in ("lie", "three_lie", "three_leibniz", "leibniz_lie",
                "three_leibniz_lie"):
        return [obj.space]
    if kind == "representations":
        return [obj.algebra.space, obj.carrier]
    if kind == "actions":
        return [obj.algebra.space, obj.carrier]
    if kind == "nets":
        return [obj.l_space, obj.h_space]
    if kind == "three_leibniz_reps":
        return [obj.algebra.space, obj.carrier]
    if kind == "lie_actions":
        return [obj.lie.space, obj.carrier.space]
    if kind == "lie_nets":
        return [obj.action.lie.space, obj.action.carrier.space]
    if kind == "traces":
        return [obj.space]
    if kind == "maps":
        return [obj.source, obj.target]
    if kind == "deformations":
        return [obj.problem.l_space, obj.problem.h_space]
    raise InputError(f"unknown structure kind {kind!r}")


def _entry_dict(doc: Document, kind: str, name: str, obj) -> dict:
    if kind == "lie":
        return {
            "name": name,
            "space": obj.space.name,
            "brackets": _emit_vector_table(obj.items()),
        }
    if kind == "three_lie":
        return {
            "name": name,
            "space": obj.space.name,
            "brackets": _emit_vector_table(obj.bracket.items()),
        }
    if kind == "three_leibniz":
        return {
            "name": name,
            "space": obj.space.name,
            "brackets": _emit_vector_table(obj.bracket.items()),
        }
    if kind == "leibniz_lie":
        return {
            "name": name,
            "lie": doc.name_of("lie", obj.lie),
            "products": _emit_vector_table(obj.items()),
        }
    if kind == "three_leibniz_lie":
        return {
            "name": name,
            "three_lie": doc.name_of("three_lie", obj.lie3),
            "braces": _emit_vector_table(obj.braces.items()),
        }
    if kind == "representations":
        return {
            "name": name,
            "algebra": doc.name_of("three_lie", obj.algebra),
            "carrier": obj.carrier.name,
            "operators": _emit_matrix_table(obj.rho.items()),
        }
    if kind == "actions":
        return {
            "name": name,
            "representation": doc.name_of("representations", obj.rep),
            "carrier_brackets": _emit_vector_table(obj.target_bracket.items()),
        }
    if kind == "nets":
        return {
            "name": name,
            "action": doc.name_of("actions", obj.action),
            "tensor": _emit_matrix(obj.tensor.matrix),
        }
    if kind == "three_leibniz_reps":
        return {
            "name": name,
            "algebra": doc.name_of("three_leibniz", obj.algebra),
            "carrier": obj.carrier.name,
            "left": _emit_matrix_table(obj.l_act.items()),
            "middle": _emit_matrix_table(obj.m_act.items()),
            "right": _emit_matrix_table(obj.r_act.items()),
        }
    if kind == "lie_actions":
        return {
            "name": name,
            "algebra": doc.name_of("lie", obj.lie),
            "carrier": doc.name_of("lie", obj.carrier),
            "operators": _emit_matrix_table(obj.rho.items()),
        }
    if kind == "lie_nets":
        return {
            "name": name,
            "action": doc.name_of("lie_actions", obj.action),
            "tensor": _emit_matrix(obj.tensor.matrix),
        }
    if kind == "traces":
        return {
            "name": name,
            "space": obj.space.name,
            "covector": _emit_dense_vector(obj.covector),
        }
    if kind == "maps":
        return {
            "name": name,
            "source": obj.source.name,
            "target": obj.target.name,
            "matrix": _emit_matrix(obj.matrix),
        }
    if kind == "deformations":
        return {
            "name": name,
            "net": doc.name_of("nets", obj.problem),
            "direction": _emit_matrix(obj.direction.matrix),
        }
    raise InputError(f"unknown structure kind {kind!r}")


def emit_document(doc: Document) -> str:
    """Serialize to canonical text: sorted names, materialized scalars."""
    pool: dict[str, Space] = {}

    def note_space(space: Space):
        known = pool.get(space.name)
        if known is None:
            pool[space.name] = space
        elif known != space:
            raise InputError(
                f"two different spaces are both named {space.name!r}"
            )

    for space in doc.spaces.values():
        note_space(space)
    for kind in KIND_ORDER:
        for obj in doc.entries[kind].values():
            for space in _spaces_of(kind, obj):
                note_space(space)

    out: dict = {"format": FORMAT}
    if doc.title is not None:
        out["title"] = doc.title
    out["spaces"] = [
        _space_entry(pool[name]) for name in sorted(pool)
    ]
    structures: dict = {}
    for kind in KIND_ORDER:
        registry = doc.entries[kind]
        if not registry:
            continue
        structures[kind] = [
            _entry_dict(doc, kind, name, registry[name])
            for name in sorted(registry)
        ]
    out["structures"] = structures
    return json.dumps(out, indent=2) + "\n"
