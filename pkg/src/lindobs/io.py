"""JSON and CSV encodings.

Matrices are row-major nested lists of ``[re, im]`` pairs.  A model file is

    {"dim": 2, "hamiltonian": <matrix>, "jumps": [<matrix>, ...], "label": "..."}

with ``label`` optional.  Canonical output uses compact separators, keys in
the order above, Python float reprs and a trailing newline; parsing and
re-serializing a canonical file reproduces it byte for byte.
"""

import csv
import io as _io
import json

import numpy as np

from .errors import InputError
from .lindblad import LindbladModel

CSV_HEADER = ("t", "entropy_nats", "linear_entropy", "sweep_residual_trace_norm")


class ParseError(InputError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def dumps(payload):
    return json.dumps(payload, separators=(",", ":"), allow_nan=False) + "\n"


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None


def encode_matrix(a):
    a = np.asarray(a, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def decode_matrix(obj, field="matrix", dim=None):
    if not isinstance(obj, list) or not obj:
        raise ParseError("expected a non-empty list of rows", field)
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise ParseError("expected a list of [re, im] pairs", f"{field}[{i}]")
        out = []
        for j, entry in enumerate(row):
            where = f"{field}[{i}][{j}]"
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise ParseError("expected [re, im] with numeric parts", where)
            z = complex(entry[0], entry[1])
            if not np.isfinite(z):
                raise ParseError("non-finite entry", where)
            out.append(z)
        rows.append(out)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError(f"matrix is not square ({n} rows)", field)
    if dim is not None and n != dim:
        raise ParseError(f"expected a {dim}x{dim} matrix, got {n}x{n}", field)
    return np.array(rows, dtype=complex)


def parse_matrix(text, field="matrix", dim=None):
    obj = _loads(text)
    if isinstance(obj, dict) and "matrix" in obj:
        obj = obj["matrix"]
    return decode_matrix(obj, field, dim)


def matrix_to_json(a):
    return dumps(encode_matrix(a))


def parse_model(text, herm_tol=None):
    obj = _loads(text)
    if not isinstance(obj, dict):
        raise ParseError("model must be a JSON object")
    for key in ("dim", "hamiltonian", "jumps"):
        if key not in obj:
            raise ParseError("missing required field", key)
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("dim must be a positive integer", "dim")
    h = decode_matrix(obj["hamiltonian"], "hamiltonian", dim)
    if not isinstance(obj["jumps"], list):
        raise ParseError("jumps must be a list", "jumps")
    jumps = tuple(decode_matrix(v, f"jumps[{i}]", dim) for i, v in enumerate(obj["jumps"]))
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label must be a string", "label")
    kwargs = {} if herm_tol is None else {"herm_tol": herm_tol}
    try:
        return LindbladModel(h, jumps, label=label, **kwargs)
    except InputError as exc:
        raise ParseError(str(exc), "hamiltonian") from None


def model_to_json(model):
    payload = {
        "dim": model.dim,
        "hamiltonian": encode_matrix(model.hamiltonian),
        "jumps": [encode_matrix(v) for v in model.jumps],
    }
    if model.label:
        payload["label"] = model.label
    return dumps(payload)


def format_float(x):
    return format(float(x), ".17g")


def trace_to_csv(trace):
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for t, s, slin, res in trace.rows():
        writer.writerow([format_float(t), format_float(s), format_float(slin), "" if res is None else format_float(res)])
    return buf.getvalue()


def subspace_to_json(subspace):
    return dumps({"dim": subspace.dim, "basis": [encode_matrix(x) for x in subspace.basis]})
