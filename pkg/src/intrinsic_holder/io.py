"""Loading input documents and writing deterministic reports."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path

import numpy as np

from .algebra import make_linear_section, make_normed_quotient
from .errors import InputError
from .extension import FiberedFunction
from .metric import build_space, from_table, make_quotient, make_section, quotient_from_labels
from .regularity import make_measure


class DocumentError(InputError):
    """A document could not be read; the message names the file and field."""


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


def read_json(path):
    path = Path(path)
    try:
        with path.open() as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise DocumentError(f"{path}: file not found") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from None


def _field(doc, key, path):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"{path}: missing field {key!r}")
    return doc[key]


def read_csv_table(path):
    """Distance table with a header row of point ids."""
    path = Path(path)
    try:
        rows = list(csv.reader(path.open(newline="")))
    except FileNotFoundError:
        raise DocumentError(f"{path}: file not found") from None
    rows = [r for r in rows if r]
    if not rows:
        raise DocumentError(f"{path}: empty table")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    # tolerate a leading id column
    if body and len(body[0]) == len(header) + 1:
        body = [r[1:] for r in body]
    try:
        table = [[float(v) for v in r] for r in body]
    except ValueError as exc:
        raise DocumentError(f"{path}: non-numeric entry ({exc})") from None
    return header, table


def load_space(path):
    path = Path(path)
    if path.suffix.lower() == ".csv":
        ids, table = read_csv_table(path)
        return from_table(table, ids)
    doc = read_json(path)
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: expected an object")
    doc = dict(doc)
    if "points" in doc:
        doc["points"] = [_tuplify(p) for p in doc["points"]]
    if "graph" in doc:
        doc["graph"] = [(_tuplify(e[0]), _tuplify(e[1]), *e[2:]) for e in doc["graph"]]
    try:
        return build_space(doc)
    except InputError as exc:
        raise type(exc)(f"{path}: {exc}") from None


def load_quotient(path, space):
    doc = read_json(path)
    if isinstance(doc, dict) and "labels" in doc:
        labels = doc["labels"]
        if isinstance(labels, dict):
            labels = [labels[str(p)] for p in space.point_ids]
        return quotient_from_labels(space, [_tuplify(v) for v in labels])
    fibers = _field(doc, "fibers", path)
    if isinstance(fibers, dict):
        fibers = {k: [_tuplify(p) for p in v] for k, v in fibers.items()}
    else:
        fibers = [[_tuplify(p) for p in block] for block in fibers]
    return make_quotient(space, fibers)


def load_section(path, space, quotient, partial=False):
    doc = read_json(path)
    if isinstance(doc, dict) and "choice" in doc:
        doc = doc["choice"]
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: expected an object mapping fiber ids to point ids")
    # JSON keys are strings; map them back onto the quotient's fiber ids
    by_str = {str(f): f for f in quotient.fiber_ids}
    choice = {by_str.get(k, k): _tuplify(v) for k, v in doc.items()}
    return make_section(space, quotient, choice, partial=partial)


def load_measure(path, quotient):
    doc = read_json(path)
    weights = _field(doc, "weights", path) if isinstance(doc, dict) and "weights" in doc else doc
    if weights is None or weights == "counting":
        return make_measure(quotient)
    by_str = {str(f): f for f in quotient.fiber_ids}
    return make_measure(quotient, {by_str.get(k, k): v for k, v in weights.items()})


def load_fibered(path, space):
    """``{"values": {point_id: real}}``, keyed by the point id's string form."""
    doc = read_json(path)
    values = _field(doc, "values", path)
    if isinstance(values, list):
        if len(values) != space.n:
            raise DocumentError(f"{path}: field 'values' has {len(values)} entries, need {space.n}")
        return FiberedFunction(tuple(float(v) for v in values))
    keyed = {str(k): v for k, v in values.items()}
    missing = [p for p in space.point_ids if str(p) not in keyed]
    if missing:
        raise DocumentError(f"{path}: field 'values' misses points {missing[:5]!r}")
    return FiberedFunction(tuple(float(keyed[str(p)]) for p in space.point_ids))


def load_normed(path):
    doc = read_json(path)
    A = _field(doc, "A", path)
    sample = _field(doc, "sample", path)
    return make_normed_quotient(np.asarray(A, dtype=float), np.asarray(sample, dtype=float), doc.get("p", 2.0))


def load_linear_section(path, nq):
    doc = read_json(path)
    table = doc["table"] if isinstance(doc, dict) else doc
    return make_linear_section(nq, np.asarray(table, dtype=float))


# output -------------------------------------------------------------------


def _float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _encode(obj, out):
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        items = sorted(((str(k), v) for k, v in obj.items()), key=lambda kv: kv[0])
        out.append("{")
        for n, (k, v) in enumerate(items):
            if n:
                out.append(", ")
            out.append(json.dumps(k, ensure_ascii=False))
            out.append(": ")
            _encode(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, set, frozenset, np.ndarray)):
        seq = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else list(obj)
        out.append("[")
        for n, v in enumerate(seq):
            if n:
                out.append(", ")
            _encode(v, out)
        out.append("]")
    else:
        out.append(json.dumps(str(obj)))


def canonical_json(obj) -> str:
    """Sorted keys, floats with 17 significant digits, non-finite as ``Infinity``/``NaN``."""
    out = []
    _encode(obj, out)
    return "".join(out) + "\n"


def digest_files(paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(str(Path(p).name).encode())
        h.update(b"\0")
        h.update(Path(p).read_bytes())
        h.update(b"\0")
    return h.hexdigest()


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_float(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()
