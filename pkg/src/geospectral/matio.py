"""Matrix file parsing/writing and the JSON decomposition report.

Supported inputs: Matrix Market "array real general" (column-major body)
and plain CSV (one row per line, no header).  JSON reports carry floats as
shortest round-trip decimals, with hex-float copies of the scalar fields
so diffs stay bit-exact across platforms.
"""

import csv
import hashlib
import json
import math

import numpy as np

from .errors import ParseError, ShapeError
from .realdecomp import (
    ComplexPlaneTerm,
    Diagnostics,
    RealTerm,
    SpectralDecomposition,
)

SCHEMA_VERSION = "1"

FORMAT_MATRIX_MARKET = "matrixmarket"
FORMAT_CSV = "csv"


def detect_format(path):
    p = str(path).lower()
    if p.endswith(".mtx") or p.endswith(".mm"):
        return FORMAT_MATRIX_MARKET
    if p.endswith(".csv"):
        return FORMAT_CSV
    return None


def parse_matrix(path, fmt=None):
    """Parse a dense real square matrix from a file."""
    fmt = fmt or detect_format(path)
    if fmt is None:
        raise ParseError(f"cannot infer format of '{path}'; pass it explicitly")
    if fmt == FORMAT_MATRIX_MARKET:
        m = _parse_matrix_market(path)
    elif fmt == FORMAT_CSV:
        m = _parse_csv(path)
    else:
        raise ParseError(f"unknown format '{fmt}'")
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"matrix in '{path}' is {m.shape[0]}x{m.shape[1]}, not square")
    return m


def _parse_float(text, lineno):
    try:
        x = float(text)
    except ValueError as exc:
        raise ParseError(f"bad number '{text}'", line=lineno) from exc
    if not math.isfinite(x):
        raise ParseError(f"non-finite entry '{text}'", line=lineno)
    return x


def _parse_matrix_market(path):
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", line=1)
    header = lines[0].strip().lower().split()
    if header[:1] != ["%%matrixmarket"] or header[1:] != ["matrix", "array", "real", "general"]:
        raise ParseError(
            "expected header '%%MatrixMarket matrix array real general'", line=1
        )
    body = [
        (i + 1, ln.strip())
        for i, ln in enumerate(lines[1:], start=1)
        if ln.strip() and not ln.lstrip().startswith("%")
    ]
    if not body:
        raise ParseError("missing size line", line=len(lines))
    lineno, size_line = body[0]
    parts = size_line.split()
    if len(parts) != 2:
        raise ParseError(f"bad size line '{size_line}'", line=lineno)
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ParseError(f"bad size line '{size_line}'", line=lineno) from exc
    if rows <= 0 or cols <= 0:
        raise ParseError(f"non-positive dimensions {rows}x{cols}", line=lineno)
    values = []
    for lineno, ln in body[1:]:
        for tok in ln.split():
            values.append(_parse_float(tok, lineno))
    if len(values) != rows * cols:
        raise ParseError(
            f"expected {rows * cols} entries, found {len(values)}",
            line=body[-1][0] if len(body) > 1 else lineno,
        )
    # array format stores the body column by column
    return np.array(values).reshape((cols, rows)).T


def _parse_csv(path):
    rows = []
    width = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, record in enumerate(csv.reader(fh), start=1):
            if not record or (len(record) == 1 and not record[0].strip()):
                continue
            row = [_parse_float(tok.strip(), lineno) for tok in record]
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ParseError(
                    f"ragged row: {len(row)} entries, expected {width}", line=lineno
                )
            rows.append(row)
    if not rows:
        raise ParseError("no data rows", line=1)
    return np.array(rows)


def write_matrix_market(path, m, comment=None):
    m = np.asarray(m, dtype=float)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("%%MatrixMarket matrix array real general\n")
        if comment:
            fh.write(f"% {comment}\n")
        fh.write(f"{m.shape[0]} {m.shape[1]}\n")
        for j in range(m.shape[1]):
            for i in range(m.shape[0]):
                fh.write(f"{float(m[i, j])!r}\n")


def write_csv(path, m):
    m = np.asarray(m, dtype=float)
    with open(path, "w", encoding="utf-8") as fh:
        for row in m:
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


def file_digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return "sha256:" + h.hexdigest()


def _vec(v):
    return [float(x) for x in v]


def matrix_to_doc(m):
    return [_vec(row) for row in np.asarray(m, dtype=float)]


def decomposition_to_doc(dec, input_digest=None):
    """Serialize a SpectralDecomposition to a JSON-ready dict."""
    eigenvalues = []
    for t in dec.real_terms:
        eigenvalues.append(
            {"kind": "real", "alpha": t.alpha, "alpha_hex": float(t.alpha).hex()}
        )
    for t in dec.plane_terms:
        eigenvalues.append(
            {
                "kind": "complex_pair",
                "sigma": t.sigma,
                "omega": t.omega,
                "sigma_hex": float(t.sigma).hex(),
                "omega_hex": float(t.omega).hex(),
            }
        )
    doc = {
        "schema_version": SCHEMA_VERSION,
        "dim": dec.dim,
        "eigenvalues": eigenvalues,
        "real_terms": [
            {"alpha": t.alpha, "a": _vec(t.a), "c": _vec(t.c)} for t in dec.real_terms
        ],
        "plane_terms": [
            {
                "sigma": t.sigma,
                "omega": t.omega,
                "b": _vec(t.b),
                "p": _vec(t.p),
                "d": _vec(t.d),
                "q": _vec(t.q),
                "nu": t.nu,
                "nu_hex": float(t.nu).hex(),
            }
            for t in dec.plane_terms
        ],
        "diagnostics": {
            "reconstruction_residual": dec.diagnostics.reconstruction_residual,
            "basis_rcond": dec.diagnostics.basis_rcond,
            "max_biorthogonality_residual": dec.diagnostics.max_biorthogonality_residual,
        },
    }
    if input_digest is not None:
        doc["input_digest"] = input_digest
    return doc


def doc_to_decomposition(doc):
    """Rebuild a SpectralDecomposition from its JSON document."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {doc.get('schema_version')!r}")
    dim = int(doc["dim"])
    real_terms = tuple(
        RealTerm(float(t["alpha"]), np.array(t["a"], dtype=float), np.array(t["c"], dtype=float))
        for t in doc["real_terms"]
    )
    plane_terms = tuple(
        ComplexPlaneTerm(
            float(t["sigma"]),
            float(t["omega"]),
            np.array(t["b"], dtype=float),
            np.array(t["p"], dtype=float),
            np.array(t["d"], dtype=float),
            np.array(t["q"], dtype=float),
            float(t["nu"]),
        )
        for t in doc["plane_terms"]
    )
    diag = doc.get("diagnostics", {})
    return SpectralDecomposition(
        dim,
        real_terms,
        plane_terms,
        Diagnostics(
            float(diag.get("reconstruction_residual", float("nan"))),
            float(diag.get("basis_rcond", float("nan"))),
            float(diag.get("max_biorthogonality_residual", float("nan"))),
        ),
    )


def dump_json(doc, fh):
    json.dump(doc, fh, indent=2)
    fh.write("\n")
