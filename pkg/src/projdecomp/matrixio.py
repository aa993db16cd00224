"""Reading and writing matrices as CSV or Matrix Market text.

Floats are written with ``repr`` (shortest round-trip form), so a
write followed by a read reproduces every value exactly.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ParseError
from .matrix import Matrix, as_matrix

__all__ = ["FORMATS", "guess_format", "parse_matrix", "write_matrix", "read_csv", "write_csv"]

FORMATS = ("csv", "matrixmarket")


def guess_format(path) -> str:
    ext = os.path.splitext(str(path))[1].lower()
    return "matrixmarket" if ext in (".mtx", ".mm") else "csv"


def _float(tok, lineno, path):
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"non-numeric cell {tok.strip()!r}", lineno, path) from None
    if not np.isfinite(v):
        raise ParseError(f"non-finite value {tok.strip()!r}", lineno, path)
    return v


def read_csv(text: str, path=None) -> tuple[np.ndarray, list[str] | None]:
    """Parse CSV text into ``(array, header)``.

    Blank lines and lines starting with ``#`` are skipped. A first data
    row that does not parse as numbers is taken as the header.
    """
    rows = []
    header = None
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if not rows and header is None:
            try:
                [float(c) for c in cells]
            except ValueError:
                header = cells
                width = len(cells)
                continue
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ParseError(f"ragged row: {len(cells)} cells, expected {width}", lineno, path)
        rows.append([_float(c, lineno, path) for c in cells])
    if not rows:
        raise ParseError("no numeric rows", None, path)
    return np.array(rows, dtype=np.float64), header


def _parse_mm(text: str, path=None) -> Matrix:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1, path)
    banner = lines[0].split()
    if len(banner) != 5 or banner[0].lower() != "%%matrixmarket" or banner[1].lower() != "matrix":
        raise ParseError("malformed Matrix Market header", 1, path)
    layout, field, symmetry = (b.lower() for b in banner[2:])
    if layout not in ("coordinate", "array"):
        raise ParseError(f"unsupported layout {layout!r}", 1, path)
    if field not in ("real", "integer", "double"):
        raise ParseError(f"unsupported field {field!r}; only real matrices", 1, path)
    if symmetry != "general":
        raise ParseError(f"unsupported symmetry {symmetry!r}; only general", 1, path)

    body = [(i, ln.strip()) for i, ln in enumerate(lines[1:], start=2)]
    body = [(i, ln) for i, ln in body if ln and not ln.startswith("%")]
    if not body:
        raise ParseError("missing size line", None, path)
    size_no, size_line = body[0]
    try:
        dims = [int(t) for t in size_line.split()]
    except ValueError:
        raise ParseError("malformed size line", size_no, path) from None
    entries = body[1:]

    if layout == "array":
        if len(dims) != 2:
            raise ParseError("array size line needs 2 integers", size_no, path)
        m, n = dims
        if len(entries) != m * n:
            raise ParseError(f"expected {m * n} values, found {len(entries)}", size_no, path)
        vals = [_float(ln, i, path) for i, ln in entries]
        # array layout is column-major
        return Matrix(np.array(vals).reshape(n, m).T)

    if len(dims) != 3:
        raise ParseError("coordinate size line needs 3 integers", size_no, path)
    m, n, nnz = dims
    if len(entries) != nnz:
        raise ParseError(f"expected {nnz} entries, found {len(entries)}", size_no, path)
    r = np.empty(nnz, dtype=np.int64)
    c = np.empty(nnz, dtype=np.int64)
    v = np.empty(nnz)
    seen = set()
    for k, (i, ln) in enumerate(entries):
        toks = ln.split()
        if len(toks) != 3:
            raise ParseError("coordinate entry needs 'row col value'", i, path)
        try:
            ri, ci = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError("non-integer index", i, path) from None
        if not (1 <= ri <= m and 1 <= ci <= n):
            raise ParseError(f"index ({ri}, {ci}) out of range for {m}x{n}", i, path)
        if (ri, ci) in seen:
            raise ParseError(f"duplicate entry ({ri}, {ci})", i, path)
        seen.add((ri, ci))
        r[k], c[k], v[k] = ri - 1, ci - 1, _float(toks[2], i, path)
    return Matrix.from_coo((m, n), r, c, v)


def parse_matrix(path, format: str | None = None) -> Matrix:
    """Read a CSV or Matrix Market file; format is guessed from the extension if omitted."""
    format = format or guess_format(path)
    with open(path) as fh:
        text = fh.read()
    if format == "csv":
        a, _ = read_csv(text, path)
        return Matrix(a)
    if format == "matrixmarket":
        return _parse_mm(text, path)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def write_csv(a, path, header=None, comments=()):
    a = np.asarray(a, dtype=np.float64)
    with open(path, "w") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        if header:
            fh.write(",".join(header) + "\n")
        for row in a:
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


def write_matrix(M, path, format: str | None = None, comments=()):
    """Write ``M`` as CSV (always dense) or Matrix Market (coordinate if
    sparse, array if dense)."""
    M = as_matrix(M)
    format = format or guess_format(path)
    if format == "csv":
        write_csv(M.toarray(), path, comments=comments)
        return
    if format != "matrixmarket":
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    m, n = M.shape
    with open(path, "w") as fh:
        if M.is_sparse:
            fh.write("%%MatrixMarket matrix coordinate real general\n")
            for line in comments:
                fh.write(f"% {line}\n")
            r, c, v = M.to_coo()
            fh.write(f"{m} {n} {len(v)}\n")
            for ri, ci, vi in zip(r, c, v):
                fh.write(f"{ri + 1} {ci + 1} {float(vi)!r}\n")
        else:
            fh.write("%%MatrixMarket matrix array real general\n")
            for line in comments:
                fh.write(f"% {line}\n")
            fh.write(f"{m} {n}\n")
            for x in M.toarray().T.ravel():
                fh.write(f"{float(x)!r}\n")
