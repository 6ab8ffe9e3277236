"""Instance serialization: truth-table text files and unitary matrix dumps.

Truth-table files hold one function per line. Characters ``+``/``-`` give
±1 outputs directly; ``0``/``1`` are bits with 0 -> +1. Blank lines and lines
starting with ``#`` are skipped.

Matrices are ``.npy`` arrays or complex CSV with one row per line and
entries written as Python complex literals (``0.5+0.5j``).
"""

from pathlib import Path

import numpy as np

from .boolean import BooleanFunction
from .errors import ParameterError
from .linalg import Unitary

_SIGN = {"+": 1, "-": -1, "0": 1, "1": -1}


def parse_truth_table(line):
    line = line.strip()
    if not line:
        raise ParameterError("empty truth-table line")
    kinds = set(line)
    if not (kinds <= {"+", "-"} or kinds <= {"0", "1"}):
        raise ParameterError(f"truth table mixes or uses unknown symbols: {sorted(kinds)}")
    return BooleanFunction([_SIGN[c] for c in line])


def format_truth_table(f):
    return "".join("+" if v == 1 else "-" for v in f.table)


def read_truth_tables(path):
    out = []
    for raw in Path(path).read_text().splitlines():
        s = raw.strip()
        if s and not s.startswith("#"):
            out.append(parse_truth_table(s))
    if not out:
        raise ParameterError(f"no truth tables in {path}")
    return out


def write_truth_tables(path, functions):
    Path(path).write_text("".join(format_truth_table(f) + "\n" for f in functions))


def read_matrix(path, check=True):
    path = Path(path)
    if path.suffix == ".npy":
        m = np.load(path)
    else:
        rows = []
        for raw in path.read_text().splitlines():
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            try:
                rows.append([complex(tok.strip().replace(" ", "")) for tok in s.split(",")])
            except ValueError as exc:
                raise ParameterError(f"bad complex entry in {path}: {exc}") from None
        m = np.array(rows, dtype=complex)
    return Unitary(m, check=check)


def write_matrix(path, u):
    m = u.matrix if isinstance(u, Unitary) else np.asarray(u, dtype=complex)
    path = Path(path)
    if path.suffix == ".npy":
        np.save(path, m)
        return
    lines = [",".join(repr(complex(v)) for v in row) for row in m]
    path.write_text("\n".join(lines) + "\n")


def read_instance(path):
    """A ``BooleanFunction`` for truth-table files, else a ``Unitary``."""
    path = Path(path)
    if path.suffix == ".npy":
        return read_matrix(path)
    first = next((s.strip() for s in path.read_text().splitlines()
                  if s.strip() and not s.strip().startswith("#")), "")
    if first and set(first) <= {"+", "-", "0", "1"} and "," not in first:
        return read_truth_tables(path)[0]
    return read_matrix(path)
