"""JSON interchange format for problems, solutions and similarity certificates.

A problem file looks like::

    {
      "algebra": {"kind": "Wiener", "grid_size": 16, "bandwidth": 2},
      "A": {"rows": 1, "cols": 1, "entries": [{"0": [2.0, 0.0], "1": [0.25, 0.0]}]},
      "B": {...},
      "C": {...}
    }

Entries are listed row-major. Their encoding depends on the algebra:
``[re, im]`` for Scalar, ``{"k": [re, im], ...}`` for Wiener (zero
coefficients omitted, keys in increasing k), and a list of ``[re, im]`` of
length ``grid_size`` for SampledCK. A problem may instead (or additionally)
carry ``"blocks": {"dims": [...], "matrices": [{"row": i, "col": j,
"matrix": {...}}, ...]}`` for block upper triangular input.

Floats are written with Python's shortest round-trip repr, so dumping a
loaded file reproduces it byte for byte.
"""
import json
import re
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraDescriptor, AlgebraKind, AlgebraMatrix
from .exceptions import BandwidthOverflow, ShapeMismatch
from .roth import BlockTriangular


@dataclass(frozen=True)
class Problem:
    descriptor: AlgebraDescriptor
    A: AlgebraMatrix = None
    B: AlgebraMatrix = None
    C: AlgebraMatrix = None
    blocks: BlockTriangular = None


def _num(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _complex(pair):
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError(f"complex numbers are encoded as [re, im], got {pair!r}")
    real, imag = (float(v) for v in pair)
    if not (np.isfinite(real) and np.isfinite(imag)):
        raise ValueError("non-finite number in input")
    return complex(real, imag)


def descriptor_to_json(desc):
    return {"kind": desc.kind.value, "grid_size": desc.grid_size, "bandwidth": desc.bandwidth}


def descriptor_from_json(obj):
    kind = AlgebraKind(obj["kind"])
    if kind is AlgebraKind.SCALAR:
        return AlgebraDescriptor.scalar()
    if kind is AlgebraKind.SAMPLED_CK:
        return AlgebraDescriptor.sampled(int(obj["grid_size"]))
    bw = int(obj.get("bandwidth", 0))
    grid = obj.get("grid_size")
    return AlgebraDescriptor.wiener(bw, None if grid is None else int(grid))


def _entry_to_json(payload, desc):
    if desc.kind is AlgebraKind.SCALAR:
        return _num(payload[0])
    if desc.kind is AlgebraKind.SAMPLED_CK:
        return [_num(v) for v in payload]
    w = desc.bandwidth
    return {str(i - w): _num(c) for i, c in enumerate(payload) if c != 0}


def _entry_from_json(obj, desc):
    if desc.kind is AlgebraKind.SCALAR:
        return np.array([_complex(obj)])
    if desc.kind is AlgebraKind.SAMPLED_CK:
        if len(obj) != desc.grid_size:
            raise ShapeMismatch(f"SampledCK entry needs {desc.grid_size} samples, got {len(obj)}")
        return np.array([_complex(v) for v in obj])
    if not isinstance(obj, dict):
        raise ValueError(f"Wiener entries are maps from k to [re, im], got {obj!r}")
    w = desc.bandwidth
    out = np.zeros(2 * w + 1, dtype=np.complex128)
    for key, val in obj.items():
        k = int(key)
        if abs(k) > w:
            raise BandwidthOverflow(f"coefficient index {k} exceeds bandwidth {w}")
        out[k + w] = _complex(val)
    return out


def matrix_to_json(m):
    desc = m.descriptor
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [_entry_to_json(m.data[i, j], desc) for i in range(m.rows) for j in range(m.cols)],
    }


def matrix_from_json(obj, desc):
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise ShapeMismatch(f"expected {rows * cols} entries, got {len(entries)}")
    data = np.array([_entry_from_json(e, desc) for e in entries]).reshape(rows, cols, -1)
    return AlgebraMatrix(desc, data)


def problem_to_json(problem):
    desc = problem.descriptor
    for m in (problem.A, problem.B, problem.C):
        if m is not None:
            desc = desc.unify(m.descriptor)
    obj = {"algebra": descriptor_to_json(desc)}
    for name in ("A", "B", "C"):
        m = getattr(problem, name)
        if m is not None:
            obj[name] = matrix_to_json(m.with_descriptor(desc))
    if problem.blocks is not None:
        t = problem.blocks
        obj["blocks"] = {
            "dims": list(t.dims),
            "matrices": [
                {"row": i, "col": j, "matrix": matrix_to_json(t.blocks[(i, j)].with_descriptor(t.descriptor))}
                for (i, j) in sorted(t.blocks)
            ],
        }
    return obj


def problem_from_json(obj):
    desc = descriptor_from_json(obj["algebra"])
    mats = {name: matrix_from_json(obj[name], desc) for name in ("A", "B", "C") if name in obj}
    blocks = None
    if "blocks" in obj:
        section = obj["blocks"]
        dims = [int(d) for d in section["dims"]]
        parts = {(int(e["row"]), int(e["col"])): matrix_from_json(e["matrix"], desc)
                 for e in section["matrices"]}
        missing = [i for i in range(len(dims)) if (i, i) not in parts]
        if missing:
            raise ShapeMismatch(f"diagonal blocks {missing} are missing")
        diagonal = [parts.pop((i, i)) for i in range(len(dims))]
        if [d.rows for d in diagonal] != dims:
            raise ShapeMismatch(f"diagonal block sizes do not match dims {dims}")
        blocks = BlockTriangular.from_blocks(diagonal, parts)
    return Problem(descriptor=desc, blocks=blocks, **mats)


_PAIR = re.compile(r"\[\s*([^\[\]{},\s]+),\s*([^\[\]{},\s]+)\s*\]")


def dumps(obj):
    text = json.dumps(obj, indent=2, allow_nan=False)
    # keep [re, im] pairs on one line
    return _PAIR.sub(r"[\1, \2]", text) + "\n"


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def write_json(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def load_problem(path):
    return problem_from_json(read_json(path))


def save_problem(path, problem):
    write_json(path, problem_to_json(problem))


def solution_to_json(sol, config=None):
    """ResultFile contents for a :class:`~banach_sylvester.gelfand.SylvesterSolution`."""
    obj = {
        "algebra": descriptor_to_json(sol.x.descriptor),
        "X": matrix_to_json(sol.x),
        "residual_wiener": sol.residual_wiener,
        "residual_sup": sol.residual_sup,
        "tail_mass": sol.tail_mass,
        "global_min_gap": sol.report.global_min_gap,
    }
    if sol.crosscheck_error is not None:
        obj["crosscheck_error"] = sol.crosscheck_error
    if config is not None:
        obj["config"] = dict(config)
    return obj


def solution_x_from_json(obj):
    return matrix_from_json(obj["X"], descriptor_from_json(obj["algebra"]))


def certificate_to_json(cert, config=None, dims=None):
    obj = {
        "algebra": descriptor_to_json(cert.s.descriptor),
        "S": matrix_to_json(cert.s),
        "S_inv": matrix_to_json(cert.s_inv),
        "residual": cert.residual,
        "inverse_residual": cert.inverse_residual,
        "scale": cert.scale,
        "valid": cert.valid,
    }
    if cert.solution is not None:
        obj["X"] = matrix_to_json(cert.solution.with_descriptor(cert.s.descriptor))
    if cert.report is not None:
        obj["global_min_gap"] = cert.report.global_min_gap
    if dims is not None:
        obj["dims"] = list(dims)
    if config is not None:
        obj["config"] = dict(config)
    return obj
