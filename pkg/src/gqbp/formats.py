"""JSON document formats for programs ("gqbp-v1") and circuits ("qqc-v1").

Serialisation is deterministic: sorted keys, two-space indent, shortest
round-trip decimals, trailing newline.  Amplitudes are [re, im] pairs and
matrices are row-major (column j holds node j's transition vector).
Parsing validates schema and index ranges with field-named diagnostics;
numeric properties (normalisation, unitarity) are left to the validators
so that broken files can still be loaded and inspected.
"""

from __future__ import annotations

import json

import numpy as np

from .circuit import BitOracle, Gate, PhaseOracle, QueryCircuit, Unitary
from .core import GeneralLevel, Program, RestrictedLevel

PROGRAM_FORMAT = "gqbp-v1"
CIRCUIT_FORMAT = "qqc-v1"


class FormatError(ValueError):
    """Schema violation, carrying the offending field path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def _pairs(vec: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in vec]


def _matrix(m: np.ndarray) -> list:
    return [_pairs(row) for row in m]


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError("document", f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(doc, dict):
        raise FormatError("document", "top level must be a JSON object")
    return doc


def _get(doc: dict, field: str, kind, where: str = ""):
    path = f"{where}.{field}" if where else field
    if field not in doc:
        raise FormatError(path, "missing required field")
    value = doc[field]
    if kind is int and isinstance(value, bool):
        raise FormatError(path, "expected an integer")
    if not isinstance(value, kind):
        raise FormatError(path, f"expected {kind.__name__}")
    return value


def _parse_pair(value, path: str) -> complex:
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in value)):
        raise FormatError(path, "amplitude must be a [re, im] pair of numbers")
    return complex(value[0], value[1])


def _parse_vector(value, path: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise FormatError(path, "expected a non-empty list of [re, im] pairs")
    return np.array([_parse_pair(v, f"{path}[{i}]") for i, v in enumerate(value)])


def _parse_matrix(value, path: str, dim: int) -> np.ndarray:
    if not isinstance(value, list) or len(value) != dim:
        raise FormatError(path, f"expected {dim} matrix rows")
    rows = []
    for r, row in enumerate(value):
        vec = _parse_vector(row, f"{path}[{r}]")
        if vec.size != dim:
            raise FormatError(f"{path}[{r}]", f"expected {dim} entries, got {vec.size}")
        rows.append(vec)
    return np.array(rows)


def _parse_index_list(value, path: str, upper: int, what: str) -> list[int]:
    if not isinstance(value, list):
        raise FormatError(path, "expected a list of integers")
    out = []
    for i, v in enumerate(value):
        if not isinstance(v, int) or isinstance(v, bool):
            raise FormatError(f"{path}[{i}]", "expected an integer")
        if not 0 <= v < upper:
            raise FormatError(f"{path}[{i}]", f"{what} {v} out of range [0, {upper})")
        out.append(v)
    return out


def serialize_program(program: Program) -> str:
    levels = []
    for lv in program.levels:
        entry = {"labels": [int(l) for l in lv.labels]}
        if isinstance(lv, RestrictedLevel):
            entry["base"] = _matrix(lv.base)
            entry["thetas"] = [float(t) for t in lv.thetas]
        else:
            entry["a0"] = _matrix(lv.a0)
            entry["a1"] = _matrix(lv.a1)
        levels.append(entry)
    doc = {
        "format": PROGRAM_FORMAT,
        "n": program.n,
        "kind": program.kind,
        "width": program.width,
        "initial": _pairs(program.initial),
        "levels": levels,
        "accept": sorted(program.accept),
    }
    if program.alternating:
        doc["alternating"] = True
    return _dump(doc)


def parse_program(text: str) -> Program:
    doc = _load(text)
    if _get(doc, "format", str) != PROGRAM_FORMAT:
        raise FormatError("format", f"expected {PROGRAM_FORMAT!r}, got {doc['format']!r}")
    n = _get(doc, "n", int)
    if n < 1:
        raise FormatError("n", f"must be >= 1, got {n}")
    kind = _get(doc, "kind", str)
    if kind not in ("restricted", "general"):
        raise FormatError("kind", f"must be 'restricted' or 'general', got {kind!r}")
    width = _get(doc, "width", int)
    if width < 1:
        raise FormatError("width", f"must be >= 1, got {width}")
    initial = _parse_vector(_get(doc, "initial", list), "initial")
    if initial.size != width:
        raise FormatError("initial", f"expected {width} amplitudes, got {initial.size}")
    raw_levels = _get(doc, "levels", list)
    levels = []
    for i, entry in enumerate(raw_levels):
        where = f"levels[{i}]"
        if not isinstance(entry, dict):
            raise FormatError(where, "expected an object")
        labels = np.array(_parse_index_list(_get(entry, "labels", list, where),
                                            f"{where}.labels", n, "label"),
                          dtype=np.int64)
        if labels.size != width:
            raise FormatError(f"{where}.labels", f"expected {width} labels, got {labels.size}")
        if kind == "restricted":
            base = _parse_matrix(_get(entry, "base", list, where), f"{where}.base", width)
            thetas_raw = _get(entry, "thetas", list, where)
            if len(thetas_raw) != width or not all(
                    isinstance(t, (int, float)) and not isinstance(t, bool) for t in thetas_raw):
                raise FormatError(f"{where}.thetas", f"expected {width} angles in radians")
            levels.append(RestrictedLevel(labels=labels, base=base,
                                          thetas=np.array(thetas_raw, dtype=float)))
        else:
            a0 = _parse_matrix(_get(entry, "a0", list, where), f"{where}.a0", width)
            a1 = _parse_matrix(_get(entry, "a1", list, where), f"{where}.a1", width)
            levels.append(GeneralLevel(labels=labels, a0=a0, a1=a1))
    accept = _parse_index_list(_get(doc, "accept", list), "accept", width, "accept node")
    alternating = doc.get("alternating", False)
    if not isinstance(alternating, bool):
        raise FormatError("alternating", "expected a boolean")
    try:
        return Program(n=n, initial=initial, levels=tuple(levels),
                       accept=frozenset(accept), alternating=alternating)
    except ValueError as e:
        raise FormatError("document", str(e))


def serialize_circuit(circuit: QueryCircuit) -> str:
    gates = []
    for gate in circuit.gates:
        if isinstance(gate, Unitary):
            gates.append({"type": "unitary", "matrix": _matrix(gate.matrix)})
        elif isinstance(gate, PhaseOracle):
            gates.append({"type": "phase_oracle"})
        else:
            gates.append({"type": "bit_oracle",
                          "index_wires": list(gate.index_wires),
                          "target_wire": gate.target_wire})
    doc = {
        "format": CIRCUIT_FORMAT,
        "qubits": circuit.q,
        "n": circuit.n,
        "gates": gates,
        "accept": sorted(circuit.accept),
    }
    return _dump(doc)


def parse_circuit(text: str) -> QueryCircuit:
    doc = _load(text)
    if _get(doc, "format", str) != CIRCUIT_FORMAT:
        raise FormatError("format", f"expected {CIRCUIT_FORMAT!r}, got {doc['format']!r}")
    q = _get(doc, "qubits", int)
    if q < 1:
        raise FormatError("qubits", f"must be >= 1, got {q}")
    n = _get(doc, "n", int)
    if n < 1:
        raise FormatError("n", f"must be >= 1, got {n}")
    dim = 1 << q
    raw_gates = _get(doc, "gates", list)
    gates: list[Gate] = []
    for i, entry in enumerate(raw_gates):
        where = f"gates[{i}]"
        if not isinstance(entry, dict):
            raise FormatError(where, "expected an object")
        kind = _get(entry, "type", str, where)
        if kind == "unitary":
            matrix = _parse_matrix(_get(entry, "matrix", list, where), f"{where}.matrix", dim)
            gates.append(Unitary(matrix=matrix))
        elif kind == "phase_oracle":
            gates.append(PhaseOracle())
        elif kind == "bit_oracle":
            wires = _parse_index_list(_get(entry, "index_wires", list, where),
                                      f"{where}.index_wires", q, "wire")
            target = _get(entry, "target_wire", int, where)
            if not 0 <= target < q:
                raise FormatError(f"{where}.target_wire", f"wire {target} out of range [0, {q})")
            try:
                gates.append(BitOracle(index_wires=tuple(wires), target_wire=target))
            except ValueError as e:
                raise FormatError(where, str(e))
        else:
            raise FormatError(f"{where}.type", f"unknown gate type {kind!r}")
    accept = _parse_index_list(_get(doc, "accept", list), "accept", dim, "accept state")
    try:
        return QueryCircuit(q=q, n=n, gates=tuple(gates), accept=frozenset(accept))
    except ValueError as e:
        raise FormatError("document", str(e))


def detect_format(text: str) -> str:
    """Return 'program' or 'circuit' from a document's format field."""
    doc = _load(text)
    fmt = _get(doc, "format", str)
    if fmt == PROGRAM_FORMAT:
        return "program"
    if fmt == CIRCUIT_FORMAT:
        return "circuit"
    raise FormatError("format", f"unknown format {fmt!r}")
