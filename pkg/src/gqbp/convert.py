"""Compilers between query circuits and restricted branching programs.

Circuit -> program: every oracle gate contributes one transition level.
The gate list is normalised into alternating form by fusing the unitaries
between consecutive oracles; a phase oracle then becomes a level whose
per-node phases are pi on nodes addressing a live input position, and a
bit oracle is first rewritten as H(target) . input-phase-diagonal .
H(target) (the diagonal applies (-1)**(x_k * target_bit), which is exactly
a per-node query phase), with the Hadamards folded into the neighbouring
fused unitaries.  Width is 2^q and length equals the query count.

Program -> circuit: three registers, namely node index (ceil(log2 w) wires),
queried position (ceil(log2 n) wires), query value (1 wire).  Each level
costs two bit-oracle calls: write the node's label into the position
register, fetch the bit, apply the per-node phase conditioned on the
fetched bit, fetch again to uncompute, clear the position register, then
apply the level's base unitary on the node register.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import (
    BitOracle,
    PhaseOracle,
    QueryCircuit,
    Unitary,
    circuit_acceptances,
    complete_unitary,
    index_register_width,
)
from .core import Program, RestrictedLevel
from .simulate import acceptance_probabilities, all_inputs
from .transform import pad_width

EXHAUSTIVE_LIMIT = 16


def _hadamard_on_wire(q: int, wire: int) -> np.ndarray:
    h = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    return np.kron(np.kron(np.eye(1 << wire), h), np.eye(1 << (q - 1 - wire)))


def _phase_oracle_phases(circuit: QueryCircuit):
    m = index_register_width(circuit.n)
    idx = np.arange(circuit.dim, dtype=np.int64) >> (circuit.q - m)
    live = idx < circuit.n
    thetas = np.where(live, np.pi, 0.0)
    labels = np.where(live, idx, 0)
    return thetas, labels


def _bit_oracle_phases(circuit: QueryCircuit, gate: BitOracle):
    j = np.arange(circuit.dim, dtype=np.int64)
    k = np.zeros_like(j)
    nw = len(gate.index_wires)
    for pos, w in enumerate(gate.index_wires):
        k |= ((j >> (circuit.q - 1 - w)) & 1) << (nw - 1 - pos)
    target_bit = (j >> (circuit.q - 1 - gate.target_wire)) & 1
    live = k < circuit.n
    thetas = np.where(live, np.pi * target_bit, 0.0)
    labels = np.where(live, k, 0)
    return thetas, labels


def circuit_to_rgqbp(circuit: QueryCircuit) -> Program:
    """Compile a query circuit into an equivalent restricted program of
    width 2^q and length equal to the circuit's query count."""
    dim = circuit.dim
    segments = [np.eye(dim, dtype=np.complex128)]
    queries = []
    for gate in circuit.gates:
        if isinstance(gate, Unitary):
            segments[-1] = gate.matrix @ segments[-1]
        elif isinstance(gate, PhaseOracle):
            queries.append(_phase_oracle_phases(circuit))
            segments.append(np.eye(dim, dtype=np.complex128))
        else:
            h = _hadamard_on_wire(circuit.q, gate.target_wire)
            segments[-1] = h @ segments[-1]
            queries.append(_bit_oracle_phases(circuit, gate))
            segments.append(h)
    initial = segments[0][:, 0]
    levels = tuple(
        RestrictedLevel(labels=labels, base=segments[i + 1], thetas=thetas)
        for i, (thetas, labels) in enumerate(queries)
    )
    return Program(n=circuit.n, initial=initial, levels=levels, accept=circuit.accept)


def rgqbp_to_circuit(program: Program) -> QueryCircuit:
    """Compile a restricted program into a bit-oracle query circuit on
    ceil(log2 w) + ceil(log2 n) + 1 wires making exactly 2L queries."""
    if program.kind != "restricted":
        raise ValueError("only restricted programs can be compiled to circuits")
    a = index_register_width(program.width)
    padded = pad_width(program, 1 << a)
    m = index_register_width(program.n)
    q = a + m + 1
    dim = 1 << q
    anc = 1 << (m + 1)
    j = np.arange(dim, dtype=np.int64)
    node = j >> (m + 1)
    query_bit = j & 1

    gates: list = [Unitary(np.kron(complete_unitary(padded.initial), np.eye(anc)))]
    oracle = BitOracle(index_wires=tuple(range(a, a + m)), target_wire=a + m)
    for lv in padded.levels:
        perm = j ^ (lv.labels[node] << 1)
        label_writer = np.zeros((dim, dim), dtype=np.complex128)
        label_writer[perm, j] = 1.0
        phase = Unitary(np.diag(np.exp(1j * lv.thetas[node] * query_bit)))
        write = Unitary(label_writer)
        mix = Unitary(np.kron(lv.base, np.eye(anc)))
        gates += [write, oracle, phase, oracle, write, mix]
    accept = frozenset(v << (m + 1) for v in program.accept)
    return QueryCircuit(q=q, n=program.n, gates=tuple(gates), accept=accept)


@dataclass(frozen=True)
class RoundtripReport:
    max_deviation: float
    inputs_checked: int
    exhaustive: bool
    passed: bool


def roundtrip_check(program: Program, tol: float = 1e-9,
                    sample_size: int = 256, seed: int = 0) -> RoundtripReport:
    """Compare program acceptance with its compiled circuit's acceptance,
    exhaustively for n <= 16 and on seeded random inputs otherwise."""
    circuit = rgqbp_to_circuit(program)
    if program.n <= EXHAUSTIVE_LIMIT:
        inputs = all_inputs(program.n)
        exhaustive = True
    else:
        rng = np.random.default_rng(seed)
        inputs = rng.integers(0, 2, size=(sample_size, program.n)).astype(np.uint8)
        exhaustive = False
    dev = np.abs(acceptance_probabilities(program, inputs)
                 - circuit_acceptances(circuit, inputs))
    worst = float(dev.max()) if dev.size else 0.0
    return RoundtripReport(max_deviation=worst, inputs_checked=inputs.shape[0],
                           exhaustive=exhaustive, passed=worst <= tol)
