"""Exact state-vector evolution of branching programs.

Evolution starts at the program's initial amplitude vector and applies one
input-conditioned transition matrix per level; the acceptance probability
is the squared mass of the final state on the accept set.  Oracle access is
a direct bit lookup ``x[label]`` per node.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backends import evolve_general, evolve_restricted
from .core import Level, Program, RestrictedLevel, as_bits

ACCEPT = "accept"
REJECT = "reject"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RunTrace:
    """Per-level amplitude snapshots; states[0] is the initial vector."""

    states: tuple[np.ndarray, ...]

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def transition_matrix(level: Level, x) -> np.ndarray:
    """Assemble the transition matrix realised by input ``x`` at one level.

    Column ``j`` is node ``j``'s outgoing amplitude vector for the value of
    its queried bit.
    """
    bits = as_bits(x)
    node_bits = bits[level.labels]
    if isinstance(level, RestrictedLevel):
        return level.base * np.exp(1j * level.thetas * node_bits)[np.newaxis, :]
    return np.where(node_bits.astype(bool)[np.newaxis, :], level.a1, level.a0)


def run(program: Program, x) -> RunTrace:
    """Evolve ``program`` on input ``x``, recording the state after each level."""
    bits = as_bits(x, program.n)
    states = [program.initial]
    v = program.initial
    for level in program.levels:
        v = transition_matrix(level, bits) @ v
        states.append(v)
    return RunTrace(states=tuple(states))


def final_state(program: Program, x) -> np.ndarray:
    return run(program, x).final


def acceptance_probability(program: Program, x) -> float:
    v = final_state(program, x)
    idx = sorted(program.accept)
    return float(np.sum(np.abs(v[idx]) ** 2)) if idx else 0.0


def decide(program: Program, x, threshold: float = 2 / 3) -> str:
    """Bounded-error decision: accept above ``threshold``, reject below
    ``1 - threshold``, inconclusive in between."""
    if not 0.5 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (1/2, 1], got {threshold}")
    p = acceptance_probability(program, x)
    if p >= threshold:
        return ACCEPT
    if p <= 1.0 - threshold:
        return REJECT
    return INCONCLUSIVE


def sample_measurement(program: Program, x, seed: int, shots: int | None = None):
    """Sample standard-basis measurement outcomes of the final state.

    Uses numpy's default PCG64 generator seeded with ``seed``; sequences
    are reproducible for a fixed seed within this implementation (other
    implementations are expected to match in distribution only).  Returns a
    single node index, or an array of ``shots`` indices when given.
    """
    v = final_state(program, x)
    probs = np.abs(v) ** 2
    total = probs.sum()
    if total <= 0:
        raise ValueError("final state has zero norm; nothing to sample")
    probs = probs / total
    rng = np.random.default_rng(seed)
    if shots is None:
        return int(rng.choice(probs.size, p=probs))
    return rng.choice(probs.size, p=probs, size=shots)


def _level_arrays(program: Program):
    labels = np.stack([lv.labels for lv in program.levels]).astype(np.int64)
    if program.kind == "restricted":
        bases = np.stack([lv.base for lv in program.levels])
        thetas = np.stack([lv.thetas for lv in program.levels])
        return "restricted", (np.ascontiguousarray(bases), np.ascontiguousarray(thetas),
                              np.ascontiguousarray(labels))
    a0 = np.stack([lv.a0 for lv in program.levels])
    a1 = np.stack([lv.a1 for lv in program.levels])
    return "general", (np.ascontiguousarray(a0), np.ascontiguousarray(a1),
                       np.ascontiguousarray(labels))


def final_states(program: Program, inputs: np.ndarray) -> np.ndarray:
    """Batch-evolve a (B, n) array of inputs to their (B, s) final states."""
    inputs = np.ascontiguousarray(np.atleast_2d(np.asarray(inputs, dtype=np.uint8)))
    if inputs.shape[1] != program.n:
        raise ValueError(f"input rows must have {program.n} bits, got {inputs.shape[1]}")
    initial = np.ascontiguousarray(program.initial)
    if not program.levels:
        return np.broadcast_to(initial, (inputs.shape[0], program.width)).copy()
    kind, arrays = _level_arrays(program)
    if kind == "restricted":
        bases, thetas, labels = arrays
        return evolve_restricted(bases, thetas, labels, initial, inputs)
    a0, a1, labels = arrays
    return evolve_general(a0, a1, labels, initial, inputs)


def acceptance_probabilities(program: Program, inputs: np.ndarray) -> np.ndarray:
    """Batch acceptance probabilities for a (B, n) array of inputs."""
    finals = final_states(program, inputs)
    idx = sorted(program.accept)
    if not idx:
        return np.zeros(finals.shape[0])
    return np.sum(np.abs(finals[:, idx]) ** 2, axis=1)


def all_inputs(n: int) -> np.ndarray:
    """All 2**n inputs as a (2**n, n) uint8 array; row i is the n-bit
    big-endian expansion of i (so row index equals int(bitstring, 2))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 24:
        raise ValueError(f"refusing to enumerate 2^{n} inputs")
    r = np.arange(1 << n, dtype=np.int64)
    return ((r[:, np.newaxis] >> np.arange(n - 1, -1, -1)) & 1).astype(np.uint8)
