"""Shared test helpers."""

import numpy as np

from gqbp import Program, QueryCircuit, RestrictedLevel, Unitary, PhaseOracle, random_rgqbp

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def deutsch_circuit() -> QueryCircuit:
    """One-qubit two-bit circuit accepting exactly when the bits differ."""
    return QueryCircuit(q=1, n=2,
                        gates=(Unitary(HADAMARD), PhaseOracle(), Unitary(HADAMARD)),
                        accept=frozenset({1}))


def seeded_dims(seed: int, smax: int = 8, lmax: int = 8, nmax: int = 8):
    """Deterministic (s, L, n) triple within the given caps."""
    rng = np.random.default_rng(seed)
    return (int(rng.integers(1, smax + 1)), int(rng.integers(1, lmax + 1)),
            int(rng.integers(1, nmax + 1)))


def seeded_program(seed: int, smax: int = 8, lmax: int = 8, nmax: int = 8) -> Program:
    s, length, n = seeded_dims(seed, smax, lmax, nmax)
    return random_rgqbp(s, length, n, seed=seed)


def width1_flip_program(n: int = 4) -> Program:
    """Single node, single level: phase pi on x_0, accept node 0."""
    level = RestrictedLevel(labels=np.array([0]), base=np.array([[1.0 + 0j]]),
                            thetas=np.array([np.pi]))
    return Program(n=n, initial=np.array([1.0 + 0j]), levels=(level,),
                   accept=frozenset({0}))


def input_independent_program(n: int = 4, s: int = 2) -> Program:
    """All labels 0 and all phases 0: the input never matters."""
    base = np.eye(s, dtype=complex)
    base[:2, :2] = HADAMARD
    level = RestrictedLevel(labels=np.zeros(s, dtype=np.int64), base=base,
                            thetas=np.zeros(s))
    initial = np.zeros(s, dtype=complex)
    initial[0] = 1.0
    return Program(n=n, initial=initial, levels=(level, level), accept=frozenset({0}))
