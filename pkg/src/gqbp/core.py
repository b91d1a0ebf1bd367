"""Domain types for levelled quantum branching programs.

A program evolves an amplitude vector over a fixed set of ``s`` nodes per
level.  Each level stores one transition per source node, conditioned on a
single queried input bit:

* ``GeneralLevel`` keeps two independent transition matrices ``a0``/``a1``
  (column ``j`` is the outgoing amplitude vector of node ``j`` when its
  queried bit is 0 resp. 1).
* ``RestrictedLevel`` is the phase-only special case: the 1-transition of
  node ``j`` equals its 0-transition times ``exp(1j * thetas[j])``, so a
  single ``base`` matrix plus per-node phase angles suffice.

All containers are immutable after construction; construction validates
shapes and index ranges, while numeric properties (normalisation,
unitarity) are checked by the ``validate_*`` functions so that files with
broken numerics can still be loaded and inspected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-9


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_bits(x, n: int | None = None) -> np.ndarray:
    """Normalise an input string ('0101', sequence, or array) to a uint8 array.

    Raises ValueError on non-binary content or, when ``n`` is given, on a
    length mismatch.
    """
    if isinstance(x, str):
        if not all(c in "01" for c in x):
            raise ValueError(f"input string must be over {{0,1}}, got {x!r}")
        bits = np.frombuffer(x.encode(), dtype=np.uint8) - ord("0")
    else:
        bits = np.asarray(x, dtype=np.uint8)
        if bits.ndim != 1 or not np.isin(bits, (0, 1)).all():
            raise ValueError("input must be a flat sequence of 0/1 bits")
    if n is not None and bits.size != n:
        raise ValueError(f"input length mismatch: expected {n} bits, got {bits.size}")
    return bits


def bits_to_str(bits: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in np.asarray(bits).ravel())


def _check_labels(labels: np.ndarray, width: int) -> None:
    if labels.shape != (width,):
        raise ValueError(f"labels must have one entry per node ({width}), got shape {labels.shape}")
    if labels.size and labels.min() < 0:
        raise ValueError("labels must be non-negative variable indices")


@dataclass(frozen=True, eq=False)
class GeneralLevel:
    """One transition layer with independent 0- and 1-transition matrices."""

    labels: np.ndarray
    a0: np.ndarray
    a1: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        a0 = np.asarray(self.a0, dtype=np.complex128)
        a1 = np.asarray(self.a1, dtype=np.complex128)
        if a0.ndim != 2 or a0.shape[0] != a0.shape[1]:
            raise ValueError(f"a0 must be square, got shape {a0.shape}")
        if a1.shape != a0.shape:
            raise ValueError(f"a0/a1 shape mismatch: {a0.shape} vs {a1.shape}")
        _check_labels(labels, a0.shape[0])
        if not (np.isfinite(a0).all() and np.isfinite(a1).all()):
            raise ValueError("transition amplitudes must be finite")
        object.__setattr__(self, "labels", _freeze(labels))
        object.__setattr__(self, "a0", _freeze(a0))
        object.__setattr__(self, "a1", _freeze(a1))

    @property
    def width(self) -> int:
        return self.a0.shape[0]


@dataclass(frozen=True, eq=False)
class RestrictedLevel:
    """One transition layer whose 1-transitions are per-node phase multiples
    of the 0-transitions."""

    labels: np.ndarray
    base: np.ndarray
    thetas: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        base = np.asarray(self.base, dtype=np.complex128)
        thetas = np.asarray(self.thetas, dtype=np.float64)
        if base.ndim != 2 or base.shape[0] != base.shape[1]:
            raise ValueError(f"base must be square, got shape {base.shape}")
        s = base.shape[0]
        _check_labels(labels, s)
        if thetas.shape != (s,):
            raise ValueError(f"thetas must have one angle per node ({s}), got shape {thetas.shape}")
        if not (np.isfinite(base).all() and np.isfinite(thetas).all()):
            raise ValueError("base entries and phase angles must be finite")
        object.__setattr__(self, "labels", _freeze(labels))
        object.__setattr__(self, "base", _freeze(base))
        object.__setattr__(self, "thetas", _freeze(thetas))

    @property
    def width(self) -> int:
        return self.base.shape[0]


Level = GeneralLevel | RestrictedLevel


@dataclass(frozen=True, eq=False)
class Program:
    """A levelled branching program over ``n`` input bits.

    ``initial`` is the starting amplitude vector (one entry per node),
    ``levels`` the transitions applied in order, and ``accept`` the node
    indices at the final level whose measurement outcome means "accept".
    ``alternating`` marks programs already in split form (even-indexed
    levels carry the queries, odd-indexed levels the mixing).
    """

    n: int
    initial: np.ndarray
    levels: tuple[Level, ...]
    accept: frozenset[int] = field(default_factory=frozenset)
    alternating: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"input length must be >= 1, got {self.n}")
        initial = np.asarray(self.initial, dtype=np.complex128)
        if initial.ndim != 1 or initial.size < 1:
            raise ValueError("initial must be a non-empty amplitude vector")
        if not np.isfinite(initial).all():
            raise ValueError("initial amplitudes must be finite")
        levels = tuple(self.levels)
        kinds = {type(lv) for lv in levels}
        if len(kinds) > 1:
            raise ValueError("levels must be all restricted or all general, not mixed")
        s = initial.size
        for i, lv in enumerate(levels):
            if lv.width != s:
                raise ValueError(f"level {i} has width {lv.width}, expected {s}")
            if lv.labels.size and lv.labels.max() >= self.n:
                raise ValueError(f"level {i} labels must be < n={self.n}")
        accept = frozenset(int(v) for v in self.accept)
        for v in accept:
            if not 0 <= v < s:
                raise ValueError(f"accept node {v} out of range [0, {s})")
        object.__setattr__(self, "initial", _freeze(initial))
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "accept", accept)

    @property
    def width(self) -> int:
        return self.initial.size

    @property
    def length(self) -> int:
        return len(self.levels)

    @property
    def kind(self) -> str:
        if self.levels and isinstance(self.levels[0], GeneralLevel):
            return "general"
        return "restricted"

    @property
    def query_depth(self) -> int:
        """Number of query-carrying transitions: every level of a plain
        program, half the levels of an alternating-form program."""
        return self.length // 2 if self.alternating else self.length

    def replace(self, **changes) -> "Program":
        args = dict(
            n=self.n,
            initial=self.initial,
            levels=self.levels,
            accept=self.accept,
            alternating=self.alternating,
        )
        args.update(changes)
        return Program(**args)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a numeric well-formedness check.

    ``max_deviation`` is the largest max-entry deviation from the identity
    seen across all checked transition operators; ``assignments_checked``
    counts the bit assignments enumerated (1 for restricted levels, where
    base unitarity alone settles every input).  ``convention`` records that
    general levels are checked against every assignment of bits to their
    distinct labels, not only assignments realised by actual inputs.
    """

    passed: bool
    max_deviation: float
    assignments_checked: int
    convention: str = "all-assignments"
    errors: tuple[str, ...] = ()


def unitarity_deviation(m: np.ndarray) -> float:
    """Max-entry norm of m†m - I."""
    eye = np.eye(m.shape[0])
    return float(np.abs(m.conj().T @ m - eye).max())


def validate_restricted(level: RestrictedLevel, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check a restricted level: base unitarity within ``tol``.

    The input-conditioned operator is ``base @ diag(exp(1j*thetas*bits))``;
    the diagonal factor is unitary for any bits, so base unitarity is
    sufficient for every input.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    dev = unitarity_deviation(level.base)
    errors = () if dev <= tol else (f"base deviates from unitary by {dev:.3e} (tol {tol:.1e})",)
    return ValidationReport(passed=dev <= tol, max_deviation=dev, assignments_checked=1,
                            convention="base-unitarity", errors=errors)


def validate_general(level: GeneralLevel, tol: float = DEFAULT_TOL,
                     max_distinct: int = 20) -> ValidationReport:
    """Check a general level: the assembled transition matrix must be unitary
    for every assignment of bits to the level's distinct labels.

    With ``d`` distinct labels this enumerates 2**d assignments; levels with
    ``d > max_distinct`` are refused (callers can fall back to checking the
    realised per-input matrices through simulation).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    distinct = np.unique(level.labels)
    d = distinct.size
    if d > max_distinct:
        raise ValueError(
            f"level queries {d} distinct variables; refusing to enumerate 2^{d} "
            f"assignments (max_distinct={max_distinct})")
    worst = 0.0
    errors = []
    checked = 0
    for assignment in itertools.product((0, 1), repeat=d):
        bit_of = dict(zip(distinct.tolist(), assignment))
        node_bits = np.array([bit_of[int(l)] for l in level.labels], dtype=bool)
        m = np.where(node_bits[np.newaxis, :], level.a1, level.a0)
        dev = unitarity_deviation(m)
        worst = max(worst, dev)
        if dev > tol:
            errors.append(f"assignment {assignment} of labels {distinct.tolist()} "
                          f"gives deviation {dev:.3e}")
        checked += 1
    return ValidationReport(passed=not errors, max_deviation=worst,
                            assignments_checked=checked, errors=tuple(errors))


def validate_program(program: Program, tol: float = DEFAULT_TOL,
                     max_distinct: int = 20) -> ValidationReport:
    """Aggregate numeric validation: initial norm plus every level's report."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    errors = []
    norm_dev = abs(float(np.linalg.norm(program.initial)) - 1.0)
    if norm_dev > tol:
        errors.append(f"initial vector norm deviates from 1 by {norm_dev:.3e}")
    worst = norm_dev
    checked = 0
    convention = "base-unitarity"
    for i, lv in enumerate(program.levels):
        if isinstance(lv, RestrictedLevel):
            rep = validate_restricted(lv, tol)
        else:
            rep = validate_general(lv, tol, max_distinct)
            convention = rep.convention
        worst = max(worst, rep.max_deviation)
        checked += rep.assignments_checked
        errors.extend(f"level {i}: {e}" for e in rep.errors)
    return ValidationReport(passed=not errors, max_deviation=worst,
                            assignments_checked=checked, convention=convention,
                            errors=tuple(errors))


def restrict(program: Program, tol: float = DEFAULT_TOL) -> Program:
    """Convert a general program to restricted form.

    For each node the phase is extracted at the largest-magnitude entry of
    its 0-transition column (avoiding near-zero denominators) and then
    verified against the whole column pair.  Nodes whose columns are not
    phase-related within ``tol`` raise, identifying level and node.
    """
    if program.kind == "restricted":
        return program
    new_levels = []
    for i, lv in enumerate(program.levels):
        s = lv.width
        thetas = np.zeros(s)
        for j in range(s):
            c0, c1 = lv.a0[:, j], lv.a1[:, j]
            pivot = int(np.argmax(np.abs(c0)))
            if abs(c0[pivot]) == 0.0:
                if np.abs(c1).max() > tol:
                    raise ValueError(
                        f"level {i} node {j}: zero 0-transition but nonzero 1-transition")
                continue
            theta = float(np.angle(c1[pivot] / c0[pivot]))
            if np.abs(c1 - np.exp(1j * theta) * c0).max() > tol:
                raise ValueError(
                    f"level {i} node {j}: transitions are not phase-related within {tol:.1e}")
            thetas[j] = theta
        new_levels.append(RestrictedLevel(labels=lv.labels, base=lv.a0, thetas=thetas))
    return program.replace(levels=tuple(new_levels))


def generalize(program: Program) -> Program:
    """Expand a restricted program into explicit 0/1 transition matrices."""
    if program.kind == "general":
        return program
    new_levels = []
    for lv in program.levels:
        a1 = lv.base * np.exp(1j * lv.thetas)[np.newaxis, :]
        new_levels.append(GeneralLevel(labels=lv.labels, a0=lv.base, a1=a1))
    return program.replace(levels=tuple(new_levels))
