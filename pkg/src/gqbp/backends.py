"""Batch evolution kernels.

The hot loop of every sweep (exhaustive input checks, expectation
estimates, roundtrip comparisons) is "evolve one program over a batch of
inputs".  Two interchangeable implementations are provided:

* a numba ``@njit`` kernel (default when numba imports), and
* a vectorised pure-numpy path.

Selection is environment-driven: set ``GQBP_BACKEND=numpy`` to force the
fallback, ``GQBP_BACKEND=numba`` to require the JIT (raises if numba is
unavailable).  Unset, numba is used when present.

All kernels take raw arrays: ``bases``/``a0``/``a1`` with shape (L, s, s),
``thetas`` (L, s) float64, ``labels`` (L, s) int64, ``initial`` (s,)
complex128 and ``inputs`` (B, n) uint8, and return the (B, s) final states.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


def _evolve_restricted_numpy(bases, thetas, labels, initial, inputs):
    nb = inputs.shape[0]
    states = np.broadcast_to(initial, (nb, initial.shape[0])).copy()
    for t in range(bases.shape[0]):
        bits = inputs[:, labels[t]]
        phases = np.exp(1j * thetas[t] * bits)
        states = (states * phases) @ bases[t].T
    return states


def _evolve_general_numpy(a0, a1, labels, initial, inputs):
    nb = inputs.shape[0]
    states = np.broadcast_to(initial, (nb, initial.shape[0])).copy()
    for t in range(a0.shape[0]):
        bits = inputs[:, labels[t]]
        states = ((1 - bits) * states) @ a0[t].T + (bits * states) @ a1[t].T
    return states


if HAVE_NUMBA:

    @njit(cache=True)
    def _evolve_restricted_numba(bases, thetas, labels, initial, inputs):
        nb = inputs.shape[0]
        s = initial.shape[0]
        nl = bases.shape[0]
        out = np.empty((nb, s), np.complex128)
        for b in range(nb):
            v = initial.copy()
            w = np.empty(s, np.complex128)
            for t in range(nl):
                for i in range(s):
                    w[i] = 0.0
                for j in range(s):
                    amp = v[j]
                    if inputs[b, labels[t, j]] == 1:
                        amp = amp * np.exp(1j * thetas[t, j])
                    for i in range(s):
                        w[i] += bases[t, i, j] * amp
                v, w = w, v
            out[b] = v
        return out

    @njit(cache=True)
    def _evolve_general_numba(a0, a1, labels, initial, inputs):
        nb = inputs.shape[0]
        s = initial.shape[0]
        nl = a0.shape[0]
        out = np.empty((nb, s), np.complex128)
        for b in range(nb):
            v = initial.copy()
            w = np.empty(s, np.complex128)
            for t in range(nl):
                for i in range(s):
                    w[i] = 0.0
                for j in range(s):
                    amp = v[j]
                    if inputs[b, labels[t, j]] == 1:
                        for i in range(s):
                            w[i] += a1[t, i, j] * amp
                    else:
                        for i in range(s):
                            w[i] += a0[t, i, j] * amp
                v, w = w, v
            out[b] = v
        return out


def _select_backend() -> str:
    requested = os.environ.get("GQBP_BACKEND", "").strip().lower()
    if requested == "numpy":
        return "numpy"
    if requested == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("GQBP_BACKEND=numba but numba is not importable")
        return "numba"
    if requested:
        raise RuntimeError(f"unknown GQBP_BACKEND {requested!r}; use 'numba' or 'numpy'")
    return "numba" if HAVE_NUMBA else "numpy"


BACKEND = _select_backend()


def backend_name() -> str:
    return BACKEND


if BACKEND == "numba":
    evolve_restricted = _evolve_restricted_numba
    evolve_general = _evolve_general_numba
else:
    evolve_restricted = _evolve_restricted_numpy
    evolve_general = _evolve_general_numpy
