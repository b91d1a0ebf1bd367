import math

import numpy as np
import pytest

from gqbp import (
    acceptance_probabilities,
    acceptance_probability,
    circuit_acceptance,
    grover_promise_or,
    hamming_family,
    one_hot_input,
    parity_program,
    random_rgqbp,
    validate_program,
    zeros_input,
)
from gqbp.formats import serialize_program
from gqbp.programs import grover_iterations
from gqbp.simulate import all_inputs


def test_parity_hand_values():
    prog = parity_program(2)
    assert acceptance_probability(prog, "00") == pytest.approx(0.0, abs=1e-12)
    assert acceptance_probability(prog, "10") == pytest.approx(1.0, abs=1e-12)


def test_parity_shape():
    prog = parity_program(8)
    assert prog.width == 2
    assert prog.length == 4
    assert prog.accept == frozenset({1})


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_parity_exhaustive(n):
    prog = parity_program(n)
    xs = all_inputs(n)
    probs = acceptance_probabilities(prog, xs)
    assert np.abs(probs - xs.sum(axis=1) % 2).max() <= 1e-12


def test_parity_rejects_odd_or_small():
    for n in (0, 1, 3, -2):
        with pytest.raises(ValueError):
            parity_program(n)


def test_grover_accepts_each_one_hot_at_n4():
    c = grover_promise_or(4)
    for p in range(4):
        assert circuit_acceptance(c, one_hot_input(4, p)) == pytest.approx(1.0, abs=1e-12)


def test_grover_rejects_all_zero():
    for n in (2, 4, 16):
        assert circuit_acceptance(grover_promise_or(n), zeros_input(n)) == 0.0


def test_grover_n16_matches_rotation_formula():
    # independent check: success after T rounds is sin^2((2T+1) asin(1/sqrt n))
    n = 16
    c = grover_promise_or(n)
    t = grover_iterations(n)
    expected = math.sin((2 * t + 1) * math.asin(1 / math.sqrt(n))) ** 2
    assert expected >= 0.9
    for p in (0, 7, 15):
        assert circuit_acceptance(c, one_hot_input(n, p)) == pytest.approx(expected, abs=1e-12)


def test_grover_rejects_non_power_of_two():
    for n in (0, 1, 3, 6):
        with pytest.raises(ValueError):
            grover_promise_or(n)


def test_random_rgqbp_validates():
    for seed in range(5):
        prog = random_rgqbp(5, 4, 6, seed=seed)
        assert validate_program(prog, tol=1e-9).passed


def test_random_rgqbp_width1_scalar_base():
    prog = random_rgqbp(1, 3, 2, seed=0)
    for level in prog.levels:
        assert abs(abs(level.base[0, 0]) - 1.0) <= 1e-12


def test_random_rgqbp_deterministic():
    a = random_rgqbp(4, 3, 5, seed=99)
    b = random_rgqbp(4, 3, 5, seed=99)
    assert serialize_program(a) == serialize_program(b)
    c = random_rgqbp(4, 3, 5, seed=100)
    assert serialize_program(a) != serialize_program(c)


def test_random_rgqbp_accept_set():
    assert random_rgqbp(5, 1, 2, seed=0).accept == frozenset({0, 1, 2})


def test_hamming_family_fix_yes_example():
    fam = hamming_family(4, 1, 1, "1000")
    assert fam.side == "fix_yes"
    assert fam.size == math.comb(3, 1) == 3
    members = {"".join(map(str, m)) for m in fam.members}
    assert members == {"1100", "1010", "1001"}


def test_hamming_family_fix_no_example():
    fam = hamming_family(3, 2, 1, "111")
    assert fam.side == "fix_no"
    assert fam.size == math.comb(3, 2) == 3
    members = {"".join(map(str, m)) for m in fam.members}
    assert members == {"011", "101", "110"}


def test_hamming_family_delta_zero():
    fam = hamming_family(4, 2, 0, "1100")
    assert fam.size == 1
    assert np.array_equal(fam.members[0], fam.fixed)


def test_hamming_family_weight_mismatch():
    with pytest.raises(ValueError, match="weight"):
        hamming_family(4, 1, 1, "1110")  # weight 3 is neither k nor k+delta


def test_hamming_family_parameter_guards():
    with pytest.raises(ValueError, match="non-negative"):
        hamming_family(4, -1, 1, "0000")
    with pytest.raises(ValueError, match="non-negative"):
        hamming_family(4, 2, -1, "1100")
    with pytest.raises(ValueError, match="exceeds"):
        hamming_family(4, 3, 2, "1110")  # k + delta = 5 > n


def test_random_rgqbp_parameter_guard():
    with pytest.raises(ValueError):
        random_rgqbp(0, 1, 1, seed=0)


def test_hamming_family_cardinalities():
    for n, k, d in [(8, 2, 1), (8, 3, 2), (8, 6, 1)]:
        fixed_yes = "1" * k + "0" * (n - k)
        assert hamming_family(n, k, d, fixed_yes).size == math.comb(n - k, d)
        fixed_no = "1" * (k + d) + "0" * (n - k - d)
        assert hamming_family(n, k, d, fixed_no).size == math.comb(k + d, d)


def test_hamming_family_large_is_sampled():
    n, k, d = 64, 4, 4
    fam = hamming_family(n, k, d, "1" * k + "0" * (n - k))
    assert fam.size == math.comb(60, 4)
    assert not fam.materialized
    sample = fam.sample(50, seed=3)
    assert sample.shape == (50, n)
    assert np.all(sample.sum(axis=1) == k + d)
    assert np.all(sample[:, :k] == 1)  # the fixed 1s are kept
