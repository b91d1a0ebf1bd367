import numpy as np
import pytest

from gqbp import (
    Program,
    acceptance_probabilities,
    circuit_acceptance,
    generalize,
    grover_promise_or,
    parity_program,
    random_rgqbp,
    split_layers,
)
from gqbp.circuit import circuit_acceptances
from gqbp.formats import (
    FormatError,
    parse_circuit,
    parse_program,
    serialize_circuit,
    serialize_program,
)
from gqbp.simulate import all_inputs

from helpers import deutsch_circuit


def test_minimal_program_roundtrip_bytes():
    prog = Program(n=1, initial=np.array([1.0 + 0j]), levels=(), accept=frozenset({0}))
    text = serialize_program(prog)
    assert serialize_program(parse_program(text)) == text


def test_parity_roundtrip_simulates_identically():
    prog = parity_program(4)
    back = parse_program(serialize_program(prog))
    xs = all_inputs(4)
    assert np.abs(acceptance_probabilities(prog, xs)
                  - acceptance_probabilities(back, xs)).max() <= 1e-12


def test_general_program_roundtrip():
    prog = generalize(random_rgqbp(3, 2, 4, seed=8))
    text = serialize_program(prog)
    back = parse_program(text)
    assert back.kind == "general"
    assert serialize_program(back) == text


def test_alternating_flag_survives_roundtrip():
    split = split_layers(parity_program(4))
    back = parse_program(serialize_program(split))
    assert back.alternating
    assert back.query_depth == 2


def test_accept_out_of_range_names_field():
    text = serialize_program(parity_program(2)).replace(
        '"accept": [\n    1\n  ]', '"accept": [\n    7\n  ]')
    with pytest.raises(FormatError, match="accept"):
        parse_program(text)


def test_label_out_of_range_names_field():
    prog = parity_program(2)
    text = serialize_program(prog).replace('"n": 2', '"n": 1')
    with pytest.raises(FormatError, match="label"):
        parse_program(text)


def test_missing_field_diagnostic():
    with pytest.raises(FormatError, match="missing required field"):
        parse_program('{"format": "gqbp-v1"}')


def test_invalid_json_reports_line():
    with pytest.raises(FormatError, match="line"):
        parse_program("{not json")


def test_wrong_format_tag():
    with pytest.raises(FormatError, match="format"):
        parse_program('{"format": "else"}')


def test_empty_circuit_roundtrip_bytes():
    from gqbp import QueryCircuit
    c = QueryCircuit(q=1, n=1, gates=(), accept=frozenset())
    text = serialize_circuit(c)
    assert serialize_circuit(parse_circuit(text)) == text


def test_deutsch_circuit_roundtrip_preserves_acceptance():
    c = deutsch_circuit()
    back = parse_circuit(serialize_circuit(c))
    for x in ("00", "01", "10", "11"):
        assert circuit_acceptance(back, x) == pytest.approx(circuit_acceptance(c, x))


def test_unknown_gate_type():
    text = serialize_circuit(deutsch_circuit()).replace("phase_oracle", "mystery")
    with pytest.raises(FormatError, match="unknown gate type"):
        parse_circuit(text)


def test_bit_oracle_roundtrip():
    c = grover_promise_or(4)
    text = serialize_circuit(c)
    back = parse_circuit(text)
    assert serialize_circuit(back) == text
    xs = all_inputs(4)
    assert np.abs(circuit_acceptances(back, xs) - circuit_acceptances(c, xs)).max() == 0.0


def test_schema_junk_never_escapes_format_error():
    # no mutation may surface a raw TypeError/KeyError: either the document
    # still parses (e.g. "accept": []) or the parser raises FormatError
    import json

    program_doc = json.loads(serialize_program(parity_program(2)))
    circuit_doc = json.loads(serialize_circuit(grover_promise_or(4)))
    junk = [None, True, 3.5, -1, "x", [], {}, [[1]], [None], [[None, None]]]
    for doc, parse in ((program_doc, parse_program), (circuit_doc, parse_circuit)):
        for key in list(doc):
            for value in junk:
                mutated = json.loads(json.dumps(doc))
                mutated[key] = value
                try:
                    parse(json.dumps(mutated))
                except FormatError:
                    pass


def test_builtin_generators_roundtrip_semantically():
    artifacts = [parity_program(6), random_rgqbp(4, 3, 5, seed=3),
                 split_layers(parity_program(4))]
    for prog in artifacts:
        back = parse_program(serialize_program(prog))
        xs = all_inputs(prog.n)
        assert np.abs(acceptance_probabilities(prog, xs)
                      - acceptance_probabilities(back, xs)).max() <= 1e-12
