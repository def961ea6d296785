import json

import numpy as np
import pytest

from pseudoherm import (
    PT_MINUS,
    DimensionError,
    ParseError,
    ToyParams,
    parse_matrix_file,
    toy_hamiltonian,
    write_matrix_file,
)
from pseudoherm.io import format_float, render_csv


def test_format_float_round_trips():
    for x in (1 / 3, 0.1, -2.5e-17, 1.2345678901234567e300, 0.0):
        assert float(format_float(x)) == x


def test_matrix_round_trip_is_exact(tmp_path):
    rng = np.random.default_rng(0)
    for n in (1, 2, 5):
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        path = tmp_path / f"m{n}.json"
        write_matrix_file(path, m)
        assert np.array_equal(parse_matrix_file(path), m)


def test_documented_format_example(tmp_path):
    path = tmp_path / "toy.json"
    path.write_text(
        '{"dim":2,"entries":[[[1,0],[0.5,0]],[[-0.5,0],[-1,0]]]}'
    )
    assert np.array_equal(
        parse_matrix_file(path),
        toy_hamiltonian(ToyParams(1.0, 0.5, PT_MINUS)).astype(complex),
    )


def test_one_by_one_zero(tmp_path):
    path = tmp_path / "z.json"
    path.write_text('{"dim":1,"entries":[[[0,0]]]}')
    assert np.array_equal(parse_matrix_file(path), np.zeros((1, 1), complex))


def test_rejects_non_finite(tmp_path):
    path = tmp_path / "nan.json"
    path.write_text('{"dim":1,"entries":[[[NaN,0]]]}')
    with pytest.raises(ParseError):
        parse_matrix_file(path)
    path.write_text('{"dim":1,"entries":[[["NaN",0]]]}')
    with pytest.raises(ParseError):
        parse_matrix_file(path)
    path.write_text('{"dim":1,"entries":[[[Infinity,0]]]}')
    with pytest.raises(ParseError):
        parse_matrix_file(path)


def test_rejects_bad_shapes(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim":2,"entries":[[[1,0],[0,0]]]}')
    with pytest.raises(DimensionError):
        parse_matrix_file(path)
    path.write_text('{"dim":2,"entries":[[[1,0]],[[0,0]]]}')
    with pytest.raises(DimensionError):
        parse_matrix_file(path)
    path.write_text('{"dim":0,"entries":[]}')
    with pytest.raises(ParseError):
        parse_matrix_file(path)
    path.write_text('{"entries":[[[1,0]]]}')
    with pytest.raises(ParseError):
        parse_matrix_file(path)
    path.write_text("[1, 2, 3]")
    with pytest.raises(ParseError):
        parse_matrix_file(path)
    path.write_text("{not json")
    with pytest.raises(ParseError):
        parse_matrix_file(path)
    with pytest.raises(ParseError):
        parse_matrix_file(tmp_path / "missing.json")


def test_render_csv_formatting():
    text = render_csv(["a", "b"], [[1 / 3, "x"], [2.0, 1e-300]])
    lines = text.splitlines()
    assert lines[0] == "a,b"
    assert lines[1].startswith("0.33333333333333331")
    value = float(lines[2].split(",")[1])
    assert value == 1e-300


def test_json_floats_round_trip(tmp_path):
    # json uses repr-based shortest round-trip floats
    m = np.array([[1 / 3 + 1j * 0.1]])
    path = tmp_path / "m.json"
    write_matrix_file(path, m)
    data = json.loads(path.read_text())
    assert data["entries"][0][0] == [1 / 3, 0.1]
