import numpy as np
import pytest

from junta_lab.boolean import BooleanFunction
from junta_lab.errors import ParameterError
from junta_lab.io import (
    format_truth_table,
    parse_truth_table,
    read_instance,
    read_matrix,
    read_truth_tables,
    write_matrix,
    write_truth_tables,
)
from junta_lab.linalg import Unitary, haar_random_unitary


def test_truth_table_symbols():
    assert parse_truth_table("+-+-") == BooleanFunction([1, -1, 1, -1])
    assert parse_truth_table("0101") == BooleanFunction([1, -1, 1, -1])
    for bad in ("+0", "+-x-", ""):
        with pytest.raises(ParameterError):
            parse_truth_table(bad)


def test_truth_table_file_roundtrip(tmp_path, rng):
    fs = [BooleanFunction(rng.choice([-1, 1], size=2**n)) for n in (1, 3, 6)]
    path = tmp_path / "f.txt"
    write_truth_tables(path, fs)
    assert read_truth_tables(path) == fs
    assert format_truth_table(fs[0]) in path.read_text()
    assert read_instance(path) == fs[0]


def test_empty_truth_table_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing\n\n")
    with pytest.raises(ParameterError):
        read_truth_tables(path)


@pytest.mark.parametrize("suffix", [".csv", ".npy"])
def test_matrix_roundtrip(tmp_path, rng, suffix):
    u = haar_random_unitary(8, rng)
    path = tmp_path / f"u{suffix}"
    write_matrix(path, u)
    v = read_matrix(path)
    np.testing.assert_array_equal(v.matrix, u.matrix)
    assert isinstance(read_instance(path), Unitary)


def test_matrix_csv_rejects_garbage(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,foo\n0,1\n")
    with pytest.raises(ParameterError):
        read_matrix(path)
