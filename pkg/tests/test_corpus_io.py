from fractions import Fraction

import pytest

from sphereavg.corpus import LCG, build_corpus, random_signs, random_tuple
from sphereavg.errors import InvalidArgument
from sphereavg.grid import GridFunction
from sphereavg.io import format_value, read_grid_function, write_grid_function


def test_lcg_reference_values():
    rng = LCG(1)
    state = 1
    for _ in range(5):
        state = (6364136223846793005 * state + 1442695040888963407) % 2**64
        assert rng.next_u32() == state >> 32


def test_corpus_labels_and_determinism():
    c = build_corpus(1)
    assert list(c) == ["delta", "chi_16", "rand_a", "rand_b", "rand_c", "rand_d", "rand_e"]
    assert c["chi_16"].offset == -32 and list(c["chi_16"].values) == [1] * 65
    assert build_corpus(1) == build_corpus(1)
    assert build_corpus(1) != build_corpus(2)


def test_random_helpers_deterministic():
    assert random_tuple(5, 3) == random_tuple(5, 3)
    s = random_signs(2, 10)
    assert s.lo >= -10 and s.hi <= 10
    assert set(s.values) <= {-1, 1}


def test_round_trip(tmp_path):
    f = GridFunction(-3, [1, Fraction(-2, 3), 0, 5])
    path = tmp_path / "f.txt"
    write_grid_function(f, path)
    assert path.read_text() == "-3\n1\n-2/3\n0\n5\n"
    assert read_grid_function(path) == f
    for g in build_corpus(3).values():
        write_grid_function(g, path)
        assert read_grid_function(path) == g


def test_read_decimals_exactly(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("2\n0.5\n1/4\n")
    assert read_grid_function(path) == GridFunction(2, [Fraction(1, 2), Fraction(1, 4)])


def test_read_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("x\n1\n")
    with pytest.raises(InvalidArgument):
        read_grid_function(path)
    path.write_text("0\nabc\n")
    with pytest.raises(InvalidArgument):
        read_grid_function(path)


def test_format_value():
    assert format_value(Fraction(1, 24)) == "1/24"
    assert format_value(Fraction(3, 1)) == "3"
    assert format_value(0.1) == "0.1"
    assert format_value(7) == "7"
