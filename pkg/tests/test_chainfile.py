import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_chain
from fillvol._rational import Q, format_rational, parse_rational
from fillvol.chain import Z, Z2
from fillvol.chainfile import ChainFileError, emit_chain, parse_chain, read_chain, write_chain

SEGMENT = """fillvol-chain 1
N 2
k 1
ring Z
# a single segment
1 0/1 0/1 3/2 -1/4
"""


def test_single_segment():
    c = parse_chain(SEGMENT)
    assert (c.dim, c.ambient, c.ring, len(c)) == (1, 2, Z, 1)
    (s, m), = c
    assert s == ((Q(0), Q(0)), (Q(3, 2), Q(-1, 4))) and m == 1


def test_zero_coefficient_dropped():
    assert not parse_chain(SEGMENT.replace("\n1 0/1", "\n0 0/1"))


def test_canonical_emission():
    text = SEGMENT.replace("1 0/1 0/1 3/2 -1/4", "-1 3/2 -1/4 0 0")
    assert emit_chain(parse_chain(text)) == emit_chain(parse_chain(SEGMENT))


@given(st.integers(0, 10_000), st.sampled_from([Z, Z2]), st.integers(0, 3))
def test_round_trip(seed, ring, k):
    c = random_chain(random.Random(seed), k, 3, ring, denominator=seed % 7 + 1)
    text = emit_chain(c)
    assert parse_chain(text) == c
    assert emit_chain(parse_chain(text)) == text


def test_file_io(tmp_path, octa):
    path = tmp_path / "octa.chain"
    write_chain(octa, path)
    assert read_chain(path) == octa


@pytest.mark.parametrize(
    "text,line",
    [
        (SEGMENT.replace("fillvol-chain", "chain"), 1),
        (SEGMENT.replace("ring Z", "ring Q"), 4),
        (SEGMENT.replace("3/2", "3/0"), 6),
        (SEGMENT.replace("3/2", "1.5"), 6),
        (SEGMENT.replace("-1/4\n", "\n"), 6),
        (SEGMENT.replace("N 2", "N two"), 2),
        (SEGMENT.replace("k 1", "dim 1"), 3),
    ],
)
def test_errors_carry_line(text, line):
    with pytest.raises(ChainFileError) as err:
        parse_chain(text)
    assert err.value.line == line


def test_missing_header():
    with pytest.raises(ChainFileError):
        parse_chain("fillvol-chain 1\nN 2\n")


def test_rationals():
    assert parse_rational("-6/4") == Q(-3, 2)
    assert parse_rational("7") == 7
    assert format_rational(Q(-3, 2)) == "-3/2"
    assert format_rational(Q(5)) == "5/1"
    with pytest.raises(ValueError):
        parse_rational("0.5")
