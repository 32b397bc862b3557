"""Exact matrix and word arithmetic."""

import random

import pytest

from barkfib.sl2z import (
    EMPTY_WORD,
    IDENTITY,
    S0,
    S2,
    Mat2,
    Word,
    conj,
    eval_word,
    format_word,
    inverse,
    parse_word,
    trace,
    word,
    word_of,
)


def test_generators():
    assert S0.entries() == (1, 1, 0, 1)
    assert S2.entries() == (1, 0, -1, 1)


def test_determinant_enforced():
    with pytest.raises(ValueError):
        Mat2(1, 0, 0, 2)
    with pytest.raises(ValueError):
        Mat2(3, 1, 1, 1)


def test_group_relations():
    a = S0 * S2
    b = S0 * S2 * S0
    minus = Mat2(-1, 0, 0, -1)
    assert a**3 == minus
    assert b**2 == minus
    assert a**6 == IDENTITY
    assert (a**3) * (a**3) == IDENTITY


def test_inverse_and_conj():
    m = S0**3 * S2
    assert m * inverse(m) == IDENTITY
    assert inverse(m) * m == IDENTITY
    g = S2 * S0**2
    assert conj(m, g) == g * m * inverse(g)
    assert trace(conj(m, g)) == trace(m)


def test_matrix_power():
    assert (S0**5).entries() == (1, 5, 0, 1)
    assert (S0**-3).entries() == (1, -3, 0, 1)
    assert S2**4 == Mat2(1, 0, -4, 1)


def test_word_normalization():
    w = Word([("s0", 2), ("s0", 1), ("s2", 0), ("s0", -3)])
    assert w == EMPTY_WORD
    w = Word([("s0", 1), ("s2", 2), ("s2", -1)])
    assert w.letters == (("s0", 1), ("s2", 1))


def test_word_inverse_and_count():
    w = parse_word("s0^3 s2^-2 s0")
    assert eval_word(w * w.inverse()) == IDENTITY
    assert w.letter_count() == 6


def test_eval_is_left_to_right():
    assert eval_word(word(("s0", 1), ("s2", 1))) == S0 * S2
    assert eval_word(word(("s0", 1), ("s2", 1))).entries() == (0, 1, -1, 1)


def test_parse_format_round_trip():
    rng = random.Random(20240817)
    for _ in range(200):
        letters = []
        gen = rng.choice(["s0", "s2"])
        for _ in range(rng.randrange(0, 6)):
            exp = rng.choice([-3, -2, -1, 1, 2, 3])
            letters.append((gen, exp))
            gen = "s2" if gen == "s0" else "s0"
        w = Word(letters)
        assert parse_word(format_word(w)) == w


def test_parse_rejects_garbage():
    for bad in ("s1", "s0^x", "t0 s2", "s0^"):
        with pytest.raises(ValueError):
            parse_word(bad)


def test_word_of_inverts_eval():
    """Euclidean peeling recovers some word for random products."""
    rng = random.Random(991)
    for _ in range(300):
        m = IDENTITY
        for _ in range(rng.randrange(1, 12)):
            m = m * rng.choice([S0, S2, inverse(S0), inverse(S2)])
        assert eval_word(word_of(m)) == m


def test_hash_eq():
    assert hash(S0 * S2) == hash(Mat2(0, 1, -1, 1))
    assert len({S0, S0**1, S2}) == 2
    assert len({parse_word("s0 s2"), Word([("s0", 1), ("s2", 1)])}) == 1


def test_big_entries_stay_exact():
    m = S0**(10**9) * S2 * S0**(10**9)
    assert m.a * m.d - m.b * m.c == 1
