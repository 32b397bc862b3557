"""Branch/subbranch combinatorics, crust validation and enumeration.

All numbers here are small by nature: branch multiplicity sequences are
strictly decreasing with integral ratio condition, and subbranches obey
the linear recurrence n_{i+1} = r_i n_i - n_{i-1}.
"""

import pytest

from barkfib.crust import (
    STELLAR_MODELS,
    Branch,
    SimpleCrust,
    StellarFiber,
    Subbranch,
    classify_subbranch,
    core_section_exists,
    crust_from_json,
    crust_to_json,
    enumerate_simple_crusts,
    extend_subbranch,
    is_proportional,
    stellar_from_json,
    stellar_to_json,
    validate_branch,
)


def test_validate_branch_examples():
    assert validate_branch(Branch(6, (5, 4, 3, 2, 1)))
    assert validate_branch(Branch(6, (3,)))
    assert not validate_branch(Branch(5, (3,)))  # ratio 5/3 not integral
    assert not validate_branch(Branch(6, (6,)))  # not strictly decreasing
    assert not validate_branch(Branch(4, (3, 2)))  # (4+2)/3 = 2 ok, (3+0)/2 no


def test_branch_mult_conventions():
    b = Branch(6, (3, 1))
    assert b.mult(0) == 6
    assert b.mult(1) == 3
    assert b.mult(2) == 1
    assert b.mult(3) == 0  # one past the tip
    with pytest.raises(IndexError):
        b.mult(4)


def test_branch_ratios():
    b = Branch(6, (5, 4, 3, 2, 1))
    assert [b.ratio(i) for i in range(1, 6)] == [2, 2, 2, 2, 2]
    with pytest.raises(ValueError):
        Branch(5, (3,)).ratio(1)


def test_all_model_branches_satisfy_chain_condition():
    for name, fiber in STELLAR_MODELS.items():
        for b in fiber.branches:
            assert validate_branch(b), (name, b)


def test_stellar_fiber_checks_branch_cores():
    with pytest.raises(ValueError):
        StellarFiber(6, 0, (Branch(4, (2,)),))


def test_subbranch_recurrence_enforced():
    long = STELLAR_MODELS["II*"].branches[0]  # (5, 4, 3, 2, 1) under core 6
    Subbranch(3, (3, 3, 3), long)  # forced: 2*3-3 = 3 at each step
    with pytest.raises(ValueError):
        Subbranch(3, (3, 2), long)  # breaks the recurrence
    with pytest.raises(ValueError):
        Subbranch(1, (6,), long)  # n_1 > m_1
    with pytest.raises(ValueError):
        Subbranch(0, (), long)


def test_extend_subbranch_forced_value():
    sb = Subbranch(2, (1,), Branch(6, (3,)))
    assert extend_subbranch(sb) == 0


def test_classify_subbranch_each_type():
    assert classify_subbranch(Subbranch(2, (1,), STELLAR_MODELS["III"].branches[1]), 1) == {"B"}
    assert classify_subbranch(Subbranch(4, (4, 4), STELLAR_MODELS["II*"].branches[0]), 1) == {"C"}
    assert classify_subbranch(Subbranch(4, (2,), STELLAR_MODELS["II*"].branches[1]), 1) == {"A"}
    assert classify_subbranch(Subbranch(2, (), STELLAR_MODELS["III"].branches[0]), 1) == {"A"}


def test_classify_subbranch_can_be_empty_or_mixed():
    # bound violated: l*n_0 > m_0
    assert classify_subbranch(Subbranch(5, (), Branch(6, (3,))), 2) == set()
    # B and C simultaneously on the II* double-tail
    both = classify_subbranch(Subbranch(1, (1, 1), STELLAR_MODELS["IV*"].branches[0]), 1)
    assert both == {"B", "C"}


def test_is_proportional():
    assert is_proportional(Subbranch(2, (1,), Branch(2, (1,))))
    assert not is_proportional(Subbranch(2, (1,), Branch(6, (4, 2))))
    assert not is_proportional(Subbranch(2, (), Branch(6, (3,))))  # nu = 0
    # truncated proportional subbranch is still recognized as proportional
    assert is_proportional(Subbranch(3, (2,), Branch(6, (4, 2))))


def test_core_section_examples():
    assert core_section_exists(STELLAR_MODELS["II*"], 2, (2, 1, 1)) == (True, 0)
    assert core_section_exists(STELLAR_MODELS["IV"], 1, (1, 1, 0)) == (True, 1)
    assert core_section_exists(STELLAR_MODELS["IV*"], 2, (1, 0, 0)) == (False, None)


def test_core_section_validates_input():
    with pytest.raises(ValueError):
        core_section_exists(STELLAR_MODELS["IV"], 1, (1, 1))  # wrong arity
    bumpy = StellarFiber(6, 1, (Branch(6, (3,)),))
    with pytest.raises(ValueError):
        core_section_exists(bumpy, 1, (1,))  # core must be rational


def test_simple_crust_accepts_catalog_data():
    fiber = STELLAR_MODELS["II*"]
    crust = SimpleCrust(
        5,
        (
            Subbranch(5, (5,), fiber.branches[0]),
            Subbranch(5, (3, 1), fiber.branches[1]),
            Subbranch(5, (2,), fiber.branches[2]),
        ),
        1,
    )
    assert crust.first_values() == (5, 3, 2)
    assert crust.core_section() == (True, 0)
    assert crust.proportional_subbranches() == ()


def test_simple_crust_rejects_truncated_proportional():
    """A proportional subbranch inside a crust must run the full branch."""
    fiber = StellarFiber(6, 0, (Branch(6, (4, 2)), Branch(6, (3,)), Branch(6, (2,))))
    with pytest.raises(ValueError):
        SimpleCrust(
            3,
            (
                Subbranch(3, (2,), fiber.branches[0]),  # proportional, cut short
                Subbranch(3, (2,), fiber.branches[1]),
                Subbranch(3, (1,), fiber.branches[2]),
            ),
            1,
        )


def test_simple_crust_requires_core_section():
    fiber = STELLAR_MODELS["IV*"]
    with pytest.raises(ValueError):
        SimpleCrust(
            2,
            (
                Subbranch(2, (1,), fiber.branches[0]),
                Subbranch(2, (), fiber.branches[1]),
                Subbranch(2, (), fiber.branches[2]),
            ),
            1,
        )


def test_simple_crust_bounds_n0():
    fiber = STELLAR_MODELS["IV"]
    with pytest.raises(ValueError):
        SimpleCrust(3, tuple(Subbranch(3, (1,), b) for b in fiber.branches), 1)


def test_enumerate_I0_star_single_barking():
    crusts = enumerate_simple_crusts(STELLAR_MODELS["I0*"], 1)
    assert len(crusts) == 11
    assert all(c.n0 == 1 for c in crusts)
    filled = sorted(
        tuple(1 if sb.values else 0 for sb in c.subbranches) for c in crusts
    )
    # at least two unit subbranches are needed for the core section
    assert all(sum(pattern) >= 2 for pattern in filled)
    assert len(set(filled)) == 11


def test_enumerate_is_deterministic():
    a = enumerate_simple_crusts(STELLAR_MODELS["II*"], 1)
    b = enumerate_simple_crusts(STELLAR_MODELS["II*"], 1)
    assert [crust_to_json(c) for c in a] == [crust_to_json(c) for c in b]


def test_enumerate_overlarge_barking_is_empty():
    assert enumerate_simple_crusts(STELLAR_MODELS["IV"], 4) == []


def test_json_round_trips():
    fiber = STELLAR_MODELS["III*"]
    assert stellar_from_json(stellar_to_json(fiber)) == fiber
    crust = SimpleCrust(
        2,
        (
            Subbranch(2, (2, 2), fiber.branches[0]),
            Subbranch(2, (2, 2), fiber.branches[1]),
            Subbranch(2, (), fiber.branches[2]),
        ),
        1,
    )
    assert crust_from_json(fiber, crust_to_json(crust)) == crust


def test_crust_from_json_checks_arity():
    with pytest.raises(ValueError):
        crust_from_json(STELLAR_MODELS["IV"], {"n0": 1, "subbranches": [[1]], "l": 1})
