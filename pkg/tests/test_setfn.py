import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fracsub import (
    PartialSetFunction,
    SetFunction,
    generate_submodular,
    is_modular,
    is_nondecreasing,
    is_prefix_nondecreasing,
    is_submodular,
)
from fracsub.errors import PreconditionError, ValidationError
from fracsub.fixtures import zero_gap_nonmonotone

from _support import random_modular_table, submodular_by_definition


def test_table_length_enforced():
    with pytest.raises(ValidationError):
        SetFunction(n=2, values=(0, 1, 2))


def test_mixed_scalar_kinds_rejected():
    with pytest.raises(ValidationError):
        SetFunction(n=1, values=(Fraction(0), 0.5))
    with pytest.raises(ValidationError):
        PartialSetFunction(n=2, entries=((1, Fraction(1)), (2, 0.5)))


def test_ints_become_exact_rationals():
    f = SetFunction(n=1, values=(0, 7))
    assert f.is_rational
    assert f.value(1) == Fraction(7)


def test_bool_values_rejected():
    with pytest.raises(ValidationError):
        SetFunction(n=1, values=(0, True))


def test_n_bounds():
    with pytest.raises(ValidationError):
        SetFunction(n=0, values=(0,))
    with pytest.raises(ValidationError):
        SetFunction(n=25, values=(0,) * (1 << 25))


def test_partial_duplicate_subset_rejected():
    with pytest.raises(ValidationError):
        PartialSetFunction(n=2, entries=((1, 1), (1, 2)))


def test_conditional_matches_definition():
    f = SetFunction(n=3, values=tuple(Fraction(v) for v in (0, 1, 2, 2, 4, 4, 5, 5)))
    # f(S | T) = f(S + T) - f(T) on a couple of hand cases
    assert f.conditional(0b001, 0b110) == f.value(0b111) - f.value(0b110)
    assert f.conditional(0b011, 0b100) == f.value(0b111) - f.value(0b100)
    assert f.conditional(0, 0b111) == 0


def test_conditional_requires_grounded():
    f = SetFunction(n=1, values=(1, 2))
    with pytest.raises(PreconditionError):
        f.conditional(1, 0)


def test_modular_tables_pass_all_predicates():
    rng = random.Random(5)
    for _ in range(20):
        f = random_modular_table(4, rng)
        assert is_submodular(f)
        assert is_modular(f)


def test_is_modular_witness_is_first_failure():
    vals = [Fraction(0)] * 8
    vals[0b011] = Fraction(1)  # breaks additivity only on {1,2}
    f = SetFunction(n=3, values=tuple(vals))
    v = is_modular(f)
    assert not v and v.witness == 0b011


def test_is_submodular_witness_violates_definition():
    f = zero_gap_nonmonotone().table
    assert is_submodular(f)
    # flip one value to break submodularity and check the witness pair
    vals = list(f.values)
    vals[0b011] = Fraction(10**6)
    g = SetFunction(n=3, values=tuple(vals))
    v = is_submodular(g)
    assert not v
    s, t = v.witness
    assert g.value(s) + g.value(t) < g.value(s | t) + g.value(s & t)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=4),
    st.lists(st.integers(min_value=-6, max_value=6), min_size=16, max_size=16),
)
def test_exchange_check_equals_definitional_check(n, raw):
    vals = tuple(Fraction(v) for v in raw[: 1 << n])
    f = SetFunction(n=n, values=vals)
    assert bool(is_submodular(f)) == submodular_by_definition(f)


def test_nondecreasing_and_prefix_disagree_on_fixture():
    f = zero_gap_nonmonotone().table
    assert is_prefix_nondecreasing(f)
    v = is_nondecreasing(f)
    assert not v
    s, t = v.witness
    assert s < t and f.value(t) < f.value(s)


def test_prefix_chain_ignores_empty_set():
    # drops below f(emptyset) immediately, but the prefixes only grow
    f = SetFunction(n=2, values=(Fraction(0), Fraction(-5), Fraction(7), Fraction(-5)))
    assert is_prefix_nondecreasing(f)
    assert not is_nondecreasing(f)


@pytest.mark.parametrize("kind", ["coverage", "entropy", "matroid-plus-modular"])
@pytest.mark.parametrize("n", [2, 3, 5])
def test_generated_instances_are_grounded_submodular_monotone(kind, n):
    f = generate_submodular(n, seed=11, kind=kind)
    assert f.is_grounded
    assert is_submodular(f)
    assert is_nondecreasing(f)
    assert is_prefix_nondecreasing(f)
    if kind == "entropy":
        assert not f.is_rational
    else:
        assert f.is_rational
    if n <= 4:
        tol = 0.0 if f.is_rational else 2.0**-30
        assert submodular_by_definition(f, tol)


def test_generator_is_deterministic_and_seed_sensitive():
    a = generate_submodular(4, seed=3, kind="coverage")
    b = generate_submodular(4, seed=3, kind="coverage")
    c = generate_submodular(4, seed=4, kind="coverage")
    assert a.values == b.values
    assert a.values != c.values


def test_generator_rejects_bad_kind_and_entropy_limit():
    with pytest.raises(ValidationError):
        generate_submodular(3, seed=0, kind="nope")
    with pytest.raises(ValidationError):
        generate_submodular(13, seed=0, kind="entropy")
