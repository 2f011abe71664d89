"""Tests for interpolation Macdonald polynomials."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.macdonald_interp.mi_exceptions import MIAlgebraError, MIDimensionMismatch, MIInvalidParameter
from src.macdonald_interp.mi_interpolation import (
    binomial_sides,
    evaluate,
    expand_in_interpolation_basis,
    hl_A,
    hl_A_from_interpolation,
    interp_I,
    interp_I_branching,
    interp_symfunc,
    jack_interp_I,
    lift_to_power_sums,
    node,
    phi_N_specialize,
    principal_specialization,
    set_last_variable,
    verify_binomial,
    whittaker_A,
)
from src.macdonald_interp.mi_items import MIBasis, MIFamily
from src.macdonald_interp.mi_macdonald import macdonald_P, x_ring
from src.macdonald_interp.mi_partitions import EMPTY, MIPartition, partitions_of, partitions_up_to
from src.macdonald_interp.mi_scalars import KAPPA, QT_FIELD, Q, T, specialize
from src.macdonald_interp.mi_series import KAPPA_DOMAIN

ONE = MIPartition((1,))


@st.composite
def small_partition(draw, max_size: int = 3, max_length: int = 2):
    size = draw(st.integers(min_value=0, max_value=max_size))
    return draw(st.sampled_from(partitions_of(size, max_length)))


def test_one_box() -> None:
    """I_(1) in one and two variables."""
    x1, x2 = x_ring(2).gens
    assert interp_I(ONE, 2) == x1 + x2 - 1 - T
    assert interp_I(ONE, 1) == x_ring(1).gens[0] - 1
    assert interp_I(EMPTY, 2) == x_ring(2).one


def test_nodes() -> None:
    """X_2((1)) = (1/q, t); too many parts is an error."""
    assert node(ONE, 2) == (1 / Q, T)
    assert node(EMPTY, 3) == (QT_FIELD(1), T, T**2)
    with pytest.raises(MIInvalidParameter):
        node(MIPartition((1, 1)), 1)


def test_vanishing() -> None:
    """I_mu vanishes at the nodes of smaller or equal-size partitions other than mu."""
    for mu in partitions_up_to(3, 2):
        poly = interp_I(mu, 2)
        assert evaluate(poly, node(mu, 2))
        for lam in partitions_up_to(mu.size, 2):
            if lam != mu:
                assert not evaluate(poly, node(lam, 2))


def test_evaluate_arity() -> None:
    """The value count must match the variable count."""
    with pytest.raises(MIDimensionMismatch):
        evaluate(interp_I(ONE, 2), (Q,))


@settings(max_examples=15, deadline=None)
@given(mu=small_partition())
def test_top_component_is_macdonald(mu) -> None:
    """The top-degree part of I_mu is P_mu."""
    poly = interp_I(mu, 2)
    top = poly.ring({m: c for m, c in poly.items() if sum(m) == mu.size})
    assert top == macdonald_P(mu, 2)


@settings(max_examples=15, deadline=None)
@given(mu=small_partition(max_length=1))
def test_quasi_stability(mu) -> None:
    """I_{mu|2}(x1, t) = I_{mu|1}(x1)."""
    assert set_last_variable(interp_I(mu, 2), T) == interp_I(mu, 1)


def test_branching_rule() -> None:
    """The branching recursion rebuilds the tableau formula."""
    for parts in ((1,), (2, 1), (2, 2)):
        mu = MIPartition(parts)
        assert interp_I_branching(mu, 2) == interp_I(mu, 2)


def test_lift_and_specialize() -> None:
    """phi_N of the lifted I_(1) gives back I_(1) in more variables."""
    lifted = interp_symfunc(ONE)
    assert lifted.basis == MIBasis.POWER_SUM
    assert phi_N_specialize(lifted, 2) == interp_I(ONE, 2)
    assert phi_N_specialize(lift_to_power_sums(interp_I(ONE, 2)), 3) == interp_I(ONE, 3)
    with pytest.raises(MIInvalidParameter):
        lift_to_power_sums(interp_I(MIPartition((2,)), 1))


def test_principal_specialization() -> None:
    """P_(1)(1, t) = 1 + t."""
    assert principal_specialization(macdonald_P(ONE, 2)) == 1 + T


def test_binomial_formula() -> None:
    """Both sides of the binomial formula agree."""
    assert verify_binomial(MIPartition((2, 1)), 2)
    lhs, rhs = binomial_sides(MIPartition((2,)), 2)
    assert lhs == rhs
    with pytest.raises(MIInvalidParameter):
        binomial_sides(MIPartition((1, 1, 1)), 2)


def test_expand_in_basis() -> None:
    """A combination of I_(2) and I_(1) is recovered; non-symmetric input is rejected."""
    poly = interp_I(MIPartition((2,)), 2) + interp_I(ONE, 2) * 3
    coefficients = expand_in_interpolation_basis(poly, 2)
    assert coefficients == {MIPartition((2,)): QT_FIELD(1), ONE: QT_FIELD(3)}
    with pytest.raises(MIAlgebraError):
        expand_in_interpolation_basis(x_ring(2).gens[0], 2)


def test_degenerations() -> None:
    """Jack I_(1) and the two forms of A^HL."""
    assert jack_interp_I(ONE, 1) == x_ring(1, KAPPA_DOMAIN).gens[0]
    x1, x2 = x_ring(2, KAPPA_DOMAIN).gens
    assert jack_interp_I(ONE, 2) == x1 + x2 + KAPPA
    for parts in ((1,), (2,), (1, 1), (2, 1)):
        mu = MIPartition(parts)
        assert hl_A_from_interpolation(mu, 2) == hl_A(mu, 2)


def test_expand_jack_family() -> None:
    """Expansion in the Jack interpolation basis."""
    poly = jack_interp_I(MIPartition((1, 1)), 2)
    assert expand_in_interpolation_basis(poly, 2, MIFamily.JACK) == {MIPartition((1, 1)): KAPPA_DOMAIN.one}


def test_whittaker_is_t_zero() -> None:
    """A^W_mu is I_mu with t = 0."""
    x1, x2 = x_ring(2).gens
    assert whittaker_A(ONE, 2) == x1 + x2 - 1
    for parts in ((2,), (1, 1), (2, 1)):
        poly = interp_I(MIPartition(parts), 2)
        at_zero = poly.ring({m: specialize(c, {"t": QT_FIELD(0)}) for m, c in poly.items()})
        assert whittaker_A(MIPartition(parts), 2) == at_zero
