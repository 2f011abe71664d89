"""Tests for Macdonald polynomials and symmetric functions."""

import itertools

import pytest

from src.macdonald_interp.mi_exceptions import MIAlgebraError, MIBoxNotInPartition, MINotHorizontalStrip
from src.macdonald_interp.mi_items import MIBasis
from src.macdonald_interp.mi_macdonald import (
    MISymFunc,
    b_factor,
    gram_schmidt_oracle,
    macdonald_P,
    macdonald_Q,
    phi,
    power_sum_norm,
    psi,
    psi_tableau_factored,
    scalar_product,
    x_ring,
)
from src.macdonald_interp.mi_partitions import EMPTY, MIBox, MIPartition, enumerate_rtab, partitions_up_to
from src.macdonald_interp.mi_scalars import QT_FIELD, Q, T, invert_parameters


def test_small_polynomials() -> None:
    """P_(1), P_(1,1) and vanishing beyond the variable count."""
    R = x_ring(2)
    x1, x2 = R.gens
    assert macdonald_P(MIPartition((1,)), 2) == x1 + x2
    assert macdonald_P(MIPartition((1, 1)), 2) == x1 * x2
    assert macdonald_P(MIPartition((1, 1, 1)), 2) == R.zero
    assert macdonald_P(EMPTY, 2) == R.one


def test_two_row_coefficient() -> None:
    """P_(2) = m_2 + (1+q)(1-t)/(1-qt) m_11."""
    poly = macdonald_P(MIPartition((2,)), 2)
    assert poly[(2, 0)] == QT_FIELD(1)
    assert poly[(1, 1)] == (1 + Q) * (1 - T) / (1 - Q * T)


def test_branching_coefficients() -> None:
    """Single-box coefficients and the strip precondition."""
    one = MIPartition((1,))
    assert phi(one, EMPTY) == (1 - T) / (1 - Q)
    assert psi(one, EMPTY) == QT_FIELD(1)
    assert b_factor(one, MIBox(1, 1)) == (1 - T) / (1 - Q)
    with pytest.raises(MINotHorizontalStrip):
        phi(MIPartition((1, 1)), EMPTY)
    with pytest.raises(MIBoxNotInPartition):
        b_factor(one, MIBox(1, 2))


def test_q_normalization() -> None:
    """Q_mu = b_mu P_mu."""
    one = MIPartition((1,))
    assert macdonald_Q(one, 2) == macdonald_P(one, 2) * ((1 - T) / (1 - Q))


def test_oracle_agrees() -> None:
    """The tableau formula matches Gram-Schmidt orthogonalization."""
    for parts in ((2,), (1, 1), (2, 1), (3,)):
        mu = MIPartition(parts)
        assert gram_schmidt_oracle(mu).restrict(3) == macdonald_P(mu, 3)


def test_scalar_product_duality() -> None:
    """<P_lam, Q_mu> = delta and <p_1, p_1> = (1-q)/(1-t)."""
    two, one_one = MIPartition((2,)), MIPartition((1, 1))
    P = MISymFunc.single(MIBasis.MACDONALD_P, two)
    assert scalar_product(P, MISymFunc.single(MIBasis.MACDONALD_Q, two)) == QT_FIELD(1)
    assert scalar_product(P, MISymFunc.single(MIBasis.MACDONALD_Q, one_one)) == QT_FIELD(0)
    assert power_sum_norm(MIPartition((1,))) == (1 - Q) / (1 - T)


def test_basis_conversion() -> None:
    """p_1^2 = m_2 + 2 m_11, and conversions return to the start."""
    p11 = MISymFunc.single(MIBasis.POWER_SUM, MIPartition((1, 1)))
    m = p11.to_basis(MIBasis.MONOMIAL)
    assert m.terms == {MIPartition((2,)): QT_FIELD(1), MIPartition((1, 1)): QT_FIELD(2)}
    assert m.to_basis(MIBasis.MACDONALD_P).to_basis(MIBasis.POWER_SUM) == p11


def test_product_and_restriction() -> None:
    """p_1 * p_1 restricted to two variables is (x1 + x2)^2."""
    p1 = MISymFunc.single(MIBasis.POWER_SUM, MIPartition((1,)), 2)
    R = x_ring(2)
    x1, x2 = R.gens
    assert (p1 * p1).restrict(2) == (x1 + x2) ** 2


def test_symmetric_poly_reader() -> None:
    """Reading back a symmetric polynomial; non-symmetric input is rejected."""
    poly = macdonald_P(MIPartition((2,)), 2)
    read = MISymFunc.from_symmetric_poly(poly)
    assert read == MISymFunc.single(MIBasis.MACDONALD_P, MIPartition((2,)))
    with pytest.raises(MIAlgebraError):
        MISymFunc.from_symmetric_poly(x_ring(2).gens[0])
    x1, x2 = x_ring(2).gens
    with pytest.raises(MIAlgebraError):
        MISymFunc.from_symmetric_poly(x1**2 + x1 * x2)
    with pytest.raises(MIAlgebraError):
        MISymFunc.from_symmetric_poly(x1**2 + x2**2 * 2)
    assert MISymFunc.from_symmetric_poly(x1 + x2) == MISymFunc.single(MIBasis.MONOMIAL, MIPartition((1,)))


def test_psi_tableau_parameter_inversion() -> None:
    """psi_T is unchanged by (q, t) -> (1/q, 1/t) for every reverse tableau."""
    for mu in partitions_up_to(5):
        for n in range(1, 6):
            for chain in enumerate_rtab(mu, n):
                value = psi_tableau_factored(chain).scalar
                assert invert_parameters(value) == value


def test_macdonald_P_permutation_invariance() -> None:
    """P_mu(x1..xn) is fixed by every permutation of the variables for n <= 3."""
    for n in range(1, 4):
        R = x_ring(n)
        for mu in partitions_up_to(4, n):
            poly = macdonald_P(mu, n)
            for perm in itertools.permutations(range(n)):
                permuted = R({tuple(monom[perm[i]] for i in range(n)): coeff for monom, coeff in poly.items()})
                assert permuted == poly
