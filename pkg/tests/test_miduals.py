"""Tests for dual interpolation functions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.macdonald_interp.mi_duals import (
    dual_by_duality_oracle,
    dual_H,
    dual_H_y_series,
    dual_sigma,
    jack_kernel_factor,
    modified_cauchy_kernel,
    multiparam_schur,
    q_parameters,
    skew_dual_series,
    skew_pieri_coefficient,
    strip_weight,
    y_space,
)
from src.macdonald_interp.mi_exceptions import MIInvalidParameter, MINotHorizontalStrip
from src.macdonald_interp.mi_items import MIFamily
from src.macdonald_interp.mi_macdonald import x_ring
from src.macdonald_interp.mi_partitions import EMPTY, MIPartition, horizontal_strips_below, partitions_of
from src.macdonald_interp.mi_rational import MIRationalFn
from src.macdonald_interp.mi_scalars import KAPPA, QT_FIELD, Q, T, at_t_equals_q
from src.macdonald_interp.mi_series import (
    KAPPA_DOMAIN,
    MIBlock,
    MISeriesSpace,
    pochhammer_factor,
    poly_ring,
    single_space,
)

ONE = MIPartition((1,))


def test_empty_and_one_box() -> None:
    """H~_empty = 1 and H~_(1)|1 = (1-t)/(1-q) / (u - 1/q)."""
    R = poly_ring(("u1", "u2"))
    assert dual_H(EMPTY, 2) == MIRationalFn(R.one)
    S = poly_ring(("u1",))
    expected = MIRationalFn(S.one * ((1 - T) / (1 - Q)), {("u1", 1 / Q): 1})
    assert dual_H(ONE, 1) == expected
    assert dual_H(MIPartition((1, 1)), 1).is_zero()


def test_one_box_series() -> None:
    """(1-t)/(1-q) y / (1 - y/q) through y^2."""
    series = dual_H_y_series(ONE, 1, 2)
    y = series.space.gen("y1")
    c = (1 - T) / (1 - Q)
    assert series.poly == y * c + y**2 * (c / Q)


@settings(max_examples=20, deadline=None)
@given(
    size=st.integers(min_value=0, max_value=4),
    family=st.sampled_from([MIFamily.QT, MIFamily.JACK, MIFamily.WHITTAKER, MIFamily.HL]),
)
def test_strip_weight_degree(size, family) -> None:
    """Every strip weight behaves like y^{|mu/nu|} at y = 0."""
    for mu in partitions_of(size):
        for nu in horizontal_strips_below(mu):
            assert strip_weight(mu, nu, family).y_power == mu.size - nu.size


def test_strip_weight_rejects_non_strip() -> None:
    """(1,1)/empty is a vertical strip."""
    with pytest.raises(MINotHorizontalStrip):
        strip_weight(MIPartition((1, 1)), EMPTY)


def test_jack_one_box() -> None:
    """Jack H~_(1)|1 = kappa / (u - 1)."""
    S = poly_ring(("u1",), KAPPA_DOMAIN)
    assert dual_H(ONE, 1, MIFamily.JACK) == MIRationalFn(S.one * KAPPA, {("u1", 1): 1})


def test_leading_terms_and_oracle() -> None:
    """The dual from chains matches the dual from linear algebra."""
    space = y_space(2, 2)
    for nu in (EMPTY, ONE, MIPartition((2,)), MIPartition((1, 1))):
        modified = dual_H_y_series(nu, 2, 2)
        correction = space.one()
        for y in space.gens_of("y"):
            correction = correction * pochhammer_factor(space, y, -1)
        assert modified * correction == dual_by_duality_oracle(nu, 2, 2)


def test_oracle_cutoff() -> None:
    """The oracle needs |nu| within the cutoff."""
    with pytest.raises(MIInvalidParameter):
        dual_by_duality_oracle(MIPartition((3,)), 1, 2)


def test_skew_pieri_closed_form() -> None:
    """Leading coefficients, and zero off horizontal strips."""
    space = single_space("y", 3)
    assert skew_pieri_coefficient(EMPTY, MIPartition((1, 1)), 2, space) == space.zero()
    assert skew_dual_series(EMPTY, EMPTY, 3).coefficient((1,)) == 1 / (1 - Q)
    assert skew_pieri_coefficient(EMPTY, ONE, 1, space).coefficient((1,)) == (1 - T) / (1 - Q)


def test_factorial_schur() -> None:
    """With c = (0, 1, 2, ...) s_(1)|2 = x1 + x2 - 1 and I at t=q is a multiparameter Schur."""
    x1, x2 = x_ring(2).gens
    assert multiparam_schur(ONE, 2, [QT_FIELD(0), QT_FIELD(1)]) == x1 + x2 - 1
    assert multiparam_schur(ONE, 2, q_parameters(2, 0, 2)) == x1 + x2 - 1 - Q
    with pytest.raises(MIInvalidParameter):
        multiparam_schur(MIPartition((2,)), 2, [QT_FIELD(0)])


def test_sigma_forms_agree() -> None:
    """Vandermonde and ratio forms, and the match with H~ at t = q."""
    for parts in ((1,), (2,), (1, 1), (2, 1)):
        mu = MIPartition(parts)
        c = q_parameters(2, 1, mu.part(1) + 1)
        sigma = dual_sigma(mu, 2, c)
        assert sigma == dual_sigma(mu, 2, c, "ratio")
        assert dual_H(mu, 2).substitute_scalars(at_t_equals_q) == sigma
    with pytest.raises(MIInvalidParameter):
        dual_sigma(ONE, 2, q_parameters(2, 1, 2), "other")


def test_sigma_ratio_form() -> None:
    """The entrywise ratio of determinants, checked by hand and against the cleared form."""
    c = [QT_FIELD(k) for k in range(1, 6)]
    one_row = dual_sigma(MIPartition((2,)), 1, c, "ratio")
    assert one_row == MIRationalFn(one_row.ring.one, {("u1", 1): 1, ("u1", 2): 1})
    schur = dual_sigma(ONE, 2, [QT_FIELD(0)] * 3, "ratio")
    u1, u2 = schur.ring.gens
    assert schur == MIRationalFn(u1 + u2, {("u1", 0): 1, ("u2", 0): 1})
    for size in range(3):
        for mu in partitions_of(size, 3):
            assert dual_sigma(mu, 3, c, "ratio") == dual_sigma(mu, 3, c)


def test_kernels_start_at_one() -> None:
    """Both kernels have constant term 1; F(0, u) = 1."""
    space = MISeriesSpace([MIBlock(("x1",), 2), MIBlock(("y1",), 2)])
    kernel = modified_cauchy_kernel(space, ("x1",), ("y1",), 1)
    assert kernel.constant() == QT_FIELD(1)
    jack_space = MISeriesSpace([MIBlock(("x",)), MIBlock(("y",), 3)], KAPPA_DOMAIN)
    assert jack_kernel_factor(jack_space, 0, "y", 3) == jack_space.one()
