"""Tests for exact scalars."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ

from src.macdonald_interp.mi_exceptions import MIAlgebraError, MIDivisionByZero
from src.macdonald_interp.mi_scalars import (
    KAPPA,
    QT_FIELD,
    MICycloFactored,
    Q,
    T,
    at_t_equals_q,
    eval_scalar,
    invert_parameters,
    qt_const,
    scalar_arith,
    scalar_to_json,
    scalars_equal,
)


@st.composite
def scalar_strategy(draw):
    """Small products of (1 - q^a t^b) factors with a rational unit."""
    unit = draw(st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool))
    value = qt_const(unit)
    for _ in range(draw(st.integers(0, 2))):
        a, b = draw(st.integers(-2, 2)), draw(st.integers(0, 2))
        if (a, b) != (0, 0):
            value *= 1 - Q**a * T**b
    return value


def test_arith_ops() -> None:
    """Each named operation matches field arithmetic."""
    a, b = (1 - Q) / (1 - T), Q * T
    assert scalar_arith(a, b, "add") == a + b
    assert scalar_arith(a, b, "sub") == a - b
    assert scalar_arith(a, b, "mul") == a * b
    assert scalar_arith(a, b, "div") == a / b
    assert scalar_arith(a, None, "neg") == -a
    assert scalar_arith(a, a * 1, "eq")


def test_division_by_zero() -> None:
    """Dividing by an exact zero raises."""
    with pytest.raises(MIDivisionByZero):
        scalar_arith(Q, QT_FIELD(0), "div")
    with pytest.raises(ValueError):
        scalar_arith(Q, Q, "pow")


def test_normal_form_equality() -> None:
    """(1 - q^2) / (1 - q) and 1 + q are the same element."""
    assert (1 - Q**2) / (1 - Q) == 1 + Q
    assert scalars_equal((1 - T) / (1 - Q), (T - 1) / (Q - 1))


def test_eval_scalar() -> None:
    """Exact evaluation; missing parameters read as zero."""
    assert eval_scalar((1 - Q) / (1 - T), {"q": 2, "t": 3}) == QQ(1, 2)
    assert eval_scalar(Q + T, {"q": QQ(1, 3)}) == QQ(1, 3)
    with pytest.raises(MIDivisionByZero):
        eval_scalar(1 / (1 - T), {"t": 1})


def test_specializations() -> None:
    """t = q and (q, t) -> (1/q, 1/t)."""
    assert at_t_equals_q((1 - T) / (1 - Q)) == QT_FIELD(1)
    assert invert_parameters(Q * T**2) == 1 / (Q * T**2)
    assert invert_parameters(invert_parameters((1 - Q * T) / (1 - T))) == (1 - Q * T) / (1 - T)


def test_scalar_json() -> None:
    """Numerator and denominator terms as [e_q, e_t, coeff]."""
    assert scalar_to_json(Q) == {"num": [[1, 0, "1"]], "den": [[0, 0, "1"]]}
    encoded = scalar_to_json(1 / (1 - T))
    assert encoded["num"] == [[0, 0, "1"]] or encoded["num"] == [[0, 0, "-1"]]


def test_cyclo_factored() -> None:
    """Factored products expand, cancel and specialize."""
    b = MICycloFactored.binomial(1, 0) / MICycloFactored.binomial(0, 1)
    assert b.scalar == (1 - Q) / (1 - T)
    assert (b * b.inverse()).is_one
    assert b.to_kappa() == 1 / KAPPA
    ratio = MICycloFactored.binomial(1, 1) / MICycloFactored.binomial(1, 0)
    assert ratio.at_t_zero() == 1 / (1 - Q)
    hl = MICycloFactored.binomial(0, 1) / MICycloFactored.binomial(1, 1)
    assert hl.at_q_zero() == 1 - T


def test_cyclo_errors() -> None:
    """Degenerate factors and unbalanced Jack rewrites are rejected."""
    with pytest.raises(MIAlgebraError):
        MICycloFactored(Fraction(1), ((0, 0, 1),))
    with pytest.raises(MIAlgebraError):
        MICycloFactored.binomial(1, 0).to_kappa()
    with pytest.raises(MIDivisionByZero):
        MICycloFactored.binomial(1, -1).at_t_zero()


@settings(max_examples=30, deadline=None)
@given(a=scalar_strategy(), b=scalar_strategy(), c=scalar_strategy())
def test_field_axioms(a, b, c) -> None:
    """Associativity, distributivity and inverses on random scalars."""
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a / a == QT_FIELD(1)
    assert scalar_arith(a, b, "div") * b == a


@st.composite
def cyclo_strategy(draw):
    """Factored products with a rational unit and up to three factors."""
    unit = draw(st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool))
    value = MICycloFactored(unit)
    for _ in range(draw(st.integers(0, 3))):
        a, b = draw(st.integers(-2, 2)), draw(st.integers(-2, 2))
        if (a, b) != (0, 0):
            value = value * MICycloFactored.binomial(a, b, draw(st.sampled_from((-2, -1, 1, 2))))
    return value


@settings(max_examples=40, deadline=None)
@given(f=cyclo_strategy(), g=cyclo_strategy())
def test_cyclo_expansion_is_multiplicative(f, g) -> None:
    """Expanding a product equals the product of the expansions."""
    assert (f * g).scalar == f.scalar * g.scalar
    assert (f / g).scalar == f.scalar / g.scalar
