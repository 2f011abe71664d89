"""Tests for rational functions with factored denominators."""

import pytest
from sympy import QQ

from src.macdonald_interp.mi_exceptions import MIAlgebraError, MIDenominatorNotCleared, MIDivisionByZero
from src.macdonald_interp.mi_rational import MIRationalFn, evaluate_poly
from src.macdonald_interp.mi_scalars import Q, T
from src.macdonald_interp.mi_series import poly_ring, single_space

R = poly_ring(("u1",))
U = R.gens[0]


def test_evaluate_poly() -> None:
    """Variables and parameters are read from separate mappings."""
    assert evaluate_poly(U**2 * T + 1, {"u1": 2}, {"t": QQ(1, 2)}) == QQ(3)


def test_addition_and_equality() -> None:
    """1/(u-1) + 1/(u-1) = 2/(u-1), also against an unfactored denominator."""
    f = MIRationalFn(R.one, {("u1", 1): 1})
    assert f + f == MIRationalFn(R.one * 2, {("u1", 1): 1})
    assert f == MIRationalFn(R.one, extra=U - 1)
    assert (f - f).is_zero()


def test_shift() -> None:
    """u -> u/q turns 1/(u-1) into q/(u-q); u -> u+1 turns it into 1/u."""
    f = MIRationalFn(R.one, {("u1", 1): 1})
    assert f.shift("u1", scale=1 / Q) == MIRationalFn(R.one * Q, {("u1", Q): 1})
    assert f.shift("u1", offset=1) == MIRationalFn(R.one, {("u1", 0): 1})


def test_limit_at_infinity() -> None:
    """As u2 grows: u2/(u2-1) -> 1, u1/(u2-1) -> 0, u2^2/(u2-1) diverges."""
    S = poly_ring(("u1", "u2"))
    u1, u2 = S.gens
    limit = MIRationalFn(u2 * u1, {("u2", 1): 1, ("u1", T): 1}).limit_at_infinity("u2")
    assert limit == MIRationalFn(R.gens[0], {("u1", T): 1})
    assert MIRationalFn(u1, {("u2", 1): 1}).limit_at_infinity("u2").is_zero()
    with pytest.raises(MIAlgebraError):
        MIRationalFn(u2**2, {("u2", 1): 1}).limit_at_infinity("u2")


def test_to_series() -> None:
    """1/(u - q) = y/(1 - q y) = y + q y^2 + ... in y = 1/u."""
    space = single_space("y", 3)
    y = space.gen("y")
    series = MIRationalFn(R.one, {("u1", Q): 1}).to_series(space, {"u1": "y"})
    assert series.poly == y + y**2 * Q + y**3 * Q**2
    with pytest.raises(MIAlgebraError):
        MIRationalFn(U).to_series(space, {"u1": "y"})


def test_evaluate_and_poles() -> None:
    """Exact values away from the poles; a pole raises."""
    f = MIRationalFn(U, {("u1", T): 1})
    assert f.evaluate({"u1": 3}, {"t": 1}) == QQ(3, 2)
    with pytest.raises(MIDivisionByZero):
        f.evaluate({"u1": 2}, {"t": 2})


def test_as_polynomial_and_cancel() -> None:
    """(u^2 - 1)/(u - 1) = u + 1; a remainder is reported."""
    f = MIRationalFn(U**2 - 1, {("u1", 1): 1})
    assert f.as_polynomial() == U + 1
    assert not f.cancel_linear_factors().factors
    with pytest.raises(MIDenominatorNotCleared):
        MIRationalFn(U, {("u1", 1): 1}).as_polynomial()


def test_substitute_scalars() -> None:
    """Coefficients and factor constants are both converted."""
    f = MIRationalFn(R.one * T, {("u1", T): 1})
    g = f.substitute_scalars(lambda c: c * 1 if c != T else Q)
    assert g == MIRationalFn(R.one * Q, {("u1", Q): 1})


def test_hash_ignores_factoring() -> None:
    """Equal functions written over different denominators hash equal."""
    f = MIRationalFn(R.one, {("u1", 1): 1})
    g = MIRationalFn(U - 2, {("u1", 1): 1}, extra=U - 2)
    h = MIRationalFn(R.one * (1 - Q), extra=(U - 1) * (1 - Q))
    assert f == g == h
    assert hash(f) == hash(g) == hash(h)
    assert len({f, g, h}) == 1
    assert g in {f}
    assert MIRationalFn(R.one * 2, {("u1", 1): 1}) not in {f}
    assert hash(f - f) == hash(MIRationalFn(R.zero))
