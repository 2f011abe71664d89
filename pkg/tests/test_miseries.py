"""Tests for polynomials and truncated series."""

import pytest

from src.macdonald_interp.mi_exceptions import MIAlgebraError, MIDimensionMismatch
from src.macdonald_interp.mi_scalars import QT_FIELD, Q, T
from src.macdonald_interp.mi_series import (
    MIBlock,
    MISeriesSpace,
    change_ring,
    finite_pochhammer,
    pochhammer_coefficients,
    pochhammer_factor,
    pochhammer_series,
    poly_ring,
    poly_to_json,
    rename_variables,
    series_from_product,
    single_space,
    var_names,
)


def test_var_names() -> None:
    """Generated names are 1-based."""
    assert var_names("x", 3) == ("x1", "x2", "x3")
    assert var_names("u", 0) == ()


def test_pochhammer_coefficients() -> None:
    """(z;q)_inf and its inverse through z^2."""
    c = pochhammer_coefficients(2)
    assert c[0] == QT_FIELD(1)
    assert c[1] == -1 / (1 - Q)
    assert c[2] == Q / ((1 - Q) * (1 - Q**2))
    inverse = pochhammer_coefficients(2, Q, -1)
    assert inverse[1] == 1 / (1 - Q)
    assert inverse[2] == 1 / ((1 - Q) * (1 - Q**2))


def test_pochhammer_factor_inverse() -> None:
    """(x y t; q)_inf times its inverse is 1 inside the truncation."""
    space = MISeriesSpace([MIBlock(("x",)), MIBlock(("y",), 4)])
    xy = space.gen("x") * space.gen("y")
    product = pochhammer_factor(space, xy * T, 1) * pochhammer_factor(space, xy * T, -1)
    assert product == space.one()


def test_pochhammer_series() -> None:
    """The one-variable expansion matches the coefficient list."""
    series = pochhammer_series(2)
    z = series.space.gen("z")
    assert series.poly == 1 - z * (1 / (1 - Q)) + z**2 * (Q / ((1 - Q) * (1 - Q**2)))


def test_series_from_product() -> None:
    """(q y; q)_inf / (y; q)_inf = 1 / (1 - y)."""
    space = single_space("y", 3)
    y = space.gen("y")
    assert series_from_product(space, [(y * Q, 1), (y, -1)]).poly == 1 + y + y**2 + y**3
    assert series_from_product(space, [(y, 1), (y, -1)]) == space.one()
    assert series_from_product(space, []) == space.one()


def test_pochhammer_needs_small_argument() -> None:
    """A Pochhammer argument without a truncated variable has no expansion."""
    space = MISeriesSpace([MIBlock(("x",)), MIBlock(("y",), 2)])
    with pytest.raises(MIAlgebraError):
        pochhammer_factor(space, space.gen("x"))


def test_geometric_inverse() -> None:
    """1 / (1 - y) = 1 + y + y^2 + y^3 at order 3."""
    space = single_space("y", 3)
    y = space.gen("y")
    assert space.series(1 - y).inverse().poly == 1 + y + y**2 + y**3
    with pytest.raises(MIAlgebraError):
        space.series(y).inverse()


def test_truncation_and_meet() -> None:
    """Operands with different cutoffs meet at the smaller one."""
    low, high = single_space("y", 1), single_space("y", 3)
    y = high.gen("y")
    total = low.series(1 + y) + high.series(y**2)
    assert total.space == low
    assert total.poly == 1 + low.gen("y")


def test_first_mismatch() -> None:
    """The smallest differing monomial comes with both coefficients."""
    space = single_space("y", 3)
    y = space.gen("y")
    a, b = space.series(1 + y + y**2), space.series(1 + y * 2 + y**3)
    monom, left, right = a.first_mismatch(b)
    assert monom == (1,)
    assert left == QT_FIELD(1)
    assert right == QT_FIELD(2)
    assert a.first_mismatch(a) is None


def test_change_ring() -> None:
    """Moving into a larger ring keeps the polynomial; dropping a used variable fails."""
    small, large = poly_ring(("x1",)), poly_ring(("x1", "x2"))
    x1 = small.gens[0]
    moved = change_ring(x1**2 + 1, large)
    assert moved == large.gens[0] ** 2 + 1
    with pytest.raises(MIDimensionMismatch):
        change_ring(large.gens[1], small)


def test_finite_pochhammer_and_rename() -> None:
    """(z;q)_2 = (1 - z)(1 - q z); renaming is positional."""
    R = poly_ring(("z",))
    z = R.gens[0]
    assert finite_pochhammer(z, 2) == (1 - z) * (1 - z * Q)
    renamed = rename_variables(z + 1, ("w",))
    assert [str(s) for s in renamed.ring.symbols] == ["w"]


def test_scale_variable() -> None:
    """y -> q y scales the y^k coefficient by q^k."""
    space = single_space("y", 2)
    y = space.gen("y")
    scaled = space.series(1 + y + y**2).scale_variable("y", Q)
    assert scaled.poly == 1 + y * Q + y**2 * Q**2


def test_poly_json() -> None:
    """Terms are sorted by exponent, descending."""
    R = poly_ring(("x1", "x2"))
    x1, x2 = R.gens
    encoded = poly_to_json(x1 + x2 * T)
    assert encoded["vars"] == ["x1", "x2"]
    assert [term["exp"] for term in encoded["terms"]] == [[1, 0], [0, 1]]
    assert encoded["terms"][1]["coef"] == {"num": [[0, 1, "1"]], "den": [[0, 0, "1"]]}


def test_pochhammer_inverse_base() -> None:
    """(z; 1/q)_inf (q z; q)_inf = 1 at every cutoff up to 8."""
    for order in range(9):
        series = pochhammer_series(order, 1 / Q)
        z = series.space.gen("z")
        assert series * pochhammer_factor(series.space, z * Q) == series.space.one()
