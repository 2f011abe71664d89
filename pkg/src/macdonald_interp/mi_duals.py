"""Dual interpolation functions: strip weights, modified duals, skew duals and the t = q family."""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy.combinatorics import Permutation
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from .mi_exceptions import MIAlgebraError, MIInvalidParameter, MINotHorizontalStrip
from .mi_interpolation import interp_symfunc
from .mi_items import MI_U_PREFIX, MI_Y_PREFIX, MIBasis, MIFamily
from .mi_macdonald import macdonald_Q, phi_factored, x_ring
from .mi_partitions import MIPartition, enumerate_rtab, is_horizontal_strip, partitions_up_to
from .mi_rational import MIRationalFn
from .mi_scalars import KAPPA, KAPPA_FIELD, QT_FIELD, Q, T
from .mi_series import (
    KAPPA_DOMAIN,
    QT_DOMAIN,
    MIBlock,
    MISeries,
    MISeriesSpace,
    pochhammer_factor,
    poly_ring,
    rename_variables,
    series_from_product,
    var_names,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MIStripWeight:
    """scale * u^u_power * prod (u - zero) / prod (u - pole), a univariate weight.

    In y = 1/u it reads scale * y^(#poles - #zeros - u_power) * prod (1 - zero y) / prod (1 - pole y).
    """

    scale: object
    zeros: tuple = ()
    poles: tuple = ()
    u_power: int = 0

    @property
    def y_power(self) -> int:
        return len(self.poles) - len(self.zeros) - self.u_power

    @property
    def u_degree(self) -> int:
        """Total degree in u; never positive for a strip weight."""
        return -self.y_power

    def to_rational(self, ring, name: str) -> MIRationalFn:
        """The weight as a rational function of the generator ``name`` of ``ring``."""
        u = ring.gens[[str(s) for s in ring.symbols].index(name)]
        numerator = ring.one * ring.domain.convert(self.scale)
        if self.u_power > 0:
            numerator *= u**self.u_power
        for zero in self.zeros:
            numerator *= u - ring.domain.convert(zero)
        factors = Counter((name, ring.domain.convert(pole)) for pole in self.poles)
        if self.u_power < 0:
            factors[(name, ring.domain.zero)] += -self.u_power
        return MIRationalFn(numerator, factors)

    def to_series(self, space: MISeriesSpace, y_name: str) -> MISeries:
        """Expansion in y = 1/u inside ``space``."""
        if self.y_power < 0:
            raise MIAlgebraError(f"weight of u-degree {self.u_degree} has no expansion in 1/u")
        y = space.gen(y_name)
        domain = space.domain
        result = space.series(y**self.y_power * domain.convert(self.scale))
        for zero in self.zeros:
            result = result * (1 - y * domain.convert(zero))
        for pole in self.poles:
            result = result * space.series(1 - y * domain.convert(pole)).inverse()
        return result


def _qt_zeros(mu: MIPartition, nu: MIPartition) -> tuple:
    return tuple(
        Q ** (-nu.part(i) + j - 1) * T**i
        for i in range(1, mu.length + 1)
        for j in range(1, nu.part(i) - mu.part(i + 1) + 1)
    )


def _jack_zeros(mu: MIPartition, nu: MIPartition) -> tuple:
    return tuple(
        KAPPA_FIELD(nu.part(i) - j + 1) - i * KAPPA
        for i in range(1, mu.length + 1)
        for j in range(1, nu.part(i) - mu.part(i + 1) + 1)
    )


@lru_cache(maxsize=None)
def strip_weight(mu: MIPartition, nu: MIPartition, family: MIFamily = MIFamily.QT) -> MIStripWeight:
    """The weight W_{mu/nu}(u) attached to a horizontal strip.

    Raises:
        MINotHorizontalStrip: mu/nu is not a horizontal strip.
    """
    if not is_horizontal_strip(mu, nu):
        raise MINotHorizontalStrip(mu, nu)
    phi = phi_factored(mu, nu)
    first = mu.part(1)
    match family:
        case MIFamily.QT:
            return MIStripWeight(phi.scalar, _qt_zeros(mu, nu), tuple(Q ** (-k) for k in range(1, first + 1)))
        case MIFamily.JACK:
            poles = tuple(KAPPA_FIELD(k) for k in range(1, first + 1))
            return MIStripWeight(phi.to_kappa(), _jack_zeros(mu, nu), poles)
        case MIFamily.WHITTAKER:
            poles = tuple(Q ** (-k) for k in range(1, first + 1))
            return MIStripWeight(phi.at_t_zero(), (), poles, nu.size - mu.size + first)
        case MIFamily.HL:
            if not mu:
                return MIStripWeight(QT_FIELD(1))
            if nu.length < mu.length:
                return MIStripWeight(phi.at_q_zero(), (), (T,), nu.size - mu.size + 1)
            return MIStripWeight(phi.at_q_zero(), (T ** (1 - mu.length),), (T,), nu.size - mu.size)
    raise MIInvalidParameter(f"unknown family {family}")


def family_domain(family: MIFamily):
    return KAPPA_DOMAIN if family == MIFamily.JACK else QT_DOMAIN


@lru_cache(maxsize=None)
def dual_H(mu: MIPartition, k: int, family: MIFamily = MIFamily.QT) -> MIRationalFn:
    """Modified dual function H~_{mu|k}(u_1..u_k) as a chain sum of strip weights.

    Zero when l(mu) > k; the denominator is the common product of the poles.
    """
    ring = poly_ring(var_names(MI_U_PREFIX, k), family_domain(family))
    names = var_names(MI_U_PREFIX, k)
    total = MIRationalFn(ring.zero)
    for chain in enumerate_rtab(mu, k):
        term = MIRationalFn(ring.one)
        for name, outer, inner in zip(names, chain, chain[1:]):
            term = term * strip_weight(outer, inner, family).to_rational(ring, name)
        total = total + term
    logger.debug("built %s dual function for %s in %d variables", family.value, mu, k)
    return total


def dual_H_series(
    mu: MIPartition, space: MISeriesSpace, y_names: Sequence[str], family: MIFamily = MIFamily.QT
) -> MISeries:
    """H~_{mu|k} expanded in y_j = 1/u_j inside ``space``."""
    total = space.zero()
    for chain in enumerate_rtab(mu, len(y_names)):
        term = space.one()
        for name, outer, inner in zip(y_names, chain, chain[1:]):
            term = term * strip_weight(outer, inner, family).to_series(space, name)
        total = total + term
    return total


def y_space(k: int, order: int, family: MIFamily = MIFamily.QT) -> MISeriesSpace:
    """Series space in y_1..y_k truncated at total degree ``order``."""
    return MISeriesSpace([MIBlock(var_names(MI_Y_PREFIX, k), order)], family_domain(family))


def dual_H_y_series(mu: MIPartition, k: int, order: int, family: MIFamily = MIFamily.QT) -> MISeries:
    """H~_{mu|k} as a series in y_1..y_k through degree ``order``."""
    space = y_space(k, order, family)
    return dual_H_series(mu, space, var_names(MI_Y_PREFIX, k), family)


def skew_dual_series(
    mu: MIPartition, nu: MIPartition, order: int, space: MISeriesSpace | None = None, y_name: str = "y"
) -> MISeries:
    """Univariate skew dual function H_{mu/nu}(y), through degree ``order``.

    phi_{mu/nu} y^{|mu|-|nu|} prod_{i<=L} (y q^{-nu_i} t^i; q)_inf / (y q^{-mu_i} t^{i-1}; q)_inf
    times 1 / (y t^L; q)_inf with L = l(mu); zero unless mu/nu is a horizontal strip.
    """
    space = space or MISeriesSpace([MIBlock((y_name,), order)])
    if not is_horizontal_strip(mu, nu):
        return space.zero()
    y = space.gen(y_name)
    length = mu.length
    result = space.series(y ** (mu.size - nu.size) * phi_factored(mu, nu).scalar)
    for i in range(1, length + 1):
        result = result * pochhammer_factor(space, y * (Q ** (-nu.part(i)) * T**i), 1)
        result = result * pochhammer_factor(space, y * (Q ** (-mu.part(i)) * T ** (i - 1)), -1)
    return result * pochhammer_factor(space, y * T**length, -1)


def skew_pieri_coefficient(
    nu: MIPartition, mu: MIPartition, n: int, space: MISeriesSpace, y_name: str = "y"
) -> MISeries:
    """c_n(nu, mu; y) = phi_{mu/nu} y^{|mu|-|nu|} prod_{i<=n} (y q^{-nu_i} t^i; q)_inf / (y q^{-mu_i} t^{i-1}; q)_inf."""
    if not is_horizontal_strip(mu, nu) or mu.length > n:
        return space.zero()
    y = space.gen(y_name)
    result = space.series(y ** (mu.size - nu.size) * phi_factored(mu, nu).scalar)
    for i in range(1, n + 1):
        result = result * pochhammer_factor(space, y * (Q ** (-nu.part(i)) * T**i), 1)
        result = result * pochhammer_factor(space, y * (Q ** (-mu.part(i)) * T ** (i - 1)), -1)
    return result


@lru_cache(maxsize=None)
def _interpolation_transition_inverse(degree_cutoff: int) -> tuple[tuple[MIPartition, ...], list[list]]:
    """Inverse of the matrix of P-coefficients of I_mu, over all |mu| <= degree_cutoff."""
    basis = tuple(partitions_up_to(degree_cutoff))
    index = {lam: i for i, lam in enumerate(basis)}
    size = len(basis)
    rows = []
    for mu in basis:
        row = [QT_DOMAIN.zero] * size
        for lam, c in interp_symfunc(mu, MIBasis.MACDONALD_P).terms.items():
            row[index[lam]] = c
        rows.append(row)
    inverse = DomainMatrix(rows, (size, size), QT_DOMAIN).inv()
    logger.debug("inverted the %dx%d interpolation transition matrix", size, size)
    return basis, inverse.to_list()


def dual_by_duality_oracle(nu: MIPartition, k: int, degree_cutoff: int) -> MISeries:
    """H_nu restricted to y_1..y_k through ``degree_cutoff``, from <I_mu, H_nu> = delta.

    With I_mu = sum_lam A[mu][lam] P_lam, H_nu = sum_kappa (A^{-1})[kappa][nu] Q_kappa.
    """
    if nu.size > degree_cutoff:
        raise MIInvalidParameter(f"{nu} exceeds the degree cutoff {degree_cutoff}")
    basis, inverse = _interpolation_transition_inverse(degree_cutoff)
    column = basis.index(nu)
    space = y_space(k, degree_cutoff)
    names = var_names(MI_Y_PREFIX, k)
    total = space.zero()
    for row, kappa in enumerate(basis):
        coefficient = inverse[row][column]
        if not coefficient or kappa.length > k:
            continue
        restricted = rename_variables(macdonald_Q(kappa, k), names)
        total = total + space.series(restricted * coefficient)
    return total


def q_parameters(n: int, first_index: int, count: int, base=Q) -> tuple:
    """(c_first, c_first+1, ...) with c_k = base^{n-1-k}."""
    return tuple(base ** (n - 1 - k) for k in range(first_index, first_index + count))


def _vandermonde(ring) -> PolyElement:
    gens = ring.gens
    result = ring.one
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            result *= gens[i] - gens[j]
    return result


def _det(ring, entries: list[list[PolyElement]]) -> PolyElement:
    n = len(entries)
    return DomainMatrix(entries, (n, n), ring.to_domain()).det()


def multiparam_schur(mu: MIPartition, n: int, c: Sequence) -> PolyElement:
    """s_{mu|n}(x | c_0, c_1, ...) = det[(x_j | c)^{mu_i + n - i}] / V(x).

    ``c`` starts at c_0; (x | c)^m = (x - c_0) ... (x - c_{m-1}).

    Raises:
        MIInvalidParameter: Too few parameters or l(mu) > n.
    """
    if mu.length > n:
        raise MIInvalidParameter(f"{mu} has more than {n} parts")
    needed = mu.part(1) + n - 1
    if len(c) < needed:
        raise MIInvalidParameter(f"{needed} parameters needed, got {len(c)}")
    R = x_ring(n)
    params = [R.domain.convert(value) for value in c]

    def falling(x: PolyElement, m: int) -> PolyElement:
        result = R.one
        for k in range(m):
            result *= x - params[k]
        return result

    entries = [[falling(x, mu.part(i) + n - i) for x in R.gens] for i in range(1, n + 1)]
    return _det(R, entries).exquo(_vandermonde(R))


def _rational_det(ring, entries: list[list[MIRationalFn]]) -> MIRationalFn:
    """Leibniz expansion of a determinant with rational entries."""
    n = len(entries)
    total = MIRationalFn.constant(ring, 0)
    for perm in itertools.permutations(range(n)):
        term = MIRationalFn.constant(ring, Permutation(list(perm)).signature())
        for i, j in enumerate(perm):
            term = term * entries[i][j]
        total = total + term
    return total


def dual_sigma(mu: MIPartition, n: int, c: Sequence, form: str = "vandermonde") -> MIRationalFn:
    """sigma_{mu|n}(u | c_1, c_2, ...) as a rational function in u_1..u_n.

    ``c`` starts at c_1. The ``ratio`` form expands det[1/(u_j|c)^{mu_i+n-i}] and
    det[1/(u_j|c)^{n-i}] entry by entry and divides them. The ``vandermonde`` form
    clears denominators first and returns
    (-1)^{n(n-1)/2} prod_j (u_j - c_1)..(u_j - c_{n-1}) det[1/(u_j|c)^{mu_i+n-i}] / V(u)
    over the factored denominator prod_j prod_{k=n}^{M} (u_j - c_k).

    Raises:
        MIInvalidParameter: Too few parameters, l(mu) > n, or an unknown form.
    """
    if mu.length > n:
        raise MIInvalidParameter(f"{mu} has more than {n} parts")
    top = mu.part(1) + n - 1
    if len(c) < top:
        raise MIInvalidParameter(f"{top} parameters needed, got {len(c)}")
    names = var_names(MI_U_PREFIX, n)
    R = poly_ring(names, QT_DOMAIN)
    params = {k: R.domain.convert(c[k - 1]) for k in range(1, top + 1)}

    match form:
        case "vandermonde":

            def tail(u: PolyElement, first: int, last: int) -> PolyElement:
                result = R.one
                for k in range(first, last + 1):
                    result *= u - params[k]
                return result

            numerator = _det(R, [[tail(u, mu.part(i) + n - i + 1, top) for u in R.gens] for i in range(1, n + 1)])
            factors = Counter((name, params[k]) for name in names for k in range(n, top + 1))
            sign = -1 if (n * (n - 1) // 2) % 2 else 1
            return MIRationalFn(numerator.exquo(_vandermonde(R)) * sign, factors)
        case "ratio":

            def inverse_falling(name: str, m: int) -> MIRationalFn:
                return MIRationalFn(R.one, Counter((name, params[k]) for k in range(1, m + 1)))

            rows = range(1, n + 1)
            upper = _rational_det(R, [[inverse_falling(name, mu.part(i) + n - i) for name in names] for i in rows])
            lower = _rational_det(R, [[inverse_falling(name, n - i) for name in names] for i in rows])
            return MIRationalFn(upper.numerator * lower.denominator(), upper.factors, upper.extra * lower.numerator)
    raise MIInvalidParameter(f"unknown sigma form {form!r}")


def modified_cauchy_kernel(
    space: MISeriesSpace, x_names: Sequence[str], y_names: Sequence[str], n: int
) -> MISeries:
    """prod_{i,j} (x_i y_j t; q)_inf / (x_i y_j; q)_inf * prod_j (y_j; q)_inf / (y_j t^n; q)_inf."""
    factors = []
    for y_name in y_names:
        y = space.gen(y_name)
        for x_name in x_names:
            xy = space.gen(x_name) * y
            factors += [(xy * T, 1), (xy, -1)]
        factors += [(y, 1), (y * T**n, -1)]
    return series_from_product(space, factors)


def jack_kernel_factor(space: MISeriesSpace, x, y_name: str, order: int, x_shift=0, u_shift=0) -> MISeries:
    """F(x + x_shift, u + u_shift; kappa) through y-degree ``order``, with y = 1/u.

    F(x, u) = 1 + sum_m (kappa)_m / m! * x (x-1) ... (x-m+1) / ((u-1) ... (u-m)),
    and 1 / (u + c - k) = y / (1 + (c - k) y).
    """
    y = space.gen(y_name)
    domain = space.domain
    x_value = space.series(x) + domain.convert(x_shift)
    total = space.one()
    falling = space.one()
    denominator = space.one()
    coefficient = KAPPA_FIELD(1)
    for m in range(1, order + 1):
        coefficient = coefficient * (KAPPA + m - 1) / m
        falling = falling * (x_value - (m - 1))
        denominator = denominator * space.series(y) / space.series(1 + y * domain.convert(u_shift - m))
        total = total + falling * denominator * coefficient
    return total
