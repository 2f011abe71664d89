"""Interpolation Macdonald polynomials, their nodes, evaluations and degenerations."""

import logging
from functools import lru_cache
from typing import Callable, Sequence

from sympy.polys.rings import PolyElement

from .mi_exceptions import MIAlgebraError, MIDimensionMismatch, MIInvalidParameter
from .mi_items import MIBasis, MIFamily
from .mi_macdonald import MISymFunc, macdonald_P, psi_factored, psi_tableau_factored, x_ring
from .mi_partitions import EMPTY, MIBox, MIChain, MIPartition, enumerate_rtab, horizontal_strips_below, partitions_of
from .mi_partitions import partitions_up_to, strip_cells
from .mi_scalars import KAPPA, KAPPA_FIELD, QT_FIELD, Q, T, invert_parameters, specialize
from .mi_series import KAPPA_DOMAIN, QT_DOMAIN, poly_ring

logger = logging.getLogger(__name__)

MINode = tuple


def node(lam: MIPartition, n: int) -> MINode:
    """X_n(lam): the i-th coordinate is q^{-lam_i} t^{i-1}.

    Raises:
        MIInvalidParameter: l(lam) > n.
    """
    if lam.length > n:
        raise MIInvalidParameter(f"{lam} has more than {n} parts")
    return tuple(Q ** (-lam.part(i)) * T ** (i - 1) for i in range(1, n + 1))


def _chain_cells(chain: MIChain) -> list[tuple[int, MIBox]]:
    """(tableau value, box) for every box of the shape."""
    return [(k, box) for k, (outer, inner) in enumerate(zip(chain, chain[1:]), start=1) for box in strip_cells(outer, inner)]


def _qt_shift(value: int, box: MIBox):
    return Q ** (1 - box.col) * T ** (value + box.row - 2)


def _jack_shift(value: int, box: MIBox):
    return KAPPA_FIELD(box.col - 1) - (value + box.row - 2) * KAPPA


def _whittaker_shift(value: int, box: MIBox):
    return Q ** (1 - box.col) if value + box.row == 2 else QT_FIELD(0)


def _hl_shift(value: int, box: MIBox):
    return T ** (2 - value - box.row) if box.col == 1 else QT_FIELD(0)


FAMILY_RULES: dict[MIFamily, tuple[Callable, Callable, object]] = {
    MIFamily.QT: (lambda f: f.scalar, _qt_shift, QT_DOMAIN),
    MIFamily.JACK: (lambda f: f.to_kappa(), _jack_shift, KAPPA_DOMAIN),
    MIFamily.WHITTAKER: (lambda f: f.at_t_zero(), _whittaker_shift, QT_DOMAIN),
    MIFamily.HL: (lambda f: f.at_q_zero(), _hl_shift, QT_DOMAIN),
}


@lru_cache(maxsize=None)
def interp_family(mu: MIPartition, n: int, family: MIFamily = MIFamily.QT) -> PolyElement:
    """Tableau sum  sum_T psi_T prod_{(i,j)} (x_{T(i,j)} - shift(T(i,j), (i,j))).

    The weight and the shift depend on the family: generic (q,t), Jack over
    Q(kappa), t = 0 and q = 0. Zero when l(mu) > n.
    """
    weight_of, shift_of, domain = FAMILY_RULES[family]
    R = x_ring(n, domain)
    total = R.zero
    for chain in enumerate_rtab(mu, n):
        term = R.one * domain.convert(weight_of(psi_tableau_factored(chain)))
        for value, box in _chain_cells(chain):
            term *= R.gens[value - 1] - domain.convert(shift_of(value, box))
        total += term
    logger.debug("built %s interpolation polynomial for %s in %d variables", family.value, mu, n)
    return total


def interp_I(mu: MIPartition, n: int) -> PolyElement:
    """I_{mu|n}(x; q, t) by the tableau formula."""
    return interp_family(mu, n, MIFamily.QT)


def jack_interp_I(mu: MIPartition, n: int) -> PolyElement:
    """Interpolation Jack polynomial I_{mu|n}(x; kappa) over Q(kappa)."""
    return interp_family(mu, n, MIFamily.JACK)


def whittaker_A(mu: MIPartition, n: int) -> PolyElement:
    """A^W_{mu|n} = I_{mu|n}(x; q, 0), with t set to zero factor by factor."""
    return interp_family(mu, n, MIFamily.WHITTAKER)


def hl_A(mu: MIPartition, n: int) -> PolyElement:
    """A^HL_{mu|n}: psi_T(0,t) prod (x_T - 1_{j=1} t^{2-T-i})."""
    return interp_family(mu, n, MIFamily.HL)


def hl_A_from_interpolation(mu: MIPartition, n: int) -> PolyElement:
    """I_{mu|n}(x; 1/q, 1/t) at q = 0; agrees with ``hl_A``."""
    poly = interp_I(mu, n)
    R = poly.ring
    return R({m: specialize(invert_parameters(c), {"q": QT_FIELD(0)}) for m, c in poly.items()})


@lru_cache(maxsize=None)
def interp_I_branching(mu: MIPartition, n: int) -> PolyElement:
    """I_{mu|n} from the branching rule

    I_{mu|n}(x) = sum_{nu < mu} psi_{mu/nu} t^{|nu|} prod_{(r,c) in mu/nu} (x_1 - q^{1-c} t^{r-1})
                  * I_{nu|n-1}(x_2/t, ..., x_n/t).
    """
    if n == 0:
        return x_ring(1).one if not mu else x_ring(1).zero
    R = x_ring(n)
    if mu.length > n:
        return R.zero
    x1 = R.gens[0]
    total = R.zero
    for nu in horizontal_strips_below(mu):
        if nu.length > n - 1:
            continue
        head = R.one * (psi_factored(mu, nu).scalar * T ** nu.size)
        for box in strip_cells(mu, nu):
            head *= x1 - Q ** (1 - box.col) * T ** (box.row - 1)
        if n == 1:
            total += head
            continue
        tail = interp_I_branching(nu, n - 1)
        moved = R({(0,) + monom: c * T ** (-sum(monom)) for monom, c in tail.items()})
        total += head * moved
    return total


def evaluate(poly: PolyElement, values: Sequence) -> object:
    """Exact substitution of scalars for x_1..x_n.

    Raises:
        MIDimensionMismatch: ``values`` has the wrong length.
    """
    if len(values) != poly.ring.ngens:
        raise MIDimensionMismatch(f"{len(values)} values for {poly.ring.ngens} variables")
    domain = poly.ring.domain
    values = [domain.convert(v) for v in values]
    total = domain.zero
    for monom, coeff in poly.items():
        term = coeff
        for value, power in zip(values, monom):
            if power:
                term *= value**power
        total += term
    return total


def principal_specialization(poly: PolyElement):
    """Value at (1, t, ..., t^{n-1})."""
    return evaluate(poly, [T**i for i in range(poly.ring.ngens)])


def set_last_variable(poly: PolyElement, value) -> PolyElement:
    """Substitute x_n = value and return a polynomial in x_1..x_{n-1}."""
    R = poly.ring
    target = x_ring(R.ngens - 1, R.domain)
    value = R.domain.convert(value)
    result = target.zero
    for monom, coeff in poly.items():
        result += target({monom[:-1]: coeff * value ** monom[-1]})
    return result


def _power_sum_shift(k: int, n: int):
    """t^{nk} / (1 - t^k), the constant phi_n adds to p_k."""
    return T ** (n * k) / (1 - T**k)


def _shift_power_sums(f: MISymFunc, n: int, sign: int) -> dict[MIPartition, object]:
    """Expand p_lam -> prod (p_{lam_i} + sign * c_{lam_i}) in the power-sum basis."""
    terms: dict[MIPartition, object] = {}
    for lam, coeff in f.to_basis(MIBasis.POWER_SUM).terms.items():
        partial = {EMPTY: coeff}
        for part in lam.parts:
            shifted: dict[MIPartition, object] = {}
            for rho, c in partial.items():
                grown = MIPartition.from_parts(sorted(rho.parts + (part,), reverse=True))
                shifted[grown] = shifted.get(grown, QT_FIELD(0)) + c
                shifted[rho] = shifted.get(rho, QT_FIELD(0)) + c * sign * _power_sum_shift(part, n)
            partial = shifted
        for rho, c in partial.items():
            terms[rho] = terms.get(rho, QT_FIELD(0)) + c
    return {rho: c for rho, c in terms.items() if c}


def phi_N_specialize(f: MISymFunc, n: int) -> PolyElement:
    """phi_n: p_k -> x_1^k + ... + x_n^k + t^{nk} / (1 - t^k)."""
    shifted = MISymFunc(MIBasis.POWER_SUM, f.degree_bound, _shift_power_sums(f, n, 1))
    return shifted.restrict(n)


def lift_to_power_sums(poly: PolyElement, degree_bound: int | None = None) -> MISymFunc:
    """The symmetric function f with phi_n(f) = poly, for n >= deg(poly).

    Raises:
        MIInvalidParameter: Too few variables to recover f.
    """
    n = poly.ring.ngens
    degree = max((sum(m) for m in poly.keys()), default=0)
    if degree > n:
        raise MIInvalidParameter(f"degree {degree} needs at least {degree} variables, got {n}")
    bound = degree if degree_bound is None else degree_bound
    as_function = MISymFunc.from_symmetric_poly(poly, bound)
    return MISymFunc(MIBasis.POWER_SUM, bound, _shift_power_sums(as_function, n, -1))


@lru_cache(maxsize=None)
def interp_symfunc(mu: MIPartition, basis: MIBasis = MIBasis.POWER_SUM) -> MISymFunc:
    """I_mu as a symmetric function, recovered from I_{mu|n} with n = max(|mu|, 1)."""
    return lift_to_power_sums(interp_I(mu, max(mu.size, 1)), mu.size).to_basis(basis)


def binomial_sides(mu: MIPartition, n: int) -> tuple[PolyElement, PolyElement]:
    """Both sides of the binomial formula

    P_mu / P_mu(1,t,..) = sum_{nu in mu} I_nu(X(mu)) / I_nu(X(nu)) * I_nu / P_nu(1,t,..).

    Raises:
        MIInvalidParameter: l(mu) > n.
    """
    if mu.length > n:
        raise MIInvalidParameter(f"{mu} has more than {n} parts")
    top = macdonald_P(mu, n)
    lhs = top * (1 / principal_specialization(top))
    rhs = x_ring(n).zero
    target = node(mu, n)
    for nu in partitions_up_to(mu.size, mu.length):
        if not mu.contains(nu):
            continue
        inter = interp_I(nu, n)
        ratio = evaluate(inter, target) / evaluate(inter, node(nu, n))
        rhs += inter * (ratio / principal_specialization(macdonald_P(nu, n)))
    return lhs, rhs


def verify_binomial(mu: MIPartition, n: int) -> bool:
    """True iff the two sides of the binomial formula agree."""
    try:
        lhs, rhs = binomial_sides(mu, n)
    except ZeroDivisionError as e:
        logger.info("binomial check for %s hit a zero denominator: %s", mu, e)
        return False
    return lhs == rhs


def expand_in_interpolation_basis(
    poly: PolyElement, n: int, family: MIFamily = MIFamily.QT
) -> dict[MIPartition, object]:
    """Coefficients of ``poly`` in the basis I_{lam|n}.

    The first n generators of ``poly.ring`` are the x-variables; any further
    generators are carried along in the coefficients, which are then
    polynomials in those generators.

    Raises:
        MIAlgebraError: ``poly`` is not symmetric in the x-variables.
    """
    R = poly.ring
    extra_names = tuple(str(s) for s in R.symbols[n:])
    if extra_names:
        E = poly_ring(extra_names, R.domain)
    else:
        E = R.domain
    remaining: dict[tuple[int, ...], object] = {}
    for monom, coeff in poly.items():
        x_part, e_part = monom[:n], monom[n:]
        piece = E({e_part: coeff}) if extra_names else coeff
        remaining[x_part] = remaining.get(x_part, E.zero) + piece
    coefficients: dict[MIPartition, object] = {}
    top = max((sum(m) for m, c in remaining.items() if c), default=0)
    for degree in range(top, -1, -1):
        for lam in partitions_of(degree, n):
            c = remaining.get(lam.padded(n), E.zero)
            if not c:
                continue
            coefficients[lam] = c
            for monom, s in interp_family(lam, n, family).items():
                remaining[monom] = remaining.get(monom, E.zero) - c * s
    leftover = {m: c for m, c in remaining.items() if c}
    if leftover:
        raise MIAlgebraError(f"not symmetric in the x-variables: residue at {min(leftover)}")
    return coefficients
