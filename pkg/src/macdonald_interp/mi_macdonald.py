"""Homogeneous Macdonald layer: branching coefficients, P and Q, symmetric functions, scalar product."""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement
from sympy.utilities.iterables import multiset_permutations

from .mi_exceptions import MIAlgebraError, MIBoxNotInPartition, MIDegreeMismatch, MINotHorizontalStrip
from .mi_items import MI_X_PREFIX, MIBasis
from .mi_partitions import (
    EMPTY,
    MIBox,
    MIChain,
    MIPartition,
    enumerate_rtab,
    is_horizontal_strip,
    partitions_of,
    strip_cells,
)
from .mi_scalars import MI_CYCLO_ONE, QT_FIELD, MICycloFactored, Q, T, scalar_to_json
from .mi_series import QT_DOMAIN, poly_ring, var_names

logger = logging.getLogger(__name__)


def b_factor_factored(lam: MIPartition, box: MIBox) -> MICycloFactored:
    """b_lam(s) = (1 - q^a t^{l+1}) / (1 - q^{a+1} t^l); 1 when s lies outside lam."""
    if not lam.has_box(box):
        return MI_CYCLO_ONE
    a, l = lam.arm(box), lam.leg(box)
    return MICycloFactored.binomial(a, l + 1) / MICycloFactored.binomial(a + 1, l)


def b_factor(lam: MIPartition, box: MIBox):
    """The b-factor of a box of lam as a Q(q,t) scalar.

    Raises:
        MIBoxNotInPartition: ``box`` is not a cell of ``lam``.
    """
    if not lam.has_box(box):
        raise MIBoxNotInPartition(f"box {box} is not in {lam}")
    return b_factor_factored(lam, box).scalar


@lru_cache(maxsize=None)
def b_total_factored(lam: MIPartition) -> MICycloFactored:
    """b_lam = prod over the cells of lam."""
    result = MI_CYCLO_ONE
    for box in lam.cells():
        result = result * b_factor_factored(lam, box)
    return result


def _strip_rows_and_columns(mu: MIPartition, nu: MIPartition) -> tuple[list[MIBox], list[MIBox]]:
    cells = strip_cells(mu, nu)
    rows = {box.row for box in cells}
    cols = {box.col for box in cells}
    in_rows = [box for box in mu.cells() if box.row in rows and box.col not in cols]
    in_cols = [box for box in mu.cells() if box.col in cols]
    return in_rows, in_cols


@lru_cache(maxsize=None)
def psi_factored(mu: MIPartition, nu: MIPartition) -> MICycloFactored:
    """psi_{mu/nu}: product over boxes in strip rows but not strip columns of b_nu / b_mu.

    Raises:
        MINotHorizontalStrip: mu/nu is not a horizontal strip.
    """
    if not is_horizontal_strip(mu, nu):
        raise MINotHorizontalStrip(mu, nu)
    result = MI_CYCLO_ONE
    in_rows, _ = _strip_rows_and_columns(mu, nu)
    for box in in_rows:
        result = result * b_factor_factored(nu, box) / b_factor_factored(mu, box)
    return result


@lru_cache(maxsize=None)
def phi_factored(mu: MIPartition, nu: MIPartition) -> MICycloFactored:
    """phi_{mu/nu}: product over boxes in strip columns of b_mu / b_nu.

    Raises:
        MINotHorizontalStrip: mu/nu is not a horizontal strip.
    """
    if not is_horizontal_strip(mu, nu):
        raise MINotHorizontalStrip(mu, nu)
    result = MI_CYCLO_ONE
    _, in_cols = _strip_rows_and_columns(mu, nu)
    for box in in_cols:
        result = result * b_factor_factored(mu, box) / b_factor_factored(nu, box)
    return result


def psi(mu: MIPartition, nu: MIPartition):
    return psi_factored(mu, nu).scalar


def phi(mu: MIPartition, nu: MIPartition):
    return phi_factored(mu, nu).scalar


def psi_tableau_factored(chain: MIChain) -> MICycloFactored:
    """psi_T for a chain mu(0) > mu(1) > ... > ∅."""
    result = MI_CYCLO_ONE
    for outer, inner in zip(chain, chain[1:]):
        result = result * psi_factored(outer, inner)
    return result


def chain_exponents(chain: MIChain) -> tuple[int, ...]:
    """Exponent of x_i in the tableau monomial: |mu(i-1)| - |mu(i)|."""
    return tuple(outer.size - inner.size for outer, inner in zip(chain, chain[1:]))


def x_ring(n: int, domain=QT_DOMAIN):
    return poly_ring(var_names(MI_X_PREFIX, n), domain)


@lru_cache(maxsize=None)
def macdonald_P(mu: MIPartition, n: int) -> PolyElement:
    """P_{mu|n} by the tableau sum; zero when l(mu) > n."""
    R = x_ring(n)
    coefficients: dict[tuple[int, ...], object] = {}
    for chain in enumerate_rtab(mu, n):
        monom = chain_exponents(chain)
        coefficients[monom] = coefficients.get(monom, QT_FIELD(0)) + psi_tableau_factored(chain).scalar
    return R({m: c for m, c in coefficients.items() if c})


def macdonald_Q(mu: MIPartition, n: int) -> PolyElement:
    """Q_{mu|n} = b_mu P_{mu|n}."""
    return macdonald_P(mu, n) * b_total_factored(mu).scalar


@lru_cache(maxsize=None)
def power_sum_norm(lam: MIPartition):
    """<p_lam, p_lam> = z_lam prod (1 - q^{lam_i}) / (1 - t^{lam_i})."""
    value = QT_FIELD(lam.z_factor())
    for part in lam.parts:
        value *= (1 - Q**part) / (1 - T**part)
    return value


def _monomial_key(monom: tuple[int, ...]) -> MIPartition:
    return MIPartition.from_parts(sorted(monom, reverse=True))


@lru_cache(maxsize=None)
def _p_to_m_matrix(degree: int) -> DomainMatrix:
    """Rows: p_lam in the monomial basis, over QQ."""
    basis = partitions_of(degree)
    R = poly_ring(var_names(MI_X_PREFIX, max(degree, 1)), ZZ)
    power_sums = [sum((g**k for g in R.gens), R.zero) for k in range(degree + 1)]
    rows = []
    for lam in basis:
        product = R.one
        for part in lam.parts:
            product *= power_sums[part]
        rows.append([QQ(int(product.get(mu.padded(R.ngens), 0))) for mu in basis])
    logger.debug("built p->m transition at degree %d", degree)
    return DomainMatrix(rows, (len(basis), len(basis)), QQ)


@lru_cache(maxsize=None)
def _m_to_p_matrix(degree: int) -> DomainMatrix:
    return _p_to_m_matrix(degree).inv()


@lru_cache(maxsize=None)
def _P_to_m_matrix(degree: int) -> DomainMatrix:
    """Rows: P_lam in the monomial basis, read off P_{lam|degree}."""
    basis = partitions_of(degree)
    n = max(degree, 1)
    rows = []
    for lam in basis:
        poly = macdonald_P(lam, n)
        rows.append([poly.get(mu.padded(n), QT_DOMAIN.zero) for mu in basis])
    logger.debug("built P->m transition at degree %d", degree)
    return DomainMatrix(rows, (len(basis), len(basis)), QT_DOMAIN)


@lru_cache(maxsize=None)
def _m_to_P_matrix(degree: int) -> DomainMatrix:
    return _P_to_m_matrix(degree).inv()


def _transform(coefficients: Mapping[MIPartition, object], degree: int, matrix: DomainMatrix) -> dict:
    basis = partitions_of(degree)
    matrix = matrix.convert_to(QT_DOMAIN)
    row = DomainMatrix([[QT_DOMAIN.convert(coefficients.get(lam, 0)) for lam in basis]], (1, len(basis)), QT_DOMAIN)
    image = (row * matrix).to_list()[0]
    return {lam: c for lam, c in zip(basis, image) if c}


@dataclass(eq=False)
class MISymFunc:
    """A symmetric function of degree at most ``degree_bound`` in one of four bases."""

    basis: MIBasis
    degree_bound: int
    terms: dict[MIPartition, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for lam in self.terms:
            if lam.size > self.degree_bound:
                raise MIDegreeMismatch(f"{lam} exceeds the degree bound {self.degree_bound}")
        self.terms = {lam: QT_DOMAIN.convert(c) for lam, c in self.terms.items() if c}

    @classmethod
    def single(cls, basis: MIBasis, lam: MIPartition, degree_bound: int | None = None) -> "MISymFunc":
        return cls(basis, lam.size if degree_bound is None else degree_bound, {lam: QT_FIELD(1)})

    @classmethod
    def from_symmetric_poly(cls, poly: PolyElement, degree_bound: int | None = None) -> "MISymFunc":
        """Monomial expansion of a symmetric polynomial, read from its sorted monomials.

        Raises:
            MIAlgebraError: ``poly`` is not symmetric.
        """
        terms = {}
        for monom, coeff in poly.items():
            key = tuple(sorted(monom, reverse=True))
            if poly.get(key, QT_DOMAIN.zero) != coeff:
                raise MIAlgebraError(f"polynomial is not symmetric at exponent {monom}")
            if key == monom:
                for arrangement in multiset_permutations(list(monom)):
                    if poly.get(tuple(arrangement), QT_DOMAIN.zero) != coeff:
                        raise MIAlgebraError(f"polynomial is not symmetric at exponent {tuple(arrangement)}")
                terms[_monomial_key(monom)] = coeff
        bound = max((lam.size for lam in terms), default=0) if degree_bound is None else degree_bound
        return cls(MIBasis.MONOMIAL, bound, terms)

    def degrees(self) -> list[int]:
        return sorted({lam.size for lam in self.terms})

    def component(self, degree: int) -> dict[MIPartition, object]:
        return {lam: c for lam, c in self.terms.items() if lam.size == degree}

    def _to_monomial(self) -> "MISymFunc":
        if self.basis == MIBasis.MONOMIAL:
            return self
        terms: dict[MIPartition, object] = {}
        for degree in self.degrees():
            coefficients = self.component(degree)
            match self.basis:
                case MIBasis.POWER_SUM:
                    terms.update(_transform(coefficients, degree, _p_to_m_matrix(degree)))
                case MIBasis.MACDONALD_P:
                    terms.update(_transform(coefficients, degree, _P_to_m_matrix(degree)))
                case MIBasis.MACDONALD_Q:
                    scaled = {lam: c * b_total_factored(lam).scalar for lam, c in coefficients.items()}
                    terms.update(_transform(scaled, degree, _P_to_m_matrix(degree)))
        return MISymFunc(MIBasis.MONOMIAL, self.degree_bound, terms)

    def to_basis(self, basis: MIBasis) -> "MISymFunc":
        """Exact conversion, degree by degree."""
        if basis == self.basis:
            return self
        monomial = self._to_monomial()
        if basis == MIBasis.MONOMIAL:
            return monomial
        terms: dict[MIPartition, object] = {}
        for degree in monomial.degrees():
            coefficients = monomial.component(degree)
            match basis:
                case MIBasis.POWER_SUM:
                    terms.update(_transform(coefficients, degree, _m_to_p_matrix(degree)))
                case MIBasis.MACDONALD_P:
                    terms.update(_transform(coefficients, degree, _m_to_P_matrix(degree)))
                case MIBasis.MACDONALD_Q:
                    in_P = _transform(coefficients, degree, _m_to_P_matrix(degree))
                    terms.update({lam: c / b_total_factored(lam).scalar for lam, c in in_P.items()})
        return MISymFunc(basis, self.degree_bound, terms)

    def with_degree_bound(self, degree_bound: int) -> "MISymFunc":
        """Truncate (or relabel upwards) the degree bound."""
        kept = {lam: c for lam, c in self.terms.items() if lam.size <= degree_bound}
        return MISymFunc(self.basis, degree_bound, kept)

    def _combine(self, other: "MISymFunc", sign: int) -> "MISymFunc":
        if self.degree_bound != other.degree_bound:
            raise MIDegreeMismatch(f"degree bounds {self.degree_bound} and {other.degree_bound} differ")
        other = other.to_basis(self.basis)
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            terms[lam] = terms.get(lam, QT_DOMAIN.zero) + sign * c
        return MISymFunc(self.basis, self.degree_bound, terms)

    def __add__(self, other: "MISymFunc") -> "MISymFunc":
        return self._combine(other, 1)

    def __sub__(self, other: "MISymFunc") -> "MISymFunc":
        return self._combine(other, -1)

    def __mul__(self, other) -> "MISymFunc":
        """Scalar multiple, or the product (computed in the power-sum basis)."""
        if not isinstance(other, MISymFunc):
            scalar = QT_DOMAIN.convert(other)
            return MISymFunc(self.basis, self.degree_bound, {lam: c * scalar for lam, c in self.terms.items()})
        bound = min(self.degree_bound, other.degree_bound)
        left = self.to_basis(MIBasis.POWER_SUM).terms
        right = other.to_basis(MIBasis.POWER_SUM).terms
        terms: dict[MIPartition, object] = {}
        for lam, a in left.items():
            for mu, b in right.items():
                if lam.size + mu.size > bound:
                    continue
                key = MIPartition.from_parts(sorted(lam.parts + mu.parts, reverse=True))
                terms[key] = terms.get(key, QT_DOMAIN.zero) + a * b
        return MISymFunc(MIBasis.POWER_SUM, bound, terms)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MISymFunc):
            return NotImplemented
        if self.degree_bound != other.degree_bound:
            return False
        return self.terms == other.to_basis(self.basis).terms

    def is_zero(self) -> bool:
        return not self.terms

    def restrict(self, n: int) -> PolyElement:
        """Image in n variables."""
        R = x_ring(n)
        result = R.zero
        for lam, c in self._to_monomial().terms.items():
            if lam.length > n:
                continue
            for monom in multiset_permutations(list(lam.padded(n))):
                result += R({tuple(monom): c})
        return result

    def to_json(self) -> dict:
        ordered = sorted(self.terms.items(), key=lambda item: (item[0].size, [-p for p in item[0].parts]))
        return {
            "basis": self.basis.value,
            "degree_bound": self.degree_bound,
            "terms": [{"partition": lam.to_json(), "coef": scalar_to_json(c)} for lam, c in ordered],
        }


def scalar_product(f: MISymFunc, g: MISymFunc):
    """The (q,t) scalar product, evaluated in the power-sum basis.

    Raises:
        MIDegreeMismatch: The degree bounds differ.
    """
    if f.degree_bound != g.degree_bound:
        raise MIDegreeMismatch(f"degree bounds {f.degree_bound} and {g.degree_bound} differ")
    left = f.to_basis(MIBasis.POWER_SUM).terms
    right = g.to_basis(MIBasis.POWER_SUM).terms
    total = QT_FIELD(0)
    for lam, c in left.items():
        if lam in right:
            total += c * right[lam] * power_sum_norm(lam)
    return total


@lru_cache(maxsize=None)
def _monomial_gram(degree: int) -> DomainMatrix:
    """Gram matrix <m_lam, m_mu> at one degree."""
    transition = _m_to_p_matrix(degree).convert_to(QT_DOMAIN)
    basis = partitions_of(degree)
    norms = DomainMatrix.diag([power_sum_norm(lam) for lam in basis], QT_DOMAIN, (len(basis), len(basis)))
    return transition * norms * transition.transpose()


def gram_schmidt_oracle(mu: MIPartition, degree_bound: int | None = None) -> MISymFunc:
    """P_mu as the orthogonal unitriangular element m_mu + lower, solved from the scalar product.

    No tableaux are used: the coefficients below mu in lexicographic order solve
    the linear system <P_mu, m_rho> = 0 for every rho below mu.
    """
    degree_bound = mu.size if degree_bound is None else degree_bound
    if mu.size > degree_bound:
        raise MIDegreeMismatch(f"{mu} exceeds the degree bound {degree_bound}")
    basis = partitions_of(mu.size)
    position = basis.index(mu)
    lower = list(range(position + 1, len(basis)))
    terms = {mu: QT_FIELD(1)}
    if lower:
        gram = _monomial_gram(mu.size).to_list()
        k = len(lower)
        system = DomainMatrix([[gram[r][c] for c in lower] for r in lower], (k, k), QT_DOMAIN)
        rhs = DomainMatrix([[-gram[r][position]] for r in lower], (k, 1), QT_DOMAIN)
        solution = system.lu_solve(rhs).to_list()
        terms.update({basis[index]: value[0] for index, value in zip(lower, solution)})
    return MISymFunc(MIBasis.MONOMIAL, degree_bound, terms)


ONE = MISymFunc.single(MIBasis.MONOMIAL, EMPTY)
