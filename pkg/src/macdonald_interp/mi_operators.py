"""z-generating difference operators, their eigenvalues, and seeded identity checks."""

import itertools
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from sympy import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement

from .mi_exceptions import (
    MIAlgebraError,
    MIDenominatorNotCleared,
    MIDimensionMismatch,
    MIDivisionByZero,
    MIEvaluationFailed,
    MIInvalidParameter,
)
from .mi_items import (
    MI_COORDINATE_RANGE,
    MI_DEFAULT_POINTS,
    MI_DEFAULT_SEED,
    MI_MAX_DENOMINATOR_HITS,
    MI_U_PREFIX,
    MI_X_PREFIX,
    MI_Y_PREFIX,
    MI_Z_NAME,
    MIFamily,
    MIShift,
    resolve_threads,
)
from .mi_partitions import MIPartition
from .mi_rational import MIRationalFn, evaluate_poly
from .mi_scalars import KAPPA, Q, T, as_qq, eval_scalar
from .mi_series import KAPPA_DOMAIN, QT_DOMAIN, MISeries, change_ring, poly_ring, var_names

logger = logging.getLogger(__name__)

MISubset = frozenset

# A rational-valued function of a point (variables and parameters by name).
MIPointFunction = Callable[[Mapping[str, object]], object]


@dataclass(frozen=True)
class MIDiffOperator:
    """sum_A (numerators[A] / denominator) * T_A with one term per subset A of the variables.

    The numerators live in the ring of ``names`` plus z; the denominator is the
    common one, ``prod`` of the single-variable denominators times the Vandermonde.
    """

    family: MIFamily
    names: tuple[str, ...]
    shift: MIShift
    numerators: dict
    denominator: PolyElement

    @property
    def ring(self):
        return self.denominator.ring

    @property
    def size(self) -> int:
        return len(self.names)

    def subsets(self) -> list[MISubset]:
        return sorted(self.numerators, key=lambda a: (len(a), sorted(a)))

    def coefficient(self, subset: Sequence[int]) -> MIRationalFn:
        """C_A as a rational function; subset entries are 0-based positions."""
        return MIRationalFn(self.numerators[MISubset(subset)], extra=self.denominator)

    def _shift_scale(self):
        match self.shift:
            case MIShift.Q_FORWARD:
                return Q
            case MIShift.Q_BACKWARD:
                return 1 / Q
        return None

    def _shift_offset(self) -> int:
        return -1 if self.shift == MIShift.ADD_BACKWARD else 1

    def _shift_poly(self, poly: PolyElement, subset: MISubset) -> PolyElement:
        if not subset:
            return poly
        R = poly.ring
        symbols = [str(s) for s in R.symbols]
        indices = [symbols.index(self.names[a]) for a in subset]
        scale = self._shift_scale()
        if scale is not None:
            scale = R.domain.convert(scale)
            return R({m: c * scale ** sum(m[i] for i in indices) for m, c in poly.items()})
        offset = self._shift_offset()
        return poly.compose([(R.gens[i], R.gens[i] + offset) for i in indices])

    def cleared_apply(self, poly: PolyElement) -> PolyElement:
        """sum_A numerators[A] * T_A(poly), without dividing by the denominator."""
        poly = change_ring(poly, self.ring)
        total = self.ring.zero
        for subset in self.subsets():
            total += self.numerators[subset] * self._shift_poly(poly, subset)
        return total

    def apply(self, poly: PolyElement) -> PolyElement:
        """The operator applied to a polynomial; the result lives in the ring with z.

        Raises:
            MIDenominatorNotCleared: The subset denominators do not cancel
                (the input is not symmetric).
        """
        try:
            return self.cleared_apply(poly).exquo(self.denominator)
        except ExactQuotientFailed as e:
            raise MIDenominatorNotCleared("operator denominators do not cancel on this input") from e

    def apply_rational(self, function: MIRationalFn) -> MIRationalFn:
        """The operator applied to a rational function of the same variables."""
        R = self.ring
        lifted = MIRationalFn(change_ring(function.numerator, R), function.factors, change_ring(function.extra, R))
        total = MIRationalFn(R.zero)
        for subset in self.subsets():
            shifted = lifted
            for a in subset:
                if self._shift_scale() is not None:
                    shifted = shifted.shift(self.names[a], scale=self._shift_scale())
                else:
                    shifted = shifted.shift(self.names[a], offset=self._shift_offset())
            total = total + shifted * MIRationalFn(self.numerators[subset], extra=self.denominator)
        return total

    def apply_series(self, series: MISeries) -> MISeries:
        """sum_A numerators[A] * T_A(series): the cleared action on a truncated series.

        Only multiplicative shifts act on series; the space must contain the
        operator variables and z.
        """
        scale = self._shift_scale()
        if scale is None:
            raise MIInvalidParameter("additive shifts do not act on truncated series")
        space = series.space
        total = space.zero()
        for subset in self.subsets():
            shifted = series
            for a in subset:
                shifted = shifted.scale_variable(self.names[a], scale)
            total = total + shifted * change_ring(self.numerators[subset], space.ring)
        return total

    def component(self, r: int) -> "MIDiffOperator":
        """The coefficient operator of z^r."""
        R = self.ring
        z_index = R.ngens - 1
        numerators = {}
        for subset, numerator in self.numerators.items():
            numerators[subset] = R({m[:z_index] + (0,): c for m, c in numerator.items() if m[z_index] == r})
        return MIDiffOperator(self.family, self.names, self.shift, numerators, self.denominator)

    def map_scalars(self, convert: Callable) -> "MIDiffOperator":
        """The operator with ``convert`` applied to every coefficient, e.g. t -> q."""
        R = self.ring

        def mapped(poly: PolyElement) -> PolyElement:
            return R({m: convert(c) for m, c in poly.items()})

        numerators = {subset: mapped(numerator) for subset, numerator in self.numerators.items()}
        return MIDiffOperator(self.family, self.names, self.shift, numerators, mapped(self.denominator))

    def eigenvalue(self, mu: MIPartition) -> PolyElement:
        """prod_i (1 + q^{mu_i} t^{1-i} z), or prod_i (mu_i + (1-i) kappa + z) for Jack."""
        R = self.ring
        z = R.gens[-1]
        result = R.one
        for i in range(1, self.size + 1):
            if self.family == MIFamily.JACK:
                result *= z + R.domain.convert(mu.part(i) + (1 - i) * KAPPA)
            else:
                result *= 1 + z * R.domain.convert(Q ** mu.part(i) * T ** (1 - i))
        return result

    def apply_at(
        self, function: MIPointFunction, point: Mapping[str, object], params: Mapping[str, object]
    ) -> object:
        """Numeric value of the operator applied to ``function`` at ``point`` (z included)."""
        denominator = evaluate_poly(self.denominator, point, params)
        if not denominator:
            raise MIDivisionByZero(f"operator denominator vanishes at {dict(point)}")
        scale = self._shift_scale()
        total = QQ(0)
        for subset in self.subsets():
            shifted = dict(point)
            for a in subset:
                name = self.names[a]
                if scale is not None:
                    shifted[name] = as_qq(point[name]) * eval_scalar(scale, params)
                else:
                    shifted[name] = as_qq(point[name]) + self._shift_offset()
            total += evaluate_poly(self.numerators[subset], point, params) * as_qq(function(shifted))
        return total / denominator


def _vandermonde(gens: Sequence[PolyElement], one: PolyElement) -> PolyElement:
    result = one
    for i, j in itertools.combinations(range(len(gens)), 2):
        result *= gens[i] - gens[j]
    return result


@dataclass(frozen=True)
class _CoefficientRule:
    """Ingredients of C_A: factors for a in A, b not in A, pairs (a, b), and a scalar in |A|."""

    inside: Callable
    outside: Callable
    pair: Callable
    scalar: Callable
    divide_by_gens: bool


def _qt_rules(n: int) -> dict[str, _CoefficientRule]:
    return {
        "D": _CoefficientRule(
            inside=lambda x, z: x * T ** (1 - n) - 1,
            outside=lambda x, z: x + z,
            pair=lambda xa, xb: xa * T - xb,
            scalar=lambda k, z: z**k * T ** (k * (k - 1) // 2),
            divide_by_gens=True,
        ),
        "Dhat": _CoefficientRule(
            inside=lambda u, z: u - 1,
            outside=lambda u, z: u + z,
            pair=lambda ua, ub: ua * (1 / T) - ub,
            scalar=lambda k, z: z**k * T ** (-(k * (k - 1) // 2)),
            divide_by_gens=True,
        ),
        "Dhat_y": _CoefficientRule(
            inside=lambda y, z: 1 - y,
            outside=lambda y, z: 1 + z * y,
            pair=lambda ya, yb: ya - yb * (1 / T),
            scalar=lambda k, z: z**k * T ** (-(k * (k - 1) // 2)),
            divide_by_gens=False,
        ),
    }


def _jack_rules(n: int) -> dict[str, _CoefficientRule]:
    return {
        "D": _CoefficientRule(
            inside=lambda x, z: -(x + (n - 1) * KAPPA),
            outside=lambda x, z: x + z,
            pair=lambda xa, xb: xa - xb - KAPPA,
            scalar=lambda k, z: 1,
            divide_by_gens=False,
        ),
        "Dhat": _CoefficientRule(
            inside=lambda u, z: -u,
            outside=lambda u, z: u + z,
            pair=lambda ua, ub: ua - ub + KAPPA,
            scalar=lambda k, z: 1,
            divide_by_gens=False,
        ),
    }


def _assemble(
    family: MIFamily, names: tuple[str, ...], shift: MIShift, rule: _CoefficientRule, domain
) -> MIDiffOperator:
    R = poly_ring(names + (MI_Z_NAME,), domain)
    gens, z = R.gens[:-1], R.gens[-1]
    n = len(names)
    vandermonde = _vandermonde(gens, R.one)
    base = R.one
    if rule.divide_by_gens:
        for g in gens:
            base *= g
    numerators = {}
    for k in range(n + 1):
        for subset in itertools.combinations(range(n), k):
            inside = set(subset)
            numerator = R.one * rule.scalar(k, z)
            pair_denominator = R.one
            for i in range(n):
                numerator *= rule.inside(gens[i], z) if i in inside else rule.outside(gens[i], z)
            for a in subset:
                for b in range(n):
                    if b not in inside:
                        numerator *= rule.pair(gens[a], gens[b])
                        pair_denominator *= gens[a] - gens[b]
            numerators[MISubset(subset)] = numerator * vandermonde.exquo(pair_denominator)
    operator = MIDiffOperator(family, names, shift, numerators, base * vandermonde)
    _check_normalization(operator, rule, gens, z)
    logger.debug("built %s operator on %s with %d terms", family.value, names, len(numerators))
    return operator


def _check_normalization(operator: MIDiffOperator, rule: _CoefficientRule, gens, z) -> None:
    """The A = ∅ coefficient must be prod over variables of the outside factor, over the base."""
    expected = operator.ring.one
    for g in gens:
        expected *= rule.outside(g, z)
    vandermonde = _vandermonde(gens, operator.ring.one)
    if operator.numerators[MISubset()] != expected * vandermonde:
        raise MIAlgebraError("the empty-subset coefficient is not normalized")


def _family_rules(n: int, family: MIFamily) -> tuple[dict[str, _CoefficientRule], object]:
    match family:
        case MIFamily.QT:
            return _qt_rules(n), QT_DOMAIN
        case MIFamily.JACK:
            return _jack_rules(n), KAPPA_DOMAIN
    raise MIInvalidParameter(f"no difference operator for the {family.value} family")


def build_D(n: int, family: MIFamily = MIFamily.QT, prefix: str = MI_X_PREFIX) -> MIDiffOperator:
    """D_n(z) acting on x_1..x_n: shifts x -> q x (x -> x - 1 for Jack).

    Raises:
        MIInvalidParameter: n < 1 or a family without operators.
    """
    if n < 1:
        raise MIInvalidParameter(f"operators need at least one variable, got {n}")
    rules, domain = _family_rules(n, family)
    shift = MIShift.ADD_BACKWARD if family == MIFamily.JACK else MIShift.Q_FORWARD
    return _assemble(family, var_names(prefix, n), shift, rules["D"], domain)


def build_Dhat(n: int, family: MIFamily = MIFamily.QT, inverse_coordinates: bool = False) -> MIDiffOperator:
    """D^_n(z) acting on u_1..u_n: shifts u -> u / q (u -> u + 1 for Jack).

    With ``inverse_coordinates`` the (q,t) operator is written in y_j = 1/u_j,
    acts by y -> q y and has only the Vandermonde of y as denominator, so it
    applies to truncated series in y.

    Raises:
        MIInvalidParameter: n < 1, a family without operators, or inverse
            coordinates requested for Jack.
    """
    if n < 1:
        raise MIInvalidParameter(f"operators need at least one variable, got {n}")
    rules, domain = _family_rules(n, family)
    if inverse_coordinates:
        if family != MIFamily.QT:
            raise MIInvalidParameter("inverse coordinates exist for the (q,t) operator only")
        return _assemble(family, var_names(MI_Y_PREFIX, n), MIShift.Q_FORWARD, rules["Dhat_y"], domain)
    shift = MIShift.ADD_FORWARD if family == MIFamily.JACK else MIShift.Q_BACKWARD
    return _assemble(family, var_names(MI_U_PREFIX, n), shift, rules["Dhat"], domain)


def coefficient_operators(operator: MIDiffOperator) -> list[MIDiffOperator]:
    """D^0, D^1, ..., D^n from the z-expansion."""
    return [operator.component(r) for r in range(operator.size + 1)]


def random_point(rng: random.Random, names: Sequence[str]) -> dict[str, object]:
    """Rationals with numerators in [-R, R] and denominators in [1, R]."""
    return {
        name: QQ(rng.randint(-MI_COORDINATE_RANGE, MI_COORDINATE_RANGE), rng.randint(1, MI_COORDINATE_RANGE))
        for name in names
    }


def _compare_at_point(
    lhs: MIPointFunction, rhs: MIPointFunction, names: Sequence[str], seed: int, index: int
) -> dict[str, object] | None:
    """Evaluate both sides at the index-th seeded point; the point on disagreement, else None."""
    rng = random.Random(f"{seed}:{index}")
    for _ in range(MI_MAX_DENOMINATOR_HITS + 1):
        point = random_point(rng, names)
        try:
            left, right = as_qq(lhs(point)), as_qq(rhs(point))
        except ZeroDivisionError:
            continue
        return None if left == right else point
    raise MIEvaluationFailed(f"more than {MI_MAX_DENOMINATOR_HITS} consecutive denominator hits")


def first_disagreement(
    lhs: MIPointFunction,
    rhs: MIPointFunction,
    names: Sequence[str],
    num_points: int = MI_DEFAULT_POINTS,
    seed: int = MI_DEFAULT_SEED,
    threads: int | None = None,
) -> dict[str, object] | None:
    """First seeded point where the two sides differ, or None.

    ``names`` lists every variable and parameter the sides read (for example
    x1, x2, z, q, t). Each point has its own generator derived from the seed,
    so the outcome does not depend on the thread count.

    Raises:
        MIEvaluationFailed: A point could not be placed off the pole set.
    """
    workers = resolve_threads(threads)
    indices = range(num_points)
    if workers == 1:
        results = [_compare_at_point(lhs, rhs, names, seed, k) for k in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda k: _compare_at_point(lhs, rhs, names, seed, k), indices))
    return next((point for point in results if point is not None), None)


def rational_identity_check(
    lhs: MIPointFunction,
    rhs: MIPointFunction,
    names: Sequence[str],
    num_points: int = MI_DEFAULT_POINTS,
    seed: int = MI_DEFAULT_SEED,
    threads: int | None = None,
) -> bool:
    """True iff both sides agree exactly at ``num_points`` seeded rational points."""
    return first_disagreement(lhs, rhs, names, num_points, seed, threads) is None


def as_point_function(function: MIRationalFn | PolyElement) -> MIPointFunction:
    """Wrap a rational function or polynomial as a function of a point holding variables and parameters."""
    if isinstance(function, MIRationalFn):
        return lambda point: function.evaluate(point, point)
    if isinstance(function, PolyElement):
        return lambda point: evaluate_poly(function, point, point)
    raise MIDimensionMismatch(f"cannot evaluate {type(function).__name__}")
