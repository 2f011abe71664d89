"""Identity suites with JSON reports: Cauchy identities, Pieri rules, eigen-relations, degenerations."""

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from sympy import QQ
from sympy.polys.rings import PolyElement

from .mi_duals import (
    dual_by_duality_oracle,
    dual_H,
    dual_H_series,
    dual_H_y_series,
    dual_sigma,
    jack_kernel_factor,
    modified_cauchy_kernel,
    multiparam_schur,
    q_parameters,
    skew_dual_series,
    skew_pieri_coefficient,
    y_space,
)
from .mi_exceptions import MIEvaluationFailed, MIInvalidParameter
from .mi_interpolation import (
    binomial_sides,
    evaluate,
    expand_in_interpolation_basis,
    hl_A,
    hl_A_from_interpolation,
    interp_I,
    interp_I_branching,
    interp_symfunc,
    jack_interp_I,
    node,
    set_last_variable,
    whittaker_A,
)
from .mi_items import (
    MI_A_NAME,
    MI_DEFAULT_POINTS,
    MI_DEFAULT_SEED,
    MI_DESK_PROFILE,
    MI_MAX_DENOMINATOR_HITS,
    MI_U_PREFIX,
    MI_X_PREFIX,
    MI_Y_PREFIX,
    MI_Z_NAME,
    MIBasis,
    MIFamily,
    MIMode,
    MIStatus,
    resolve_threads,
)
from .mi_macdonald import MISymFunc, gram_schmidt_oracle, macdonald_P, macdonald_Q, scalar_product
from .mi_operators import (
    as_point_function,
    build_D,
    build_Dhat,
    coefficient_operators,
    first_disagreement,
    random_point,
)
from .mi_partitions import MIPartition, is_horizontal_strip, partitions_up_to, sort_key, strip_cells
from .mi_rational import MIRationalFn, evaluate_poly
from .mi_scalars import KAPPA, QT_FIELD, Q, T, as_qq, at_t_equals_q, eval_scalar, qt_const, scalar_to_json
from .mi_series import (
    KAPPA_DOMAIN,
    QT_DOMAIN,
    MIBlock,
    MISeries,
    MISeriesSpace,
    change_ring,
    finite_pochhammer,
    pochhammer_factor,
    poly_ring,
    poly_to_json,
    rename_variables,
    single_space,
    var_names,
)

logger = logging.getLogger(__name__)

MICounterexample = dict | None
MICases = Callable[[], Iterator[MICounterexample]]


@dataclass
class MISuiteReport:
    """Outcome of one suite run; failures carry the first offending coefficient pair."""

    suite: str
    params: dict
    status: MIStatus
    counterexample: dict | None = None
    millis: int = 0

    @property
    def passed(self) -> bool:
        return self.status == MIStatus.PASS

    def to_json(self, timing: bool = True) -> dict:
        encoded: dict = {"suite": self.suite, "params": self.params, "status": self.status.value}
        if self.counterexample is not None:
            encoded["counterexample"] = self.counterexample
        if timing:
            encoded["millis"] = self.millis
        return encoded


def _value_json(value) -> object:
    if isinstance(value, PolyElement):
        return poly_to_json(value)
    if hasattr(value, "field") and hasattr(value, "numer"):
        return scalar_to_json(value)
    return str(value)


def _mismatch(case: str, names: Sequence[str], monom: Sequence[int], lhs, rhs) -> dict:
    return {"case": case, "vars": list(names), "monomial": list(monom), "lhs": _value_json(lhs), "rhs": _value_json(rhs)}


def _value_mismatch(case: str, lhs, rhs) -> MICounterexample:
    if lhs == rhs:
        return None
    return {"case": case, "lhs": _value_json(lhs), "rhs": _value_json(rhs)}


def _series_mismatch(case: str, lhs: MISeries, rhs: MISeries) -> MICounterexample:
    found = lhs.first_mismatch(rhs)
    if found is None:
        return None
    monom, a, b = found
    return _mismatch(case, [str(s) for s in lhs.space.meet(rhs.space).ring.symbols], monom, a, b)


def _poly_mismatch(case: str, lhs: PolyElement, rhs: PolyElement) -> MICounterexample:
    rhs = change_ring(rhs, lhs.ring)
    difference = lhs - rhs
    if not difference:
        return None
    monom = min(difference.keys(), key=lambda m: (sum(m), m))
    zero = lhs.ring.domain.zero
    return _mismatch(case, [str(s) for s in lhs.ring.symbols], monom, lhs.get(monom, zero), rhs.get(monom, zero))


def _rational_mismatch(case: str, lhs: MIRationalFn, rhs: MIRationalFn) -> MICounterexample:
    if lhs == rhs:
        return None
    return _poly_mismatch(case, lhs.numerator * rhs.denominator(), rhs.numerator * lhs.denominator())


def _point_mismatch(case: str, lhs, rhs, names, points: int, seed: int, threads: int | None) -> MICounterexample:
    point = first_disagreement(lhs, rhs, names, points, seed, threads)
    if point is None:
        return None
    return {
        "case": case,
        "point": {name: str(value) for name, value in point.items()},
        "lhs": str(as_qq(lhs(point))),
        "rhs": str(as_qq(rhs(point))),
    }


def _run(suite: str, params: dict, cases: MICases) -> MISuiteReport:
    """Run the cases lazily and stop at the first counterexample."""
    start = time.perf_counter()
    counterexample = next((found for found in cases() if found is not None), None)
    millis = int((time.perf_counter() - start) * 1000)
    status = MIStatus.PASS if counterexample is None else MIStatus.FAIL
    logger.info("suite %s %s %s in %d ms", suite, params, status.value, millis)
    return MISuiteReport(suite, params, status, counterexample, millis)


def _lift(function: MIRationalFn, ring) -> MIRationalFn:
    return MIRationalFn(change_ring(function.numerator, ring), function.factors, change_ring(function.extra, ring))


def _poly_at_t_equals_q(poly: PolyElement) -> PolyElement:
    return poly.ring({m: at_t_equals_q(c) for m, c in poly.items()})


def _inverse_names(k: int) -> dict[str, str]:
    return dict(zip(var_names(MI_U_PREFIX, k), var_names(MI_Y_PREFIX, k)))


def _xy_space(n: int, k: int, x_cutoff: int | None, y_cutoff: int, domain=QT_DOMAIN) -> MISeriesSpace:
    return MISeriesSpace([MIBlock(var_names(MI_X_PREFIX, n), x_cutoff), MIBlock(var_names(MI_Y_PREFIX, k), y_cutoff)], domain)


def verify_cauchy_qt(n: int, k: int, x_cutoff: int, u_cutoff: int) -> MISuiteReport:
    """sum_mu I_{mu|n}(x) H~_{mu|k}(u) against the modified Cauchy kernel, as series in (x, 1/u)."""
    if min(n, k) < 1 or min(x_cutoff, u_cutoff) < 0:
        raise MIInvalidParameter("the Cauchy suite needs n, k >= 1 and non-negative cutoffs")
    params = {"n": n, "k": k, "x_cutoff": x_cutoff, "u_cutoff": u_cutoff}

    def cases() -> Iterator[MICounterexample]:
        space = _xy_space(n, k, x_cutoff, u_cutoff)
        y_names = var_names(MI_Y_PREFIX, k)
        lhs = space.zero()
        for mu in partitions_up_to(u_cutoff, min(n, k)):
            lhs = lhs + dual_H_series(mu, space, y_names) * interp_I(mu, n)
        rhs = modified_cauchy_kernel(space, var_names(MI_X_PREFIX, n), y_names, n)
        yield _series_mismatch("interpolation Cauchy identity", lhs, rhs)

    return _run("cauchy", params, cases)


def _one_row_coefficient(m: int):
    """(t;q)_m / (q;q)_m."""
    value = QT_FIELD(1)
    for s in range(m):
        value *= (1 - T * Q**s) / (1 - Q ** (s + 1))
    return value


def verify_one_row_gf(n: int, u_cutoff: int) -> MISuiteReport:
    """Generating function of the one-row interpolation polynomials."""
    params = {"n": n, "u_cutoff": u_cutoff}

    def cases() -> Iterator[MICounterexample]:
        x_names = var_names(MI_X_PREFIX, n)
        space = MISeriesSpace([MIBlock(x_names), MIBlock(("y",), u_cutoff)])
        y = space.gen("y")
        lhs = space.one()
        for m in range(1, u_cutoff + 1):
            term = space.series(y**m * _one_row_coefficient(m))
            for pole in range(1, m + 1):
                term = term / space.series(1 - y * Q ** (-pole))
            lhs = lhs + term * interp_I(MIPartition((m,)), n)
        rhs = space.one()
        for i, x_name in enumerate(x_names, start=1):
            xy = space.gen(x_name) * y
            rhs = rhs * pochhammer_factor(space, xy * T, 1) * pochhammer_factor(space, xy, -1)
            rhs = rhs * pochhammer_factor(space, y * T ** (i - 1), 1) * pochhammer_factor(space, y * T**i, -1)
        yield _series_mismatch("one-row generating function", lhs, rhs)

    return _run("one-row", params, cases)


def verify_skew_pieri(n: int, nu: MIPartition, y_order: int) -> MISuiteReport:
    """I_nu(x) prod_i (x_i y t;q)_inf / (x_i y;q)_inf in the I-basis against c_n(nu, mu; y)."""
    if nu.length > n:
        raise MIInvalidParameter(f"{nu} has more than {n} parts")
    params = {"n": n, "nu": nu.to_json(), "y_order": y_order}

    def cases() -> Iterator[MICounterexample]:
        x_names = var_names(MI_X_PREFIX, n)
        space = MISeriesSpace([MIBlock(x_names), MIBlock(("y",), y_order)])
        y = space.gen("y")
        product = space.series(interp_I(nu, n))
        for x_name in x_names:
            xy = space.gen(x_name) * y
            product = product * pochhammer_factor(space, xy * T, 1) * pochhammer_factor(space, xy, -1)
        coefficients = expand_in_interpolation_basis(product.poly, n)
        y_only = single_space("y", y_order)
        strips = {mu for mu in partitions_up_to(nu.size + y_order, n) if is_horizontal_strip(mu, nu)}
        for mu in sorted(set(coefficients) | strips, key=sort_key):
            found = coefficients.get(mu)
            actual = y_only.series(change_ring(found, y_only.ring)) if found is not None else y_only.zero()
            expected = skew_pieri_coefficient(nu, mu, n, y_only)
            yield _series_mismatch(f"Pieri coefficient of I_{mu} in I_{nu} * kernel", actual, expected)
            if mu in strips:
                stable = expected * pochhammer_factor(y_only, y_only.gen("y") * T**n, -1)
                yield _series_mismatch(f"skew dual {mu}/{nu}", stable, skew_dual_series(mu, nu, y_order, y_only))

    return _run("skew-pieri", params, cases)


def verify_finite_pieri(n: int, m: int, nu: MIPartition) -> MISuiteReport:
    """I_nu(x) prod_i (x_i a; q)_m in the I-basis: support and factorization of each coefficient."""
    if nu.length > n or m < 1:
        raise MIInvalidParameter(f"finite Pieri needs l(nu) <= n and m >= 1, got {nu}, {m}")
    params = {"n": n, "m": m, "nu": nu.to_json()}

    def cases() -> Iterator[MICounterexample]:
        R = poly_ring(var_names(MI_X_PREFIX, n) + (MI_A_NAME,), QT_DOMAIN)
        a = R.gens[-1]
        product = change_ring(interp_I(nu, n), R)
        for x in R.gens[:n]:
            product *= finite_pochhammer(x * a, m)
        coefficients = expand_in_interpolation_basis(product, n)
        A = poly_ring((MI_A_NAME,), QT_DOMAIN)
        a1 = A.gens[0]
        outer = nu.add_rectangle(m, n)
        for mu, coefficient in sorted(coefficients.items(), key=lambda item: sort_key(item[0])):
            if not (mu.contains(nu) and outer.contains(mu)):
                yield _poly_mismatch(f"I_{mu} outside the support", coefficient, A.zero)
                continue
            factor = a1 ** (mu.size - nu.size)
            for box in strip_cells(outer, mu):
                factor *= 1 - a1 * (Q ** (m - box.col) * T ** (box.row - 1))
            quotient, _ = coefficient.div(factor)
            constant = quotient.get((0,), A.domain.zero)
            yield _poly_mismatch(f"factorization of the I_{mu} coefficient", coefficient, factor * constant)
            if mu == nu:
                diagonal = A.one
                for i in range(1, n + 1):
                    diagonal *= finite_pochhammer(a1 * (Q ** (-nu.part(i)) * T ** (i - 1)), m)
                yield _poly_mismatch("diagonal coefficient", coefficient, diagonal)

    return _run("finite-pieri", params, cases)


def _jack_eigen_cases(max_n: int, max_weight: int) -> Iterator[MICounterexample]:
    for n in range(1, max_n + 1):
        D, Dhat = build_D(n, MIFamily.JACK), build_Dhat(n, MIFamily.JACK)
        for mu in partitions_up_to(max_weight, n):
            inter = jack_interp_I(mu, n)
            expected = change_ring(inter, D.ring) * D.eigenvalue(mu)
            yield _poly_mismatch(f"Jack eigen-relation for I_{mu}|{n}", D.apply(inter), expected)
            dual = dual_H(mu, n, MIFamily.JACK)
            expected_dual = _lift(dual, Dhat.ring) * Dhat.eigenvalue(mu)
            yield _rational_mismatch(f"Jack eigen-relation for H~_{mu}|{n}", Dhat.apply_rational(dual), expected_dual)


def _jack_shift_cases(order: int) -> Iterator[MICounterexample]:
    space = MISeriesSpace([MIBlock(("x",)), MIBlock(("y",), order)], KAPPA_DOMAIN)
    x, y = space.gen("x"), space.gen("y")
    kernel = jack_kernel_factor(space, x, "y", order)
    moved_x = jack_kernel_factor(space, x, "y", order, x_shift=-1)
    moved_u = jack_kernel_factor(space, x, "y", order, u_shift=1)
    left = 1 - x * y + y * KAPPA
    yield _series_mismatch("Jack kernel under x -> x - 1", moved_x * left, kernel * (1 - x * y))
    yield _series_mismatch("Jack kernel under u -> u + 1", moved_u * left, kernel * ((1 - x * y) * (1 + y * KAPPA)))


def verify_jack_cauchy(n: int, cutoff: int, eigen_weight: int = 3) -> MISuiteReport:
    """Jack Cauchy identity over Q(kappa), its alternative kernel, shift relations and eigen-relations."""
    params = {"n": n, "cutoff": cutoff}

    def cases() -> Iterator[MICounterexample]:
        x_names, y_names = var_names(MI_X_PREFIX, n), var_names(MI_Y_PREFIX, n)
        space = _xy_space(n, n, cutoff, cutoff, KAPPA_DOMAIN)
        lhs = space.zero()
        for mu in partitions_up_to(cutoff, n):
            lhs = lhs + dual_H_series(mu, space, y_names, MIFamily.JACK) * jack_interp_I(mu, n)
        rhs, alternative = space.one(), space.one()
        for i, x_name in enumerate(x_names, start=1):
            x = space.gen(x_name)
            for y_name in y_names:
                rhs = rhs * jack_kernel_factor(space, x, y_name, cutoff)
                rhs = rhs / jack_kernel_factor(space, -(i - 1) * KAPPA, y_name, cutoff)
                shift = (i - 1) * KAPPA
                alternative = alternative * jack_kernel_factor(space, x, y_name, cutoff, shift, shift)
        yield _series_mismatch("Jack Cauchy identity", lhs, rhs)
        yield _series_mismatch("alternative Jack kernel", alternative, rhs)
        yield from _jack_shift_cases(max(cutoff, 6))
        yield from _jack_eigen_cases(min(n, 2), min(cutoff, eigen_weight))

    return _run("jack", params, cases)


def verify_whittaker(n: int, k: int, cutoff: int) -> MISuiteReport:
    """t = 0 Cauchy identity: sum A^W_mu B^W_mu = prod 1/(x_i y_j; q)_inf * prod (y_j; q)_inf."""
    params = {"n": n, "k": k, "cutoff": cutoff}

    def cases() -> Iterator[MICounterexample]:
        space = _xy_space(n, k, cutoff, cutoff)
        y_names = var_names(MI_Y_PREFIX, k)
        lhs = space.zero()
        for mu in partitions_up_to(cutoff, min(n, k)):
            lhs = lhs + dual_H_series(mu, space, y_names, MIFamily.WHITTAKER) * whittaker_A(mu, n)
        rhs = space.one()
        for y_name in y_names:
            y = space.gen(y_name)
            for x_name in var_names(MI_X_PREFIX, n):
                rhs = rhs * pochhammer_factor(space, space.gen(x_name) * y, -1)
            rhs = rhs * pochhammer_factor(space, y, 1)
        yield _series_mismatch("q-Whittaker Cauchy identity", lhs, rhs)

    return _run("whittaker", params, cases)


def _hl_kernel(space: MISeriesSpace, n: int, x_values: Sequence, t_value) -> MISeries:
    """prod_{i,j} (1 - x_i t y_j) / (1 - x_i y_j) * prod_j (1 - t^{1-n} y_j) / (1 - t y_j)."""
    result = space.one()
    for y in space.gens_of(MI_Y_PREFIX):
        for x in x_values:
            result = result * space.series(1 - y * (x * t_value)) / space.series(1 - y * x)
        result = result * space.series(1 - y * (1 / t_value ** (n - 1))) / space.series(1 - y * t_value)
    return result


def _numeric_series(series: MISeries, space: MISeriesSpace, params: dict) -> MISeries:
    return space.series(space.ring({m: eval_scalar(c, params) for m, c in series.poly.items()}))


def _hl_numeric_case(
    n: int, k: int, order: int, duals: dict, seed: int, index: int
) -> MICounterexample:
    """The HL identity at one seeded (x, t), as a y-series over QQ."""
    rng = random.Random(f"{seed}:{index}")
    x_names = var_names(MI_X_PREFIX, n)
    space = MISeriesSpace([MIBlock(var_names(MI_Y_PREFIX, k), order)], QQ)
    for _ in range(MI_MAX_DENOMINATOR_HITS + 1):
        point = random_point(rng, x_names + ("t",))
        params = {"t": point["t"]}
        try:
            lhs = space.zero()
            for mu, dual in duals.items():
                lhs = lhs + _numeric_series(dual, space, params) * evaluate_poly(hl_A(mu, n), point, params)
            rhs = _hl_kernel(space, n, [point[name] for name in x_names], point["t"])
        except ZeroDivisionError:
            continue
        found = _series_mismatch("Hall-Littlewood identity at a seeded point", lhs, rhs)
        if found is not None:
            found["point"] = {name: str(value) for name, value in point.items()}
        return found
    raise MIEvaluationFailed(f"more than {MI_MAX_DENOMINATOR_HITS} consecutive denominator hits")


def verify_hl(
    n: int,
    k: int,
    order: int,
    seed: int = MI_DEFAULT_SEED,
    points: int = MI_DEFAULT_POINTS,
    threads: int | None = None,
) -> MISuiteReport:
    """q = 0 Cauchy identity, symbolically through ``order`` and numerically through n k + k."""
    params = {"n": n, "k": k, "order": order, "seed": seed, "points": points}

    def cases() -> Iterator[MICounterexample]:
        space = _xy_space(n, k, None, order)
        y_names = var_names(MI_Y_PREFIX, k)
        lhs = space.zero()
        for mu in partitions_up_to(order, min(n, k)):
            lhs = lhs + dual_H_series(mu, space, y_names, MIFamily.HL) * hl_A(mu, n)
        rhs = _hl_kernel(space, n, [space.gen(name) for name in var_names(MI_X_PREFIX, n)], T)
        yield _series_mismatch("Hall-Littlewood identity", lhs, rhs)
        numeric_order = n * k + k
        symbolic = y_space(k, numeric_order)
        duals = {mu: dual_H_series(mu, symbolic, y_names, MIFamily.HL) for mu in partitions_up_to(numeric_order, min(n, k))}
        workers = resolve_threads(threads)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(lambda index: _hl_numeric_case(n, k, numeric_order, duals, seed, index), range(points))

    return _run("hl", params, cases)


def verify_biorthogonality(degree_bound: int) -> MISuiteReport:
    """<I_mu, H_nu> = delta for |mu|, |nu| <= degree_bound, H_nu lifted from its restriction."""
    params = {"degree_bound": degree_bound}

    def cases() -> Iterator[MICounterexample]:
        k = max(degree_bound, 1)
        y_names = var_names(MI_Y_PREFIX, k)
        space = y_space(k, degree_bound)
        correction = space.one()
        for name in y_names:
            correction = correction * pochhammer_factor(space, space.gen(name), -1)
        shapes = partitions_up_to(degree_bound)
        duals = {}
        for nu in shapes:
            series = dual_H_series(nu, space, y_names) * correction
            duals[nu] = MISymFunc.from_symmetric_poly(series.poly, degree_bound)
        for mu in shapes:
            inter = interp_symfunc(mu).with_degree_bound(degree_bound)
            for nu in shapes:
                expected = QT_FIELD(1) if mu == nu else QT_FIELD(0)
                yield _value_mismatch(f"<I_{mu}, H_{nu}>", scalar_product(inter, duals[nu]), expected)

    return _run("biorth", params, cases)


def verify_binomial_suite(max_n: int, max_weight: int) -> MISuiteReport:
    """Binomial formula for every l(mu) <= n <= max_n, |mu| <= max_weight."""
    params = {"max_n": max_n, "max_weight": max_weight}

    def cases() -> Iterator[MICounterexample]:
        for n in range(1, max_n + 1):
            for mu in partitions_up_to(max_weight, n):
                lhs, rhs = binomial_sides(mu, n)
                yield _poly_mismatch(f"binomial formula for {mu}|{n}", lhs, rhs)

    return _run("binomial", params, cases)


def _pinned_sequences(n: int, count: int) -> dict[str, tuple]:
    """The three parameter sequences c_0, c_1, ... used for the multiparameter Cauchy identity."""
    return {
        "zero": tuple(QT_FIELD(0) for _ in range(count)),
        "c_m=m": tuple(QT_FIELD(m) for m in range(count)),
        "c_m=2^(n-m-1)": tuple(qt_const(Fraction(2) ** (n - m - 1)) for m in range(count)),
    }


def _tq_cases(max_n: int, max_weight: int) -> Iterator[MICounterexample]:
    for n in range(1, max_n + 1):
        for mu in partitions_up_to(max_weight, n):
            count = mu.part(1) + n - 1
            inter = _poly_at_t_equals_q(interp_I(mu, n))
            yield _poly_mismatch(f"I_{mu}|{n} at t=q", inter, multiparam_schur(mu, n, q_parameters(n, 0, count)))
            c = q_parameters(n, 1, count)
            sigma = dual_sigma(mu, n, c)
            yield _rational_mismatch(f"determinant forms of sigma_{mu}|{n}", sigma, dual_sigma(mu, n, c, "ratio"))
            dual = dual_H(mu, n).substitute_scalars(at_t_equals_q)
            yield _rational_mismatch(f"H~_{mu}|{n} at t=q", dual, sigma)
            if n < 2:
                continue
            for sequence in (c, tuple(Q**j * T for j in range(1, count + 1))):
                limit = dual_sigma(mu, n, sequence).limit_at_infinity(f"{MI_U_PREFIX}{n}")
                if mu.length < n:
                    expected = dual_sigma(mu, n - 1, sequence[1:])
                else:
                    expected = MIRationalFn(poly_ring(var_names(MI_U_PREFIX, n - 1), QT_DOMAIN).zero)
                yield _rational_mismatch(f"sigma_{mu}|{n} as u_{n} -> infinity", limit, expected)


def _one_variable_cauchy(order: int) -> MICounterexample:
    """sum_m (x|c_0..)^m y^m / prod_{k<=m} (1 - c_k y) = (1 - c_0 y) / (1 - x y)."""
    space = MISeriesSpace([MIBlock(("x",)), MIBlock(("y",), order)])
    x, y = space.gen("x"), space.gen("y")
    c = [Q**j * T for j in range(order + 1)]
    lhs = space.zero()
    falling = space.one()
    for m in range(order + 1):
        term = falling * space.series(y**m)
        for j in range(1, m + 1):
            term = term / space.series(1 - y * c[j])
        lhs = lhs + term
        falling = falling * space.series(x - c[m])
    rhs = space.series(1 - y * c[0]) / space.series(1 - x * y)
    return _series_mismatch("one-variable multiparameter Cauchy identity", lhs, rhs)


def _multiparameter_cauchy(n: int, order: int) -> Iterator[MICounterexample]:
    space = _xy_space(n, n, None, order)
    x_names, y_names = var_names(MI_X_PREFIX, n), var_names(MI_Y_PREFIX, n)
    for label, c in _pinned_sequences(n, order + n).items():
        lhs = space.zero()
        for mu in partitions_up_to(order, n):
            sigma = dual_sigma(mu, n, c[1:]).to_series(space, _inverse_names(n))
            lhs = lhs + sigma * multiparam_schur(mu, n, c)
        rhs = space.one()
        for y_name in y_names:
            y = space.gen(y_name)
            for j in range(n):
                rhs = rhs * (1 - y * c[j])
            for x_name in x_names:
                rhs = rhs / space.series(1 - space.gen(x_name) * y)
        yield _series_mismatch(f"multiparameter Cauchy identity, {label}", lhs, rhs)


def _tq_cauchy(order: int) -> Iterator[MICounterexample]:
    """At t = q: sum I H~ = prod_j (y_j;q)_2 / prod (1 - x_i y_j), and the generic kernel agrees."""
    n = 2
    space = _xy_space(n, n, order, order)
    x_names, y_names = var_names(MI_X_PREFIX, n), var_names(MI_Y_PREFIX, n)
    lhs = space.zero()
    for mu in partitions_up_to(order, n):
        dual = dual_H(mu, n).substitute_scalars(at_t_equals_q).to_series(space, _inverse_names(n))
        lhs = lhs + dual * _poly_at_t_equals_q(interp_I(mu, n))
    rhs = space.one()
    for y_name in y_names:
        y = space.gen(y_name)
        rhs = rhs * finite_pochhammer(y, n)
        for x_name in x_names:
            rhs = rhs / space.series(1 - space.gen(x_name) * y)
    yield _series_mismatch("Cauchy identity at t=q", lhs, rhs)
    kernel = modified_cauchy_kernel(space, x_names, y_names, n)
    yield _series_mismatch("kernel at t=q", space.series(_poly_at_t_equals_q(kernel.poly)), rhs)


def verify_tq_determinant(max_n: int, max_weight: int) -> MISuiteReport:
    """The t = q family against multiparameter Schur polynomials and sigma-functions."""
    params = {"max_n": max_n, "max_weight": max_weight}

    def cases() -> Iterator[MICounterexample]:
        yield from _tq_cases(max_n, max_weight)
        order = min(max_weight, 4)
        yield _one_variable_cauchy(6)
        for n in range(1, min(max_n, 2) + 1):
            yield from _multiparameter_cauchy(n, order)
        if max_n >= 2:
            yield from _tq_cauchy(order)

    return _run("tq-determinant", params, cases)


def _eigen_at_t_equals_q(D, mu: MIPartition) -> PolyElement:
    """prod_i (1 + q^{mu_i + 1 - i} z)."""
    R = D.ring
    z = R.gens[-1]
    result = R.one
    for i in range(1, D.size + 1):
        result *= 1 + z * Q ** (mu.part(i) + 1 - i)
    return result


def _symbolic_eigen_cases(n: int, max_weight: int) -> Iterator[MICounterexample]:
    D, Dhat = build_D(n), build_Dhat(n)
    D_tq, Dhat_tq = D.map_scalars(at_t_equals_q), Dhat.map_scalars(at_t_equals_q)
    Dhat_y = build_Dhat(n, inverse_coordinates=True)
    for mu in partitions_up_to(max_weight, n):
        inter = interp_I(mu, n)
        expected = change_ring(inter, D.ring) * D.eigenvalue(mu)
        yield _poly_mismatch(f"D on I_{mu}|{n}", D.apply(inter), expected)
        dual = dual_H(mu, n)
        yield _rational_mismatch(f"D^ on H~_{mu}|{n}", Dhat.apply_rational(dual), _lift(dual, Dhat.ring) * Dhat.eigenvalue(mu))
        inter_tq = _poly_at_t_equals_q(inter)
        expected_tq = change_ring(inter_tq, D.ring) * _eigen_at_t_equals_q(D, mu)
        yield _poly_mismatch(f"D at t=q on I_{mu}|{n}", D_tq.apply(inter_tq), expected_tq)
        dual_tq = dual.substitute_scalars(at_t_equals_q)
        expected_dual = _lift(dual_tq, Dhat.ring) * _eigen_at_t_equals_q(Dhat, mu)
        yield _rational_mismatch(f"D^ at t=q on H~_{mu}|{n}", Dhat_tq.apply_rational(dual_tq), expected_dual)
        space = MISeriesSpace([MIBlock(Dhat_y.names, mu.size + 2), MIBlock((MI_Z_NAME,))])
        series = dual_H_series(mu, space, Dhat_y.names)
        cleared = series * Dhat_y.eigenvalue(mu) * Dhat_y.denominator
        yield _series_mismatch(f"D^ in 1/u coordinates on H~_{mu}|{n}", Dhat_y.apply_series(series), cleared)


def _evaluated_eigen_cases(
    n: int, max_weight: int, seed: int, points: int, threads: int | None
) -> Iterator[MICounterexample]:
    D, Dhat = build_D(n), build_Dhat(n)
    for mu in partitions_up_to(max_weight, n):
        for operator, function in ((D, interp_I(mu, n)), (Dhat, dual_H(mu, n))):
            target = as_point_function(function)
            eigen = operator.eigenvalue(mu)
            names = operator.names + (MI_Z_NAME, "q", "t")
            yield _point_mismatch(
                f"{'D' if operator is D else 'D^'} on {mu}|{n} at seeded points",
                lambda point, op=operator, f=target: op.apply_at(f, point, point),
                lambda point, e=eigen, f=target: evaluate_poly(e, point, point) * as_qq(f(point)),
                names,
                points,
                seed,
                threads,
            )


def _commutativity_cases(degree: int) -> Iterator[MICounterexample]:
    parts = coefficient_operators(build_D(2))
    for lam in partitions_up_to(degree, 2):
        f = MISymFunc.single(MIBasis.MONOMIAL, lam).restrict(2)
        for r in range(1, 3):
            for s in range(r + 1, 3):
                one_way = parts[r].apply(parts[s].apply(f))
                other_way = parts[s].apply(parts[r].apply(f))
                yield _poly_mismatch(f"D^{r} D^{s} on m_{lam}", one_way, other_way)


def verify_eigen(
    max_n: int,
    max_weight: int,
    mode: MIMode = MIMode.SYMBOLIC,
    seed: int = MI_DEFAULT_SEED,
    points: int = MI_DEFAULT_POINTS,
    threads: int | None = None,
) -> MISuiteReport:
    """Eigen-relations of D and D^; symbolic up to two variables, seeded evaluation beyond."""
    params = {"max_n": max_n, "max_weight": max_weight, "mode": mode.value, "seed": seed, "points": points}

    def cases() -> Iterator[MICounterexample]:
        for n in range(1, max_n + 1):
            if n <= 2 and mode == MIMode.SYMBOLIC:
                yield from _symbolic_eigen_cases(n, max_weight)
            else:
                yield from _evaluated_eigen_cases(n, min(max_weight, 3), seed, points, threads)
        if max_n >= 2:
            yield from _commutativity_cases(3)

    return _run("eigen", params, cases)


def verify_oracle(max_n: int, max_weight: int) -> MISuiteReport:
    """Tableau P_{mu|n} against the Gram-Schmidt construction."""
    params = {"max_n": max_n, "max_weight": max_weight}

    def cases() -> Iterator[MICounterexample]:
        for n in range(1, max_n + 1):
            for mu in partitions_up_to(max_weight, n):
                yield _poly_mismatch(f"P_{mu}|{n}", macdonald_P(mu, n), gram_schmidt_oracle(mu).restrict(n))

    return _run("oracle", params, cases)


def verify_vanishing(max_n: int, max_weight: int, extra: int = 3) -> MISuiteReport:
    """I_mu vanishes at X(lam) for |lam| <= |mu|, lam != mu, and whenever mu is not inside lam."""
    params = {"max_n": max_n, "max_weight": max_weight, "extra": extra}

    def cases() -> Iterator[MICounterexample]:
        zero = QT_FIELD(0)
        for n in range(1, max_n + 1):
            for mu in partitions_up_to(max_weight, n):
                poly = interp_I(mu, n)
                for lam in partitions_up_to(mu.size + extra, n):
                    value = evaluate(poly, node(lam, n))
                    if lam == mu:
                        if not value:
                            yield {"case": f"I_{mu}|{n} at its own node", "lhs": _value_json(value), "rhs": "nonzero"}
                    elif lam.size <= mu.size or not lam.contains(mu):
                        yield _value_mismatch(f"I_{mu}|{n} at X({lam})", value, zero)

    return _run("vanishing", params, cases)


def _drop_last_variable(series: MISeries, target_names: Sequence[str]) -> PolyElement:
    """The series with its last variable set to zero, in the ring of ``target_names``."""
    kept = {m: c for m, c in series.poly.items() if not m[-1]}
    return change_ring(series.space.ring(kept), poly_ring(tuple(target_names), series.space.domain))


def verify_stability(max_n: int, max_weight: int, hl_weight: int = 4) -> MISuiteReport:
    """Quasi-stability of I and A^HL, the branching rule, A^HL from I, and B^HL stability."""
    params = {"max_n": max_n, "max_weight": max_weight, "hl_weight": hl_weight}

    def cases() -> Iterator[MICounterexample]:
        for n in range(1, max_n + 1):
            for mu in partitions_up_to(max_weight, n):
                yield _poly_mismatch(f"branching rule for I_{mu}|{n}", interp_I_branching(mu, n), interp_I(mu, n))
                if mu.size <= hl_weight:
                    yield _poly_mismatch(f"A^HL_{mu}|{n} from I", hl_A_from_interpolation(mu, n), hl_A(mu, n))
                if n < 2:
                    continue
                reduced = set_last_variable(interp_I(mu, n), T ** (n - 1))
                yield _poly_mismatch(f"I_{mu}|{n} at x_{n} = t^{n - 1}", reduced, interp_I(mu, n - 1))
                if mu.size <= hl_weight:
                    reduced = set_last_variable(hl_A(mu, n), T ** (1 - n))
                    yield _poly_mismatch(f"A^HL_{mu}|{n} at x_{n} = t^{1 - n}", reduced, hl_A(mu, n - 1))
                    order = mu.size + 1
                    full = dual_H_y_series(mu, n, order, MIFamily.HL)
                    smaller = dual_H_y_series(mu, n - 1, order, MIFamily.HL)
                    restricted = _drop_last_variable(full, var_names(MI_Y_PREFIX, n - 1))
                    yield _poly_mismatch(f"B^HL_{mu}|{n} at y_{n} = 0", restricted, smaller.poly)

    return _run("stability", params, cases)


def verify_duality(max_k: int, degree_cutoff: int) -> MISuiteReport:
    """Chain-sum duals against the linear-algebra dual basis, and their lowest-degree terms."""
    params = {"max_k": max_k, "degree_cutoff": degree_cutoff}

    def cases() -> Iterator[MICounterexample]:
        for k in range(1, max_k + 1):
            y_names = var_names(MI_Y_PREFIX, k)
            space = y_space(k, degree_cutoff)
            correction = space.one()
            for name in y_names:
                correction = correction * pochhammer_factor(space, space.gen(name), -1)
            for nu in partitions_up_to(degree_cutoff):
                modified = dual_H_y_series(nu, k, degree_cutoff)
                yield _series_mismatch(f"H_{nu}|{k}", modified * correction, dual_by_duality_oracle(nu, k, degree_cutoff))
                lowest = space.ring({m: c for m, c in modified.poly.items() if sum(m) <= nu.size})
                top = rename_variables(macdonald_Q(nu, k), y_names) if nu.length <= k else space.ring.zero
                yield _poly_mismatch(f"lowest terms of H~_{nu}|{k}", lowest, top)

    return _run("duality", params, cases)


def verify_kernel(n: int, order: int) -> MISuiteReport:
    """D and D^ agree on the modified Cauchy kernel, as series in 1/u with x and z polynomial."""
    params = {"n": n, "order": order}

    def cases() -> Iterator[MICounterexample]:
        D, Dhat = build_D(n), build_Dhat(n, inverse_coordinates=True)
        x_names, y_names = var_names(MI_X_PREFIX, n), var_names(MI_Y_PREFIX, n)
        space = MISeriesSpace([MIBlock(x_names), MIBlock(y_names, order), MIBlock((MI_Z_NAME,))])
        kernel = modified_cauchy_kernel(space, x_names, y_names, n)
        lhs = D.apply_series(kernel) * Dhat.denominator
        rhs = Dhat.apply_series(kernel) * D.denominator
        yield _series_mismatch("D and D^ on the kernel", lhs, rhs)

    return _run("kernel", params, cases)


@dataclass(frozen=True)
class MISuiteConfig:
    """Common suite flags."""

    n: int = 2
    k: int | None = None
    cutoff: int = 3
    seed: int = MI_DEFAULT_SEED
    points: int = MI_DEFAULT_POINTS
    mode: MIMode = MIMode.SYMBOLIC
    threads: int | None = None

    @property
    def k_value(self) -> int:
        return self.n if self.k is None else self.k


SUITES: dict[str, Callable[[MISuiteConfig], list[MISuiteReport]]] = {
    "cauchy": lambda c: [verify_cauchy_qt(c.n, c.k_value, c.cutoff, c.cutoff)],
    "one-row": lambda c: [verify_one_row_gf(c.n, c.cutoff)],
    "skew-pieri": lambda c: [verify_skew_pieri(c.n, nu, c.cutoff) for nu in partitions_up_to(2, c.n)],
    "finite-pieri": lambda c: [
        verify_finite_pieri(c.n, m, nu) for m in (1, 2) for nu in partitions_up_to(min(2, c.cutoff), c.n)
    ],
    "eigen": lambda c: [verify_eigen(c.n, c.cutoff, c.mode, c.seed, c.points, c.threads)],
    "jack": lambda c: [verify_jack_cauchy(c.n, c.cutoff)],
    "whittaker": lambda c: [verify_whittaker(c.n, c.k_value, c.cutoff)],
    "hl": lambda c: [verify_hl(c.n, c.k_value, c.cutoff, c.seed, c.points, c.threads)],
    "biorth": lambda c: [verify_biorthogonality(c.cutoff)],
    "binomial": lambda c: [verify_binomial_suite(c.n, c.cutoff)],
    "tq-determinant": lambda c: [verify_tq_determinant(c.n, c.cutoff)],
    "oracle": lambda c: [verify_oracle(c.n, c.cutoff)],
    "vanishing": lambda c: [verify_vanishing(c.n, c.cutoff)],
    "stability": lambda c: [verify_stability(c.n, c.cutoff)],
    "duality": lambda c: [verify_duality(c.k_value, c.cutoff)],
    "kernel": lambda c: [verify_kernel(c.n, c.cutoff)],
}

# Desk-scale parameters of every suite.
DESK_PLAN: dict[str, Callable[[MISuiteConfig], list[MISuiteReport]]] = {
    "cauchy": lambda c: [verify_cauchy_qt(n, k, 5, 5) for n, k in ((1, 1), (1, 2), (2, 2))],
    "one-row": lambda c: [verify_one_row_gf(n, 5) for n in (1, 2, 3)],
    "skew-pieri": lambda c: [verify_skew_pieri(n, nu, 4) for n in (1, 2) for nu in partitions_up_to(2, n)],
    "finite-pieri": lambda c: [
        verify_finite_pieri(n, m, nu) for n in (1, 2) for m in (1, 2) for nu in partitions_up_to(2, n)
    ],
    "eigen": lambda c: [verify_eigen(3, 4, MIMode.SYMBOLIC, c.seed, max(c.points, 3), c.threads)],
    "jack": lambda c: [verify_jack_cauchy(2, 4)],
    "whittaker": lambda c: [verify_whittaker(2, 2, 4)],
    "hl": lambda c: [verify_hl(2, 2, 4, c.seed, c.points, c.threads)],
    "biorth": lambda c: [verify_biorthogonality(4)],
    "binomial": lambda c: [verify_binomial_suite(2, 4)],
    "tq-determinant": lambda c: [verify_tq_determinant(3, 4)],
    "oracle": lambda c: [verify_oracle(3, 5)],
    "vanishing": lambda c: [verify_vanishing(3, 5)],
    "stability": lambda c: [verify_stability(3, 5)],
    "duality": lambda c: [verify_duality(3, 4)],
    "kernel": lambda c: [verify_kernel(2, 4)],
}


def run_suites(names: Sequence[str], config: MISuiteConfig, profile: str | None = None) -> list[MISuiteReport]:
    """Run the named suites ("all" for every suite); reports come back in suite order.

    Raises:
        MIInvalidParameter: Unknown suite or profile.
    """
    if profile not in (None, MI_DESK_PROFILE):
        raise MIInvalidParameter(f"unknown profile {profile!r}")
    plan = DESK_PLAN if profile == MI_DESK_PROFILE else SUITES
    selected = list(plan) if "all" in names else list(names)
    unknown = [name for name in selected if name not in plan]
    if unknown:
        raise MIInvalidParameter(f"unknown suites {unknown}")
    workers = resolve_threads(config.threads)
    logger.debug("running %d suites on %d threads", len(selected), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        batches = list(pool.map(lambda name: plan[name](config), selected))
    return [report for batch in batches for report in batch]

