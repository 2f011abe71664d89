"""Rational functions with an explicitly factored denominator, and exact point evaluation."""

import logging
from collections import Counter
from typing import Mapping

from sympy import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement

from .mi_exceptions import MIAlgebraError, MIDenominatorNotCleared, MIDimensionMismatch, MIDivisionByZero
from .mi_scalars import as_qq, eval_scalar, scalar_to_json
from .mi_series import MISeries, MISeriesSpace, change_ring, poly_to_json, poly_ring

logger = logging.getLogger(__name__)

LinearFactor = tuple[str, object]


def _symbols(ring) -> list[str]:
    return [str(symbol) for symbol in ring.symbols]


def evaluate_poly(poly: PolyElement, point: Mapping[str, object], params: Mapping[str, object]):
    """Exact value of a polynomial with scalar coefficients at rational values.

    Args:
        poly (PolyElement): The polynomial.
        point (Mapping[str, object]): Values of the ring variables, by name.
        params (Mapping[str, object]): Values of the scalar parameters (q, t, kappa).

    Returns:
        QQ: The value.

    Raises:
        MIDimensionMismatch: A ring variable has no value.
    """
    names = _symbols(poly.ring)
    missing = [name for name in names if name not in point]
    if missing:
        raise MIDimensionMismatch(f"no value for variables {missing}")
    values = [as_qq(point[name]) for name in names]
    total = QQ(0)
    for monom, coeff in poly.items():
        term = eval_scalar(coeff, params) if hasattr(coeff, "field") else as_qq(coeff)
        for value, power in zip(values, monom):
            if power:
                term *= value**power
        total += term
    return total


class MIRationalFn:
    """numerator / (prod over linear factors (var - c)^mult * extra)."""

    __slots__ = ("numerator", "factors", "extra")

    def __init__(self, numerator: PolyElement, factors: Mapping[LinearFactor, int] | None = None, extra=None) -> None:
        """Initialize a rational function.

        Args:
            numerator (PolyElement): Numerator polynomial.
            factors (Mapping[LinearFactor, int] | None): Multiplicity of each factor (name - c).
            extra (PolyElement | None): Optional general denominator factor.

        Returns:
            None
        """
        self.numerator = numerator
        self.factors = Counter({key: m for key, m in (factors or {}).items() if m})
        R = numerator.ring
        self.extra = R.one if extra is None else change_ring(extra, R)
        if not self.extra:
            raise MIDivisionByZero("zero denominator factor")
        names = _symbols(R)
        for name, _ in self.factors:
            if name not in names:
                raise MIDimensionMismatch(f"factor variable {name} is not in {R}")

    @property
    def ring(self):
        return self.numerator.ring

    @classmethod
    def constant(cls, ring, value) -> "MIRationalFn":
        return cls(ring(value))

    def _factor_poly(self, key: LinearFactor) -> PolyElement:
        name, c = key
        R = self.ring
        return R.gens[_symbols(R).index(name)] - R.domain.convert(c)

    def denominator(self) -> PolyElement:
        """The expanded denominator."""
        result = self.extra
        for key, mult in sorted(self.factors.items(), key=_factor_order):
            result *= self._factor_poly(key) ** mult
        return result

    def _with_factors(self, factors: Counter) -> PolyElement:
        """Numerator over the larger common denominator ``factors`` (times own extra)."""
        numerator = self.numerator
        for key, mult in factors.items():
            missing = mult - self.factors.get(key, 0)
            if missing:
                numerator *= self._factor_poly(key) ** missing
        return numerator

    def __add__(self, other) -> "MIRationalFn":
        if not isinstance(other, MIRationalFn):
            other = MIRationalFn(self.ring(other))
        if other.ring != self.ring:
            raise MIDimensionMismatch("rational functions over different rings")
        common = self.factors | other.factors
        left = self._with_factors(common)
        right = other._with_factors(common)
        if self.extra == other.extra:
            return MIRationalFn(left + right, common, self.extra)
        return MIRationalFn(left * other.extra + right * self.extra, common, self.extra * other.extra)

    __radd__ = __add__

    def __neg__(self) -> "MIRationalFn":
        return MIRationalFn(-self.numerator, self.factors, self.extra)

    def __sub__(self, other) -> "MIRationalFn":
        if not isinstance(other, MIRationalFn):
            other = MIRationalFn(self.ring(other))
        return self + (-other)

    def __mul__(self, other) -> "MIRationalFn":
        if isinstance(other, MIRationalFn):
            factors = self.factors + other.factors
            return MIRationalFn(self.numerator * other.numerator, factors, self.extra * other.extra)
        if isinstance(other, PolyElement):
            return MIRationalFn(self.numerator * change_ring(other, self.ring), self.factors, self.extra)
        return MIRationalFn(self.numerator * self.ring.domain.convert(other), self.factors, self.extra)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        """Cross-multiplied equality of numerators and denominators."""
        if not isinstance(other, MIRationalFn):
            return NotImplemented
        if self.factors == other.factors and self.extra == other.extra:
            return self.numerator == other.numerator
        return self.numerator * other.denominator() == other.numerator * self.denominator()

    def __hash__(self) -> int:
        """Leading exponent and leading coefficient of numerator over denominator.

        Both are unchanged by a common factor, so equal functions hash equal
        whatever their factoring.
        """
        if not self.numerator:
            return hash((self.ring, 0))
        denominator = self.denominator()
        exponent = tuple(a - b for a, b in zip(self.numerator.LM, denominator.LM))
        ratio = self.ring.domain.quo(self.numerator.LC, denominator.LC)
        return hash((self.ring, exponent, ratio))

    def __repr__(self) -> str:
        return f"MIRationalFn(({self.numerator}) / ({self.denominator()}))"

    def is_zero(self) -> bool:
        return not self.numerator

    def as_polynomial(self) -> PolyElement:
        """Exact quotient numerator / denominator.

        Raises:
            MIDenominatorNotCleared: The denominator does not divide the numerator.
        """
        try:
            return self.numerator.exquo(self.denominator())
        except ExactQuotientFailed as e:
            raise MIDenominatorNotCleared(f"denominator of {self!r} does not clear") from e

    def cancel_linear_factors(self) -> "MIRationalFn":
        """Remove linear factors that divide the numerator."""
        numerator = self.numerator
        factors = Counter(self.factors)
        for key in sorted(self.factors, key=_factor_order):
            factor = self._factor_poly(key)
            while factors[key]:
                quotient, remainder = numerator.div(factor)
                if remainder:
                    break
                numerator = quotient
                factors[key] -= 1
        return MIRationalFn(numerator, factors, self.extra)

    def shift(self, name: str, scale=None, offset=None) -> "MIRationalFn":
        """Substitute name -> scale * name, or name -> name + offset."""
        R = self.ring
        index = _symbols(R).index(name)
        gen = R.gens[index]
        if scale is not None:
            scale = R.domain.convert(scale)
            numerator = self.numerator.compose(gen, gen * scale)
            extra = self.extra.compose(gen, gen * scale)
        else:
            offset = R.domain.convert(offset)
            numerator = self.numerator.compose(gen, gen + offset)
            extra = self.extra.compose(gen, gen + offset)
        factors: Counter = Counter()
        for (var, c), mult in self.factors.items():
            if var != name:
                factors[(var, c)] += mult
            elif scale is not None:
                # (s u - c) = s (u - c/s)
                factors[(var, c / scale)] += mult
                numerator = numerator * (1 / scale) ** mult
            else:
                factors[(var, c - offset)] += mult
        return MIRationalFn(numerator, factors, extra)

    def substitute_scalars(self, convert) -> "MIRationalFn":
        """Apply ``convert`` to every scalar (coefficients and factor constants)."""
        R = self.ring
        numerator = R({m: convert(c) for m, c in self.numerator.items()})
        extra = R({m: convert(c) for m, c in self.extra.items()})
        factors = Counter({(name, R.domain.convert(convert(c))): m for (name, c), m in self.factors.items()})
        return MIRationalFn(numerator, factors, extra)

    def evaluate(self, point: Mapping[str, object], params: Mapping[str, object]):
        """Exact value at rational coordinates.

        Raises:
            MIDivisionByZero: The point lies on the pole set.
        """
        denominator = evaluate_poly(self.extra, point, params)
        for (name, c), mult in self.factors.items():
            value = as_qq(point[name]) - (eval_scalar(c, params) if hasattr(c, "field") else as_qq(c))
            denominator *= value**mult
        if not denominator:
            raise MIDivisionByZero(f"pole of {self!r} at {dict(point)}")
        return evaluate_poly(self.numerator, point, params) / denominator

    def limit_at_infinity(self, name: str) -> "MIRationalFn":
        """Limit as ``name`` tends to infinity, in the ring without ``name``.

        Raises:
            MIAlgebraError: The function grows in ``name``.
        """
        R = self.ring
        index = _symbols(R).index(name)
        den_degree = sum(m for (var, _), m in self.factors.items() if var == name) + self.extra.degree(R.gens[index])
        num_degree = self.numerator.degree(R.gens[index]) if self.numerator else -1
        if num_degree > den_degree:
            raise MIAlgebraError(f"function grows as {name} tends to infinity")
        names = tuple(n for n in _symbols(R) if n != name)
        target = poly_ring(names, R.domain)

        def leading(poly: PolyElement, degree: int) -> PolyElement:
            top = {m[:index] + (0,) + m[index + 1 :]: c for m, c in poly.items() if m[index] == degree}
            return change_ring(R(top), target)

        extra_degree = self.extra.degree(R.gens[index])
        factors = Counter({(var, c): m for (var, c), m in self.factors.items() if var != name})
        if num_degree < den_degree:
            return MIRationalFn(target.zero, factors)
        return MIRationalFn(leading(self.numerator, den_degree), factors, leading(self.extra, extra_degree))

    def to_series(self, space: MISeriesSpace, inverse_names: Mapping[str, str]) -> MISeries:
        """Expansion in y = 1/u for the variables listed in ``inverse_names`` (u-name -> y-name).

        Requires the extra factor to be a constant and the function to have
        non-positive degree in each inverted variable.
        """
        if not self.extra.is_ground:
            raise MIAlgebraError("a general denominator factor has no y-expansion here")
        R = self.ring
        names = _symbols(R)
        y_index = {u: names.index(u) for u in inverse_names}
        shift = Counter()
        for (var, _), mult in self.factors.items():
            shift[var] += mult
        result_terms = {}
        for monom, coeff in self.numerator.items():
            exponents = {}
            for name, value in zip(names, monom):
                if name in y_index:
                    power = shift[name] - value
                    if power < 0:
                        raise MIAlgebraError(f"positive degree in {name}, no series in 1/{name}")
                    exponents[inverse_names[name]] = power
                elif value:
                    exponents[name] = value
            result_terms[tuple(sorted(exponents.items()))] = coeff
        ring = space.ring
        target_names = _symbols(ring)
        expansion = ring.zero
        for key, coeff in result_terms.items():
            exps = [0] * ring.ngens
            for name, power in key:
                exps[target_names.index(name)] = power
            expansion += ring({tuple(exps): ring.domain.convert(coeff)})
        series = space.series(expansion) * (1 / self.extra.LC)
        for (var, c), mult in sorted(self.factors.items(), key=_factor_order):
            y = space.gen(inverse_names[var])
            # 1/(u - c) = y/(1 - c y); the y has been absorbed above
            geometric = space.series(1 - y * ring.domain.convert(c)).inverse()
            for _ in range(mult):
                series = series * geometric
        return series

    def to_json(self) -> dict:
        names = _symbols(self.ring)
        den_factors = []
        for (name, c), mult in sorted(self.factors.items(), key=_factor_order):
            entry: dict = {"var": names.index(name) + 1}
            q_exp = _q_exponent(c)
            if q_exp is not None:
                entry["q_exp"] = q_exp
            else:
                entry["value"] = scalar_to_json(c)
            entry["mult"] = mult
            den_factors.append(entry)
        encoded = {"num": poly_to_json(self.numerator), "den_factors": den_factors}
        if self.extra != self.ring.one:
            encoded["den_extra"] = poly_to_json(self.extra)
        return encoded


def _factor_order(item) -> tuple:
    key = item[0] if isinstance(item[0], tuple) else item
    name, c = key
    return (name, str(c))


def _q_exponent(c) -> int | None:
    """e when c == q**e exactly, else None."""
    numer, denom = c.numer, c.denom
    if len(numer) != 1 or len(denom) != 1:
        return None
    (n_monom, n_coeff), (d_monom, d_coeff) = next(iter(numer.items())), next(iter(denom.items()))
    if n_coeff != 1 or d_coeff != 1 or len(n_monom) != 2 or n_monom[1] or d_monom[1]:
        return None
    return n_monom[0] - d_monom[0]
