"""Exact scalars: the fields Q(q,t) and Q(kappa), and factored (1 - q^a t^b) products.

Scalars are sympy ``FracElement`` objects. The fraction fields are built over
ZZ so that every element is kept with integer and monomial content removed,
which keeps coefficient growth bounded during long tableau sums.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from sympy import QQ, ZZ
from sympy.polys.fields import FracElement, field

from .mi_exceptions import MIAlgebraError, MIDivisionByZero

QT_FIELD, Q, T = field("q,t", ZZ)
KAPPA_FIELD, KAPPA = field("kappa", ZZ)

ScalarQT = FracElement
ScalarKappa = FracElement


def qt_const(value: int | Fraction, target=QT_FIELD) -> FracElement:
    """Embed an integer or rational number into a fraction field.

    Args:
        value (int | Fraction): The number.
        target: The fraction field (defaults to Q(q,t)).

    Returns:
        FracElement: The constant.
    """
    value = Fraction(value)
    return target((int(value.numerator), int(value.denominator)))


def scalars_equal(a: FracElement, b: FracElement) -> bool:
    """Cross-multiplied equality a.numer * b.denom == b.numer * a.denom."""
    return a.numer * b.denom == b.numer * a.denom


def scalar_arith(a: FracElement, b: FracElement | None, op: str) -> FracElement | bool:
    """Exact field arithmetic.

    Args:
        a (FracElement): Left operand.
        b (FracElement | None): Right operand, ignored for ``neg``.
        op (str): One of ``add``, ``sub``, ``mul``, ``div``, ``neg``, ``eq``.

    Returns:
        FracElement | bool: The result, a boolean for ``eq``.

    Raises:
        MIDivisionByZero: ``div`` by a zero scalar.
        ValueError: Unknown operation.
    """
    match op:
        case "add":
            return a + b
        case "sub":
            return a - b
        case "mul":
            return a * b
        case "div":
            if not b:
                raise MIDivisionByZero(f"division of {a} by zero")
            return a / b
        case "neg":
            return -a
        case "eq":
            return scalars_equal(a, b)
    raise ValueError(f"unknown scalar operation {op!r}")


def _poly_terms_json(poly) -> list[list]:
    terms = sorted(poly.items(), reverse=True)
    return [[*monom, str(coeff)] for monom, coeff in terms]


def scalar_to_json(s: FracElement) -> dict:
    """JSON form ``{"num": [[e_q, e_t, "coeff"], ...], "den": [...]}``."""
    return {"num": _poly_terms_json(s.numer), "den": _poly_terms_json(s.denom)}


def _eval_ground_poly(poly, point: tuple) -> QQ:
    total = QQ(0)
    for monom, coeff in poly.items():
        term = QQ(int(coeff))
        for value, power in zip(point, monom):
            if power:
                term *= value**power
        total += term
    return total


def as_qq(value) -> QQ:
    """Coerce an int, Fraction or ground-domain rational into QQ."""
    if isinstance(value, int):
        return QQ(value)
    return QQ(int(value.numerator), int(value.denominator))


def eval_scalar(s: FracElement, params: Mapping[str, object]) -> QQ:
    """Evaluate a scalar at rational parameter values.

    Args:
        s (FracElement): The scalar, in Q(q,t) or Q(kappa).
        params (Mapping[str, object]): Values keyed by parameter name.

    Returns:
        QQ: The exact value.

    Raises:
        MIDivisionByZero: The denominator vanishes at ``params``.
    """
    names = [str(symbol) for symbol in s.field.symbols]
    point = tuple(as_qq(params[name]) if name in params else QQ(0) for name in names)
    denominator = _eval_ground_poly(s.denom, point)
    if not denominator:
        raise MIDivisionByZero(f"{s} has a pole at {dict(zip(names, point))}")
    return _eval_ground_poly(s.numer, point) / denominator


def _substitute_ground_poly(poly, images: tuple, target):
    total = target(0)
    for monom, coeff in poly.items():
        term = target(int(coeff))
        for image, power in zip(images, monom):
            if power:
                term *= image**power
        total += term
    return total


def specialize(s: FracElement, images: Mapping[str, FracElement], target=QT_FIELD) -> FracElement:
    """Substitute field elements for the parameters of a scalar.

    Args:
        s (FracElement): The scalar.
        images (Mapping[str, FracElement]): Image of each parameter; missing
            parameters map to themselves (when the target has them).
        target: Field of the result.

    Returns:
        FracElement: The specialized scalar.

    Raises:
        MIDivisionByZero: The denominator specializes to zero.
    """
    names = [str(symbol) for symbol in s.field.symbols]
    target_names = [str(symbol) for symbol in target.symbols]
    point = tuple(images[name] if name in images else target.gens[target_names.index(name)] for name in names)
    denominator = _substitute_ground_poly(s.denom, point, target)
    if not denominator:
        raise MIDivisionByZero(f"{s} has a pole under {images}")
    return _substitute_ground_poly(s.numer, point, target) / denominator


def at_t_equals_q(s: ScalarQT) -> ScalarQT:
    """The specialization t = q."""
    return specialize(s, {"t": Q})


def invert_parameters(s: ScalarQT) -> ScalarQT:
    """The substitution (q, t) -> (1/q, 1/t)."""
    return specialize(s, {"q": 1 / Q, "t": 1 / T})


@dataclass(frozen=True)
class MICycloFactored:
    """A rational unit times a product of factors (1 - q^a t^b)^e.

    ``factors`` holds sorted triples (a, b, e) with e != 0 and (a, b) != (0, 0).
    """

    unit: Fraction = Fraction(1)
    factors: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        for a, b, exponent in self.factors:
            if a == 0 and b == 0:
                raise MIAlgebraError("the factor 1 - q^0 t^0 vanishes")
            if exponent == 0:
                raise MIAlgebraError("factor stored with exponent 0")

    @classmethod
    def from_counter(cls, unit: Fraction, counter: Counter) -> "MICycloFactored":
        """Build from a Counter keyed by (a, b), dropping cancelled factors."""
        factors = tuple(sorted((a, b, e) for (a, b), e in counter.items() if e))
        return cls(Fraction(unit), factors)

    @classmethod
    def binomial(cls, a: int, b: int, exponent: int = 1) -> "MICycloFactored":
        """The single factor (1 - q^a t^b)^exponent."""
        return cls.from_counter(Fraction(1), Counter({(a, b): exponent}))

    def _counter(self) -> Counter:
        return Counter({(a, b): e for a, b, e in self.factors})

    def __mul__(self, other: "MICycloFactored") -> "MICycloFactored":
        counter = self._counter()
        counter.update(other._counter())
        return MICycloFactored.from_counter(self.unit * other.unit, counter)

    def __truediv__(self, other: "MICycloFactored") -> "MICycloFactored":
        return self * other.inverse()

    def inverse(self) -> "MICycloFactored":
        if not self.unit:
            raise MIDivisionByZero("inverse of a zero unit")
        return MICycloFactored(1 / self.unit, tuple((a, b, -e) for a, b, e in self.factors))

    @property
    def is_one(self) -> bool:
        return self.unit == 1 and not self.factors

    def _expand(self, factor_value, target) -> FracElement:
        numerator = qt_const(self.unit, target)
        denominator = target(1)
        for a, b, exponent in self.factors:
            value = factor_value(a, b)
            if exponent > 0:
                numerator *= value**exponent
            else:
                denominator *= value ** (-exponent)
        if not denominator:
            raise MIDivisionByZero(f"{self} has a vanishing factor under this specialization")
        return numerator / denominator

    @cached_property
    def scalar(self) -> ScalarQT:
        """Expansion in Q(q,t)."""
        return self._expand(lambda a, b: 1 - Q**a * T**b, QT_FIELD)

    def to_kappa(self) -> ScalarKappa:
        """Jack rewrite: every (1 - q^a t^b) becomes (a + b*kappa).

        Raises:
            MIAlgebraError: The factor count is unbalanced, so the rewrite is not a limit.
        """
        if sum(e for _, _, e in self.factors) != 0:
            raise MIAlgebraError(f"{self} has unbalanced factors, no Jack rewrite")
        return self._expand(lambda a, b: a + b * KAPPA, KAPPA_FIELD)

    def at_t_zero(self) -> ScalarQT:
        """Specialization t = 0 (q-Whittaker)."""

        def value(a: int, b: int) -> ScalarQT:
            if b < 0:
                raise MIDivisionByZero(f"factor (1 - q^{a} t^{b}) has a pole at t = 0")
            return QT_FIELD(1) if b > 0 else 1 - Q**a

        return self._expand(value, QT_FIELD)

    def at_q_zero(self) -> ScalarQT:
        """Specialization q = 0 (Hall-Littlewood)."""

        def value(a: int, b: int) -> ScalarQT:
            if a < 0:
                raise MIDivisionByZero(f"factor (1 - q^{a} t^{b}) has a pole at q = 0")
            return QT_FIELD(1) if a > 0 else 1 - T**b

        return self._expand(value, QT_FIELD)

    def __str__(self) -> str:
        body = "".join(f"(1-q^{a}t^{b})^{e}" for a, b, e in self.factors)
        return f"{self.unit}*{body}" if body else str(self.unit)


MI_CYCLO_ONE = MICycloFactored()
