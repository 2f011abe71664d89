"""Sparse polynomials and block-truncated power series over the scalar fields."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from sympy.polys.monomials import monomial_mul
from sympy.polys.ring_series import rs_exp
from sympy.polys.rings import PolyElement, PolyRing, ring

from .mi_exceptions import MIAlgebraError, MIDimensionMismatch
from .mi_scalars import KAPPA_FIELD, Q, QT_FIELD, scalar_to_json

logger = logging.getLogger(__name__)

QT_DOMAIN = QT_FIELD.to_domain()
KAPPA_DOMAIN = KAPPA_FIELD.to_domain()


@lru_cache(maxsize=None)
def poly_ring(names: tuple[str, ...], domain=QT_DOMAIN) -> PolyRing:
    """Cached polynomial ring with the given generator names."""
    return ring(",".join(names), domain)[0]


def var_names(prefix: str, count: int) -> tuple[str, ...]:
    """``(prefix1, ..., prefix<count>)``."""
    return tuple(f"{prefix}{i}" for i in range(1, count + 1))


def poly_to_json(poly: PolyElement, cutoff: int | None = None) -> dict:
    """JSON form ``{"vars": [...], "cutoff": D?, "terms": [{"exp": [...], "coef": ...}]}``."""
    encoded: dict = {"vars": [str(symbol) for symbol in poly.ring.symbols]}
    if cutoff is not None:
        encoded["cutoff"] = cutoff
    encoded["terms"] = [
        {"exp": list(monom), "coef": scalar_to_json(coeff)} for monom, coeff in sorted(poly.items(), reverse=True)
    ]
    return encoded


def change_ring(poly: PolyElement, target: PolyRing) -> PolyElement:
    """Move a polynomial into a ring whose generators include all of its generators.

    Raises:
        MIDimensionMismatch: A generator that carries a nonzero exponent is missing from ``target``.
    """
    if poly.ring == target:
        return poly
    source = [str(symbol) for symbol in poly.ring.symbols]
    names = [str(symbol) for symbol in target.symbols]
    positions = []
    for index, name in enumerate(source):
        if name in names:
            positions.append((index, names.index(name)))
        elif any(monom[index] for monom in poly.keys()):
            raise MIDimensionMismatch(f"variable {name} is not present in {target}")
    moved = target.zero
    for monom, coeff in poly.items():
        exponents = [0] * target.ngens
        for old, new in positions:
            exponents[new] = monom[old]
        moved[tuple(exponents)] = target.domain.convert(coeff)
    return moved


@dataclass(frozen=True)
class MIBlock:
    """A group of series variables truncated jointly at total degree ``cutoff``.

    A ``None`` cutoff marks a polynomial block, never truncated.
    """

    names: tuple[str, ...]
    cutoff: int | None = None


class MISeriesSpace:
    """Ring of polynomials in several variable blocks with per-block degree truncation."""

    def __init__(self, blocks: Sequence[MIBlock], domain=QT_DOMAIN) -> None:
        """Initialize the space.

        Args:
            blocks (Sequence[MIBlock]): The variable blocks, in generator order.
            domain: Coefficient domain of the underlying ring.

        Returns:
            None
        """
        self.blocks = tuple(blocks)
        self.domain = domain
        names = tuple(name for block in self.blocks for name in block.names)
        if len(set(names)) != len(names):
            raise MIDimensionMismatch(f"repeated variable names in {names}")
        self.ring = poly_ring(names, domain)
        self._bounds = []
        start = 0
        for block in self.blocks:
            stop = start + len(block.names)
            if block.cutoff is not None:
                self._bounds.append((start, stop, block.cutoff))
            start = stop

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MISeriesSpace) and self.blocks == other.blocks and self.domain == other.domain

    def __hash__(self) -> int:
        return hash((self.blocks, self.domain))

    def gen(self, name: str) -> PolyElement:
        return self.ring.gens[[str(symbol) for symbol in self.ring.symbols].index(name)]

    def gens_of(self, prefix: str) -> list[PolyElement]:
        """Generators of the block whose names start with ``prefix``, in order."""
        return [self.gen(name) for block in self.blocks for name in block.names if name.startswith(prefix)]

    def within(self, monom: tuple[int, ...]) -> bool:
        return all(sum(monom[start:stop]) <= cutoff for start, stop, cutoff in self._bounds)

    def truncate(self, poly: PolyElement) -> PolyElement:
        poly = change_ring(poly, self.ring)
        if all(self.within(monom) for monom in poly.keys()):
            return poly
        return self.ring({monom: coeff for monom, coeff in poly.items() if self.within(monom)})

    def mul(self, a: PolyElement, b: PolyElement) -> PolyElement:
        """Product of two polynomials, truncated term by term."""
        product = self.ring.zero
        get = product.get
        items2 = list(b.items())
        for exp1, v1 in a.items():
            for exp2, v2 in items2:
                exp = monomial_mul(exp1, exp2)
                if self.within(exp):
                    product[exp] = get(exp, 0) + v1 * v2
        product.strip_zero()
        return product

    def meet(self, other: "MISeriesSpace") -> "MISeriesSpace":
        """Space with the same variables and the smaller cutoff in every block."""
        if self == other:
            return self
        if [b.names for b in self.blocks] != [b.names for b in other.blocks] or self.domain != other.domain:
            raise MIDimensionMismatch("series live in different variable spaces")
        blocks = []
        for mine, theirs in zip(self.blocks, other.blocks):
            cutoffs = [c for c in (mine.cutoff, theirs.cutoff) if c is not None]
            blocks.append(MIBlock(mine.names, min(cutoffs) if cutoffs else None))
        return MISeriesSpace(blocks, self.domain)

    def series(self, value) -> "MISeries":
        """Embed a polynomial, scalar or integer."""
        if isinstance(value, PolyElement):
            return MISeries(self, self.truncate(value))
        return MISeries(self, self.ring(value))

    def one(self) -> "MISeries":
        return MISeries(self, self.ring.one)

    def zero(self) -> "MISeries":
        return MISeries(self, self.ring.zero)


class MISeries:
    """Truncated power series: a polynomial inside an ``MISeriesSpace``."""

    __slots__ = ("space", "poly")

    def __init__(self, space: MISeriesSpace, poly: PolyElement) -> None:
        self.space = space
        self.poly = poly

    def _coerce(self, other) -> tuple[MISeriesSpace, PolyElement, PolyElement]:
        if isinstance(other, MISeries):
            space = self.space.meet(other.space)
            return space, space.truncate(self.poly), space.truncate(other.poly)
        return self.space, self.poly, self.space.series(other).poly

    def __add__(self, other) -> "MISeries":
        space, a, b = self._coerce(other)
        return MISeries(space, a + b)

    __radd__ = __add__

    def __sub__(self, other) -> "MISeries":
        space, a, b = self._coerce(other)
        return MISeries(space, a - b)

    def __rsub__(self, other) -> "MISeries":
        return (-self) + other

    def __neg__(self) -> "MISeries":
        return MISeries(self.space, -self.poly)

    def __mul__(self, other) -> "MISeries":
        if not isinstance(other, (MISeries, PolyElement)):
            return MISeries(self.space, self.poly * self.space.domain.convert(other))
        space, a, b = self._coerce(other)
        return MISeries(space, space.mul(a, b))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MISeries":
        result = self.space.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MISeries):
            return NotImplemented
        _, a, b = self._coerce(other)
        return a == b

    def __hash__(self) -> int:
        return hash(self.poly)

    def __repr__(self) -> str:
        return f"MISeries({self.poly})"

    def __bool__(self) -> bool:
        return bool(self.poly)

    def coefficient(self, monom: tuple[int, ...]):
        return self.poly.get(monom, self.space.domain.zero)

    def constant(self):
        return self.coefficient((0,) * self.space.ring.ngens)

    def inverse(self) -> "MISeries":
        """Multiplicative inverse by the geometric series.

        Raises:
            MIAlgebraError: Zero constant term, or a non-constant term that is
                not small in any truncated block.
        """
        c0 = self.constant()
        if not c0:
            raise MIAlgebraError("series with zero constant term is not invertible")
        zero = (0,) * self.space.ring.ngens
        rest = self.space.ring({m: -c / c0 for m, c in self.poly.items() if m != zero})
        if any(self._block_degree(m) == 0 for m in rest.keys()):
            raise MIAlgebraError("non-constant terms of degree 0 in every truncated block")
        total = self.space.ring.one
        power = self.space.ring.one
        while power:
            power = self.space.mul(power, rest)
            total += power
        return MISeries(self.space, total * (1 / c0))

    def _block_degree(self, monom: tuple[int, ...]) -> int:
        return sum(sum(monom[start:stop]) for start, stop, _ in self.space._bounds)

    def __truediv__(self, other) -> "MISeries":
        if isinstance(other, MISeries):
            return self * other.inverse()
        return MISeries(self.space, self.poly * (1 / self.space.domain.convert(other)))

    def scale_variable(self, name: str, factor) -> "MISeries":
        """Substitute ``name -> factor * name``."""
        index = [str(s) for s in self.space.ring.symbols].index(name)
        factor = self.space.domain.convert(factor)
        scaled = self.space.ring({m: c * factor ** m[index] for m, c in self.poly.items()})
        return MISeries(self.space, scaled)

    def first_mismatch(self, other: "MISeries") -> tuple[tuple[int, ...], object, object] | None:
        """Smallest monomial where the two series differ, with both coefficients."""
        _, a, b = self._coerce(other)
        difference = a - b
        if not difference:
            return None
        monom = min(difference.keys(), key=lambda m: (sum(m), m))
        zero = self.space.domain.zero
        return monom, a.get(monom, zero), b.get(monom, zero)

    def to_json(self) -> dict:
        cutoffs = [block.cutoff for block in self.space.blocks if block.cutoff is not None]
        return poly_to_json(self.poly, max(cutoffs) if cutoffs else None)


def single_space(name: str, order: int, domain=QT_DOMAIN) -> MISeriesSpace:
    """Univariate series space truncated at degree ``order``."""
    return MISeriesSpace([MIBlock((name,), order)], domain)


@lru_cache(maxsize=None)
def pochhammer_coefficients(order: int, base=Q, sign: int = 1) -> tuple:
    """Coefficients of (z;base)_inf**sign through z**order.

    Uses (z;q)_inf = exp(-sum_{m>=1} z**m / (m (1 - q**m))).
    """
    if sign not in (1, -1):
        raise MIAlgebraError(f"Pochhammer exponent must be +1 or -1, got {sign}")
    if order == 0:
        return (QT_FIELD(1),)
    R, z = ring("z", QT_DOMAIN)
    log_series = R.zero
    for m in range(1, order + 1):
        log_series += z**m * (QT_FIELD(-sign) / (m * (1 - base**m)))
    expanded = rs_exp(log_series, z, order + 1)
    return tuple(expanded.get((k,), QT_DOMAIN.zero) for k in range(order + 1))


def pochhammer_series(order: int, base=Q, name: str = "z") -> MISeries:
    """Truncated expansion of (z;base)_inf in one variable."""
    space = single_space(name, order)
    z = space.gen(name)
    coefficients = pochhammer_coefficients(order, base, 1)
    return space.series(sum((z**k * c for k, c in enumerate(coefficients)), space.ring.zero))


def _max_power(space: MISeriesSpace, argument: PolyElement) -> int:
    for monom in argument.keys():
        if not any(sum(monom[start:stop]) for start, stop, _ in space._bounds):
            raise MIAlgebraError(f"Pochhammer argument {argument} is not small in a truncated block")
    return sum(cutoff for _, _, cutoff in space._bounds)


def pochhammer_factor(space: MISeriesSpace, argument: PolyElement, sign: int = 1, base=Q) -> MISeries:
    """(argument; base)_inf**sign expanded inside ``space``.

    ``argument`` must have positive degree in some truncated block, so that the
    expansion terminates.
    """
    argument = change_ring(argument, space.ring)
    order = _max_power(space, argument)
    coefficients = pochhammer_coefficients(order, base, sign)
    total = space.ring.one
    power = space.ring.one
    for coefficient in coefficients[1:]:
        power = space.mul(power, argument)
        if not power:
            break
        total += power * space.domain.convert(coefficient)
    return MISeries(space, total)


def series_from_product(space: MISeriesSpace, factors: Iterable[tuple[PolyElement, int]]) -> MISeries:
    """Product of Pochhammer factors (argument; q)_inf**sign, truncated to ``space``."""
    result = space.one()
    for argument, sign in factors:
        result = result * pochhammer_factor(space, argument, sign)
    logger.debug("assembled product series with %d terms", len(result.poly))
    return result


def finite_pochhammer(argument: PolyElement, length: int, base=Q) -> PolyElement:
    """(argument; base)_length = prod_{k<length} (1 - argument base**k) as a polynomial."""
    result = argument.ring.one
    for k in range(length):
        result *= 1 - argument * argument.ring.domain.convert(base**k)
    return result


def rename_variables(poly: PolyElement, names: Sequence[str]) -> PolyElement:
    """The same polynomial with its generators renamed positionally."""
    if len(names) != poly.ring.ngens:
        raise MIDimensionMismatch(f"{len(names)} names for {poly.ring.ngens} variables")
    target = poly_ring(tuple(names), poly.ring.domain)
    return target(dict(poly.items()))
