"""Partitions, boxes, horizontal strips and reverse tableaux as interlacing chains."""

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

from .mi_exceptions import MIBoxNotInPartition, MIInvalidPartition

logger = logging.getLogger(__name__)

EMPTY_MARKERS = ("", "0", "∅", "()", "[]")


@dataclass(frozen=True)
class MIBox:
    """A cell (row, col) of a Young diagram, both 1-based."""

    row: int
    col: int


@dataclass(frozen=True)
class MIPartition:
    """A partition stored without trailing zeros."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any(not isinstance(p, int) or isinstance(p, bool) for p in parts):
            raise MIInvalidPartition(f"parts must be integers: {parts}")
        if any(p <= 0 for p in parts):
            raise MIInvalidPartition(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise MIInvalidPartition(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts) -> "MIPartition":
        """Build from any sequence, dropping trailing zeros."""
        parts = list(parts)
        while parts and parts[-1] == 0:
            parts.pop()
        return cls(tuple(int(p) for p in parts))

    @classmethod
    def parse(cls, text: str) -> "MIPartition":
        """Parse ``"2,1"``, ``"2 1"`` or ``"[2,1]"``; ``""``, ``"0"`` and ``"∅"`` are empty.

        Raises:
            MIInvalidPartition: Malformed text or a non-partition.
        """
        stripped = text.strip()
        if stripped in EMPTY_MARKERS:
            return cls()
        body = stripped.strip("[]()")
        pieces = [piece for piece in body.replace(",", " ").split() if piece]
        try:
            values = [int(piece) for piece in pieces]
        except ValueError as e:
            raise MIInvalidPartition(f"malformed partition {text!r}") from e
        if any(v < 0 for v in values):
            raise MIInvalidPartition(f"negative part in {text!r}")
        return cls.from_parts(values)

    def __str__(self) -> str:
        if not self.parts:
            return "∅"
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @cached_property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """The i-th part (1-based); 0 beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        return self.parts + (0,) * (n - len(self.parts))

    @cached_property
    def conjugate(self) -> "MIPartition":
        first = self.part(1)
        return MIPartition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, first + 1)))

    def cells(self) -> list[MIBox]:
        """Cells in row-major order."""
        return [MIBox(r, c) for r, p in enumerate(self.parts, start=1) for c in range(1, p + 1)]

    def has_box(self, box: MIBox) -> bool:
        return box.row >= 1 and box.col >= 1 and box.col <= self.part(box.row)

    def arm(self, box: MIBox) -> int:
        if not self.has_box(box):
            raise MIBoxNotInPartition(f"box {box} is not in {self}")
        return self.part(box.row) - box.col

    def leg(self, box: MIBox) -> int:
        if not self.has_box(box):
            raise MIBoxNotInPartition(f"box {box} is not in {self}")
        return self.conjugate.part(box.col) - box.row

    def contains(self, other: "MIPartition") -> bool:
        """Diagram containment ``other ⊆ self``."""
        return other.length <= self.length and all(o <= self.part(i) for i, o in enumerate(other.parts, start=1))

    def dominates(self, other: "MIPartition") -> bool:
        """Dominance order on partitions of the same size."""
        if self.size != other.size:
            return False
        n = max(self.length, other.length)
        return all(sum(self.padded(n)[:k]) >= sum(other.padded(n)[:k]) for k in range(1, n + 1))

    def add_rectangle(self, m: int, n: int) -> "MIPartition":
        """The partition m^n + self (requires length <= n)."""
        return MIPartition.from_parts(tuple(m + p for p in self.padded(n)))

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    def z_factor(self) -> int:
        """The symmetry factor prod_i i^{m_i} m_i!."""
        return math.prod(i**m * math.factorial(m) for i, m in self.multiplicities().items())

    def to_json(self) -> list[int]:
        return list(self.parts)


EMPTY = MIPartition()

MIChain = tuple[MIPartition, ...]


def sort_key(mu: MIPartition) -> tuple:
    """Graded reverse-lexicographic key: smaller size first, then larger parts first."""
    return (mu.size, tuple(-p for p in mu.parts))


def is_horizontal_strip(mu: MIPartition, nu: MIPartition) -> bool:
    """True iff mu_i >= nu_i >= mu_{i+1} for all i."""
    if nu.length > mu.length:
        return False
    return all(mu.part(i) >= nu.part(i) >= mu.part(i + 1) for i in range(1, mu.length + 1))


def strip_cells(mu: MIPartition, nu: MIPartition) -> list[MIBox]:
    """Cells of the skew diagram mu/nu."""
    return [MIBox(r, c) for r in range(1, mu.length + 1) for c in range(nu.part(r) + 1, mu.part(r) + 1)]


@lru_cache(maxsize=None)
def horizontal_strips_below(mu: MIPartition) -> tuple[MIPartition, ...]:
    """All nu with mu/nu a horizontal strip, in decreasing lexicographic order."""
    ranges = [range(mu.part(i), mu.part(i + 1) - 1, -1) for i in range(1, mu.length + 1)]
    return tuple(MIPartition.from_parts(choice) for choice in itertools.product(*ranges))


@lru_cache(maxsize=None)
def enumerate_rtab(mu: MIPartition, n: int) -> tuple[MIChain, ...]:
    """Reverse tableaux of shape mu with entries in 1..n, as chains mu = mu(0) > ... > mu(n) = ∅.

    The boxes of mu(i-1)/mu(i) carry the value i.
    """
    if mu.length > n:
        return ()
    if n == 0:
        return ((mu,),)
    chains = []
    for nu in horizontal_strips_below(mu):
        if nu.length > n - 1:
            continue
        chains.extend((mu,) + rest for rest in enumerate_rtab(nu, n - 1))
    return tuple(chains)


@lru_cache(maxsize=None)
def partitions_of(n: int, max_length: int | None = None, max_part: int | None = None) -> tuple[MIPartition, ...]:
    """Partitions of n in decreasing lexicographic order, optionally bounded."""
    if n < 0:
        return ()
    max_part = n if max_part is None else min(max_part, n)
    if n == 0:
        return (EMPTY,)
    if max_length == 0:
        return ()
    result = []
    for first in range(max_part, 0, -1):
        rest_length = None if max_length is None else max_length - 1
        for rest in partitions_of(n - first, rest_length, first):
            result.append(MIPartition((first,) + rest.parts))
    return tuple(result)


def partitions_up_to(weight_bound: int, length_bound: int | None = None) -> list[MIPartition]:
    """All partitions with size <= weight_bound and length <= length_bound, graded."""
    return [mu for n in range(weight_bound + 1) for mu in partitions_of(n, length_bound)]
