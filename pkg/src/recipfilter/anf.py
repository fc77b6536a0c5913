"""Boolean filter functions in algebraic normal form and filter generators.

A monomial is an int mask over the variables: bit i set means x_i appears.
Variable x_i reads position i of the register window, a_(n+i).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import NotPrimitiveError
from .gf2_field import BinaryPolynomial, as_polynomial, is_primitive
from .lfsr_core import format_bits, pack_bits, state_windows

_VAR_RE = re.compile(r"^x(\d+)$")


class AnfSyntaxError(ValueError):
    pass


def _monomial_key(mask: int) -> tuple:
    # higher degree first, then by variable indices
    return (-mask.bit_count(), [i for i in range(mask.bit_length()) if mask >> i & 1])


@dataclass(frozen=True)
class AnfFunction:
    arity: int
    monomials: frozenset = field(default_factory=frozenset)
    constant: int = 0

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be non-negative")
        object.__setattr__(self, "monomials", frozenset(self.monomials))
        limit = 1 << self.arity
        for m in self.monomials:
            if not 0 < m < limit:
                raise ValueError(f"monomial mask {m:#x} invalid for arity {self.arity}")
        if self.constant not in (0, 1):
            raise ValueError("constant must be 0 or 1")

    @classmethod
    def from_terms(cls, arity: int, terms: Iterable[Iterable[int]], constant: int = 0) -> "AnfFunction":
        """Build from variable-index tuples; repeated terms cancel."""
        monos: set[int] = set()
        for term in terms:
            mask = 0
            for v in term:
                if not 0 <= v < arity:
                    raise ValueError(f"variable x{v} out of range for arity {arity}")
                mask |= 1 << v
            if mask == 0:
                constant ^= 1
            else:
                monos ^= {mask}
        return cls(arity, frozenset(monos), constant)

    @classmethod
    def from_truth_table(cls, table: Sequence[int] | np.ndarray) -> "AnfFunction":
        """Inverse of :meth:`truth_table` (binary Moebius transform)."""
        tt = np.asarray(table, dtype=np.uint8)
        size = tt.size
        arity = size.bit_length() - 1
        if size != 1 << arity:
            raise ValueError("truth table length must be a power of two")
        coeffs = _moebius(tt)
        monos = frozenset(int(m) for m in np.flatnonzero(coeffs) if m)
        return cls(arity, monos, int(coeffs[0]))

    @property
    def degree(self) -> int:
        return max((m.bit_count() for m in self.monomials), default=0)

    def terms(self) -> list[tuple[int, ...]]:
        return [tuple(i for i in range(self.arity) if m >> i & 1)
                for m in sorted(self.monomials, key=_monomial_key)]

    def evaluate(self, point: Sequence[int] | int) -> int:
        if isinstance(point, int):
            x = point
        else:
            if len(point) != self.arity:
                raise ValueError(f"point has {len(point)} coordinates, expected {self.arity}")
            x = pack_bits(point)
        value = self.constant
        for m in self.monomials:
            value ^= (x & m) == m
        return int(value)

    __call__ = evaluate

    def truth_table(self) -> np.ndarray:
        """Values at every packed input (bit i of the index = x_i)."""
        coeffs = np.zeros(1 << self.arity, dtype=np.uint8)
        coeffs[0] = self.constant
        for m in self.monomials:
            coeffs[m] = 1
        return _moebius(coeffs)

    def __add__(self, other: "AnfFunction") -> "AnfFunction":
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        return AnfFunction(self.arity, self.monomials ^ other.monomials, self.constant ^ other.constant)

    __xor__ = __add__

    def __str__(self) -> str:
        return format_anf(self)


def _moebius(values: np.ndarray) -> np.ndarray:
    a = np.array(values, dtype=np.uint8).reshape(-1)
    n = a.size.bit_length() - 1
    for i in range(n):
        step = 1 << i
        view = a.reshape(-1, 2, step)
        view[:, 1, :] ^= view[:, 0, :]
    return a


def monomials_of_degree(arity: int, d: int) -> list[int]:
    """Masks of all degree-d monomials, ordered by their variable tuples."""
    return [sum(1 << v for v in c) for c in combinations(range(arity), d)]


def parse_anf(text: str, arity: int | None = None) -> AnfFunction:
    """Parse "x0*x2 + x1 + 1".

    Terms are '1', '0' or '*'-joined variables; repeated variables inside a
    term collapse and repeated terms cancel.  Without `arity`, the largest
    index + 1 is used.
    """
    compact = "".join(text.split())
    if not compact:
        raise AnfSyntaxError("empty ANF expression")
    terms: list[tuple[int, ...]] = []
    constant = 0
    for term in compact.split("+"):
        if term == "1":
            constant ^= 1
            continue
        if term == "0":
            continue
        indices = []
        for factor in term.split("*"):
            match = _VAR_RE.match(factor)
            if match is None:
                raise AnfSyntaxError(f"malformed term {term!r}")
            indices.append(int(match.group(1)))
        terms.append(tuple(indices))
    max_index = max((i for t in terms for i in t), default=-1)
    if arity is None:
        arity = max_index + 1
    elif max_index >= arity:
        raise AnfSyntaxError(f"variable x{max_index} out of range for arity {arity}")
    return AnfFunction.from_terms(arity, terms, constant)


def format_anf(f: AnfFunction) -> str:
    parts = ["*".join(f"x{i}" for i in t) for t in f.terms()]
    if f.constant:
        parts.append("1")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FilterGenerator:
    """An LFSR with a Boolean filter on its window: (P(x), IS, F)."""

    polynomial: BinaryPolynomial
    initial_state: tuple
    filter: AnfFunction

    def __post_init__(self):
        poly = as_polynomial(self.polynomial)
        object.__setattr__(self, "polynomial", poly)
        object.__setattr__(self, "initial_state", tuple(int(b) for b in self.initial_state))
        if not is_primitive(poly):
            raise NotPrimitiveError(f"characteristic polynomial {poly} is not primitive")
        L = poly.degree
        if len(self.initial_state) != L:
            raise ValueError(f"initial state has {len(self.initial_state)} bits, expected {L}")
        if not any(self.initial_state):
            raise ValueError("initial state must be nonzero")
        if self.filter.arity != L:
            raise ValueError(f"filter arity {self.filter.arity} does not match register length {L}")

    @property
    def L(self) -> int:
        return self.polynomial.degree

    @property
    def period(self) -> int:
        return (1 << self.L) - 1

    def keystream(self, n: int | None = None) -> np.ndarray:
        """z_t = F(a_t, ..., a_(t+L-1)); one full period by default."""
        n = self.period if n is None else n
        if n < 0:
            raise ValueError("n must be non-negative")
        windows = state_windows(self.polynomial, pack_bits(self.initial_state), n)
        return self.filter.truth_table()[windows]

    def describe(self) -> str:
        return (f"polynomial = {self.polynomial}\n"
                f"initial_state = {format_bits(self.initial_state)}\n"
                f"filter = {format_anf(self.filter)}\n")


def evaluate(f: AnfFunction, point: Sequence[int] | int) -> int:
    return f.evaluate(point)


def degree(f: AnfFunction) -> int:
    return f.degree


def filter_sequence(g: FilterGenerator, n: int) -> list[int]:
    return [int(b) for b in g.keystream(n)]
