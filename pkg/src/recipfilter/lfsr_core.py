"""Fibonacci LFSRs and the link between initial states and trace phases.

For a characteristic polynomial P(x) = x^L + c_1 x^(L-1) + ... + c_L the
register obeys a_(n+L) = c_1 a_(n+L-1) + ... + c_L a_n.  The state holds the
window (a_n, ..., a_(n+L-1)) and each clock emits a_n, so an initial state is
literally the first L output bits.

Packed states are ints with bit i = a_(n+i).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ._linalg import solve_combination
from .errors import NotPrimitiveError
from .gf2_field import (
    BinaryPolynomial,
    FieldContext,
    FieldElement,
    as_context,
    as_polynomial,
    is_primitive,
)


def pack_bits(bits: Sequence[int]) -> int:
    value = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"bit values must be 0 or 1, got {b!r}")
        value |= b << i
    return value


def unpack_bits(value: int, width: int) -> tuple[int, ...]:
    return tuple(value >> i & 1 for i in range(width))


def parse_bits(text: str) -> tuple[int, ...]:
    """'10010' -> (1, 0, 0, 1, 0); whitespace is ignored."""
    compact = "".join(text.split())
    if not compact or set(compact) - {"0", "1"}:
        raise ValueError(f"expected a string of 0/1 characters, got {text!r}")
    return tuple(int(c) for c in compact)


def format_bits(bits) -> str:
    return "".join(str(int(b)) for b in bits)


def _step_states(poly: BinaryPolynomial, state: int, n: int) -> np.ndarray:
    """Packed window states s_0..s_(n-1), starting from `state`."""
    L = poly.degree
    taps = poly.coeffs & ((1 << L) - 1)
    top = L - 1
    out = np.empty(n, dtype=np.int64)
    s = state
    for t in range(n):
        out[t] = s
        fb = (s & taps).bit_count() & 1
        s = (s >> 1) | (fb << top)
    return out


def generate(polynomial, state: Sequence[int], n: int) -> list[int]:
    """First n output bits of the register started at `state` (pure)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    lfsr = Lfsr(polynomial, state)
    return lfsr.generate(n)


class Lfsr:
    """A mutable Fibonacci LFSR over a primitive characteristic polynomial."""

    def __init__(self, polynomial, state: Sequence[int]):
        poly = as_polynomial(polynomial)
        if not is_primitive(poly):
            raise NotPrimitiveError(f"characteristic polynomial {poly} is not primitive")
        L = poly.degree
        if len(state) != L:
            raise ValueError(f"state has {len(state)} bits, expected {L}")
        self.polynomial = poly
        self.L = L
        self._taps = poly.coeffs & ((1 << L) - 1)
        self._state = pack_bits(state)

    @property
    def state(self) -> tuple[int, ...]:
        return unpack_bits(self._state, self.L)

    @property
    def packed_state(self) -> int:
        return self._state

    def step(self) -> int:
        s = self._state
        fb = (s & self._taps).bit_count() & 1
        self._state = (s >> 1) | (fb << (self.L - 1))
        return s & 1

    def generate(self, n: int) -> list[int]:
        if n < 0:
            raise ValueError("n must be non-negative")
        return [self.step() for _ in range(n)]

    def __iter__(self):
        while True:
            yield self.step()

    def windows(self, n: int) -> np.ndarray:
        """Packed states for the next n clocks; advances the register."""
        out = _step_states(self.polynomial, self._state, n)
        for _ in range(n):
            self.step()
        return out

    def __repr__(self):
        return f"Lfsr({self.polynomial}, state={format_bits(self.state)})"


def state_windows(polynomial, state: Sequence[int] | int, n: int) -> np.ndarray:
    poly = as_polynomial(polynomial)
    packed = state if isinstance(state, int) else pack_bits(state)
    return _step_states(poly, packed, n)


def state_from_phase(polynomial, phase: FieldElement | int) -> tuple[int, ...]:
    """Initial state (Tr(A), Tr(A alpha), ..., Tr(A alpha^(L-1))) for phase A.

    `phase` may be a field element of the polynomial's context or the bit
    pattern of one.
    """
    ctx = as_context(polynomial)
    A = _as_element(ctx, phase)
    x = A
    bits = []
    for _ in range(ctx.L):
        bits.append(x.trace())
        x = x * ctx.generator
    return tuple(bits)


def trace_phase(polynomial, state: Sequence[int]) -> FieldElement:
    """The unique A with a_n = Tr(A alpha^n) for the sequence started at `state`.

    Solved as an L x L system over GF(2): the columns are the states produced
    by the basis phases alpha^j.
    """
    ctx = as_context(polynomial)
    if len(state) != ctx.L:
        raise ValueError(f"state has {len(state)} bits, expected {ctx.L}")
    columns = [pack_bits(state_from_phase(ctx, 1 << j)) for j in range(ctx.L)]
    combo = solve_combination(columns, pack_bits(state))
    if combo is None:  # pragma: no cover - the map is bijective for primitive moduli
        raise AssertionError("trace map is singular")
    return ctx.element(combo)


def m_sequence(polynomial, phase: FieldElement | int = 1, n: int | None = None) -> np.ndarray:
    """The sequence Tr(A alpha^t) as a uint8 array; one full period by default."""
    ctx = as_context(polynomial)
    n = ctx.order if n is None else n
    windows = state_windows(ctx.modulus, state_from_phase(ctx, phase), n)
    return (windows & 1).astype(np.uint8)


def _as_element(ctx: FieldContext, value) -> FieldElement:
    if isinstance(value, FieldElement):
        if value.ctx != ctx:
            from .errors import ContextMismatchError

            raise ContextMismatchError(f"phase belongs to {value.ctx}, not {ctx}")
        return value
    return ctx.element(int(value))
