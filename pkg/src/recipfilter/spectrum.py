"""Trace spectra of period-(2^L - 1) sequences.

Every binary sequence z of period dividing 2^L - 1 can be written as

    z_n = c + sum over coset leaders E of  sum_{i < size(E)} C_E^(2^i) alpha^(E 2^i n)

and the coefficient of each coset is recovered by the finite-field transform
C_E = sum_n z_n alpha^(-E n).  Coefficients are always tied to a
:class:`FieldContext`; the same field element describes different sequences
under different generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .errors import ContextMismatchError
from .gf2_field import (
    FieldContext,
    FieldElement,
    coset_leader,
    coset_leaders,
    coset_size,
)
from .lfsr_core import m_sequence, pack_bits, state_from_phase, state_windows


@dataclass(frozen=True, eq=False)
class TraceSpectrum:
    """Coset coefficients C_E (zeros omitted) plus the constant bit."""

    ctx: FieldContext
    coefficients: Mapping[int, FieldElement] = field(default_factory=dict)
    constant: int = 0

    def __post_init__(self):
        coeffs = {}
        L = self.ctx.L
        for leader, value in self.coefficients.items():
            leader = int(leader)
            if not isinstance(value, FieldElement):
                value = self.ctx.element(int(value))
            if value.ctx != self.ctx:
                raise ContextMismatchError(f"coefficient for coset {leader} is not in {self.ctx}")
            if leader == 0 or coset_leader(leader, L)[0] != leader:
                raise ValueError(f"{leader} is not a nonzero coset leader mod 2^{L}-1")
            if not value:
                continue
            size = coset_size(leader, L)
            if value ** (1 << size) != value:
                raise ValueError(
                    f"C_{leader} = {value.format()} does not lie in GF(2^{size})")
            coeffs[leader] = value
        if self.constant not in (0, 1):
            raise ValueError("constant must be 0 or 1")
        object.__setattr__(self, "coefficients", dict(sorted(coeffs.items())))

    def __eq__(self, other):
        if not isinstance(other, TraceSpectrum):
            return NotImplemented
        return (self.ctx == other.ctx and self.constant == other.constant
                and self.coefficients == other.coefficients)

    def __getitem__(self, leader: int) -> FieldElement:
        return self.coefficients.get(leader, self.ctx.zero)

    def __bool__(self):
        return bool(self.coefficients) or bool(self.constant)

    @property
    def cosets(self) -> tuple[int, ...]:
        """Leaders of nonzero cosets (excluding the constant)."""
        return tuple(self.coefficients)

    def support(self) -> tuple[int, ...]:
        """Sorted leaders with a nonzero coefficient; 0 when the constant is set."""
        return ((0,) if self.constant else ()) + self.cosets

    def __add__(self, other: "TraceSpectrum") -> "TraceSpectrum":
        if other.ctx != self.ctx:
            raise ContextMismatchError("spectra from different fields cannot be added")
        coeffs = dict(self.coefficients)
        for leader, value in other.coefficients.items():
            coeffs[leader] = coeffs.get(leader, self.ctx.zero) + value
        return TraceSpectrum(self.ctx, coeffs, self.constant ^ other.constant)

    __sub__ = __add__

    def format(self, symbol: str = "alpha") -> str:
        """One line per nonzero coset leader, "E: alpha^e" or "E: 0", then "const: c"."""
        lines = [f"{int(E)}: {self[int(E)].format(symbol)}" for E in coset_leaders(self.ctx.L)[1:]]
        lines.append(f"const: {self.constant}")
        return "\n".join(lines)


def _as_bits(z) -> np.ndarray:
    arr = np.asarray(z, dtype=np.int64).reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ValueError("sequence values must be 0 or 1")
    return arr


def transform_value(z, ctx: FieldContext, e: int) -> FieldElement:
    """The raw transform sum_n z_n alpha^(-e n) at any exponent e."""
    z = _as_bits(z)
    if z.size != ctx.order:
        raise ValueError(f"sequence length {z.size} != 2^{ctx.L}-1 = {ctx.order}")
    exp, _ = ctx.tables()
    ones = np.flatnonzero(z)
    idx = (-e * ones) % ctx.order
    return ctx.element(int(np.bitwise_xor.reduce(exp[idx])) if idx.size else 0)


def compute_spectrum(z: Sequence[int], ctx: FieldContext) -> TraceSpectrum:
    """Trace spectrum of one full period z_0 .. z_(2^L - 2).

    One transform value per coset suffices: the value at E 2^j is C_E^(2^j).
    """
    z = _as_bits(z)
    n = ctx.order
    if z.size != n:
        raise ValueError(f"sequence length {z.size} != 2^{ctx.L}-1 = {n}")
    exp, _ = ctx.tables()
    ones = np.flatnonzero(z)
    coeffs = {}
    if ones.size:
        for leader in coset_leaders(ctx.L)[1:]:
            idx = (-int(leader) * ones) % n
            value = int(np.bitwise_xor.reduce(exp[idx]))
            if value:
                coeffs[int(leader)] = ctx.element(value)
    return TraceSpectrum(ctx, coeffs, int(ones.size & 1))


def synthesize(s: TraceSpectrum) -> np.ndarray:
    """Evaluate the trace expansion for n = 0 .. 2^L - 2; inverse of compute_spectrum."""
    ctx = s.ctx
    n = ctx.order
    exp, _ = ctx.tables()
    t = np.arange(n, dtype=np.int64)
    acc = np.zeros(n, dtype=np.int64)
    for leader, coeff in s.coefficients.items():
        size = coset_size(leader, ctx.L)
        base = (coeff.log() + leader * t) % n
        for i in range(size):
            acc ^= exp[(base << i) % n]
    if acc.size and acc.max() > 1:
        raise ValueError("spectrum does not describe a binary sequence")
    return (acc ^ s.constant).astype(np.uint8)


def coefficient_matrix(sequences, ctx: FieldContext, leaders: Sequence[int]) -> np.ndarray:
    """Transform values C_E for many full-period sequences at once.

    Returns an int array of shape (len(sequences), len(leaders)) holding the
    bit patterns of the coefficients.  Each coefficient bit is a parity of a
    0/1 matrix product, done in float32 (exact for sums below 2^24).
    """
    Z = np.asarray(sequences, dtype=np.float32)
    if Z.ndim != 2 or Z.shape[1] != ctx.order:
        raise ValueError(f"expected sequences of length {ctx.order}")
    leaders = np.asarray(leaders, dtype=np.int64)
    n, L = ctx.order, ctx.L
    exp, _ = ctx.tables()
    t = np.arange(n, dtype=np.int64)
    shifts = np.arange(L, dtype=np.int64)
    out = np.zeros((Z.shape[0], leaders.size), dtype=np.int64)
    chunk = max(1, (1 << 22) // (n * L))
    for start in range(0, leaders.size, chunk):
        block = leaders[start:start + chunk]
        values = exp[(-block[None, :] * t[:, None]) % n]
        planes = ((values[:, :, None] >> shifts) & 1).reshape(n, -1).astype(np.float32)
        parity = (Z @ planes).astype(np.int64).reshape(Z.shape[0], block.size, L) & 1
        out[:, start:start + block.size] = (parity << shifts).sum(axis=2)
    return out


def monomial_sequences(masks: Sequence[int], ctx: FieldContext) -> np.ndarray:
    """Rows n -> prod_{i in mask} Tr(alpha^(n+i)) for each monomial mask."""
    windows = state_windows(ctx.modulus, pack_bits(state_from_phase(ctx, 1)), ctx.order)
    masks = np.asarray(masks, dtype=np.int64)
    return ((windows[None, :] & masks[:, None]) == masks[:, None]).astype(np.uint8)


@lru_cache(maxsize=8192)
def _monomial_spectrum(ctx: FieldContext, mask: int) -> TraceSpectrum:
    seq = m_sequence(ctx)
    prod = np.ones(ctx.order, dtype=np.uint8)
    for i in range(ctx.L):
        if mask >> i & 1:
            prod &= np.roll(seq, -i)
    return compute_spectrum(prod, ctx)


def monomial_spectrum(variables, ctx: FieldContext) -> TraceSpectrum:
    """Spectrum of n -> prod_{i in variables} Tr(alpha^(n+i)).

    `variables` is an iterable of indices or a packed mask.
    """
    if isinstance(variables, (int, np.integer)):
        mask = int(variables)
    else:
        mask = 0
        for v in variables:
            mask |= 1 << v
    if mask == 0:
        raise ValueError("a monomial needs at least one variable")
    if mask >> ctx.L:
        raise ValueError(f"variable index out of range for L={ctx.L}")
    return _monomial_spectrum(ctx, mask)
