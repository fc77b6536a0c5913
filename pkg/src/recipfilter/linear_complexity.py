"""Berlekamp-Massey over GF(2) and coset identification by trial division."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import UnfactorableError
from .gf2_field import BinaryPolynomial, FieldContext, coset_leaders, minimal_polynomial


@dataclass(frozen=True)
class LinearComplexityResult:
    complexity: int
    # characteristic polynomial of the shortest LFSR, in the lfsr_core convention
    characteristic_polynomial: BinaryPolynomial

    @property
    def connection_polynomial(self) -> BinaryPolynomial:
        """1 + c_1 x + ... + c_L x^L, the reversal over `complexity` positions."""
        d = self.complexity
        p = self.characteristic_polynomial.coeffs
        return BinaryPolynomial(sum(1 << (d - i) for i in range(d + 1) if p >> i & 1))


def berlekamp_massey(bits: Sequence[int]) -> LinearComplexityResult:
    """Shortest LFSR generating `bits`.

    Connection polynomials are kept as int masks (bit i = coefficient of x^i).
    The window `recent` holds the bits seen so far with the newest at bit 0,
    so the discrepancy is a parity of `C & recent`.
    """
    C, B = 1, 1
    L, m = 0, 1
    recent = 0
    for n, s in enumerate(bits):
        recent = (recent << 1) | int(s)
        d = (C & recent).bit_count() & 1
        if not d:
            m += 1
        elif 2 * L <= n:
            T = C
            C ^= B << m
            L = n + 1 - L
            B = T
            m = 1
        else:
            C ^= B << m
            m += 1
    char = sum(1 << (L - i) for i in range(L + 1) if C >> i & 1)
    return LinearComplexityResult(L, BinaryPolynomial(char))


def coset_support(seq_min_poly: BinaryPolynomial, ctx: FieldContext) -> tuple[int, ...]:
    """Leaders E whose minimal polynomial divides `seq_min_poly`, sorted.

    The polynomial must be a square-free product of minimal polynomials of
    powers of the context generator; anything left over raises
    :class:`UnfactorableError`.  Leader 0 stands for the factor x + 1.
    """
    remaining = seq_min_poly
    if not remaining:
        raise UnfactorableError("the zero polynomial has no coset support", remaining)
    support = []
    for leader in coset_leaders(ctx.L):
        if remaining.degree < 1:
            break
        leader = int(leader)
        factor = minimal_polynomial(ctx, leader)
        if factor.degree > remaining.degree:
            continue
        q, r = divmod(remaining, factor)
        if not r:
            support.append(leader)
            remaining = q
    if remaining.coeffs != 1:
        raise UnfactorableError(
            f"{seq_min_poly} leaves the unfactorable remainder {remaining} over {ctx}", remaining)
    return tuple(support)
