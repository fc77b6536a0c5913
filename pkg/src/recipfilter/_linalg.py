"""Linear algebra over GF(2) with vectors packed into Python ints."""

from __future__ import annotations

from typing import Sequence


def solve_combination(vectors: Sequence[int], target: int) -> int | None:
    """Find a subset of `vectors` whose XOR equals `target`.

    Returns the subset as a bit mask over indices into `vectors`, or None when
    `target` is outside their span.  Dependent vectors are never selected, so
    when the vectors are independent the answer is the unique one.
    """
    # pivot bit -> (reduced vector, combination mask)
    basis: dict[int, tuple[int, int]] = {}
    for index, vec in enumerate(vectors):
        combo = 1 << index
        while vec:
            pivot = vec.bit_length() - 1
            if pivot not in basis:
                basis[pivot] = (vec, combo)
                break
            bvec, bcombo = basis[pivot]
            vec ^= bvec
            combo ^= bcombo

    combo = 0
    residual = target
    while residual:
        pivot = residual.bit_length() - 1
        if pivot not in basis:
            return None
        bvec, bcombo = basis[pivot]
        residual ^= bvec
        combo ^= bcombo
    return combo


def rank(vectors: Sequence[int]) -> int:
    basis: dict[int, int] = {}
    for vec in vectors:
        while vec:
            pivot = vec.bit_length() - 1
            if pivot not in basis:
                basis[pivot] = vec
                break
            vec ^= basis[pivot]
    return len(basis)
