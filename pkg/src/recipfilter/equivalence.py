"""Equivalent filter generators over a different LFSR of the same length.

Two primitive elements alpha and beta = alpha^k (gcd(k, 2^L - 1) = 1) give two
LFSRs that can produce the same keystream with different filters.  Moving a
keystream spectrum from the alpha-world to the beta-world only renames cosets
(E -> leader(k' E)) and conjugates coefficients; the filter on the new LFSR is
then rebuilt one degree level at a time by selecting monomials whose spectra
add up to the target.

For k = 2^(L-1) - 1 the new polynomial is the reciprocal of the old one and
k' = -2, which maps a coset of weight w to one of weight L - w.  A filter whose
keystream lives on heavy cosets therefore has a low-degree reciprocal
equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import solve_combination
from .anf import AnfFunction, FilterGenerator, format_anf, monomials_of_degree
from .errors import ContextMismatchError, InfeasibleReconstructionError
from .gf2_field import (
    BinaryPolynomial,
    FieldContext,
    as_polynomial,
    coset_leader,
    coset_leaders,
    default_primitive,
    exponent_inverse,
    field_context,
    minimal_polynomial,
    reciprocal_polynomial,
    totient,
    unit_cosets,
)
from .lfsr_core import format_bits, state_from_phase
from .spectrum import (
    TraceSpectrum,
    coefficient_matrix,
    compute_spectrum,
    monomial_sequences,
)

# largest per-level monomial count the exhaustive subset search will accept
EXHAUSTIVE_LIMIT = 20


@dataclass(frozen=True)
class EquivalenceTransform:
    """alpha-world -> beta-world, with beta = alpha^k and alpha = beta^k_inverse."""

    source: FieldContext
    target: FieldContext
    k: int
    k_inverse: int

    @property
    def L(self) -> int:
        return self.source.L

    @property
    def is_reciprocal(self) -> bool:
        return self.k == (1 << (self.L - 1)) - 1


def general_transform(P1, k: int) -> EquivalenceTransform:
    """Transform to the LFSR whose characteristic polynomial has root alpha^k."""
    source = field_context(as_polynomial(P1))
    L = source.L
    k_inv = exponent_inverse(k % source.order, L)
    target = field_context(minimal_polynomial(source, k % source.order))
    return EquivalenceTransform(source, target, k % source.order, k_inv)


def reciprocal_transform(P1) -> EquivalenceTransform:
    P1 = as_polynomial(P1)
    L = P1.degree
    t = general_transform(P1, (1 << (L - 1)) - 1)
    assert t.target.modulus == reciprocal_polynomial(P1)
    return t


def map_spectrum(s: TraceSpectrum, t: EquivalenceTransform) -> TraceSpectrum:
    """Rewrite an alpha-world spectrum in the beta-world of `t`.

    Substituting alpha = beta^k' sends the coset term of E to exponent
    e' = k' E = E' 2^j, so D_E' = C_E^(2^(L-j)).  D_E' is then carried across the
    isomorphism alpha^c -> beta^(k' c).
    """
    if s.ctx != t.source:
        raise ContextMismatchError(f"spectrum is over {s.ctx}, transform expects {t.source}")
    n = t.source.order
    L = t.L
    mapped = {}
    for E, C in s.coefficients.items():
        e_new = t.k_inverse * E % n
        leader, j = coset_leader(e_new, L)
        D = C ** (1 << ((L - j) % L))
        mapped[leader] = t.target.alpha(t.k_inverse * D.log())
    return TraceSpectrum(t.target, mapped, s.constant)


def predicted_order(s: TraceSpectrum) -> int:
    """Degree of the reciprocal equivalent: max of L - weight(E) over the support."""
    if not s.coefficients:
        raise ValueError("predicted order is undefined for a spectrum without nonzero cosets")
    return max(s.ctx.L - E.bit_count() for E in s.coefficients)


# ------------------------------------------------------------- reconstruction

def _level_vectors(ctx: FieldContext, d: int, sequences: np.ndarray, target: TraceSpectrum):
    """Pack each monomial's weight-d coefficients (and the target's) into ints."""
    L = ctx.L
    cosets = [int(E) for E in coset_leaders(L)[1:] if int(E).bit_count() == d]
    coeffs = coefficient_matrix(sequences, ctx, cosets)
    vectors = []
    for row in coeffs:
        v = 0
        for idx, c in enumerate(row):
            v |= int(c) << (idx * L)
        vectors.append(v)
    goal = 0
    for idx, E in enumerate(cosets):
        goal |= target[E].bits << (idx * L)
    return vectors, goal


def _select_linear(vectors: list[int], goal: int) -> int | None:
    return solve_combination(vectors, goal)


def _select_exhaustive(vectors: list[int], goal: int) -> int | None:
    """Gray-code walk over all subsets; first match in order of subset mask."""
    count = len(vectors)
    if count > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search over 2^{count} subsets refused (limit 2^{EXHAUSTIVE_LIMIT})")
    best = None
    acc = 0
    if acc == goal:
        return 0
    prev_gray = 0
    for i in range(1, 1 << count):
        gray = i ^ (i >> 1)
        flipped = (gray ^ prev_gray).bit_length() - 1
        acc ^= vectors[flipped]
        prev_gray = gray
        if acc == goal and (best is None or gray < best):
            best = gray
    return best


def reconstruct_anf(target: TraceSpectrum, method: str = "linear") -> AnfFunction:
    """Filter whose output over the phase-1 m-sequence of target.ctx has spectrum `target`.

    Levels run from the heaviest supported coset weight down to 1; at level d
    the degree-d monomials are chosen to match every weight-d coset, and their
    full spectra are subtracted from the residual.  The remaining constant
    bit becomes the constant term.

    ``method="linear"`` solves each level as a GF(2) system;
    ``method="exhaustive"`` enumerates monomial subsets (small L only).
    """
    if method == "linear":
        select = _select_linear
    elif method == "exhaustive":
        select = _select_exhaustive
    else:
        raise ValueError(f"unknown method {method!r}")
    ctx = target.ctx
    L = ctx.L
    residual = target
    chosen: set[int] = set()
    top = max((E.bit_count() for E in target.coefficients), default=0)
    for d in range(top, 0, -1):
        monomials = monomials_of_degree(L, d)
        sequences = monomial_sequences(monomials, ctx)
        vectors, goal = _level_vectors(ctx, d, sequences, residual)
        combo = select(vectors, goal)
        if combo is None:
            raise InfeasibleReconstructionError(
                f"no selection of degree-{d} monomials matches the weight-{d} cosets")
        picked = [i for i in range(len(monomials)) if combo >> i & 1]
        if picked:
            chosen.update(monomials[i] for i in picked)
            # the spectrum is linear, so one transform covers the whole level
            level_sum = np.bitwise_xor.reduce(sequences[picked], axis=0)
            residual = residual - compute_spectrum(level_sum, ctx)
    if residual.coefficients:  # pragma: no cover - every weight level was matched
        raise InfeasibleReconstructionError(f"residual cosets {residual.cosets} left unmatched")
    return AnfFunction(L, frozenset(chosen), residual.constant)


# ------------------------------------------------------------------- pipeline

@dataclass(frozen=True)
class EquivalenceReport:
    original: FilterGenerator
    equivalent: FilterGenerator
    transform: EquivalenceTransform
    source_spectrum: TraceSpectrum
    target_spectrum: TraceSpectrum

    @property
    def original_order(self) -> int:
        return self.original.filter.degree

    @property
    def equivalent_order(self) -> int:
        return self.equivalent.filter.degree

    @property
    def weaker(self) -> bool:
        return self.equivalent_order < self.original_order

    def coset_rows(self):
        """(E, weight, C_E, E', weight', D_E') for each nonzero source coset."""
        L = self.transform.L
        n = self.transform.source.order
        rows = []
        for E, C in self.source_spectrum.coefficients.items():
            E2, _ = coset_leader(self.transform.k_inverse * E % n, L)
            rows.append((E, E.bit_count(), C, E2, E2.bit_count(), self.target_spectrum[E2]))
        return rows

    def format(self) -> str:
        t = self.transform
        lines = [
            "# equivalent generator",
            self.equivalent.describe().rstrip("\n"),
            "",
            "# report",
            f"original_polynomial: {self.original.polynomial}",
            f"original_initial_state: {format_bits(self.original.initial_state)}",
            f"original_filter: {format_anf(self.original.filter)}",
            f"k: {t.k}",
            f"k_inverse: {t.k_inverse}",
            f"reciprocal: {'yes' if t.is_reciprocal else 'no'}",
            f"original_order: {self.original_order}",
            f"equivalent_order: {self.equivalent_order}",
            "cosets:",
        ]
        for E, w, C, E2, w2, D in self.coset_rows():
            lines.append(f"  {E} (weight {w}) -> {E2} (weight {w2}): "
                         f"alpha^{C.log()} -> beta^{D.log()}")
        lines.append(f"constant: {self.source_spectrum.constant}")
        lines.append(f"weaker: {'yes' if self.weaker else 'no'}")
        return "\n".join(lines) + "\n"


def equivalent_generator(g: FilterGenerator, k: int | None = None,
                         method: str = "linear") -> EquivalenceReport:
    """Build the generator on the LFSR with root alpha^k producing g's keystream.

    Defaults to the reciprocal LFSR.  The input's initial state is absorbed by
    computing the spectrum from the actual keystream; the equivalent is always
    emitted with phase 1, b_n = Tr(beta^n).
    """
    z = g.keystream()
    source = field_context(g.polynomial)
    spectrum = compute_spectrum(z, source)
    t = reciprocal_transform(g.polynomial) if k is None else general_transform(g.polynomial, k)
    mapped = map_spectrum(spectrum, t)
    f2 = reconstruct_anf(mapped, method=method)
    eq = FilterGenerator(t.target.modulus, state_from_phase(t.target, 1), f2)
    return EquivalenceReport(g, eq, t, spectrum, mapped)


# -------------------------------------------------------------------- classes

@dataclass(frozen=True)
class ClassListing:
    L: int
    modulus: BinaryPolynomial
    count: int
    rows: tuple  # (CyclotomicCoset, BinaryPolynomial) per class

    def format(self, limit: int | None = None) -> str:
        lines = [f"L: {self.L}", f"period: {(1 << self.L) - 1}",
                 f"modulus: {self.modulus}", f"classes: {self.count}"]
        shown = self.rows if limit is None else self.rows[:limit]
        for coset, poly in shown:
            lines.append(f"{','.join(map(str, coset.elements))}: {poly}")
        if len(shown) < self.count:
            lines.append(f"... {self.count - len(shown)} more")
        return "\n".join(lines) + "\n"


def enumerate_classes(L: int, modulus=None, limit: int | None = None) -> ClassListing:
    """The phi(2^L - 1)/L LFSRs of length L, one per coset of unit exponents.

    Rows pair each coset of k values with the characteristic polynomial of
    alpha^k; `limit` caps how many polynomials are computed.
    """
    poly = default_primitive(L) if modulus is None else as_polynomial(modulus)
    ctx = field_context(poly)
    if ctx.L != L:
        raise ValueError(f"modulus {poly} has degree {ctx.L}, expected {L}")
    cosets = unit_cosets(L)
    count = totient(ctx.order) // L
    assert count == len(cosets)
    shown = cosets if limit is None else cosets[:limit]
    rows = tuple((c, minimal_polynomial(ctx, c.leader)) for c in shown)
    return ClassListing(L, poly, count, rows)
