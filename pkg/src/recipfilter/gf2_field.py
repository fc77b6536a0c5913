"""Binary polynomials, the fields GF(2^L), cyclotomic cosets and exponent arithmetic.

Polynomials over GF(2) are packed into ints: bit i is the coefficient of x^i,
so ``0x29`` is x^5+x^3+1.  A :class:`FieldContext` fixes GF(2^L) through a
primitive modulus; its generator is the residue class of x, written alpha.
Field elements use the polynomial basis 1, alpha, ..., alpha^(L-1).
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

from ._linalg import solve_combination
from .errors import ContextMismatchError, NotPrimitiveError

MIN_DEGREE = 2
MAX_DEGREE = 24
# full log/antilog tables are built on demand up to this degree
TABLE_DEGREE = 20

_TERM_RE = re.compile(r"^(?:1|x(?:\^(\d+))?)$")


# ---------------------------------------------------------------- polynomials

def _clmul(a: int, b: int) -> int:
    if a.bit_length() > b.bit_length():
        a, b = b, a
    result = 0
    while a:
        if a & 1:
            result ^= b
        a >>= 1
        b <<= 1
    return result


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _mulmod(a: int, b: int, m: int) -> int:
    return _divmod(_clmul(a, b), m)[1]


def _powmod(a: int, e: int, m: int) -> int:
    result = 1
    a = _divmod(a, m)[1]
    while e:
        if e & 1:
            result = _mulmod(result, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return _divmod(result, m)[1]


@dataclass(frozen=True, order=True)
class BinaryPolynomial:
    """A polynomial over GF(2), stored as a coefficient bit mask.

    The zero polynomial has degree -1.
    """

    coeffs: int

    def __post_init__(self):
        if self.coeffs < 0:
            raise ValueError("coefficient mask must be non-negative")

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "BinaryPolynomial":
        mask = 0
        for e in exponents:
            mask ^= 1 << e
        return cls(mask)

    @classmethod
    def parse(cls, text: str) -> "BinaryPolynomial":
        """Parse ``"x^5+x^3+1"`` or a hex mask such as ``"0x29"``."""
        compact = "".join(str(text).split())
        if not compact:
            raise ValueError("empty polynomial text")
        if compact.lower().startswith("0x"):
            try:
                return cls(int(compact, 16))
            except ValueError:
                raise ValueError(f"malformed hex polynomial {text!r}") from None
        if compact == "0":
            return cls(0)
        mask = 0
        for term in compact.split("+"):
            match = _TERM_RE.match(term)
            if match is None:
                raise ValueError(f"malformed polynomial term {term!r} in {text!r}")
            if term == "1":
                exponent = 0
            elif match.group(1) is None:
                exponent = 1
            else:
                exponent = int(match.group(1))
            mask ^= 1 << exponent
        return cls(mask)

    @property
    def degree(self) -> int:
        return self.coeffs.bit_length() - 1

    def exponents(self) -> list[int]:
        """Exponents with nonzero coefficient, highest first."""
        return [i for i in range(self.degree, -1, -1) if self.coeffs >> i & 1]

    def coefficient(self, i: int) -> int:
        return self.coeffs >> i & 1

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"BinaryPolynomial({self})"

    def hex(self) -> str:
        return hex(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return BinaryPolynomial(self.coeffs ^ other.coeffs)

    __sub__ = __add__

    def __mul__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return BinaryPolynomial(_clmul(self.coeffs, other.coeffs))

    def __divmod__(self, other: "BinaryPolynomial"):
        q, r = _divmod(self.coeffs, other.coeffs)
        return BinaryPolynomial(q), BinaryPolynomial(r)

    def __floordiv__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "BinaryPolynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = 1, self.coeffs
        while e:
            if e & 1:
                result = _clmul(result, base)
            base = _clmul(base, base)
            e >>= 1
        return BinaryPolynomial(result)

    def evaluate(self, x: "FieldElement") -> "FieldElement":
        """Horner evaluation at a field element."""
        acc = x.ctx.zero
        for i in range(self.degree, -1, -1):
            acc = acc * x
            if self.coeffs >> i & 1:
                acc = acc + x.ctx.one
        return acc


def as_polynomial(p) -> BinaryPolynomial:
    if isinstance(p, BinaryPolynomial):
        return p
    if isinstance(p, int):
        return BinaryPolynomial(p)
    if isinstance(p, str):
        return BinaryPolynomial.parse(p)
    raise TypeError(f"cannot interpret {p!r} as a binary polynomial")


def poly_gcd(a: BinaryPolynomial, b: BinaryPolynomial) -> BinaryPolynomial:
    x, y = a.coeffs, b.coeffs
    while y:
        x, y = y, _divmod(x, y)[1]
    return BinaryPolynomial(x)


def reciprocal_polynomial(p) -> BinaryPolynomial:
    """Return x^deg(p) * p(1/x), i.e. the coefficient vector reversed."""
    p = as_polynomial(p)
    if not p.coeffs & 1:
        raise ValueError(f"{p} has zero constant term; its reciprocal drops degree")
    d = p.degree
    return BinaryPolynomial(sum(1 << (d - i) for i in range(d + 1) if p.coeffs >> i & 1))


# ------------------------------------------------------ integer number theory

@lru_cache(maxsize=None)
def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (adequate for n < 2^24)."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def is_primitive(p) -> bool:
    """True iff p is irreducible and x has order 2^deg(p) - 1 modulo p.

    If x has full order 2^d - 1 in GF(2)[x]/(p), every nonzero residue is a
    unit, so the quotient ring is a field and irreducibility follows.
    """
    p = as_polynomial(p)
    d = p.degree
    if d < 1 or not p.coeffs & 1:
        return False
    order = (1 << d) - 1
    m = p.coeffs
    if _powmod(0b10, order, m) != 1:
        return False
    return all(_powmod(0b10, order // q, m) != 1 for q in factorize(order)) if order > 1 else True


def default_primitive(L: int) -> BinaryPolynomial:
    """The primitive polynomial of degree L with the smallest coefficient mask."""
    _check_degree(L)
    for mask in range((1 << L) | 1, 1 << (L + 1), 2):
        if is_primitive(mask):
            return BinaryPolynomial(mask)
    raise AssertionError(f"no primitive polynomial of degree {L}")  # pragma: no cover


def _check_degree(L: int) -> None:
    if not MIN_DEGREE <= L <= MAX_DEGREE:
        raise ValueError(f"degree L={L} outside supported range {MIN_DEGREE}..{MAX_DEGREE}")


def exponent_inverse(k: int, L: int) -> int:
    """The k' with k * k' = 1 mod 2^L - 1."""
    n = (1 << L) - 1
    if math.gcd(k, n) != 1:
        raise ValueError(f"k={k} is not invertible modulo 2^{L}-1={n}")
    return pow(k, -1, n)


# ---------------------------------------------------------- cyclotomic cosets

def _rotl(e: int, L: int, j: int = 1) -> int:
    n = (1 << L) - 1
    j %= L
    return ((e << j) | (e >> (L - j))) & n


def coset_leader(e: int, L: int) -> tuple[int, int]:
    """Return (leader, j) with leader * 2^j = e mod 2^L - 1.

    Multiplying by 2 modulo 2^L - 1 rotates the L-bit word left by one.
    """
    n = (1 << L) - 1
    e %= n
    best, best_j = e, 0
    rot = e
    for j in range(1, L):
        # rot = e * 2^-j, so rot * 2^j = e
        rot = ((rot >> 1) | ((rot & 1) << (L - 1))) & n
        if rot < best:
            best, best_j = rot, j
    return best, best_j


@dataclass(frozen=True)
class CyclotomicCoset:
    """The orbit {leader * 2^i mod 2^L - 1}."""

    leader: int
    L: int

    @cached_property
    def elements(self) -> tuple[int, ...]:
        n = (1 << self.L) - 1
        out = [self.leader]
        e = self.leader * 2 % n
        while e != self.leader:
            out.append(e)
            e = e * 2 % n
        return tuple(out)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def weight(self) -> int:
        return self.leader.bit_count()

    def __contains__(self, e: int) -> bool:
        return coset_leader(e, self.L)[0] == self.leader

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return self.size


@lru_cache(maxsize=1 << 16)
def coset_size(e: int, L: int) -> int:
    """Number of distinct values e * 2^i mod 2^L - 1."""
    n = (1 << L) - 1
    e %= n
    for j in range(1, L + 1):
        if L % j == 0 and e * ((1 << j) - 1) % n == 0:
            return j
    return L  # pragma: no cover


@lru_cache(maxsize=None)
def coset_leaders(L: int) -> np.ndarray:
    """Sorted leaders of all cyclotomic cosets mod 2^L - 1, including 0."""
    _check_degree(L)
    n = (1 << L) - 1
    e = np.arange(n, dtype=np.int64)
    is_leader = np.ones(n, dtype=bool)
    rot = e.copy()
    for _ in range(L - 1):
        rot = ((rot << 1) | (rot >> (L - 1))) & n
        is_leader &= e <= rot
    leaders = e[is_leader]
    leaders.setflags(write=False)
    return leaders


def cyclotomic_cosets(L: int) -> list[CyclotomicCoset]:
    """All cosets of the doubling map mod 2^L - 1, sorted by leader."""
    return [CyclotomicCoset(int(e), L) for e in coset_leaders(L)]


def unit_cosets(L: int) -> list[CyclotomicCoset]:
    """Cosets of exponents k with gcd(k, 2^L - 1) = 1.

    Each one is the set of conjugates of a primitive element, so there are
    phi(2^L - 1) / L of them.
    """
    n = (1 << L) - 1
    leaders = coset_leaders(L)
    units = leaders[np.gcd(leaders, n) == 1]
    return [CyclotomicCoset(int(e), L) for e in units]


# --------------------------------------------------------------------- fields

class FieldContext:
    """GF(2^L) defined by a primitive modulus; immutable and shareable.

    Log/antilog tables are built lazily under a lock for L <= TABLE_DEGREE;
    larger fields use shift-and-add multiplication and baby-step giant-step
    logarithms.
    """

    def __init__(self, modulus):
        modulus = as_polynomial(modulus)
        L = modulus.degree
        _check_degree(L)
        if not is_primitive(modulus):
            raise NotPrimitiveError(f"{modulus} is not a primitive polynomial")
        self.modulus = modulus
        self.L = L
        self.order = (1 << L) - 1
        self._lock = threading.Lock()
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None
        # Tr(alpha^j) for j < L, packed; Tr is linear so Tr(x) = parity(x & mask)
        mask = 0
        for j in range(L):
            if self._trace_by_squaring(1 << j):
                mask |= 1 << j
        self.trace_mask = mask

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("FieldContext", self.modulus.coeffs))

    def __repr__(self):
        return f"FieldContext({self.modulus})"

    # raw int arithmetic -------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.L <= TABLE_DEGREE:
            exp, log = self.tables()
            return int(exp[(int(log[a]) + int(log[b])) % self.order])
        return _mulmod(a, b, self.modulus.coeffs)

    def _pow_raw(self, a: int, e: int) -> int:
        if not a:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero raised to a negative power")
            return 0
        e %= self.order
        if self.L <= TABLE_DEGREE:
            exp, log = self.tables()
            return int(exp[int(log[a]) * e % self.order])
        return _powmod(a, e, self.modulus.coeffs)

    def _trace_by_squaring(self, a: int) -> int:
        acc, x = 0, a
        for _ in range(self.L):
            acc ^= x
            x = _mulmod(x, x, self.modulus.coeffs)
        assert acc in (0, 1)
        return acc

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(exp, log): exp[i] = alpha^i for i < 2^L - 1; log[x] = i, log[0] = -1."""
        if self._exp is None:
            with self._lock:
                if self._exp is None:
                    exp = self._build_exp()
                    log = np.full(1 << self.L, -1, dtype=np.int64)
                    log[exp] = np.arange(self.order, dtype=np.int64)
                    exp.setflags(write=False)
                    log.setflags(write=False)
                    self._log = log
                    self._exp = exp
        return self._exp, self._log

    def _build_exp(self) -> np.ndarray:
        # doubling: exp[m:2m] = exp[0:m] * alpha^m, a GF(2)-linear map on bits
        exp = np.zeros(self.order, dtype=np.int64)
        exp[0] = 1
        filled = 1
        while filled < self.order:
            step = min(filled, self.order - filled)
            shift = _powmod(0b10, filled, self.modulus.coeffs)
            columns = [_mulmod(1 << j, shift, self.modulus.coeffs) for j in range(self.L)]
            src = exp[:step]
            out = np.zeros(step, dtype=np.int64)
            for j, col in enumerate(columns):
                out ^= ((src >> j) & 1) * col
            exp[filled:filled + step] = out
            filled += step
        return exp

    # element constructors -------------------------------------------------

    def element(self, bits: int) -> "FieldElement":
        return FieldElement(self, bits)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def generator(self) -> "FieldElement":
        return FieldElement(self, 0b10)

    def alpha(self, e: int) -> "FieldElement":
        """generator ** e"""
        return FieldElement(self, self._pow_raw(0b10, e))

    def elements(self):
        return (FieldElement(self, b) for b in range(1 << self.L))


@lru_cache(maxsize=256)
def field_context(modulus) -> FieldContext:
    """Shared context for a modulus (polynomial, mask or text)."""
    return _context_for(as_polynomial(modulus).coeffs)


@lru_cache(maxsize=256)
def _context_for(mask: int) -> FieldContext:
    return FieldContext(BinaryPolynomial(mask))


def as_context(x) -> FieldContext:
    return x if isinstance(x, FieldContext) else field_context(as_polynomial(x))


class FieldElement:
    """An element of GF(2^L) in the polynomial basis of its context."""

    __slots__ = ("ctx", "bits")

    def __init__(self, ctx: FieldContext, bits: int):
        if not 0 <= bits < (1 << ctx.L):
            raise ValueError(f"{bits:#x} is not a reduced element of GF(2^{ctx.L})")
        self.ctx = ctx
        self.bits = bits

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatchError(f"elements of {self.ctx} and {other.ctx} cannot be combined")
        return other

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx == other.ctx and self.bits == other.bits

    def __hash__(self):
        return hash((self.ctx, self.bits))

    def __bool__(self):
        return bool(self.bits)

    def __int__(self):
        return self.bits

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, self.bits ^ other.bits)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, self.ctx._mul_raw(self.bits, other.bits))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx._pow_raw(self.bits, e))

    def inverse(self) -> "FieldElement":
        if not self.bits:
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.ctx.order - 1)

    def trace(self) -> int:
        return (self.bits & self.ctx.trace_mask).bit_count() & 1

    def log(self) -> int:
        return discrete_log(self)

    def __repr__(self):
        return f"FieldElement({self.format()}, GF(2^{self.ctx.L}) mod {self.ctx.modulus})"

    def format(self, symbol: str = "alpha") -> str:
        if not self.bits:
            return "0"
        return f"{symbol}^{self.log()}"


def trace(x: FieldElement) -> int:
    """Absolute trace Tr(x) = x + x^2 + x^4 + ... + x^(2^(L-1)), as 0 or 1."""
    return x.trace()


def discrete_log(x: FieldElement) -> int:
    """The e in [0, 2^L - 2] with generator^e = x."""
    if not x.bits:
        raise ValueError("discrete log of zero is undefined")
    ctx = x.ctx
    if ctx.L <= TABLE_DEGREE:
        _, log = ctx.tables()
        return int(log[x.bits])
    return _bsgs(ctx, x.bits)


def _bsgs(ctx: FieldContext, target: int) -> int:
    n = ctx.order
    m = math.isqrt(n) + 1
    mod = ctx.modulus.coeffs
    baby = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = _mulmod(cur, 0b10, mod)
    giant = _powmod(0b10, n - m, mod)  # alpha^-m
    gamma = target
    for i in range(m):
        j = baby.get(gamma)
        if j is not None:
            return (i * m + j) % n
        gamma = _mulmod(gamma, giant, mod)
    raise AssertionError("logarithm not found; modulus is not primitive")  # pragma: no cover


@lru_cache(maxsize=4096)
def minimal_polynomial(ctx: FieldContext, e: int) -> BinaryPolynomial:
    """Minimal polynomial of alpha^e, of degree equal to its coset size.

    With beta = alpha^e and s the coset size, 1, beta, ..., beta^(s-1) are
    independent over GF(2), so beta^s has exactly one expression in them and
    its coefficients are those of the minimal polynomial.
    """
    s = coset_size(e, ctx.L)
    beta = ctx._pow_raw(0b10, e % ctx.order)
    powers = [1]
    for _ in range(s):
        powers.append(ctx._mul_raw(powers[-1], beta))
    combo = solve_combination(powers[:-1], powers[-1])
    if combo is None:  # pragma: no cover
        raise AssertionError(f"alpha^{e} has no minimal polynomial of degree {s}")
    return BinaryPolynomial(combo | 1 << s)
