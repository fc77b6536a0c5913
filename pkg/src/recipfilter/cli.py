"""Command-line front end.

Generator spec files are line-oriented ``key = value`` text::

    # L = 5 filter generator of order 4
    polynomial = x^5+x^3+1
    initial_state = 10000
    filter = x0*x1*x3*x4 + ... + x3

Exit codes: 0 success, 1 failed ``--verify``, 2 input error, 3 infeasible
reconstruction.  Every file argument accepts ``-`` for standard input.
"""

from __future__ import annotations

import argparse
import sys

from .anf import FilterGenerator, parse_anf
from .equivalence import enumerate_classes, equivalent_generator, predicted_order
from .errors import InfeasibleReconstructionError
from .gf2_field import MAX_DEGREE, MIN_DEGREE, BinaryPolynomial, default_primitive, field_context
from .lfsr_core import format_bits, parse_bits
from .linear_complexity import berlekamp_massey, coset_support
from .spectrum import compute_spectrum

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3

SPEC_KEYS = ("polynomial", "initial_state", "filter")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def parse_spec_text(text: str) -> FilterGenerator:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in SPEC_KEYS:
            raise InputError(f"line {lineno}: expected one of {', '.join(SPEC_KEYS)} = value")
        if key in values:
            raise InputError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value.strip()
    missing = [k for k in SPEC_KEYS if k not in values]
    if missing:
        raise InputError(f"missing keys: {', '.join(missing)}")
    try:
        poly = BinaryPolynomial.parse(values["polynomial"])
        state = parse_bits(values["initial_state"])
        f = parse_anf(values["filter"], arity=poly.degree)
        return FilterGenerator(poly, state, f)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _looks_like_spec(text: str) -> bool:
    return "=" in text


def cmd_keystream(args) -> int:
    g = parse_spec_text(_read(args.spec))
    n = g.period if args.bits is None else args.bits
    if n < 0:
        raise InputError("--bits must be non-negative")
    print(format_bits(g.keystream(n)))
    return EXIT_OK


def _analysis_lines(z, ctx) -> list[str]:
    bm = berlekamp_massey(list(z) * 2)
    support = coset_support(bm.characteristic_polynomial, ctx)
    spectrum = compute_spectrum(z, ctx)
    if spectrum.support() != support:  # pragma: no cover - cross-check of two routes
        raise AssertionError(f"BM support {support} != spectrum support {spectrum.support()}")
    lines = [
        f"length: {len(z)}",
        f"modulus: {ctx.modulus}",
        f"linear_complexity: {bm.complexity}",
        f"minimal_polynomial: {bm.characteristic_polynomial}",
        "cosets: " + (", ".join(f"{E} (weight {E.bit_count()})" for E in support) or "none"),
        "spectrum:",
        spectrum.format(),
        "predicted_reciprocal_order: "
        + (str(predicted_order(spectrum)) if spectrum.coefficients else "none"),
    ]
    return lines


def cmd_analyze(args) -> int:
    text = _read(args.input)
    if _looks_like_spec(text):
        g = parse_spec_text(text)
        if args.L is not None and args.L != g.L:
            raise InputError(f"--L {args.L} does not match the generator's polynomial degree {g.L}")
        z = g.keystream()
        ctx = field_context(g.polynomial)
    else:
        try:
            z = parse_bits(text)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        L = args.L
        poly = None
        if args.poly is not None:
            try:
                poly = BinaryPolynomial.parse(args.poly)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            if L is not None and poly.degree != L:
                raise InputError(f"--poly has degree {poly.degree}, but --L is {L}")
            L = poly.degree
        if L is None:
            L = (len(z) + 1).bit_length() - 1
        if not MIN_DEGREE <= L <= MAX_DEGREE:
            raise InputError(f"L={L} outside {MIN_DEGREE}..{MAX_DEGREE}")
        if len(z) != (1 << L) - 1:
            raise InputError(f"sequence length {len(z)} != 2^{L}-1 = {(1 << L) - 1}")
        try:
            ctx = field_context(poly if poly is not None else default_primitive(L))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    print("\n".join(_analysis_lines(z, ctx)))
    return EXIT_OK


def cmd_equivalent(args) -> int:
    g = parse_spec_text(_read(args.spec))
    try:
        report = equivalent_generator(g, k=args.k)
    except InfeasibleReconstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = report.format()
    status = EXIT_OK
    if args.verify:
        same = bool((report.original.keystream() == report.equivalent.keystream()).all())
        out += f"verified: {'yes' if same else 'no'}\n"
        status = EXIT_OK if same else EXIT_VERIFY_FAILED
    sys.stdout.write(out)
    return status


def cmd_enumerate(args) -> int:
    if not MIN_DEGREE <= args.L <= MAX_DEGREE:
        raise InputError(f"--L must be in {MIN_DEGREE}..{MAX_DEGREE}")
    try:
        listing = enumerate_classes(args.L, modulus=args.poly, limit=args.limit)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(listing.format())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recipfilter",
        description="Analyze nonlinear filter generators and build reciprocal equivalents.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keystream", help="print the first N keystream bits")
    p.add_argument("spec", help="generator spec file, or - for stdin")
    p.add_argument("--bits", type=int, default=None, help="number of bits (default: one period)")
    p.set_defaults(func=cmd_keystream)

    p = sub.add_parser("analyze", help="linear complexity, coset support and spectrum")
    p.add_argument("input", help="spec file or 0/1 sequence file of length 2^L-1, or -")
    p.add_argument("--L", type=int, default=None, help="register length for sequence input")
    p.add_argument("--poly", default=None, help="field modulus for sequence input")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("equivalent", help="equivalent generator on another LFSR")
    p.add_argument("spec", help="generator spec file, or -")
    p.add_argument("--k", type=int, default=None,
                   help="use the LFSR with root alpha^k (default: reciprocal)")
    p.add_argument("--verify", action="store_true", help="compare both full-period keystreams")
    p.set_defaults(func=cmd_equivalent)

    p = sub.add_parser("enumerate", help="list the phi(2^L-1)/L equivalent LFSRs")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--poly", default=None, help="primitive modulus (default: smallest)")
    p.add_argument("--limit", type=int, default=None, help="print at most this many classes")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
