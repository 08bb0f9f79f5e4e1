"""Command line entry point: generate, verify, search, admissible.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 partial result.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import certfile
from .curves import CurveError, Family, SequenceSpec, SpecError, make_curve
from .elliptic import ConstructionMismatch, EllipticError
from .exact import parse_rat
from .families import (
    InadmissibleError,
    PartialResultWarning,
    edwards_admissible,
    general_huff_admissible,
    generate,
    huff_admissible,
    twisted_admissible,
)
from .oracle import brute_force_points, independent_verify

OK, VERIFY_FAILED, BAD_INPUT, PARTIAL = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _rats(text):
    if text is None:
        return None
    try:
        return [parse_rat(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _rat(text):
    if text is None:
        return None
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _extra(args) -> dict:
    return {k: _rat(getattr(args, k)) for k in ("a", "b", "p") if getattr(args, k, None) is not None}


def _report_json(report) -> str:
    data = {
        "ok": report.ok,
        "h_value": certfile.encode(report.h_value),
        "failures": report.failures,
        "notes": certfile.encode({k: v for k, v in report.notes.items()
                                  if k not in ("construction", "transport")}),
    }
    return json.dumps(data, indent=2)


def cmd_generate(args) -> int:
    family = Family.parse(args.family)
    spec = SequenceSpec(family, tuple(_rats(args.values)), _extra(args), args.coordinate)
    slopes = _rats(args.slopes)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PartialResultWarning)
        result = generate(spec, args.count, args.max_multiple, slopes=slopes)
    text = certfile.dumps(certfile.from_result(result))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if not result.complete:
        for key, reason in result.skipped:
            print(f"  skipped {key}: {reason}", file=sys.stderr)
        return PARTIAL
    return OK


def cmd_verify(args) -> int:
    try:
        cf = certfile.read(args.path)
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc}") from None
    if not cf.certificates:
        print("nothing to verify: the file has no certificates")
        return OK
    failed = 0
    for k, cert in enumerate(cf.certificates):
        verdict = independent_verify(cert)
        params = ", ".join(f"{n}={v}" for n, v in cert.params.items())
        if verdict:
            print(f"certificate {k} ({cert.family.value}: {params}): ok")
        else:
            failed += 1
            print(f"certificate {k} ({cert.family.value}: {params}): FAILED")
            for r in verdict.reasons:
                print(f"    {r}")
    print(f"{len(cf.certificates) - failed} of {len(cf.certificates)} certificates verified")
    return VERIFY_FAILED if failed else OK


def cmd_search(args) -> int:
    if args.height < 1:
        raise InputError("--height must be at least 1")
    params = {k: _rat(getattr(args, k)) for k in ("a", "b", "d") if getattr(args, k) is not None}
    try:
        curve = make_curve(args.family, params)
    except CurveError as exc:
        raise InputError(str(exc)) from None
    report = brute_force_points(curve, args.height)
    doc = {
        "format": certfile.FORMAT,
        "kind": "search",
        "curve": report.curve_id,
        "height": report.height,
        "candidates": report.candidates,
        "elapsed_seconds": round(report.elapsed, 6),
        "points": certfile.encode(report.points),
    }
    print(json.dumps(doc, indent=2))
    return OK


def cmd_admissible(args) -> int:
    family = Family.parse(args.family)
    vals = _rats(args.values)
    try:
        if family is Family.EDWARDS:
            report = edwards_admissible(*vals)
        elif family is Family.HUFF:
            report = huff_admissible(*vals)
        elif family is Family.TWISTED_EDWARDS:
            if args.a is None:
                raise InputError("twisted Edwards needs --a")
            report = twisted_admissible(_rat(args.a), *vals)
        else:
            if args.b is None:
                raise InputError("general Huff needs --b")
            report = general_huff_admissible(*vals, _rat(args.b))
    except TypeError:
        raise InputError(f"wrong number of values for {family.value}: {len(vals)}") from None
    print(_report_json(report))
    return OK if report.ok else BAD_INPUT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seqcurves", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    families = ["edwards", "twisted", "twisted_edwards", "huff", "ghuff", "general_huff"]

    g = sub.add_parser("generate", help="emit curves realizing a set of x-coordinates")
    g.add_argument("--family", required=True, choices=families)
    g.add_argument("--values", required=True, help="comma separated rationals, e.g. -1,0,1,2,3,4")
    g.add_argument("--count", type=int, default=3)
    g.add_argument("--max-multiple", type=int, default=25)
    g.add_argument("--slopes", help="general Huff only: run the fixed-p slope recipe on these slopes")
    g.add_argument("--a")
    g.add_argument("--b")
    g.add_argument("--p")
    g.add_argument("--coordinate", choices=["x", "y"], default="x")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="independently re-check a certificate file")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="brute force affine points of bounded x-height")
    s.add_argument("--family", required=True, choices=families)
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--d")
    s.add_argument("--height", type=int, required=True)
    s.set_defaults(func=cmd_search)

    a = sub.add_parser("admissible", help="check the construction hypotheses for free values")
    a.add_argument("--family", required=True, choices=families)
    a.add_argument("--values", required=True, help="the non-anchor values, e.g. 2,3 for edwards")
    a.add_argument("--a")
    a.add_argument("--b")
    a.set_defaults(func=cmd_admissible)
    return ap


_VALUE_FLAGS = ("--values", "--slopes", "--a", "--b", "--p", "--d")


def _glue_negative_values(argv):
    # "--values -1,0,1" would otherwise read as a flag
    out, k = [], 0
    while k < len(argv):
        tok = argv[k]
        if tok in _VALUE_FLAGS and k + 1 < len(argv) and argv[k + 1].startswith("-"):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else BAD_INPUT
    try:
        return args.func(args)
    except ConstructionMismatch:
        raise
    except InadmissibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(_report_json(exc.report), file=sys.stderr)
        return BAD_INPUT
    except (InputError, SpecError, CurveError, certfile.FormatError, EllipticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
