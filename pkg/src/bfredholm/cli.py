"""``bfred``: classify elements, emit spectra and run verification suites.

Exit codes: 0 success, 1 verification failure, 2 schema or input error,
3 numerical error. Reports are JSON on stdout with sorted keys and a
reproducibility header; diagnostics go to stderr. ``BF_LOG`` sets the log
level (e.g. ``BF_LOG=debug``).
"""

import argparse
import csv
import io
import json
import logging
import os
import sys

import numpy as np

from . import __version__, kernels
from .errors import BFError, InputError
from .matrix import DEFAULT_TOL, drazin_inverse, matrix_to_json
from .scenario import SCHEMA, load_scenario
from .semisimple import (
    b_fredholm_spectrum,
    b_weyl_decompose,
    classify,
    fredholm_spectrum,
    index,
    quotient_drazin,
    verify_drazin_element,
)
from .suites import SUITES
from .toeplitz import bf_spectrum_curve, classify_operator, kernel_cokernel_oracle

log = logging.getLogger("bfredholm")

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_NUMERIC = 0, 1, 2, 3


def header(args, **extra):
    out = {"schema": SCHEMA, "tool": "bfredholm", "version": __version__,
           "backend": kernels.BACKEND, "tolerances": {"tol": args.tol}}
    for key in ("seed", "samples", "grid"):
        if getattr(args, key, None) is not None:
            out[key] = getattr(args, key)
    out.update(extra)
    return out


def emit(obj, stream=None):
    stream = stream or sys.stdout
    json.dump(obj, stream, sort_keys=True, indent=2, default=_jsonable)
    stream.write("\n")


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return matrix_to_json(x) if x.ndim == 2 else [_jsonable(v) for v in x]
    raise TypeError(f"not JSON serialisable: {type(x).__name__}")


def _tol(args, sc):
    return float(sc.tolerances.get("tol", args.tol))


def cmd_classify(args):
    sc = load_scenario(args.scenario)
    tol = _tol(args, sc)
    if sc.kind == "block":
        a, ideal = sc.block()
        rep = classify(a, ideal, tol)
        body = rep.to_json()
        if rep.b_fredholm:
            body["index"] = _jsonable(index(a, ideal, tol))
    else:
        t = sc.toeplitz()
        rep = classify_operator(t, tol)
        body = rep.to_json()
        body["index"] = rep.index
        if rep.fredholm and t.space.value == "unilateral":
            body["oracle"] = kernel_cokernel_oracle(t).to_json()
    emit({"header": header(args, kind=sc.kind), "report": body})
    return EXIT_OK


def _points(seq):
    return [[float(complex(z).real), float(complex(z).imag)] for z in seq]


def cmd_spectrum(args):
    sc = load_scenario(args.scenario)
    tol = _tol(args, sc)
    if sc.kind == "block":
        a, ideal = sc.block()
        sf, sbf = fredholm_spectrum(a, ideal, tol), b_fredholm_spectrum(a, ideal, tol)
        coincide = False
    else:
        curves = bf_spectrum_curve(sc.toeplitz(), args.grid)
        sf, sbf, coincide = curves.sigma_f, curves.sigma_bf, curves.coincide
    if args.out == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "tag"])
        for tag, pts in (("sigma_F", sf), ("sigma_BF", sbf)):
            for re, im in _points(pts):
                w.writerow([repr(re), repr(im), tag])
        text = buf.getvalue()
    else:
        buf = io.StringIO()
        emit({"header": header(args, kind=sc.kind), "sigma_F": _points(sf),
              "sigma_BF": _points(sbf), "coincide": coincide}, buf)
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args):
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    kw = {"seed": args.seed}
    if args.samples is not None:
        kw["samples"] = args.samples
    result = SUITES[args.suite](**kw)
    emit({"header": header(args), "result": result})
    print(f"{args.suite}: {'PASS' if result['passed'] else 'FAIL'} "
          f"({result['checks']} checks, {result['violation_count']} violations)", file=sys.stderr)
    return EXIT_OK if result["passed"] else EXIT_FAIL


def cmd_decompose(args):
    sc = load_scenario(args.scenario)
    if sc.kind != "block":
        raise InputError("decompose is defined for block scenarios only")
    a, ideal = sc.block()
    b, c = b_weyl_decompose(a, ideal, _tol(args, sc))
    _, k, res = verify_drazin_element(b, _tol(args, sc))
    emit({"header": header(args, kind=sc.kind),
          "b": b.to_json(), "c": c.to_json(), "b_drazin_index": k, "b_residuals": res})
    return EXIT_OK


def cmd_drazin(args):
    sc = load_scenario(args.scenario)
    tol = _tol(args, sc)
    if sc.kind == "block":
        a, ideal = sc.block()
        inv, k, res = verify_drazin_element(a, tol)
        quot = quotient_drazin(a, ideal, tol)
        body = {"inverse": inv.to_json(), "drazin_index": k, "residuals": res,
                "quotient": {str(i): {"drazin_index": d.drazin_index, "inverse": matrix_to_json(d.inverse)}
                             for i, d in sorted(quot.items())}}
    else:
        t = sc.toeplitz()
        if not t.symbol.is_zero or not t.pert_size:
            raise InputError("drazin on a toeplitz scenario needs a finite-rank (zero-symbol) element")
        res = drazin_inverse(t.perturbation, tol)
        body = {"inverse": matrix_to_json(res.inverse), "drazin_index": res.drazin_index,
                "residuals": res.residuals}
    emit({"header": header(args, kind=sc.kind), "result": body})
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="bfred", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="rank / clustering tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a block or toeplitz scenario")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("spectrum", parents=[common], help="Fredholm and B-Fredholm spectra")
    p.add_argument("scenario")
    p.add_argument("--grid", type=int, default=1024, help="curve samples (toeplitz)")
    p.add_argument("--out", choices=("csv", "json"), default="json")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", parents=[common], help="run a seeded verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="a = b + c with b Drazin invertible, c in J")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("drazin", parents=[common], help="Drazin inverse in A and modulo J")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_drazin)
    return parser


def main(argv=None):
    level = os.environ.get("BF_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which matches the schema-error code
        return exc.code if isinstance(exc.code, int) else EXIT_SCHEMA
    log.debug("backend %s", kernels.BACKEND)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except BFError as exc:
        print(f"numerical error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
