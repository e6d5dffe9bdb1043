"""Command-line interface and JSON serialization.

Exit codes: 0 success, 1 verification answered "no", 2 decomposition
rejected the input tuple, 3 usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import gcd

from .errors import DivisionByZero, InvalidInput, NotAWZForm, ParseError
from .intlinear import IntegerLinearType, integer_linear_decompose
from .orbital import orbital_residue
from .parser import parse_expression, parse_polynomial
from .shifts import WZForm, is_wz_form
from .wzform import (AdditiveRepresentation, conjugate_polygamma, decompose,
                     generate, random_additive_rep)

EXIT_OK = 0
EXIT_NO = 1
EXIT_NOT_WZ = 2
EXIT_USAGE = 3


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------------- #
# JSON form of an additive representation


def rep_to_json(rep):
    return {
        "vars": list(rep.vars),
        "exact": str(rep.exact_part),
        "uniform": [{"type": list(vtype.entries), "r": str(r)}
                    for vtype, r in rep.parts],
    }


def rep_from_json(obj):
    if not isinstance(obj, dict):
        raise InvalidInput("representation document must be an object")
    try:
        vars = tuple(obj["vars"])
        exact_text = obj["exact"]
        uniform = obj["uniform"]
    except KeyError as missing:
        raise InvalidInput(f"missing key {missing} in representation document")
    if not vars or not all(isinstance(v, str) for v in vars):
        raise InvalidInput("vars must be a nonempty list of names")
    exact = parse_expression(exact_text, vars)
    parts = []
    for entry in uniform:
        vtype = entry.get("type")
        rtext = entry.get("r")
        if not isinstance(vtype, list) or len(vtype) != len(vars):
            raise InvalidInput("each uniform entry needs a type of full length")
        if not all(isinstance(e, int) for e in vtype):
            raise InvalidInput("type entries must be integers")
        if not any(vtype) or gcd(*vtype) != 1:
            raise InvalidInput("type vectors must be nonzero with coprime entries")
        r = parse_expression(rtext, ("Z",))
        parts.append((IntegerLinearType(vtype), r))
    return AdditiveRepresentation(vars, exact, parts)


def _load_rep(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"malformed JSON in {path}: {exc}")
    return rep_from_json(doc)


def _parse_vars(text):
    vars = tuple(name.strip() for name in text.split(",") if name.strip())
    if not vars:
        raise InvalidInput("--vars needs a comma-separated list of names")
    return vars


def _read_components(paths, vars):
    components = []
    for path in paths:
        with open(path, "r", encoding="utf-8") as fh:
            components.append(parse_expression(fh.read(), vars))
    return components


# ---------------------------------------------------------------------- #
# subcommands


def _cmd_verify(args, out, err):
    vars = _parse_vars(args.vars)
    components = _read_components(args.files, vars)
    if len(components) != len(vars):
        raise InvalidInput("need exactly one component file per variable")
    ok = is_wz_form(components)
    print(f"WZ-form: {'yes' if ok else 'no'}", file=out)
    return EXIT_OK if ok else EXIT_NO


def _cmd_decompose(args, out, err):
    vars = _parse_vars(args.vars)
    components = _read_components(args.files, vars)
    if len(components) != len(vars):
        raise InvalidInput("need exactly one component file per variable")
    form = WZForm(vars, components)
    rep = decompose(form)
    doc = rep_to_json(rep)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    print(f"wrote {args.out}", file=out)
    return EXIT_OK


def _cmd_generate(args, out, err):
    rep = _load_rep(args.infile)
    form = generate(rep)
    for component in form:
        print(component, file=out)
    return EXIT_OK


def _cmd_residue(args, out, err):
    vars = _parse_vars(args.vars)
    if args.wrt not in vars:
        raise InvalidInput(f"--wrt names an undeclared variable {args.wrt!r}")
    i = vars.index(args.wrt)
    d = parse_polynomial(args.at, vars)
    components = _read_components([args.file], vars)
    value = orbital_residue(components[0], d, args.mult, i)
    print(value, file=out)
    return EXIT_OK


def _cmd_intlinear(args, out, err):
    vars = _parse_vars(args.vars)
    p = parse_polynomial(args.poly, vars)
    got = integer_linear_decompose(p)
    if got is None:
        print("not integer-linear", file=out)
        return EXIT_NO
    P, vtype = got
    print(f"({P}, {vtype})", file=out)
    return EXIT_OK


def _cmd_conjugate(args, out, err):
    rep = _load_rep(args.infile)
    expr = conjugate_polygamma(rep)
    print(expr.latex() if args.latex else expr, file=out)
    return EXIT_OK


def _cmd_fuzz(args, out, err):
    for k in range(args.count):
        seed = args.seed + k
        rep = random_additive_rep(seed, n=args.nvars, max_types=args.max_types,
                                  max_deg=args.max_deg, coeff_bound=args.coeff_bound)
        first = generate(rep)
        second = generate(decompose(first))
        if second.components != first.components:
            print(f"counterexample at seed {seed}:", file=out)
            print(f"  representation: {rep}", file=out)
            for a, b in zip(first, second):
                if a != b:
                    print(f"  component {a} != {b}", file=out)
            return EXIT_NO
    print(f"{args.count} round trips ok (seeds {args.seed}..{args.seed + args.count - 1})",
          file=out)
    return EXIT_OK


def _build_parser():
    parser = _ArgumentParser(prog="wzforms",
                             description="Exact tools for rational "
                                         "Wilf-Zeilberger forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the compatibility conditions")
    p.add_argument("--vars", required=True)
    p.add_argument("files", nargs="+", metavar="component-file")
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("decompose", help="write the additive representation "
                                          "of a compatible tuple as JSON")
    p.add_argument("--vars", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("files", nargs="+", metavar="component-file")
    p.set_defaults(run=_cmd_decompose)

    p = sub.add_parser("generate", help="print the tuple described by a "
                                         "representation file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(run=_cmd_generate)

    p = sub.add_parser("residue", help="orbital residue of one component")
    p.add_argument("--vars", required=True)
    p.add_argument("--wrt", required=True)
    p.add_argument("--at", required=True, metavar="poly")
    p.add_argument("--mult", required=True, type=int)
    p.add_argument("file", metavar="component-file")
    p.set_defaults(run=_cmd_residue)

    p = sub.add_parser("intlinear", help="integer-linear decomposition of a "
                                          "polynomial")
    p.add_argument("--vars", required=True)
    p.add_argument("poly")
    p.set_defaults(run=_cmd_intlinear)

    p = sub.add_parser("conjugate", help="polygamma conjugate of a "
                                          "representation file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--latex", action="store_true")
    p.set_defaults(run=_cmd_conjugate)

    p = sub.add_parser("fuzz", help="seeded generate/decompose round-trip "
                                     "search for counterexamples")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=25)
    p.add_argument("--nvars", type=int, default=3)
    p.add_argument("--max-types", dest="max_types", type=int, default=2)
    p.add_argument("--max-deg", dest="max_deg", type=int, default=2)
    p.add_argument("--coeff-bound", dest="coeff_bound", type=int, default=9)
    p.set_defaults(run=_cmd_fuzz)
    return parser


def run_command(argv, out=None, err=None):
    """Dispatch one command line; returns the process exit status."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.run(args, out, err)
    except _UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except NotAWZForm as exc:
        print(f"not a WZ-form: {exc}", file=err)
        return EXIT_NOT_WZ
    except (ParseError, InvalidInput, DivisionByZero) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main():
    try:
        status = run_command(sys.argv[1:])
        sys.stdout.flush()
    except KeyboardInterrupt:
        sys.exit(130)
    except BrokenPipeError:
        # downstream closed the pipe (e.g. | head); not our error
        import os
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        sys.exit(141)
    sys.exit(status)


if __name__ == "__main__":
    main()
