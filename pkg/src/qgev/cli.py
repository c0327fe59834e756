"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 file or
shape error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import construction, golden, minors
from .linalg import ExactMatrix, ShapeError, charpoly
from .pipeline import GAMMA, VerifyConfig, default_width, verify_all
from .poly import UniPoly, primitive_integer_form
from .tensor import PartitionSpec, choi_apply, pairing, partial_transpose, parse_subset

EMITTABLE = ("witness", "rho1", "sigma1", "sigma2", "charpoly-rho1", "charpoly-rho1-gamma")


class InputError(Exception):
    """Unreadable file, malformed object or incompatible shapes (exit 3)."""


def _positive_fraction(text: str) -> Fraction:
    try:
        w = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if w <= 0:
        raise argparse.ArgumentTypeError("width must be positive")
    return w


def _dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(d) for d in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; expected e.g. 2,2,2") from None
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError("dims must be positive integers")
    return dims


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None


def _read_matrix(path: str) -> ExactMatrix:
    try:
        return ExactMatrix.from_json(_read_json(path))
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _poly_json(p: UniPoly) -> dict:
    return primitive_integer_form(p).to_json()


def _write(obj, out: str | None):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _spec(dims, subset: str, M: ExactMatrix) -> PartitionSpec:
    dims = dims or M.dims
    if not dims:
        raise InputError("no --dims given and the matrix file has none")
    try:
        return PartitionSpec(tuple(dims), parse_subset(subset, len(dims)))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_verify(args) -> int:
    width = args.width if args.width is not None else default_width()
    report = verify_all(VerifyConfig(width=width, samples=args.samples, seed=args.seed))
    if args.json:
        sys.stdout.write(report.dumps() + "\n")
    else:
        sys.stdout.write(report.to_text() + "\n")
    return 0 if report.overall else 1


def cmd_emit(args) -> int:
    what = args.object
    if what == "witness":
        obj = golden.witness().to_json()
    elif what == "charpoly-rho1":
        obj = _poly_json(charpoly(construction.build_states().rho1))
    elif what == "charpoly-rho1-gamma":
        obj = _poly_json(charpoly(partial_transpose(construction.build_states().rho1, GAMMA)))
    else:
        obj = getattr(construction.build_states(), what).to_json()
    _write(obj, args.output)
    return 0


def cmd_pair(args) -> int:
    A, B = _read_matrix(args.a), _read_matrix(args.b)
    print(pairing(A, B))
    return 0


def cmd_ptranspose(args) -> int:
    M = _read_matrix(args.matrix)
    spec = _spec(args.dims, args.subset, M)
    _write(partial_transpose(M.with_dims(spec.dims), spec).to_json(), args.output)
    return 0


def cmd_charpoly(args) -> int:
    M = _read_matrix(args.matrix)
    try:
        p = charpoly(M)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(p.to_json(), args.output)
    return 0


def cmd_choi(args) -> int:
    W = _read_matrix(args.witness)
    X = _read_matrix(args.apply)
    spec = _spec(args.dims, args.subset, W)
    _write(choi_apply(W.with_dims(spec.dims), spec, X).to_json(), args.output)
    return 0


def cmd_minors(args) -> int:
    ok = True
    for m in minors.minor_polynomials(args.which):
        ok &= m.ok
        print(f"{m.name} = {m.expected}  identity: {'pass' if m.ok else 'fail'}")
    for res in minors.run_scripts():
        if not res.name.startswith(f"Delta^{args.which}_"):
            continue
        ok &= res.passed
        print(f"{res.name}: {res.conclusion}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgev", description="Exact certificates for a tri-qubit entanglement witness.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the full certificate chain")
    v.add_argument("--json", action="store_true")
    v.add_argument("--width", type=_positive_fraction, default=None)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("emit", help="write a reference object as JSON")
    e.add_argument("object", choices=EMITTABLE)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_emit)

    pr = sub.add_parser("pair", help="exact pairing Tr(B A^t)")
    pr.add_argument("a")
    pr.add_argument("b")
    pr.set_defaults(func=cmd_pair)

    pt = sub.add_parser("ptranspose", help="partial transpose on a subset")
    pt.add_argument("matrix")
    pt.add_argument("--dims", type=_dims)
    pt.add_argument("--subset", required=True)
    pt.add_argument("-o", "--output")
    pt.set_defaults(func=cmd_ptranspose)

    cp = sub.add_parser("charpoly", help="characteristic polynomial")
    cp.add_argument("matrix")
    cp.add_argument("-o", "--output")
    cp.set_defaults(func=cmd_charpoly)

    ch = sub.add_parser("choi", help="apply the map extracted from a block matrix")
    ch.add_argument("witness")
    ch.add_argument("--dims", type=_dims)
    ch.add_argument("--subset", required=True)
    ch.add_argument("--apply", required=True)
    ch.add_argument("-o", "--output")
    ch.set_defaults(func=cmd_choi)

    mn = sub.add_parser("minors", help="symbolic minors and positivity scripts")
    mn.add_argument("which", choices=("B", "C"))
    mn.set_defaults(func=cmd_minors)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, ShapeError) as exc:
        print(f"qgev: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
