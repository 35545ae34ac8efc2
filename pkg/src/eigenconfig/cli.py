"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 negative verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import binaryec, counts, dynamics, planar, solver
from .eigensys import Tensor, fermat_eigenpoints
from .polycore import DEDUP_TOL, RESIDUAL_TOL, HomogeneousForm, ProjectivePoint, to_exact

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_NEGATIVE = 0, 2, 3, 4


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input parsing


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _scalar(v, mode=None):
    """JSON scalar: int / 'p/q' string give exact values, floats and [re, im] give complex."""
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise InputError(f"bad scalar {v!r}")
        if mode == "rational":
            if float(v[1]) != 0:
                raise InputError("complex value in rational mode")
            return to_exact(v[0])
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, bool):
        raise InputError(f"bad scalar {v!r}")
    if isinstance(v, int) or isinstance(v, str):
        try:
            c = Fraction(v)
        except ValueError as exc:
            raise InputError(f"bad scalar {v!r}") from exc
        return c if mode != "float" else complex(c)
    if isinstance(v, float):
        return to_exact(v) if mode == "rational" else complex(v)
    raise InputError(f"bad scalar {v!r}")


def load_object(path, mode=None):
    """A Tensor (has 'entries') or a HomogeneousForm (has 'terms')."""
    obj = _load(path)
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object")
    try:
        if "entries" in obj:
            A = Tensor.from_json(obj)
        elif "terms" in obj:
            A = HomogeneousForm.from_json(obj)
        else:
            raise InputError("expected a tensor ('entries') or a form ('terms')")
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed input: {exc}") from exc
    if mode == "float":
        A = A.to_float()
    elif mode == "rational":
        A = A.to_exact() if isinstance(A, HomogeneousForm) else Tensor(A.n, A.d, [to_exact(c) for c in A.entries])
    return A


def load_points(path, mode=None):
    obj = _load(path)
    if isinstance(obj, dict):
        obj = obj.get("points", obj.get("coords"))
    if not isinstance(obj, list):
        raise InputError("expected a list of points")
    pts = []
    for p in obj:
        coords = p["coords"] if isinstance(p, dict) else p
        pts.append([_scalar(c, mode) for c in coords])
    if mode is None and not all(isinstance(c, Fraction) for p in pts for c in p):
        pts = [[complex(c) for c in p] for p in pts]
    return pts


def load_forms(path, mode=None):
    obj = _load(path)
    if isinstance(obj, dict):
        obj = obj.get("forms")
    if not isinstance(obj, list):
        raise InputError("expected a list of forms")
    forms = [HomogeneousForm.from_json(f) for f in obj]
    if mode == "float":
        forms = [f.to_float() for f in forms]
    return forms


def _parse_list(text, kind=float):
    try:
        return [kind(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"bad list {text!r}") from exc


def _frac(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad number {text!r}") from exc


# ---------------------------------------------------------------------------
# output


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o)}")


def _emit(args, payload):
    text = payload if isinstance(payload, str) else json.dumps(payload, default=_default) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _points_json(points):
    return [p.to_json() for p in sorted(points, key=lambda q: q.sort_key())]


# ---------------------------------------------------------------------------
# commands


def cmd_counts(args):
    _emit(args, counts.all_counts(args.n, args.d, args.ell))
    return EXIT_OK


def cmd_solve(args):
    A = load_object(args.tensor, args.mode)
    conf = solver.solve(A, ell=args.ell, k=args.k, method=args.method, seed=args.seed,
                        tol_residual=args.tol_residual, tol_dedup=args.tol_dedup)
    out = conf.to_json()
    out["info"] = {k: v for k, v in conf.info.items() if isinstance(v, (int, float, str, bool))}
    _emit(args, out)
    return EXIT_OK


def cmd_fermat(args):
    _emit(args, {"points": _points_json(fermat_eigenpoints(args.n, args.d, args.ell))})
    return EXIT_OK


def cmd_check_binary_sym(args):
    pts = load_points(args.points, args.mode)
    ok = binaryec.symmetric_representable(pts)
    _emit(args, {"symmetricRepresentable": ok})
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_ec_check(args):
    forms = load_forms(args.forms, args.mode)
    ok, A = binaryec.ec_membership(args.d, forms, seed=args.seed)
    _emit(args, {"member": ok, "tensor": A.to_json() if A is not None else None})
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_ec_dim(args):
    _emit(args, {"d": args.d, "estimate": binaryec.ec_dimension_estimate(args.d, seed=args.seed),
                 "conjectured": binaryec.conjectured_ec_dimension(args.d)})
    return EXIT_OK


def cmd_check_7pts(args):
    pts = load_points(args.points, args.mode)
    d = args.d
    out = {}
    if len(pts) == 7:
        out["noSixOnConic"] = planar.no_six_on_conic(pts)
    if args.symmetric:
        res = planar.is_symmetric_eigenconfiguration(pts, seed=args.seed)
        out.update(res.base.to_json())
        out["symmetric"] = res.symmetric
        out["phi"] = res.phi.to_json() if res.phi is not None else None
        ok = res.symmetric
    else:
        res = planar.is_eigenconfiguration(pts, d, seed=args.seed)
        out.update(res.to_json())
        ok = res.accepted
    _emit(args, out)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_hesse(args):
    pts = planar.hesse_eigenpoints(_frac(args.a), _frac(args.b), _frac(args.c), _frac(args.h))
    _emit(args, {"points": [p.to_json() for p in pts], "real": sum(p.is_real() for p in pts)})
    return EXIT_OK


def cmd_arrangement(args):
    obj = _load(args.lines)
    rows = obj.get("lines") if isinstance(obj, dict) else obj
    if not isinstance(rows, list):
        raise InputError("expected {'lines': [[a, b, c], ...]}")
    arr = dynamics.LineArrangement([[_scalar(c, "rational" if args.mode != "float" else None) for c in r]
                                    for r in rows])
    conf = dynamics.arrangement_eigenconfiguration(arr, seed=args.seed)
    out = conf.to_json()
    out["info"] = conf.info
    _emit(args, out)
    return EXIT_OK


def cmd_power_method(args):
    A = load_object(args.tensor)
    v0 = _parse_list(args.start)
    outcome = dynamics.power_method_run(A, v0, ell=args.ell, max_iter=args.iters, root=args.root)
    _emit(args, outcome.to_json())
    return EXIT_OK


def cmd_robust(args):
    A = load_object(args.tensor)
    res = dynamics.robust_eigenpoints(A, ell=args.ell, samples=args.samples, seed=args.seed)
    _emit(args, {"robust": [{"coords": p.to_json()["coords"], "basin": b, "spectralRadius": r}
                            for p, b, r in res]})
    return EXIT_OK


def cmd_perturb(args):
    phi0 = load_object(args.phi0)
    phi1 = load_object(args.phi1)
    if not (isinstance(phi0, HomogeneousForm) and isinstance(phi1, HomogeneousForm)):
        raise InputError("perturb expects forms")
    eps = [_frac(e) for e in args.eps_list.split(",") if e.strip()]
    rows = dynamics.perturbation_experiment(phi0, phi1, eps, seed=args.seed)
    _emit(args, dynamics.perturbation_csv(rows))
    return EXIT_OK


def cmd_pencil_degree(args):
    A = load_object(args.a, args.mode)
    B = load_object(args.b, args.mode)
    if not (isinstance(A, Tensor) and isinstance(B, Tensor)):
        raise InputError("pencil-degree expects two tensors")
    deg = solver.pencil_discriminant_degree(A, B)
    _emit(args, {"degree": deg})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mode", choices=["rational", "float"], default=None)
    common.add_argument("--tol-residual", type=float, default=RESIDUAL_TOL)
    common.add_argument("--tol-dedup", type=float, default=DEDUP_TOL)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--output", "-o", default=None)

    p = argparse.ArgumentParser(prog="eigenconfig", description="Eigenconfigurations of tensors.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("counts", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--ell", type=int, default=1)
    s.set_defaults(func=cmd_counts)

    s = sub.add_parser("solve", parents=[common])
    s.add_argument("--tensor", required=True)
    s.add_argument("--ell", type=int, default=1)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--method", choices=["auto", "resultant", "homotopy"], default="auto")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("fermat", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--ell", type=int, default=1)
    s.set_defaults(func=cmd_fermat)

    s = sub.add_parser("check-binary-sym", parents=[common])
    s.add_argument("--points", required=True)
    s.set_defaults(func=cmd_check_binary_sym)

    s = sub.add_parser("ec-check", parents=[common])
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--forms", required=True)
    s.set_defaults(func=cmd_ec_check)

    s = sub.add_parser("ec-dim", parents=[common])
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_ec_dim)

    s = sub.add_parser("check-7pts", parents=[common])
    s.add_argument("--points", required=True)
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--symmetric", action="store_true")
    s.set_defaults(func=cmd_check_7pts)

    s = sub.add_parser("hesse", parents=[common])
    for name in ("a", "b", "c", "h"):
        s.add_argument(f"--{name}", required=True)
    s.set_defaults(func=cmd_hesse)

    s = sub.add_parser("arrangement", parents=[common])
    s.add_argument("--lines", required=True)
    s.set_defaults(func=cmd_arrangement)

    s = sub.add_parser("power-method", parents=[common])
    s.add_argument("--tensor", required=True)
    s.add_argument("--start", required=True, help="comma-separated start vector")
    s.add_argument("--iters", type=int, default=10000)
    s.add_argument("--ell", type=int, default=1)
    s.add_argument("--root", action="store_true", help="take coordinatewise l-th roots")
    s.set_defaults(func=cmd_power_method)

    s = sub.add_parser("robust", parents=[common])
    s.add_argument("--tensor", required=True)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--ell", type=int, default=1)
    s.set_defaults(func=cmd_robust)

    s = sub.add_parser("perturb", parents=[common])
    s.add_argument("--phi0", required=True)
    s.add_argument("--phi1", required=True)
    s.add_argument("--eps-list", required=True, help="comma-separated, e.g. 1/10,1/100")
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("pencil-degree", parents=[common])
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_pencil_degree)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except solver.NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, ValueError, NotImplementedError, KeyError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
