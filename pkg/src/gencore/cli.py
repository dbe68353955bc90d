"""Command-line interface: ``gencore {compute,verify,compare,demo,suite}``.

Every verb writes one JSON document to standard output (``--pretty`` gives
a human-readable rendering instead). Exit codes: 0 success, 1 usage or I/O
error, 2 the requested inverse does not exist.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import float_engine as fe
from .classical import InverseKind, equation_inverse
from .errors import GencoreError, NoSolution, NotApplicable
from .matrix import Involution, Matrix, RingContext, ScalarMode, power
from .pseudocore import LAWS, PAIR_LAWS, dual_pseudo_core_inverse, identity_check, pseudo_core_inverse
from . import suite as suite_mod

EXIT_OK, EXIT_USAGE, EXIT_NONEXISTENT = 0, 1, 2

PSEUDO_KINDS = ("pseudo_core", "dual_pseudo_core")
INVERSE_NAMES = [k.value.replace("_", "-") for k in InverseKind] + [k.replace("_", "-") for k in PSEUDO_KINDS]
COMPARE_METHODS = ("hs", "cn", "direct", "exact")
DEMOS = ("remark-2.15", "remark-4.5")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for nonexistence here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _norm(name: str) -> str:
    return name.strip().lower().replace("-", "_")


# -- input --------------------------------------------------------------

def _load(path: str, involution=None, mode=None) -> Matrix:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None
    if isinstance(obj, list):
        obj = {"rows": len(obj), "cols": len(obj[0]) if obj else 0, "entries": obj}
    if not isinstance(obj, dict):
        raise UsageError(f"{path}: expected a matrix object")
    try:
        return Matrix.from_json(obj, involution=involution, mode=mode)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _tolerance(args):
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get("GENCORE_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"GENCORE_TOL is not a number: {env!r}") from None
    return None


def _jsonable(obj):
    if isinstance(obj, Matrix):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


# -- output -------------------------------------------------------------

def _is_matrix(obj) -> bool:
    return isinstance(obj, dict) and {"rows", "cols", "entries"} <= obj.keys()


def _render(obj, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if _is_matrix(val):
                lines.append(f"{pad}{key}:")
                lines.extend(pad + "  " + row for row in Matrix.from_json(val).pretty().splitlines() or ["[ ]"])
            elif isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.extend(_render(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _emit(doc: dict, pretty: bool):
    if pretty:
        print("\n".join(_render(doc)))
    else:
        print(json.dumps(doc, sort_keys=True, ensure_ascii=False))


# -- verbs --------------------------------------------------------------

def _nonexistent(kind: str, exc: NoSolution) -> dict:
    doc = {"inverse": kind, "status": "nonexistent", "reason": str(exc)}
    if exc.certificate is not None:
        doc["certificate"] = _jsonable(exc.certificate)
    if getattr(exc, "index", None) is not None:
        doc["index"] = exc.index
    return doc


def _compute_float(A: Matrix, kind: str, rtol) -> dict:
    Z = A.to_numpy()
    if kind == "moore_penrose":
        X, index = fe.pinv(Z, rtol), None
    elif kind == "drazin":
        X, index = fe.drazin_float(Z, rtol), fe.float_index(Z, rtol)
    elif kind == "pseudo_core":
        index = fe.float_index(Z, rtol)
        X = fe.pseudo_core_direct(Z, rtol)
    elif kind == "dual_pseudo_core":
        index = fe.float_index(Z, rtol)
        X = fe.pseudo_core_direct(Z.conj().T, rtol).conj().T
    else:
        raise UsageError(f"inverse {kind.replace('_', '-')} is only available in exact mode")
    doc = {"inverse": kind, "status": "ok", "mode": "float", "index": index, "value": Matrix.from_numpy(X).to_json()}
    if kind == "pseudo_core":
        doc["residuals"] = fe.defining_residuals(Z, X, index)
    return doc


def cmd_compute(args) -> int:
    kind = _norm(args.inverse)
    A = _load(args.input, args.involution, args.mode)
    if args.mode == "float":
        if A.context.involution is not Involution.CONJUGATE_TRANSPOSE:
            raise UsageError("float mode requires the conjugate-transpose involution")
        _emit(_compute_float(A, kind, _tolerance(args)), args.pretty)
        return EXIT_OK
    try:
        if kind == "pseudo_core":
            body = pseudo_core_inverse(A).to_json()
        elif kind == "dual_pseudo_core":
            body = dual_pseudo_core_inverse(A).to_json()
        else:
            r = equation_inverse(A, InverseKind(kind))
            body = {"inverse": kind, **r.to_json()}
            body.pop("kind", None)
    except NoSolution as exc:
        _emit(_nonexistent(kind, exc), args.pretty)
        return EXIT_NONEXISTENT
    _emit({"status": "ok", "mode": "exact", **body}, args.pretty)
    return EXIT_OK


def cmd_verify(args) -> int:
    A = _load(args.input, args.involution)
    other = _load(args.other, args.involution) if args.other else None
    laws = list(LAWS) if args.law == "all" else [s.strip() for s in args.law.split(",")]
    unknown = [law for law in laws if law not in LAWS]
    if unknown:
        raise UsageError(f"unknown law id(s): {', '.join(unknown)}; known: {', '.join(LAWS)}")
    reports, summary = [], {"pass": 0, "fail": 0, "not-applicable": 0}
    for law in laws:
        if law in PAIR_LAWS and other is None:
            entry = {"law": law, "status": "not-applicable", "reason": "needs a second matrix (--with)"}
        else:
            try:
                rep = identity_check(A, law, other if law in PAIR_LAWS else None)
            except NotApplicable as exc:
                entry = {"law": law, "status": "not-applicable", "reason": str(exc)}
            else:
                entry = {"status": "pass" if rep.holds else "fail", **_jsonable(rep.to_json())}
        summary[entry["status"]] += 1
        reports.append(entry)
    _emit({"laws": reports, "summary": summary}, args.pretty)
    return EXIT_OK if summary["fail"] == 0 else EXIT_USAGE


def cmd_compare(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in COMPARE_METHODS]
    if bad or not methods:
        raise UsageError(f"unknown method(s): {', '.join(bad) or '(none)'}; choose from {', '.join(COMPARE_METHODS)}")
    A = _load(args.input, args.involution)
    float_methods = [m for m in methods if m != "exact"]
    if float_methods and A.context.involution is not Involution.CONJUGATE_TRANSPOSE:
        raise UsageError(
            f"method(s) {', '.join(float_methods)} assume the conjugate-transpose involution "
            "(unitary factors); only 'exact' applies under transpose"
        )
    rtol = _tolerance(args)
    results, index = {}, None
    exact_A = A if A.exact else None
    for m in methods:
        try:
            if m == "exact":
                if exact_A is None:
                    raise UsageError("method 'exact' needs an exact-mode input")
                r = pseudo_core_inverse(exact_A)
                index = r.index
                results[m] = r.value.to_numpy()
            else:
                results[m] = np.asarray(fe.METHODS[m](A.to_numpy(), rtol))
        except NoSolution as exc:
            _emit(_nonexistent("pseudo_core", exc), args.pretty)
            return EXIT_NONEXISTENT
    Z = A.to_numpy()
    if index is None:
        index = fe.float_index(Z, rtol)
    names = list(results)
    pairwise = [
        {"a": p, "b": q, "max_relative_difference": fe.relative_difference(results[p], results[q])}
        for i, p in enumerate(names)
        for q in names[i + 1 :]
    ]
    per_method = {
        m: {"residuals": fe.defining_residuals(Z, X, index), "value": Matrix.from_numpy(X).to_json()}
        for m, X in results.items()
    }
    _emit({"index": index, "methods": per_method, "pairwise": pairwise}, args.pretty)
    return EXIT_OK


def _step(label, M: Matrix) -> dict:
    return {"label": label, "matrix": M.to_json()}


def demo_remark_2_15() -> dict:
    ctx = RingContext(ScalarMode.EXACT, Involution.TRANSPOSE)
    a = Matrix([[1, 1j], [0, 0]], ctx)
    core = equation_inverse(a, InverseKind.CORE)
    x = core.value
    a2 = a @ a
    lhs = a2 @ x
    law = identity_check(a, "P2.14")
    return {
        "demo": "remark-2.15",
        "involution": "transpose",
        "steps": [
            _step("a", a),
            _step("a^2", a2),
            _step("core inverse x", x),
            _step("x·a^2 (equals a)", x @ a2),
            _step("a·x^2 (equals x)", a @ x @ x),
            _step("a·x", a @ x),
            _step("a^2·x", lhs),
        ],
        "core_inverse_certificates": [c["equation"] for c in core.to_json()["certificates"] if c["zero"]],
        "decisive": {"statement": "a^2·x != a", "holds": lhs != a, "lhs": lhs.to_json(), "rhs": a.to_json()},
        "characterizations": law.details.get("summary"),
    }


def _periodic_power(s: Matrix, m: int) -> Matrix:
    # (s)^m = (-1)^((m-1)/2) s for odd m, (-1)^(m/2+1) s^2 for even m
    if m % 2:
        return s.scale(-1 if (m - 1) // 2 % 2 else 1)
    return (s @ s).scale(-1 if (m // 2 + 1) % 2 else 1)


def demo_remark_4_5() -> dict:
    ctx = RingContext(ScalarMode.EXACT, Involution.TRANSPOSE)
    a = Matrix([[1j, 0], [0, 0]], ctx)
    b = Matrix([[0, 0], [-1, 0]], ctx)
    pa, pb = pseudo_core_inverse(a), pseudo_core_inverse(b)
    s = a + b
    steps = [
        _step("a", a),
        _step("b", b),
        _step("pseudo core inverse of a", pa.value),
        _step("pseudo core inverse of b", pb.value),
        _step("a·b", a @ b),
        _step("a*·b", a.adjoint() @ b),
        _step("b·a", b @ a),
        _step("a+b", s),
    ]
    certs = []
    for m in (1, 2):
        Sm = power(s, m)
        steps.append(_step(f"(a+b)^{m}", Sm))
        try:
            equation_inverse(Sm, InverseKind.ONE_THREE)
        except NoSolution as exc:
            certs.append({"m": m, "nonexistent": True, "certificate": _jsonable(exc.certificate)})
        else:
            certs.append({"m": m, "nonexistent": False})
    periodic = all(power(s, m) == _periodic_power(s, m) for m in range(1, 9)) and power(s, 5) == s
    try:
        pseudo_core_inverse(s)
        sum_status = {"nonexistent": False}
    except NoSolution as exc:
        sum_status = {"nonexistent": True, "reason": str(exc)}
    return {
        "demo": "remark-4.5",
        "involution": "transpose",
        "steps": steps,
        "hypotheses": {"ab=0": (a @ b).is_zero(), "a*b=0": (a.adjoint() @ b).is_zero(), "ba=0": (b @ a).is_zero()},
        "decisive": {
            "statement": "b·a != 0 and (a+b)^m has no {1,3}-inverse for every m",
            "ba_nonzero": not (b @ a).is_zero(),
            "one_three_certificates": certs,
            "power_pattern_verified": periodic,
            "a_plus_b_pseudo_core": sum_status,
        },
    }


_DEMOS = {"remark-2.15": demo_remark_2_15, "remark-4.5": demo_remark_4_5}


def cmd_demo(args) -> int:
    fn = _DEMOS.get(args.name)
    if fn is None:
        raise UsageError(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}")
    _emit(fn(), args.pretty)
    return EXIT_OK


def cmd_suite(args) -> int:
    if args.cases < 1:
        raise UsageError("--cases must be at least 1")
    try:
        report = suite_mod.run_suite(args.seed, args.cases, args.scope, _norm(args.involution), args.workers)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.pretty:
        print("\n".join(_render({k: v for k, v in report.items() if k != "results"})))
    else:
        print(suite_mod.report_json(report, results=args.full))
    return EXIT_OK if report["summary"]["fail"] == 0 else EXIT_USAGE


# -- parser -------------------------------------------------------------

def _involution_arg(value: str) -> str:
    v = _norm(value)
    if v not in {i.value for i in Involution}:
        raise argparse.ArgumentTypeError("expected transpose or conjugate-transpose")
    return v


def _law_table() -> str:
    return "\n".join(f"  {k:<6} {desc}" for k, (_, desc) in LAWS.items())


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gencore", description="Generalized inverses over matrices with involution.")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, involution=True):
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        if involution:
            sp.add_argument("--involution", type=_involution_arg, help="override the involution stored in the file")

    c = sub.add_parser("compute", help="compute one inverse")
    c.add_argument("input", help="matrix JSON file, or - for stdin")
    c.add_argument("--inverse", required=True, type=lambda s: s.lower().replace("_", "-"), choices=INVERSE_NAMES)
    c.add_argument("--mode", choices=("exact", "float"), default="exact")
    c.add_argument("--tol", type=float, help="relative rank tolerance for float mode (default n·eps; env GENCORE_TOL)")
    common(c)
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser(
        "verify",
        help="check laws on a matrix",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="laws:\n" + _law_table(),
    )
    v.add_argument("input")
    v.add_argument("--law", default="all", help="law id, comma list, or all")
    v.add_argument("--with", dest="other", help="second matrix for the two-matrix laws (P4.2, T4.3, T4.4)")
    common(v)
    v.set_defaults(func=cmd_verify)

    cp = sub.add_parser("compare", help="cross-check pseudo core methods")
    cp.add_argument("input")
    cp.add_argument("--methods", default="hs,cn,direct,exact", help="comma list from hs,cn,direct,exact")
    cp.add_argument("--tol", type=float, help="relative rank tolerance (env GENCORE_TOL)")
    common(cp)
    cp.set_defaults(func=cmd_compare)

    d = sub.add_parser("demo", help="replay a worked counterexample")
    d.add_argument("name", help=" or ".join(DEMOS))
    common(d, involution=False)
    d.set_defaults(func=cmd_demo)

    s = sub.add_parser("suite", help="seeded randomized law suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=20)
    s.add_argument("--scope", default="all", help="law id list (comma separated) or all")
    s.add_argument("--involution", default="conjugate-transpose", help="transpose, conjugate-transpose, or both")
    s.add_argument("--workers", type=int, default=1, help="process pool size; output is identical for any value")
    s.add_argument("--full", action="store_true", help="include every per-case result in the report")
    common(s, involution=False)
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gencore: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotApplicable, ValueError) as exc:
        print(f"gencore: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GencoreError as exc:
        print(f"gencore: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
