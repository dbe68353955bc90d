"""Seeded randomized law suites.

Every (law, involution, case) task is generated and checked
independently, so the report is a pure function of (seed, cases, scope).
With ``workers > 1`` the tasks are spread over a process pool and
merged back in submission order; the output is byte-identical either way.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

import numpy as np

from . import float_engine as fe
from .errors import GencoreError, LawViolation, NoSolution, NotApplicable
from .generators import commuting_operator, commuting_pair, orthogonal_pair, random_instance
from .matrix import Involution
from .pseudocore import LAWS, PAIR_LAWS, identity_check, pseudo_core_inverse

__all__ = ["SUITE_LAWS", "FLOAT_LAWS", "resolve_scope", "resolve_involutions", "run_case", "run_suite", "report_json", "summarize"]

FLOAT_LAWS = {
    "D1.1": "defining equations hold at the index and (I) fails at index-1",
    "T5.1": "Hartwig-Spindelböck recursion: invariants and agreement with the exact inverse",
    "T5.2": "core-nilpotent formula and direct formula agree with the recursion and the exact inverse",
}
SUITE_LAWS = {**{k: v[1] for k, v in LAWS.items()}, **FLOAT_LAWS}

_PAIR_GENERATORS = {"P4.2": commuting_operator, "T4.3": commuting_pair, "T4.4": orthogonal_pair}
_FLOAT_N_MAX = 12
_FLOAT_TOL = {"pairwise": 1e-8, "exact": 1e-10, "hs": 1e-10, "residual": 1e-9}


def resolve_scope(scope) -> list:
    if scope is None or scope == "all" or scope == ["all"]:
        return list(SUITE_LAWS)
    if isinstance(scope, str):
        scope = [s.strip() for s in scope.split(",") if s.strip()]
    unknown = [s for s in scope if s not in SUITE_LAWS]
    if unknown:
        raise KeyError(f"unknown law id(s): {', '.join(unknown)}")
    return list(dict.fromkeys(scope))


def resolve_involutions(involution="conjugate_transpose") -> tuple:
    if involution in (None, "both"):
        return (Involution.CONJUGATE_TRANSPOSE, Involution.TRANSPOSE)
    return (Involution(involution),)


def _defining(seed, case, inv) -> tuple:
    A = random_instance(seed, case, inv).matrix
    try:
        r = pseudo_core_inverse(A)
    except NoSolution:
        return "not-applicable", {"reason": "not pseudo core invertible"}
    return ("pass" if r.verified else "fail"), {"index": r.index}


def _float_law(law, seed, case) -> tuple:
    inst = random_instance(seed, case, Involution.CONJUGATE_TRANSPOSE, n_max=_FLOAT_N_MAX)
    A = inst.matrix
    Z = A.to_numpy()
    exact_x = pseudo_core_inverse(A)
    E = exact_x.value.to_numpy()
    info = {"n": A.rows, "index": exact_x.index}
    if law == "T5.1":
        X = fe.pseudo_core_hs(Z)
        errs = fe.hartwig_spindelbock(Z).invariant_errors(Z) if np.any(Z) else {}
        diff = fe.relative_difference(X, E)
        ok = diff <= _FLOAT_TOL["exact"] and all(v <= _FLOAT_TOL["hs"] for v in errs.values())
        return ("pass" if ok else "fail"), {**info, "exact_difference": _round(diff), "hs_errors": {k: _round(v) for k, v in errs.items()}}
    xs = {name: f(Z) for name, f in fe.METHODS.items()}
    names = sorted(xs)
    pair = max((fe.relative_difference(xs[a], xs[b]) for a in names for b in names if a < b), default=0.0)
    vs_exact = max(fe.relative_difference(x, E) for x in xs.values())
    resid = max(max(fe.defining_residuals(Z, x, exact_x.index).values()) for x in xs.values())
    ok = pair <= _FLOAT_TOL["pairwise"] and vs_exact <= _FLOAT_TOL["exact"] and resid <= _FLOAT_TOL["residual"]
    return ("pass" if ok else "fail"), {**info, "pairwise": _round(pair), "exact_difference": _round(vs_exact), "residual": _round(resid)}


def _round(v: float) -> str:
    # fixed formatting keeps reports byte-stable
    return f"{v:.3e}"


def run_case(task) -> dict:
    """Evaluate one (law, involution, seed, case) task; never raises."""
    law, inv, seed, case = task
    inv = Involution(inv)
    out = {"law": law, "involution": inv.value, "case": case}
    try:
        if law in ("T5.1", "T5.2") and inv is not Involution.CONJUGATE_TRANSPOSE:
            raise NotApplicable("the float engine assumes the conjugate-transpose involution")
        if law == "D1.1":
            status, info = _defining(seed, case, inv)
        elif law in FLOAT_LAWS:
            status, info = _float_law(law, seed, case)
        elif law in PAIR_LAWS:
            p = _PAIR_GENERATORS[law](seed, case, inv)
            rep = identity_check(p.a, law, p.b)
            status, info = ("pass" if rep.holds else "fail"), rep.details
            if not rep.holds:
                info = {**info, "witness": rep.witness.to_json(), "a": p.a.to_json(), "b": p.b.to_json()}
        else:
            A = random_instance(seed, case, inv).matrix
            rep = identity_check(A, law)
            status, info = ("pass" if rep.holds else "fail"), rep.details
            if not rep.holds:
                info = {**info, "witness": rep.witness.to_json(), "matrix": A.to_json()}
    except NotApplicable as exc:
        status, info = "not-applicable", {"reason": str(exc)}
    except LawViolation as exc:
        status, info = "fail", {"error": str(exc)}
    except GencoreError as exc:  # unexpected nonexistence etc. counts as a failure
        status, info = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    out["status"] = status
    out["details"] = _jsonable(info)
    return out


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=str))


def _tasks(seed: int, cases: int, laws: Iterable[str], involutions):
    for law in laws:
        for inv in involutions:
            for case in range(cases):
                yield (law, inv.value, seed, case)


def run_suite(seed: int, cases: int, scope="all", involution="conjugate_transpose", workers: int = 1) -> dict:
    """Run ``cases`` generated instances per law and involution.

    ``involution`` is a single mode or ``"both"``. The report contains no
    timings, so identical arguments give byte-identical JSON.
    """
    if cases < 1:
        raise ValueError("cases must be at least 1")
    laws = resolve_scope(scope)
    involutions = resolve_involutions(involution)
    tasks = list(_tasks(seed, cases, laws, involutions))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_case, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [run_case(t) for t in tasks]
    summary = {"pass": 0, "fail": 0, "not-applicable": 0}
    per_law = {}
    for r in results:
        summary[r["status"]] += 1
        per_law.setdefault(r["law"], {"pass": 0, "fail": 0, "not-applicable": 0})[r["status"]] += 1
    return {
        "seed": seed,
        "cases": cases,
        "scope": laws,
        "involutions": [i.value for i in involutions],
        "summary": summary,
        "per_law": per_law,
        "failures": [r for r in results if r["status"] == "fail"],
        "results": results,
    }


def report_json(report: dict, results: bool = True) -> str:
    body = report if results else {k: v for k, v in report.items() if k != "results"}
    return json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False)


def summarize(report: dict) -> str:
    s = report["summary"]
    return f"pass={s['pass']} fail={s['fail']} not-applicable={s['not-applicable']}"

