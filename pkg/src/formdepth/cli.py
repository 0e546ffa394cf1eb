"""Job-file loading, command dispatch, and report emission.

Exit codes: 0 success, 1 hypothesis violation (characteristic guards,
non-coprime or non-generic input, failed verification), 2 parse or job
error, 3 computation bound exceeded (e.g. no reduction index within the
bound).  The process never raises on user input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import engine
from .arrangement import (
    Arrangement,
    arrangement_betti_formula,
    fold_syzygy_matrix,
    gradient_pairing_identity,
    is_generic,
    is_reduction,
    normalize_to_coordinates,
    random_generic_arrangement,
    tail_syzygy_block,
    verify_minors_identity,
)
from .errors import (
    BoundExceededError,
    FormdepthError,
    HypothesisError,
    JobError,
    ParseError,
)
from .fields import PrimeField, field_from_descriptor
from .groebner import IdealBasis
from .parse import parse_polynomial
from .planeclassify import conic_pair_report
from .poly import PolyRing
from .productforms import (
    FormSystem,
    criteria_evaluate,
    fold_products,
    general_forms_betti,
    gradient_ideal,
    random_forms,
    rty_check,
)
from .resolution import free_resolution

VERSION = "0.1.0"

COMMANDS = (
    "rty",
    "arrangement",
    "classify2q",
    "betti-predict",
    "reduction",
    "criteria",
    "verify-suite",
)

_SUBCOMMAND_TO_JOB = {
    "analyze": "rty",
    "arrangement": "arrangement",
    "classify2q": "classify2q",
    "betti-predict": "betti-predict",
    "reduction": "reduction",
    "criteria": "criteria",
    "verify": "verify-suite",
}


@dataclass
class JobSpec:
    ring: PolyRing
    forms: list
    command: str
    options: dict


def load_job(path: str, job_command: str, overrides: dict) -> JobSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise JobError(f"cannot read job file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise JobError(f"job file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise JobError("job file must be a JSON object")
    field_desc = data.get("field")
    if not isinstance(field_desc, dict):
        raise JobError("missing field descriptor")
    try:
        field = field_from_descriptor(field_desc)
    except FormdepthError as exc:
        raise JobError(str(exc)) from exc
    variables = data.get("variables")
    if (
        not isinstance(variables, list)
        or not variables
        or len(set(variables)) != len(variables)
    ):
        raise JobError("variables must be a non-empty list of distinct names")
    for name in variables:
        if not isinstance(name, str) or not name or not (
            name[0].isalpha() or name[0] == "_"
        ) or not all(c.isalnum() or c == "_" for c in name):
            raise JobError(f"bad variable name: {name!r}")
    ring = PolyRing(field, variables)
    forms = []
    for text in data.get("forms", []):
        if not isinstance(text, str):
            raise JobError("forms must be strings")
        forms.append(parse_polynomial(text, ring))
    declared = data.get("command")
    if declared is not None and declared != job_command:
        raise JobError(
            f"job file declares command {declared!r}, invoked as {job_command!r}"
        )
    options = dict(data.get("options", {}))
    options.update({k: v for k, v in overrides.items() if v is not None})
    return JobSpec(ring=ring, forms=forms, command=job_command, options=options)


# -- command handlers, each returns the report body ------------------------


def _cmd_rty(job: JobSpec) -> dict:
    sys_ = FormSystem(job.ring, job.forms)
    rep = rty_check(sys_)
    witnesses = {}
    if rep.witness is not None:
        witnesses["saturation"] = str(rep.witness)
    return {
        "verdicts": {
            "rty": rep.rty,
            "pd": rep.pd,
            "depth": rep.depth,
            "generator_degree": rep.generator_degree,
            "saturation_strict": rep.saturation_strict,
        },
        "betti": rep.betti.triples(),
        "witnesses": witnesses,
    }


def _cmd_arrangement(job: JobSpec) -> dict:
    arr = Arrangement(job.ring, job.forms)
    if arr.m < arr.n + 1:
        raise HypothesisError("arrangement needs m >= n + 1")
    generic = is_generic(arr)
    if not generic:
        raise HypothesisError("arrangement is not generic")
    norm, _, A = normalize_to_coordinates(arr)
    gamma = fold_syzygy_matrix(norm)
    S = tail_syzygy_block(norm)
    minors_ok = verify_minors_identity(norm)
    pairing_ok = gradient_pairing_identity(norm)
    J = norm.gradient_ideal()
    res = free_resolution(J)
    betti = res.betti_table()
    predicted = arrangement_betti_formula(arr.n, arr.m)
    depth = arr.n - res.length
    verdicts = {
        "generic": generic,
        "minors_identity": minors_ok,
        "gradient_pairing_identity": pairing_ok,
        "betti_matches_formula": betti == predicted,
        "depth": depth,
        "dimensions": {
            "A": [arr.m - arr.n, arr.n],
            "Gamma": [gamma.nrows, gamma.ncols],
            "S": [S.nrows, S.ncols],
        },
    }
    witnesses = {}
    if job.options.get("reduction", True):
        rmax = int(job.options.get("rmax", 8))
        I = norm.fold_product_ideal()
        r = is_reduction(J, I, rmax)
        verdicts["reduction_index"] = r
    del A
    return {"verdicts": verdicts, "betti": betti.triples(), "witnesses": witnesses}


def _cmd_classify2q(job: JobSpec) -> dict:
    if len(job.forms) != 2:
        raise JobError("classify2q needs exactly two forms")
    rep = conic_pair_report(job.forms[0], job.forms[1])
    betti = rep.pop("betti")
    return {"verdicts": rep, "betti": betti, "witnesses": {}}


def _cmd_betti_predict(job: JobSpec) -> dict:
    kind = job.options.get("kind")
    n = job.options.get("n")
    m = job.options.get("m")
    if kind == "arrangement":
        table = arrangement_betti_formula(int(n), int(m))
    elif kind == "general":
        degrees = job.options.get("degrees")
        if not degrees:
            raise JobError("general prediction needs a degree vector")
        table = general_forms_betti(int(n), int(m), degrees)
    else:
        raise JobError("betti-predict needs kind 'arrangement' or 'general'")
    return {"verdicts": {"kind": kind, "n": n, "m": m}, "betti": table.triples(), "witnesses": {}}


def _cmd_reduction(job: JobSpec) -> dict:
    sys_ = FormSystem(job.ring, job.forms)
    _, J = gradient_ideal(sys_)
    I = fold_products(sys_, sys_.m - 1) if sys_.m >= 2 else IdealBasis(job.ring, sys_.forms)
    rmax = int(job.options.get("rmax", 8))
    r = is_reduction(J, I, rmax)
    if r is None:
        raise BoundExceededError(f"no reduction index found with r <= {rmax}")
    return {
        "verdicts": {"reduction_index": r, "rmax": rmax},
        "betti": [],
        "witnesses": {},
    }


def _cmd_criteria(job: JobSpec) -> dict:
    sys_ = FormSystem(job.ring, job.forms)
    rep = criteria_evaluate(sys_)
    return {
        "verdicts": dict(rep.verdicts),
        "betti": [],
        "witnesses": {},
        "evidence": rep.evidence,
        "any_holds": rep.any_holds,
    }


# -- verification suites ----------------------------------------------------


def _suite_arrangements(seed: int, trials: int) -> list[dict]:
    shapes = [(2, 3), (3, 4), (3, 5)]
    ring_cache = {}
    out = []
    for k in range(trials):
        n, m = shapes[k % len(shapes)]
        ring = ring_cache.setdefault(
            n, PolyRing(PrimeField(32003), tuple("xyzw"[:n]))
        )
        arr = random_generic_arrangement(ring, m, seed + k)
        J = arr.gradient_ideal()
        res = free_resolution(J)
        ok = (
            res.betti_table() == arrangement_betti_formula(n, m)
            and n - res.length == 0
        )
        out.append({"trial": k, "n": n, "m": m, "pass": ok})
    return out


def _suite_general_forms(seed: int, trials: int) -> list[dict]:
    shapes = [(3, (2, 2)), (3, (2, 3)), (3, (2, 2, 2))]
    out = []
    for k in range(trials):
        n, degs = shapes[k % len(shapes)]
        sys_ = random_forms(n, degs, 32003, seed + k)
        _, J = gradient_ideal(sys_)
        res = free_resolution(J)
        ok = res.betti_table() == general_forms_betti(n, len(degs), degs)
        out.append({"trial": k, "n": n, "degrees": list(degs), "pass": ok})
    return out


def _suite_quartics(seed: int, trials: int) -> list[dict]:
    ring = PolyRing(field_from_descriptor({"type": "rational"}), ("x", "y", "z"))
    pairs = [
        ("x^2+y*z", "y^2+x*z", "TransversalGeneral"),
        ("x^2+y*z", "x^2+y^2-y*z", "ThreeSyzygy"),
        ("x^2+y*z", "x^2+x*y+y^2+y*z", "PlusOne"),
        ("x^2+y*z", "x^2-y*z", "NearlyFree"),
        ("x^2+y*z", "x^2+y^2+y*z", "Free"),
    ]
    out = []
    for k, (fs, gs, expected) in enumerate(pairs):
        rep = conic_pair_report(
            parse_polynomial(fs, ring), parse_polynomial(gs, ring)
        )
        out.append(
            {"trial": k, "pair": [fs, gs], "expected": expected, "pass": rep["category"] == expected}
        )
    return out


def _suite_criteria(seed: int, trials: int) -> list[dict]:
    import random as _random

    rng = _random.Random(seed)
    out = []
    for k in range(trials):
        m = rng.choice([2, 2, 3])
        degs = sorted(rng.choice([2, 3, 4]) for _ in range(m))
        sys_ = random_forms(3, degs, 32003, seed * 1000 + k)
        rep = criteria_evaluate(sys_)
        ok = True
        if rep.any_holds:
            ok = rty_check(sys_).rty
        out.append(
            {
                "trial": k,
                "degrees": list(degs),
                "any_holds": rep.any_holds,
                "pass": ok,
            }
        )
    return out


_SUITES = {
    "arrangements": _suite_arrangements,
    "general-forms": _suite_general_forms,
    "quartics": _suite_quartics,
    "criteria": _suite_criteria,
}


def _cmd_verify(suite: str, seed: int, trials: int) -> dict:
    runner = _SUITES.get(suite)
    if runner is None:
        raise JobError(f"unknown suite {suite!r}; choose from {sorted(_SUITES)}")
    results = runner(seed, trials)
    passed = sum(1 for r in results if r["pass"])
    body = {
        "verdicts": {
            "suite": suite,
            "seed": seed,
            "trials": len(results),
            "passed": passed,
            "all_pass": passed == len(results),
        },
        "betti": [],
        "witnesses": {},
        "results": results,
    }
    if passed != len(results):
        raise _VerificationFailure(body)
    return body


class _VerificationFailure(FormdepthError):
    def __init__(self, body):
        self.body = body
        super().__init__("verification suite failed")


# -- rendering ---------------------------------------------------------------


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for key, value in sorted(report.get("verdicts", {}).items()):
        lines.append(f"  {key}: {value}")
    betti = report.get("betti") or []
    if betti:
        lines.append("  betti (i, j, rank):")
        for entry in betti:
            lines.append(f"    {entry['i']} {entry['j']} {entry['rank']}")
    for key, value in sorted(report.get("witnesses", {}).items()):
        lines.append(f"  witness {key}: {value}")
    if "results" in report:
        for r in report["results"]:
            status = "pass" if r["pass"] else "FAIL"
            lines.append(f"  trial {r['trial']}: {status}")
    lines.append(f"  engine: {report['engine']['version']} ({report['engine']['kernel']})")
    return "\n".join(lines)


def _emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=str)
    return _render_text(report)


def _finish(body: dict, command: str, started: float, fmt: str) -> str:
    report = {
        "command": command,
        "verdicts": body.get("verdicts", {}),
        "betti": body.get("betti", []),
        "witnesses": body.get("witnesses", {}),
        "engine": {"version": VERSION, "kernel": engine.kernel_name()},
        "timing": {"seconds": round(time.time() - started, 6)},
    }
    for key in ("evidence", "any_holds", "results"):
        if key in body:
            report[key] = body[key]
    return _emit(report, fmt)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="formdepth",
        description="Exact depth/freeness analysis of Jacobian ideals of products of forms",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)
    for name in ("analyze", "classify2q", "arrangement", "betti-predict", "reduction", "criteria"):
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="job JSON file")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--rmax", type=int, default=None)
    v = sub.add_parser("verify")
    v.add_argument("--suite", required=True)
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=10)
    return ap


_HANDLERS = {
    "rty": _cmd_rty,
    "arrangement": _cmd_arrangement,
    "classify2q": _cmd_classify2q,
    "betti-predict": _cmd_betti_predict,
    "reduction": _cmd_reduction,
    "criteria": _cmd_criteria,
}


def main(argv=None) -> int:
    started = time.time()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    job_command = _SUBCOMMAND_TO_JOB[args.subcommand]
    try:
        if args.subcommand == "verify":
            body = _cmd_verify(args.suite, args.seed, args.trials)
            print(_finish(body, job_command, started, args.format))
            return 0
        overrides = {"seed": args.seed, "trials": args.trials, "rmax": args.rmax}
        job = load_job(args.input, job_command, overrides)
        body = _HANDLERS[job_command](job)
        print(_finish(body, job_command, started, args.format))
        return 0
    except _VerificationFailure as exc:
        print(_finish(exc.body, job_command, started, args.format))
        return 1
    except (ParseError, JobError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BoundExceededError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return 3
    except HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return 1
    except FormdepthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # user input must never crash the process
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
