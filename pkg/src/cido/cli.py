"""Command-line front end.

Reports go to stdout as JSON; errors go to stderr as JSON.  Exit status is 0
when every requested check passes, 1 when a check fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import acceptance
from .cechdr import homotopy_defect, verify_basis_monomial
from .deforms import BidegreeMismatch, alpha_form, beta_form, omega_rep, space_of, split_monomial
from .groebner import DegenerateInputError, certify_smooth_ci
from .hodge import NegativeBettiError, primitive_middle_dim
from .jacring import BasisError, DecompositionError, Reducer, build_dwork, milnor_basis
from .problem import ProblemError, load_problem
from .qpoly import ParseError, Polynomial, RingSpec, bidegree
from .randomforms import random_cochain


class InputError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def _ring(args) -> tuple:
    problem = load_problem(args.problem)
    return problem, problem.ring()


def _gate(problem, spec: RingSpec, args) -> None:
    """Refuse non-certified input unless the override is set."""
    if getattr(args, "allow_unchecked_smoothness", False) or problem.allow_unchecked_smoothness:
        return
    report = certify_smooth_ci(spec)
    if not report.smooth:
        raise InputError(
            "not_smooth",
            f"input is not a smooth complete intersection (witness {report.witness}); "
            "pass --allow-unchecked-smoothness to override",
        )


def _basis(problem, spec, args) -> tuple:
    _gate(problem, spec, args)
    dwork = build_dwork(spec)
    return dwork, milnor_basis(dwork)


def _load_basis_file(path: str, spec: RingSpec, dwork) -> list:
    """Monomials listed in a ``basis --out`` file, in the stored order."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError("bad_basis_file", f"{path}: {exc}") from exc
    per_weight = data.get("basis", data).get("per_weight")
    if not isinstance(per_weight, dict):
        raise InputError("bad_basis_file", f"{path}: missing per_weight")
    out = []
    for w in sorted(per_weight, key=int):
        for text in per_weight[w]:
            p = spec.parse(text)
            if len(p.terms) != 1 or next(iter(p.terms.values())) != 1:
                raise InputError("bad_basis_file", f"{text!r} is not a monomial")
            m = next(iter(p.terms))
            if bidegree(m, spec) != (dwork.c_G, int(w)):
                raise InputError("bad_basis_file", f"{text!r} does not have bidegree ({dwork.c_G}, {w})")
            out.append(m)
    return out


# -- commands ---------------------------------------------------------------


def cmd_smooth(args) -> int:
    _, spec = _ring(args)
    report = certify_smooth_ci(spec)
    _emit(report.to_json())
    return 0 if report.smooth else 1


def cmd_basis(args) -> int:
    problem, spec = _ring(args)
    dwork, basis = _basis(problem, spec, args)
    out = basis.to_json(spec)
    if args.out:
        Path(args.out).write_text(
            json.dumps({"problem": problem.to_json(), "basis": out}, indent=2) + "\n"
        )
    _emit(out)
    return 0


def cmd_reps(args) -> int:
    problem, spec = _ring(args)
    dwork, basis = _basis(problem, spec, args)
    monomials = _load_basis_file(args.basis, spec, dwork) if args.basis else basis.monomials()
    build = {"alpha": alpha_form, "beta": beta_form, "omega": omega_rep}[args.form]
    reps = []
    for m in monomials:
        i, u = split_monomial(m, spec)
        form = build(1, i, u, dwork)
        reps.append({"monomial": spec.format(Polynomial.monomial(m)), "form": form.to_json()})
    _emit({"form": args.form, "representatives": reps})
    return 0


def cmd_reduce(args) -> int:
    problem, spec = _ring(args)
    dwork, basis = _basis(problem, spec, args)
    v = spec.parse(args.poly)
    try:
        result = Reducer(dwork, basis).reduce(v)
    except ValueError as exc:
        raise InputError("bad_polynomial", str(exc)) from exc
    _emit(result.to_json(spec))
    return 0


def cmd_verify(args) -> int:
    problem, spec = _ring(args)
    dwork, basis = _basis(problem, spec, args)
    variety = acceptance.Variety(args.problem, spec, dwork, basis)
    if args.check == "comparison":
        reports = []
        for m in basis.monomials():
            r = verify_basis_monomial(m, dwork, twist=args.twist)
            row = r.to_json()
            if not args.timing:
                row["timing_ms"] = None
            reports.append(row)
        ok = all(r["check_a"] and r["check_b"] and r["check_c"] for r in reports)
        _emit({"check": "comparison", "passed": ok, "reports": reports})
    elif args.check == "homotopy":
        rng = random.Random(args.seed)
        sp = space_of(dwork)
        failures = 0
        for _ in range(args.cases):
            c = random_cochain(rng, sp, rng.randint(0, spec.k - 1), rng.randint(0, 2))
            if not homotopy_defect(c).is_zero():
                failures += 1
        ok = failures == 0
        _emit({"check": "homotopy", "passed": ok, "seed": args.seed, "cases": args.cases,
               "failures": failures})
    elif args.check == "phi":
        res = acceptance.phi_suite(variety)
        ok = all(x["mod_dx_top"] for x in res.values())
        _emit({"check": "phi", "passed": ok, "monomials": res})
    else:
        res = acceptance.kernel_suite(variety)
        ok = not res["failures"]
        _emit({"check": "kernel", "passed": ok, **res})
    return 0 if ok else 1


def cmd_hodge(args) -> int:
    _, spec = _ring(args)
    report = primitive_middle_dim(spec, hodge_slices=args.experimental_hodge_slices)
    _emit(report.to_json())
    return 0


def cmd_accept(args) -> int:
    results = acceptance.run_all(args.seed, args.cases, echo=print)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    if args.json:
        Path(args.json).write_text(json.dumps([r.to_json() for r in results], indent=2) + "\n")
    return 0 if passed == len(results) else 1


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cido",
        description="Jacobian-ring cohomology bases and comparison checks for complete intersections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def problem_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", help="problem JSON file, or the name of a bundled example")
        p.add_argument("--allow-unchecked-smoothness", action="store_true",
                       help="skip the smoothness gate")
        return p

    problem_cmd("smooth", "certify that the input is a smooth complete intersection")

    p = problem_cmd("basis", "standard-monomial basis of the critical-charge Jacobian slice")
    p.add_argument("--out", help="also write the basis to this JSON file")

    p = problem_cmd("reps", "explicit representative forms for each basis monomial")
    p.add_argument("--form", choices=["alpha", "beta", "omega"], default="alpha")
    p.add_argument("--basis", help="basis file written by 'basis --out' (keeps its order)")

    p = problem_cmd("reduce", "Griffiths-Dwork reduction of a polynomial onto the basis")
    p.add_argument("--poly", required=True, help="polynomial of charge c_G")

    p = problem_cmd("verify", "run one verification suite")
    p.add_argument("--check", choices=["comparison", "homotopy", "phi", "kernel"], default="comparison")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=50)
    p.add_argument("--twist", action="store_true", help="use the (-1)^q sign on the de Rham differential")
    p.add_argument("--timing", action="store_true", help="record wall-clock timings in the report")

    p = problem_cmd("hodge", "Betti-number oracle")
    p.add_argument("--experimental-hodge-slices", action="store_true",
                   help="also report primitive middle Hodge numbers (informational)")

    p = sub.add_parser("accept", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=50)
    p.add_argument("--json", help="write the full results to this file")
    return parser


COMMANDS = {
    "smooth": cmd_smooth,
    "basis": cmd_basis,
    "reps": cmd_reps,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "hodge": cmd_hodge,
    "accept": cmd_accept,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        return _error(exc.kind, str(exc), 2)
    except ProblemError as exc:
        return _error("bad_problem", str(exc), 2)
    except ParseError as exc:
        return _error("parse_error", str(exc), 2)
    except (BidegreeMismatch, DegenerateInputError, NegativeBettiError) as exc:
        return _error("bad_input", str(exc), 2)
    except BasisError as exc:
        return _error("basis_error", str(exc), 2)
    except DecompositionError as exc:
        return _error("decomposition_error", str(exc), 1)
    except ValueError as exc:
        return _error("bad_input", str(exc), 2)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
