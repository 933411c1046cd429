"""The acceptance suite: nine criteria, each an exact identity or an oracle cross-check."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .cechdr import (
    homotopy_defect,
    theorem_factor,
    verify_basis_monomial,
)
from .deforms import (
    alpha_form,
    alpha_of,
    beta_form,
    contract,
    d,
    mod_dx_top,
    omega_rep,
    phi_form,
    pullback_pr1,
    space_of,
    split_monomial,
    wedge,
)
from .groebner import certify_smooth_ci
from .hodge import primitive_middle_dim
from .jacring import (
    DworkData,
    JacobianBasis,
    Reducer,
    build_dwork,
    kernel_test_monomials,
    milnor_basis,
    twisted_derivative,
)
from .problem import bundled_problem
from .qpoly import Bidegree, Polynomial, RingSpec
from .randomforms import random_cochain, random_field, random_form


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float | None = None
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.limit:g} s)" if self.limit else ""
        return f"[{status}] criterion {self.number}: {self.title} in {self.seconds:.2f} s{limit}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "limit_seconds": self.limit,
            "detail": self.detail,
        }


@dataclass
class Variety:
    name: str
    spec: RingSpec
    dwork: DworkData
    basis: JacobianBasis


def load_variety(name: str) -> Variety:
    spec = bundled_problem(name).ring()
    dwork = build_dwork(spec)
    return Variety(name, spec, dwork, milnor_basis(dwork))


def _timed(fn: Callable[[], tuple]) -> tuple:
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


def _weight_dims(basis: JacobianBasis) -> list:
    return [len(basis.per_weight.get(w, [])) for w in range(basis.max_weight + 1)]


def _basis_check(name: str, total: int, dims: list, euler: int, monomials: list | None = None):
    def run():
        spec = bundled_problem(name).ring()
        smooth = certify_smooth_ci(spec)
        basis = milnor_basis(build_dwork(spec))
        betti = primitive_middle_dim(spec)
        got_dims = _weight_dims(basis)
        ok = (
            smooth.smooth
            and basis.total_dim == total
            and got_dims == dims
            and betti.euler == euler
            and betti.primitive_middle == total
        )
        detail = {
            "smooth": smooth.smooth,
            "total_dim": basis.total_dim,
            "weight_dims": got_dims,
            "euler": betti.euler,
            "primitive_middle": betti.primitive_middle,
            "max_weight": basis.max_weight,
        }
        if monomials is not None:
            listed = [spec.format(Polynomial.monomial(m)) for m in basis.monomials()]
            detail["basis"] = listed
            ok = ok and listed == monomials
        return ok, detail

    return run


def criterion_1() -> CriterionResult:
    ok, detail, t = _timed(_basis_check("fermat-cubic", 2, [1, 1], 0, ["1", "y1*x0*x1*x2"]))
    return CriterionResult(1, "Fermat cubic basis and oracle", ok and t < 1, t, 1, detail)


def criterion_2() -> CriterionResult:
    ok, detail, t = _timed(_basis_check("fermat-quintic", 204, [1, 101, 101, 1], -200))
    return CriterionResult(2, "Fermat quintic basis and oracle", ok and t < 60, t, 60, detail)


def criterion_3() -> CriterionResult:
    ok, detail, t = _timed(_basis_check("ci22", 2, [1, 1], 0))
    return CriterionResult(3, "(2,2) complete intersection curve basis and oracle", ok and t < 30, t, 30, detail)


def comparison_reports(names=("fermat-cubic", "ci22")) -> list:
    out = []
    for name in names:
        v = load_variety(name)
        for m in v.basis.monomials():
            out.append((name, verify_basis_monomial(m, v.dwork)))
    return out


def criterion_4() -> CriterionResult:
    def run():
        reports = comparison_reports()
        ok = True
        rows = []
        for name, r in reports:
            rows.append({"variety": name, **r.to_json()})
            ok = ok and r.passed
        # closed-form factor at k=2, i=(0,0)
        ok = ok and theorem_factor((0, 0), 2) == -1 and theorem_factor((1,), 1) == 1
        return ok, {"reports": rows}

    ok, detail, t = _timed(run)
    return CriterionResult(4, "comparison theorem checks (a), (b), (c) and factor", ok and t < 120, t, 120, detail)


def criterion_5(seed: int = 0, cases: int = 50) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        detail = {}
        ok = True
        for k, name in ((2, "ci22"), (3, None)):
            dwork = build_dwork(bundled_problem(name).ring() if name else _k3_spec())
            sp = space_of(dwork)
            bad = 0
            for _ in range(cases):
                q = rng.randint(0, k - 1)
                p = rng.randint(0, 2)
                c = random_cochain(rng, sp, q, p)
                if not homotopy_defect(c).is_zero():
                    bad += 1
            detail[f"k={k}"] = {"cases": cases, "failures": bad}
            ok = ok and bad == 0
        return ok and cases >= 50, detail

    ok, detail, t = _timed(run)
    return CriterionResult(5, "homotopy identity on random cochains", ok and t < 60, t, 60, detail)


def _k3_spec() -> RingSpec:
    # three diagonal quadrics in P^3: only used as a coefficient ring for random cochains
    return RingSpec.from_strings(
        3,
        ["x0^2 + x1^2 + x2^2 + x3^2", "x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2", "x0^2 + 3*x1^2 + 5*x2^2 + 7*x3^2"],
    )


def kernel_suite(v: Variety) -> dict:
    spec = v.spec
    reducer = Reducer(v.dwork, v.basis)
    bound = v.dwork.c_G + 2 * max(spec.degrees) + 2
    tested = 0
    failures = []
    for i in range(spec.N):
        for a in kernel_test_monomials(v.dwork, i, bound):
            target = twisted_derivative(Polynomial.monomial(a), i, v.dwork)
            if target.is_zero():
                continue
            tested += 1
            res = reducer.reduce(target)
            if res.coordinates:
                failures.append({"i": i, "a": spec.format(Polynomial.monomial(a))})
    return {"degree_bound": bound, "tested": tested, "failures": failures}


def criterion_6() -> CriterionResult:
    def run():
        detail = {}
        ok = True
        for name in ("fermat-cubic", "ci22"):
            r = kernel_suite(load_variety(name))
            detail[name] = r
            ok = ok and not r["failures"] and r["tested"] > 0
        return ok, detail

    ok, detail, t = _timed(run)
    return CriterionResult(6, "Griffiths-Dwork kernel suite", ok and t < 120, t, 120, detail)


def phi_suite(v: Variety) -> dict:
    results = {}
    for m in v.basis.monomials():
        vpoly = Polynomial.monomial(m)
        diff = phi_form(vpoly, v.dwork) - alpha_of(vpoly, v.dwork)
        results[v.spec.format(vpoly)] = {
            "mod_dx_top": mod_dx_top(diff).is_zero(),
            "on_the_nose": diff.is_zero(),
        }
    return results


def criterion_7() -> CriterionResult:
    def run():
        detail = {}
        ok = True
        for name in ("fermat-cubic", "ci22"):
            r = phi_suite(load_variety(name))
            detail[name] = r
            ok = ok and all(x["mod_dx_top"] for x in r.values())
        return ok, detail

    ok, detail, t = _timed(run)
    return CriterionResult(7, "phi_S agrees with alpha modulo dx-top", ok and t < 60, t, 60, detail)


def criterion_8() -> CriterionResult:
    def run():
        detail = {}
        expect = {"fermat-cubic": (True, None), "cusp": (False, True), "degenerate": (False, True)}
        ok = True
        for name, (smooth, needs_witness) in expect.items():
            r = certify_smooth_ci(bundled_problem(name).ring())
            detail[name] = r.to_json()
            ok = ok and r.smooth == smooth and (not needs_witness or r.witness is not None)
        return ok, detail

    ok, detail, t = _timed(run)
    return CriterionResult(8, "smoothness gate", ok and t < 10, t, 10, detail)


def named_forms_bidegree(v: Variety) -> dict:
    zero = Bidegree(0, 0)
    out = {}
    for m in v.basis.monomials():
        i, u = split_monomial(m, v.spec)
        vpoly = Polynomial.monomial(m)
        forms = {
            "alpha": alpha_form(1, i, u, v.dwork),
            "beta": pullback_pr1(beta_form(1, i, u, v.dwork)),
            "omega": omega_rep(1, i, u, v.dwork),
            "phi": phi_form(vpoly, v.dwork),
        }
        out[v.spec.format(vpoly)] = {k: f.bidegree() == zero for k, f in forms.items()}
    return out


def calculus_suite(seed: int = 0, cases: int = 50) -> dict:
    rng = random.Random(seed)
    spaces = [space_of(build_dwork(bundled_problem(n).ring())) for n in ("fermat-cubic", "ci22")]
    counts = {"d_squared": 0, "leibniz": 0, "contract_squared": 0, "antiderivation": 0}
    failures = {k: 0 for k in counts}
    for case in range(cases):
        sp = spaces[case % len(spaces)]
        f = random_form(rng, sp, rng.randint(0, 2), s_pole=1)
        counts["d_squared"] += 1
        if not d(d(f)).is_zero():
            failures["d_squared"] += 1

        a = random_form(rng, sp, rng.randint(0, 2))
        b = random_form(rng, sp, rng.randint(0, 2))
        counts["leibniz"] += 1
        rhs = wedge(d(a), b) + wedge(a, d(b)).scale((-1) ** a.degree)
        if d(wedge(a, b)) != rhs:
            failures["leibniz"] += 1

        V = random_field(rng, sp)
        g = random_form(rng, sp, rng.randint(1, 3))
        counts["contract_squared"] += 1
        if not contract(contract(g, V), V).is_zero():
            failures["contract_squared"] += 1

        counts["antiderivation"] += 1
        lhs = contract(wedge(a, b), V)
        rhs = wedge(contract(a, V), b) + wedge(a, contract(b, V)).scale((-1) ** a.degree)
        if lhs != rhs:
            failures["antiderivation"] += 1
    return {"cases": counts, "failures": failures}


def criterion_9(seed: int = 0, cases: int = 50) -> CriterionResult:
    def run():
        suite = calculus_suite(seed, cases)
        bideg = {n: named_forms_bidegree(load_variety(n)) for n in ("fermat-cubic", "ci22")}
        total = sum(suite["cases"].values())
        ok = (
            total >= 200
            and not any(suite["failures"].values())
            and all(all(x.values()) for per in bideg.values() for x in per.values())
        )
        return ok, {"random_cases": total, **suite, "bidegree_zero": bideg}

    ok, detail, t = _timed(run)
    return CriterionResult(9, "calculus property suites", ok, t, None, detail)


def run_all(seed: int = 0, cases: int = 50, echo: Callable[[str], None] | None = None) -> list:
    runners = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        lambda: criterion_5(seed, cases),
        criterion_6,
        criterion_7,
        criterion_8,
        lambda: criterion_9(seed, cases),
    ]
    results = []
    for fn in runners:
        r = fn()
        results.append(r)
        if echo:
            echo(r.line())
    return results
