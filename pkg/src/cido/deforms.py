"""Rational differential forms with poles along G_1, ..., G_k and S.

A :class:`RationalSection` is ``num / (G_1^a_1 ... G_k^a_k S^b)``.  A :class:`Form`
maps sorted index tuples (the ``dq`` factors, 0-based) to sections.  Equality is
decided by cross-multiplication, so no gcd machinery is ever needed.
"""

from __future__ import annotations

import math
from typing import Sequence

from .jacring import DworkData
from .qpoly import Bidegree, Polynomial, Rational, RingSpec, format_polynomial, poly_bidegree


class BidegreeMismatch(ValueError):
    pass


class FormSpace:
    """Shared data for sections over one Dwork potential: the factor polynomials
    ``G_1..G_k, S``, their partials, and a cache of denominator products."""

    def __init__(self, dwork: DworkData):
        self.dwork = dwork
        self.spec: RingSpec = dwork.spec
        self.N = dwork.N
        self.k = dwork.k
        self.factors = tuple(dwork.G) + (dwork.S,)
        self.factor_partials = tuple(
            tuple(f.derivative(i) for i in range(self.N)) for f in self.factors
        )
        self._one = Polynomial.constant(1, self.N)
        self._products: dict = {}
        self.no_poles = (0,) * (self.k + 1)

    def product(self, exps: Sequence[int]) -> Polynomial:
        """prod_j factor_j ** exps[j], cached."""
        exps = tuple(exps)
        p = self._products.get(exps)
        if p is None:
            if not any(exps):
                p = self._one
            else:
                j = max(i for i, e in enumerate(exps) if e)
                lower = exps[:j] + (exps[j] - 1,) + exps[j + 1 :]
                p = self.product(lower) * self.factors[j]
            self._products[exps] = p
        return p

    def factor_bidegree(self, j: int) -> Bidegree:
        if j < self.k:
            return Bidegree(self.spec.degrees[j], 0)
        return Bidegree(0, 1)

    def section(self, num, exps: Sequence[int] | None = None) -> "RationalSection":
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num, self.N)
        return RationalSection(num, tuple(exps) if exps is not None else self.no_poles, self)

    def names(self) -> list:
        return self.spec.names


def space_of(dwork: DworkData) -> FormSpace:
    # one FormSpace per DworkData so the denominator cache is shared
    sp = dwork.__dict__.get("_form_space")
    if sp is None:
        sp = FormSpace(dwork)
        object.__setattr__(dwork, "_form_space", sp)
    return sp


class RationalSection:
    __slots__ = ("num", "exps", "space")

    def __init__(self, num: Polynomial, exps: tuple, space: FormSpace):
        self.num = num
        self.exps = exps
        self.space = space

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _lift(self, target: tuple) -> Polynomial:
        diff = tuple(t - e for t, e in zip(target, self.exps))
        if not any(diff):
            return self.num
        return self.num * self.space.product(diff)

    def __add__(self, other: "RationalSection") -> "RationalSection":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.exps == other.exps:
            return RationalSection(self.num + other.num, self.exps, self.space)
        target = tuple(max(a, b) for a, b in zip(self.exps, other.exps))
        return RationalSection(self._lift(target) + other._lift(target), target, self.space)

    def __neg__(self):
        return RationalSection(-self.num, self.exps, self.space)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalSection):
            return RationalSection(
                self.num * other.num,
                tuple(a + b for a, b in zip(self.exps, other.exps)),
                self.space,
            )
        if isinstance(other, Polynomial):
            return RationalSection(self.num * other, self.exps, self.space)
        return RationalSection(self.num.scale(other), self.exps, self.space)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalSection):
            return NotImplemented
        # p/D == p'/D'  iff  p * D' == p' * D
        return self.num * self.space.product(other.exps) == other.num * self.space.product(self.exps)

    __hash__ = None

    def derivative(self, i: int) -> "RationalSection":
        active = [j for j, e in enumerate(self.exps) if e]
        if not active:
            return RationalSection(self.num.derivative(i), self.exps, self.space)
        sp = self.space
        P = sp.product(tuple(1 if e else 0 for e in self.exps))
        num = self.num.derivative(i) * P
        for j in active:
            dF = sp.factor_partials[j][i]
            if dF.is_zero():
                continue
            others = tuple(1 if (e and t != j) else 0 for t, e in enumerate(self.exps))
            num = num - self.num * dF * sp.product(others) * self.exps[j]
        return RationalSection(num, tuple(e + 1 if e else 0 for e in self.exps), sp)

    def bidegree(self) -> Bidegree | None:
        b = poly_bidegree(self.num, self.space.spec)
        if b is None:
            return None
        for j, e in enumerate(self.exps):
            b = b - self.space.factor_bidegree(j) * e
        return b

    def pole_order(self, lam: int) -> int:
        """Order of the pole along G_lam (1-based) after cancelling G_lam from the numerator."""
        j = lam - 1
        e = self.exps[j]
        num = self.num
        if num.is_zero():
            return 0
        g = self.space.factors[j]
        while e > 0:
            q = num.divide_exact(g)
            if q is None:
                break
            num, e = q, e - 1
        return e

    def simplify(self) -> "RationalSection":
        """Cancel denominator factors that divide the numerator."""
        if self.num.is_zero():
            return RationalSection(self.num, self.space.no_poles, self.space)
        num = self.num
        exps = list(self.exps)
        for j, f in enumerate(self.space.factors):
            while exps[j] > 0:
                q = num.divide_exact(f)
                if q is None:
                    break
                num = q
                exps[j] -= 1
        return RationalSection(num, tuple(exps), self.space)

    def to_string(self) -> str:
        names = self.space.names()
        num = format_polynomial(self.num, names)
        den = []
        labels = [f"G{i + 1}" for i in range(self.space.k)] + ["S"]
        for lab, e in zip(labels, self.exps):
            if e == 1:
                den.append(lab)
            elif e > 1:
                den.append(f"{lab}^{e}")
        if not den:
            return f"({num})"
        return f"({num}) / ({'*'.join(den)})"

    def __repr__(self):
        return f"RationalSection({self.to_string()})"


def _merge_sign(a: tuple, b: tuple):
    """Sign and sorted union for dq_a ^ dq_b, or (0, None) if they share an index."""
    if set(a) & set(b):
        return 0, None
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return (-1) ** inversions, tuple(sorted(a + b))


class Form:
    """A differential form: sorted tuple of dq indices -> RationalSection."""

    __slots__ = ("terms", "space", "degree")

    def __init__(self, terms: dict, space: FormSpace, degree: int | None = None):
        clean = {}
        for key, s in terms.items():
            if not s.is_zero():
                clean[tuple(key)] = s
        degrees = {len(key) for key in clean}
        if len(degrees) > 1:
            raise ValueError(f"mixed form degrees {sorted(degrees)}")
        self.terms = clean
        self.space = space
        self.degree = degrees.pop() if degrees else (degree if degree is not None else 0)

    @classmethod
    def zero(cls, space: FormSpace, degree: int = 0) -> "Form":
        return cls({}, space, degree)

    @classmethod
    def function(cls, section, space: FormSpace) -> "Form":
        if not isinstance(section, RationalSection):
            section = space.section(section)
        return cls({(): section}, space, 0)

    @classmethod
    def dq(cls, i: int, space: FormSpace) -> "Form":
        return cls({(i,): space.section(1)}, space, 1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Form") -> "Form":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        out = dict(self.terms)
        for key, s in other.terms.items():
            out[key] = out[key] + s if key in out else s
        return Form(out, self.space, self.degree)

    def __neg__(self):
        return Form({k: -s for k, s in self.terms.items()}, self.space, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Form":
        """Multiply by a rational, a Polynomial or a RationalSection."""
        return Form({k: s * c for k, s in self.terms.items()}, self.space, self.degree)

    def __mul__(self, c):
        if isinstance(c, Form):
            return wedge(self, c)
        return self.scale(c)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map_sections(self, fn) -> "Form":
        return Form({k: fn(s) for k, s in self.terms.items()}, self.space, self.degree)

    def simplify(self) -> "Form":
        return self.map_sections(RationalSection.simplify)

    def bidegree(self) -> Bidegree | None:
        spec = self.space.spec
        degs = set()
        for key, s in self.terms.items():
            b = s.bidegree()
            if b is None:
                return None
            for i in key:
                b = b + spec.var_bidegree(i)
            degs.add(b)
        return degs.pop() if len(degs) == 1 else None

    def uses_only_x(self) -> bool:
        k = self.space.k
        for key, s in self.terms.items():
            if any(i < k for i in key):
                return False
            if not s.num.uses_only(range(k, self.space.N)) or s.exps[-1]:
                return False
        return True

    def to_lines(self) -> list:
        names = self.space.names()
        lines = []
        for key in sorted(self.terms):
            diff = "^".join(f"d{names[i]}" for i in key) or "1"
            lines.append(f"{self.terms[key].to_string()} {diff}")
        return lines

    def to_string(self) -> str:
        return "\n".join(self.to_lines()) if self.terms else "0"

    def to_json(self) -> dict:
        names = self.space.names()
        labels = [f"G{i + 1}" for i in range(self.space.k)] + ["S"]
        terms = []
        for key in sorted(self.terms):
            s = self.terms[key]
            terms.append({
                "dq": [f"d{names[i]}" for i in key],
                "numerator": format_polynomial(s.num, names),
                "denominator": {lab: e for lab, e in zip(labels, s.exps) if e},
            })
        return {"degree": self.degree, "terms": terms, "text": self.to_lines()}

    def __repr__(self):
        return f"Form(degree={self.degree}, terms={len(self.terms)})"


# -- exterior calculus ------------------------------------------------------


def wedge(a: Form, b: Form) -> Form:
    out: dict = {}
    for ka, sa in a.terms.items():
        for kb, sb in b.terms.items():
            sign, key = _merge_sign(ka, kb)
            if not sign:
                continue
            s = sa * sb
            if sign < 0:
                s = -s
            out[key] = out[key] + s if key in out else s
    return Form(out, a.space, a.degree + b.degree)


def d(f: Form) -> Form:
    """Exterior derivative (quotient rule inside the fixed denominator set)."""
    out: dict = {}
    N = f.space.N
    for key, s in f.terms.items():
        for i in range(N):
            if i in key:
                continue
            ds = s.derivative(i)
            if ds.is_zero():
                continue
            pos = sum(1 for j in key if j < i)
            if pos % 2:
                ds = -ds
            nk = tuple(sorted(key + (i,)))
            out[nk] = out[nk] + ds if nk in out else ds
    return Form(out, f.space, f.degree + 1)


def contract(f: Form, field: Sequence[Polynomial]) -> Form:
    """Interior product with the polynomial vector field sum_i field[i] d/dq_i."""
    out: dict = {}
    for key, s in f.terms.items():
        for r, i in enumerate(key):
            v = field[i]
            if v.is_zero():
                continue
            t = s * v
            if r % 2:
                t = -t
            nk = key[:r] + key[r + 1 :]
            out[nk] = out[nk] + t if nk in out else t
    return Form(out, f.space, max(f.degree - 1, 0))


def charge_field(spec: RingSpec) -> list:
    N = spec.N
    return [Polynomial.var(i, N).scale(spec.var_bidegree(i).charge) for i in range(N)]


def weight_field(spec: RingSpec) -> list:
    N = spec.N
    return [
        Polynomial.var(i, N) if spec.var_bidegree(i).weight else Polynomial.zero(N) for i in range(N)
    ]


def theta_ch(f: Form) -> Form:
    return contract(f, charge_field(f.space.spec))


def theta_wt(f: Form) -> Form:
    return contract(f, weight_field(f.space.spec))


def mod_dx_top(f: Form) -> Form:
    """Drop every term containing all of dx_0, ..., dx_n."""
    xs = set(f.space.spec.x_indices)
    return Form({k: s for k, s in f.terms.items() if not xs <= set(k)}, f.space, f.degree)


def pole_order(f: Form, lam: int) -> int:
    return max((s.pole_order(lam) for s in f.terms.values()), default=0)


# -- named forms ------------------------------------------------------------


def omega_x(space: FormSpace) -> Form:
    spec = space.spec
    xs = list(spec.x_indices)
    terms = {}
    for i, xi in enumerate(xs):
        key = tuple(x for x in xs if x != xi)
        terms[key] = space.section(Polynomial.var(xi, spec.N).scale((-1) ** i))
    return Form(terms, space, spec.n)


def omega_y(space: FormSpace) -> Form:
    # summation runs over y_1..y_k
    spec = space.spec
    terms = {}
    for lam in range(1, spec.k + 1):
        key = tuple(j for j in range(spec.k) if j != lam - 1)
        terms[key] = space.section(Polynomial.var(lam - 1, spec.N).scale((-1) ** lam))
    return Form(terms, space, spec.k - 1)


def top_form(space: FormSpace, coeff) -> Form:
    return Form({tuple(range(space.N)): space.section(coeff)}, space, space.N)


def split_monomial(m: Sequence[int], spec: RingSpec) -> tuple:
    """Split a monomial y^i x^u into the multi-index i and the x-monomial u (as a Polynomial)."""
    m = tuple(m)
    i = m[: spec.k]
    u = (0,) * spec.k + m[spec.k :]
    return i, Polynomial.monomial(u)


def _y_power(i: Sequence[int], N: int) -> Polynomial:
    return Polynomial.monomial(tuple(i) + (0,) * (N - len(i)))


def _check_input(i: Sequence[int], u: Polynomial, dwork: DworkData):
    spec = dwork.spec
    if len(i) != spec.k:
        raise BidegreeMismatch(f"multi-index {tuple(i)} has length {len(i)}, expected k={spec.k}")
    if not u.uses_only(spec.x_indices):
        raise BidegreeMismatch("u must involve x-variables only")
    b = poly_bidegree(_y_power(i, spec.N) * u, spec)
    if b != Bidegree(dwork.c_G, sum(i)):
        raise BidegreeMismatch(f"y^i u has bidegree {b}, expected ({dwork.c_G}, {sum(i)})")


def alpha_form(c, i: Sequence[int], u: Polynomial, dwork: DworkData) -> Form:
    """c (-1)^{n(k-1)+|i|} (k+|i|-1)! y^i u / S^{k+|i|} Omega_x ^ Omega_y."""
    _check_input(i, u, dwork)
    sp = space_of(dwork)
    n, k, a = dwork.spec.n, dwork.k, sum(i)
    coeff = Rational(c) * (-1) ** (n * (k - 1) + a) * math.factorial(k + a - 1)
    sec = sp.section((_y_power(i, sp.N) * u).scale(coeff), (0,) * k + (k + a,))
    return wedge(omega_x(sp), omega_y(sp)).scale(sec)


def beta_form(c, i: Sequence[int], u: Polynomial, dwork: DworkData) -> Form:
    """c (-1)^{|i|+1} i_1!...i_k! u / (G_1^{i_1+1} ... G_k^{i_k+1}) Omega_x."""
    _check_input(i, u, dwork)
    sp = space_of(dwork)
    a = sum(i)
    coeff = Rational(c) * (-1) ** (a + 1) * math.prod(math.factorial(e) for e in i)
    sec = sp.section(u.scale(coeff), tuple(e + 1 for e in i) + (0,))
    return omega_x(sp).scale(sec)


def omega_rep(c, i: Sequence[int], u: Polynomial, dwork: DworkData) -> Form:
    """The lift with simple poles along each G:
    c (-1)^{|i|+k-1} (|i|+k-1)!/(k-1)! y^i u / (G_1...G_k S^{|i|}) Omega_x."""
    _check_input(i, u, dwork)
    sp = space_of(dwork)
    k, a = dwork.k, sum(i)
    coeff = (
        Rational(c) * (-1) ** (a + k - 1) * Rational(math.factorial(a + k - 1), math.factorial(k - 1))
    )
    sec = sp.section((_y_power(i, sp.N) * u).scale(coeff), (1,) * k + (a,))
    return omega_x(sp).scale(sec)


def mu(v: Polynomial, dwork: DworkData) -> Form:
    """v  |->  -v dq_1 ^ ... ^ dq_N."""
    return top_form(space_of(dwork), -v)


def rho(f: Form, dwork: DworkData) -> Form:
    """x^u y^v dq_top  |->  (-1)^{|v|+k-1} (|v|+k-1)! x^u y^v / S^{|v|+k} dq_top."""
    sp = space_of(dwork)
    k = dwork.k
    top = tuple(range(sp.N))
    if set(f.terms) - {top}:
        raise ValueError("rho expects a top-degree form")
    sec = f.terms.get(top)
    if sec is None:
        return Form.zero(sp, sp.N)
    if any(sec.exps):
        raise ValueError("rho expects a polynomial coefficient")
    total = sp.section(0)
    for m, c in sec.num.terms.items():
        w = sum(m[:k])
        coeff = c * (-1) ** (w + k - 1) * math.factorial(w + k - 1)
        total = total + sp.section(Polynomial.monomial(m, coeff), (0,) * k + (w + k,))
    return Form({top: total}, sp, sp.N)


# The two Euler contractions are applied weight-first (theta_ch o theta_wt); with the
# interior product acting on the first slot this is the order that reproduces alpha.
def phi_form(v: Polynomial, dwork: DworkData) -> Form:
    return theta_ch(theta_wt(rho(mu(v, dwork), dwork)))


def phi_form_literal(v: Polynomial, dwork: DworkData) -> Form:
    """theta_wt(theta_ch(...)): the opposite contraction order; equals -phi_form."""
    return theta_wt(theta_ch(rho(mu(v, dwork), dwork)))


def alpha_of(v: Polynomial, dwork: DworkData) -> Form:
    """alpha extended linearly over the monomials of v."""
    sp = space_of(dwork)
    total = Form.zero(sp, sp.N - 2)
    for m, c in v.terms.items():
        i, u = split_monomial(m, dwork.spec)
        total = total + alpha_form(c, i, u, dwork)
    return total


# -- pullbacks --------------------------------------------------------------


def _pull_section(s: RationalSection) -> RationalSection:
    """Substitute y_lam -> 1/G_lam, so S -> k."""
    sp = s.space
    k = sp.k
    if s.num.is_zero():
        return s
    maxv = [0] * k
    for m in s.num.terms:
        for lam in range(k):
            maxv[lam] = max(maxv[lam], m[lam])
    num = Polynomial.zero(sp.N)
    for m, c in s.num.terms.items():
        x_only = (0,) * k + m[k:]
        fill = tuple(maxv[lam] - m[lam] for lam in range(k)) + (0,)
        num = num + sp.product(fill).mul_monomial(x_only, c)
    scale = Rational(1, k ** s.exps[-1])
    exps = tuple(s.exps[lam] + maxv[lam] for lam in range(k)) + (0,)
    return RationalSection(num.scale(scale), exps, sp)


def _pull_differential(i: int, sp: FormSpace) -> Form:
    if i >= sp.k:
        return Form.dq(i, sp)
    # dy_lam -> -dG_lam / G_lam^2
    g = sp.factors[i]
    exps = tuple(2 if j == i else 0 for j in range(sp.k)) + (0,)
    terms = {}
    for j in sp.spec.x_indices:
        dg = sp.factor_partials[i][j]
        if not dg.is_zero():
            terms[(j,)] = RationalSection(-dg, exps, sp)
    return Form(terms, sp, 1)


def pullback_sigma(f: Form, dwork: DworkData | None = None) -> Form:
    """Pull back along x |-> (x, 1/G_1, ..., 1/G_k)."""
    sp = f.space
    total = Form.zero(sp, f.degree)
    for key, s in f.terms.items():
        piece = Form.function(_pull_section(s), sp)
        for i in key:
            piece = wedge(piece, _pull_differential(i, sp))
        total = total + piece
    return total


def pullback_pr1(f: Form) -> Form:
    """Read an x-only form (G-denominators only) inside the big ring."""
    if not f.uses_only_x():
        raise ValueError("pr1 pullback expects a form in the x-variables with G-denominators only")
    return Form(dict(f.terms), f.space, f.degree)
