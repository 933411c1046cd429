"""Buchberger's algorithm over Q (graded reverse lex) and the smoothness certifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .qpoly import Polynomial, RingSpec, grevlex_key


class DegenerateInputError(ValueError):
    pass


def _lm(p: Polynomial):
    return max(p.terms, key=grevlex_key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(p: Polynomial) -> Polynomial:
    lc = p.terms[_lm(p)]
    return p if lc == 1 else p.scale(1 / lc)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: str = "grevlex"

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.generators)


def _reduce(p: Polynomial, basis: Sequence[Polynomial], leads: Sequence) -> Polynomial:
    """Full reduction of p modulo basis (leading monomials given)."""
    terms = dict(p.terms)
    rem = {}
    while terms:
        m = max(terms, key=grevlex_key)
        c = terms[m]
        for g, lm in zip(basis, leads):
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                f = c / g.terms[lm]
                for gm, gc in g.terms.items():
                    mm = tuple(x + y for x, y in zip(gm, shift))
                    v = terms.get(mm, 0) - f * gc
                    if v:
                        terms[mm] = v
                    else:
                        terms.pop(mm, None)
                break
        else:
            rem[m] = c
            del terms[m]
    return Polynomial._raw(rem, p.nvars)


def normal_form(p: Polynomial, gb: GroebnerBasis | Sequence[Polynomial]) -> Polynomial:
    gens = list(gb)
    return _reduce(p, gens, [_lm(g) for g in gens])


def _spoly(f: Polynomial, g: Polynomial, lf, lg) -> Polynomial:
    l = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(l, lf))
    sg = tuple(a - b for a, b in zip(l, lg))
    return f.mul_monomial(sf, 1 / f.terms[lf]) - g.mul_monomial(sg, 1 / g.terms[lg])


def buchberger(gens: Sequence[Polynomial]) -> GroebnerBasis:
    """Reduced Groebner basis for graded reverse lex.

    Pairs are discarded by the coprime-leading-monomial criterion and the
    chain criterion.
    """
    basis = [_monic(g) for g in gens if not g.is_zero()]
    if not basis:
        raise DegenerateInputError("empty generating set")
    nvars = basis[0].nvars
    leads = [_lm(g) for g in basis]
    pairs = set(combinations(range(len(basis)), 2))
    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(_lcm(leads[ij[0]], leads[ij[1]])), ij))
        pairs.discard((i, j))
        li, lj = leads[i], leads[j]
        lij = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        chain = False
        for t in range(len(basis)):
            if t in (i, j) or basis[t] is None:
                continue
            if _divides(leads[t], lij):
                a, b = min(i, t), max(i, t)
                c, d = min(j, t), max(j, t)
                if (a, b) not in pairs and (c, d) not in pairs:
                    chain = True
                    break
        if chain:
            continue
        active = [(g, l) for g, l in zip(basis, leads) if g is not None]
        h = _reduce(_spoly(basis[i], basis[j], li, lj), [g for g, _ in active], [l for _, l in active])
        if h.is_zero():
            continue
        h = _monic(h)
        if h.is_constant():
            return GroebnerBasis((Polynomial.constant(1, nvars),))
        basis.append(h)
        leads.append(_lm(h))
        new = len(basis) - 1
        pairs.update((t, new) for t in range(new) if basis[t] is not None)
    return GroebnerBasis(tuple(_interreduce(basis, leads)))


def _interreduce(basis, leads) -> list:
    items = [(g, l) for g, l in zip(basis, leads) if g is not None]
    # minimal: drop elements whose leading monomial is divisible by another's
    minimal = []
    for idx, (g, l) in enumerate(items):
        redundant = False
        for jdx, (h, lh) in enumerate(items):
            if jdx == idx:
                continue
            if _divides(lh, l) and (lh != l or jdx < idx):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = _monic(_reduce(g, others, [_lm(o) for o in others]))
        reduced.append(r)
    reduced.sort(key=lambda p: grevlex_key(_lm(p)), reverse=True)
    return reduced


def ideal_contains(f: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(f, gb).is_zero()


def radical_membership(f: Polynomial, gens: Sequence[Polynomial]) -> bool:
    """Rabinowitsch: f is in rad<gens> iff 1 is in <gens, 1 - t*f> (t a fresh last variable)."""
    ext = [g.extend(1) for g in gens]
    nvars = f.nvars + 1
    t = Polynomial.var(nvars - 1, nvars)
    ext.append(Polynomial.constant(1, nvars) - t * f.extend(1))
    return buchberger(ext).is_unit()


def _minors(matrix: list, size: int) -> list:
    rows = len(matrix)
    cols = len(matrix[0])
    out = []
    for cs in combinations(range(cols), size):
        sub = [[matrix[r][c] for c in cs] for r in range(rows)]
        out.append(_det(sub))
    return out


def _det(m: list) -> Polynomial:
    if len(m) == 1:
        return m[0][0]
    total = None
    for c in range(len(m)):
        minor = [row[:c] + row[c + 1 :] for row in m[1:]]
        term = m[0][c] * _det(minor)
        if c % 2:
            term = -term
        total = term if total is None else total + term
    return total


@dataclass
class SmoothnessReport:
    smooth: bool
    witness: str | None = None
    ideal_size: int = 0
    checked: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "smooth": self.smooth,
            "witness": self.witness,
            "ideal_generators": self.ideal_size,
            "checked": self.checked,
        }


def singular_ideal(spec: RingSpec) -> list:
    """``<G_1..G_k>`` plus all k x k minors of the Jacobian matrix in the x-variables."""
    k, N = spec.k, spec.N
    for i, g in enumerate(spec.generators):
        if g.is_zero():
            raise DegenerateInputError(f"G{i + 1} is zero")
    xs = list(spec.x_indices)
    # work in x0..xn only
    gens = [_restrict(g, xs) for g in spec.generators]
    jac = [[g.derivative(j) for j in range(len(xs))] for g in gens]
    ideal = list(gens) + [m for m in _minors(jac, k) if not m.is_zero()]
    return ideal


def _restrict(p: Polynomial, indices: Sequence[int]) -> Polynomial:
    return Polynomial._raw({tuple(m[i] for i in indices): c for m, c in p.terms.items()}, len(indices))


def certify_smooth_ci(spec: RingSpec) -> SmoothnessReport:
    """The affine cone of V(G) is smooth away from the origin iff every x_j lies in
    the radical of the singular ideal."""
    ideal = singular_ideal(spec)
    nx = spec.n + 1
    checked = []
    for j in range(nx):
        ok = radical_membership(Polynomial.var(j, nx), ideal)
        checked.append(f"x{j}")
        if not ok:
            return SmoothnessReport(False, f"x{j}", len(ideal), checked)
    return SmoothnessReport(True, None, len(ideal), checked)
