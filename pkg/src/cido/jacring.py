"""Dwork potential, the standard-monomial basis of the critical-charge Jacobian slice,
and Griffiths-Dwork reduction modulo the twisted operators D_i = d/dq_i + dS/dq_i."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .linalg import Echelon
from .qpoly import (
    Rational,
    Bidegree,
    Polynomial,
    RingSpec,
    enumerate_monomials,
    poly_bidegree,
    split_by_weight,
)


class BasisError(RuntimeError):
    """A nonzero quotient slice above the weight cap (input is probably singular)."""


class DecompositionError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class DworkData:
    spec: RingSpec
    S: Polynomial
    c_G: int
    jac_generators: tuple

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def N(self) -> int:
        return self.spec.N

    @property
    def G(self) -> tuple:
        return self.spec.generators

    def S_part(self, lam: int) -> Polynomial:
        """S_lam = y_lam * G_lam (1-based lam)."""
        y = Polynomial.var(lam - 1, self.N)
        return y * self.G[lam - 1]


def build_dwork(spec: RingSpec) -> DworkData:
    N = spec.N
    S = Polynomial.zero(N)
    for lam, g in enumerate(spec.generators):
        S = S + Polynomial.var(lam, N) * g
    c_G = sum(spec.degrees) - (spec.n + 1)
    return DworkData(spec, S, c_G, tuple(S.derivative(i) for i in range(N)))


def twisted_derivative(a: Polynomial, i: int, dwork: DworkData) -> Polynomial:
    """D_i(a) = da/dq_i + (dS/dq_i) * a."""
    return a.derivative(i) + dwork.jac_generators[i] * a


class JacobianSlice:
    """Weight-w piece of the critical-charge slice together with the span of
    ``(dS/dq_i) * m`` inside it."""

    def __init__(self, dwork: DworkData, weight: int, track: bool = False):
        spec = dwork.spec
        self.dwork = dwork
        self.weight = weight
        self.bidegree = Bidegree(dwork.c_G, weight)
        self.columns = enumerate_monomials(self.bidegree, spec)
        self.colmap = {m: j for j, m in enumerate(self.columns)}
        # spanning generators, in the fixed order (variable index, multiplier monomial)
        self.generators: list = []
        rows = []
        for i, g in enumerate(dwork.jac_generators):
            if g.is_zero():
                continue
            gdeg = Bidegree(-spec.var_bidegree(i).charge, 1 - spec.var_bidegree(i).weight)
            for m in enumerate_monomials(self.bidegree - gdeg, spec):
                row = {}
                for gm, gc in g.terms.items():
                    row[self.colmap[tuple(a + b for a, b in zip(gm, m))]] = gc
                self.generators.append((i, m))
                rows.append(row)
        self.echelon = Echelon(track=track)
        if track:
            for row in rows:
                self.echelon.add(row)
        else:
            for row in sorted(rows, key=len):
                self.echelon.add(row)

    @property
    def dimension(self) -> int:
        return len(self.columns)

    def standard_monomials(self) -> list:
        return [m for j, m in enumerate(self.columns) if j not in self.echelon.pivots]


@dataclass
class JacobianBasis:
    per_weight: dict
    total_dim: int
    max_weight: int = -1
    slice_dims: dict = field(default_factory=dict)

    def monomials(self) -> list:
        return [m for w in sorted(self.per_weight) for m in self.per_weight[w]]

    def to_json(self, spec: RingSpec) -> dict:
        from .qpoly import monomial_string

        return {
            "total_dim": self.total_dim,
            "per_weight": {
                str(w): [monomial_string(m, spec.names) for m in ms]
                for w, ms in sorted(self.per_weight.items())
                if ms
            },
        }


def milnor_basis(dwork: DworkData, spec: RingSpec | None = None) -> JacobianBasis:
    """Standard monomials of A_{c_G} / (A_{c_G} cap Jac(S)), weight by weight.

    Weights 0..n are always examined; a nonzero slice above n aborts.
    """
    spec = spec or dwork.spec
    per_weight = {}
    dims = {}
    max_weight = -1
    w = 0
    while True:
        sl = JacobianSlice(dwork, w)
        basis = sl.standard_monomials()
        dims[w] = sl.dimension
        if basis:
            if w > spec.n:
                raise BasisError(
                    f"nonzero quotient slice at weight {w} > n = {spec.n}; is the input smooth?"
                )
            per_weight[w] = basis
            max_weight = w
        elif w >= spec.n:
            break
        w += 1
    return JacobianBasis(per_weight, sum(len(b) for b in per_weight.values()), max_weight, dims)


@dataclass
class ReductionResult:
    coordinates: dict
    steps: list = field(default_factory=list)

    def to_json(self, spec: RingSpec) -> dict:
        from .qpoly import monomial_string

        return {
            "coordinates": {
                monomial_string(m, spec.names): str(c) for m, c in sorted(self.coordinates.items())
            },
            "steps": self.steps,
        }


class Reducer:
    """Griffiths-Dwork reduction of charge-c_G polynomials onto a Jacobian basis.

    Slices with combination tracking are built lazily and cached per weight.
    """

    def __init__(self, dwork: DworkData, basis: JacobianBasis):
        self.dwork = dwork
        self.basis = basis
        self.allowed = {m for ms in basis.per_weight.values() for m in ms}
        self._slices: dict = {}

    def slice(self, w: int) -> JacobianSlice:
        sl = self._slices.get(w)
        if sl is None:
            sl = JacobianSlice(self.dwork, w, track=True)
            self._slices[w] = sl
        return sl

    def reduce(self, v: Polynomial) -> ReductionResult:
        spec = self.dwork.spec
        N = spec.N
        for w, part in split_by_weight(v, spec).items():
            b = poly_bidegree(part, spec)
            if b is None or b.charge != self.dwork.c_G:
                raise ValueError(f"weight-{w} component does not have charge c_G = {self.dwork.c_G}")
        coords: dict = {}
        steps = []
        current = v
        while not current.is_zero():
            parts = split_by_weight(current, spec)
            w = max(parts)
            top = parts[w]
            sl = self.slice(w)
            rem, combo = sl.echelon.reduce({sl.colmap[m]: c for m, c in top.terms.items()})
            found = {}
            for j, c in rem.items():
                m = sl.columns[j]
                if m not in self.allowed:
                    raise DecompositionError(
                        f"weight-{w} remainder has support on {m}, outside the basis"
                    )
                found[m] = c
                coords[m] = coords.get(m, Rational(0)) + c
            # remainder - found lies in the Jacobian span: sum_i (dS/dq_i) * m_i
            multipliers: dict = {}
            for idx, c in combo.items():
                i, mono = sl.generators[idx]
                multipliers.setdefault(i, {})
                multipliers[i][mono] = multipliers[i].get(mono, 0) + c
            lowered = Polynomial.zero(N)
            for i, mons in multipliers.items():
                mi = Polynomial({m: c for m, c in mons.items()}, N)
                lowered = lowered - mi.derivative(i)
            steps.append({"weight": w, "terms": len(top), "basis_hits": len(found)})
            current = current - top + lowered
        coords = {m: c for m, c in coords.items() if c}
        return ReductionResult(coords, steps)


def griffiths_dwork_reduce(
    v: Polynomial, dwork: DworkData, basis: JacobianBasis, reducer: Reducer | None = None
) -> ReductionResult:
    reducer = reducer or Reducer(dwork, basis)
    return reducer.reduce(v)


def kernel_test_monomials(dwork: DworkData, i: int, max_degree: int) -> list:
    """Monomials a with total degree <= max_degree for which D_i(a) lies in A_{c_G}."""
    spec = dwork.spec
    target = dwork.c_G + spec.var_bidegree(i).charge
    out = []
    for w in range(max_degree + 1):
        out.extend(m for m in enumerate_monomials(Bidegree(target, w), spec) if sum(m) <= max_degree)
    return out
