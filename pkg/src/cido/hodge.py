"""Betti-number oracle for smooth complete intersections from one-variable power series.

Nothing here touches the Jacobian ring, so comparing against it is a genuine cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .qpoly import RingSpec


class NegativeBettiError(ValueError):
    pass


def _series_mul(a: list, b: list, order: int) -> list:
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] += x * y
    return out


def _inverse_linear(d: int, order: int) -> list:
    # 1 / (1 + d h) = sum (-d)^j h^j
    return [(-d) ** j for j in range(order + 1)]


def chern_series(n: int, degrees: Sequence[int], order: int) -> list:
    """Coefficients of (1+h)^{n+1} / prod (1 + d_i h) up to h^order."""
    s = [math.comb(n + 1, j) for j in range(order + 1)]
    for d in degrees:
        s = _series_mul(s, _inverse_linear(d, order), order)
    return s


def euler_from_degrees(n: int, degrees: Sequence[int]) -> int:
    dim = n - len(degrees)
    return math.prod(degrees) * chern_series(n, degrees, dim)[dim]


def euler_characteristic(spec: RingSpec) -> int:
    return euler_from_degrees(spec.n, spec.degrees)


@dataclass(frozen=True)
class BettiReport:
    euler: int
    middle_betti: int
    primitive_middle: int
    hodge_slices: tuple | None = None

    def to_json(self) -> dict:
        out = {
            "euler": self.euler,
            "middle_betti": self.middle_betti,
            "primitive_middle": self.primitive_middle,
        }
        if self.hodge_slices is not None:
            out["experimental_hodge_slices"] = list(self.hodge_slices)
        return out


def betti_from_degrees(n: int, degrees: Sequence[int]) -> BettiReport:
    dim = n - len(degrees)
    chi = euler_from_degrees(n, degrees)
    if dim % 2 == 0:
        middle = chi - dim
        prim = middle - 1
    else:
        middle = (dim + 1) - chi
        prim = middle
    if middle < 0 or prim < 0:
        raise NegativeBettiError(f"negative Betti number from chi = {chi}")
    return BettiReport(chi, middle, prim)


def primitive_middle_dim(spec: RingSpec, hodge_slices: bool = False) -> BettiReport:
    r = betti_from_degrees(spec.n, spec.degrees)
    if hodge_slices:
        r = BettiReport(r.euler, r.middle_betti, r.primitive_middle,
                        primitive_hodge_numbers(spec.n, spec.degrees))
    return r


# -- experimental per-(p,q) refinement ---------------------------------------


def _poly_mul(a: dict, b: dict, order: int) -> dict:
    """Product of series in h with coefficients polynomials in y ({power: Fraction})."""
    out: dict = {}
    for i, ca in a.items():
        for j, cb in b.items():
            if i + j > order:
                continue
            acc = out.setdefault(i + j, {})
            for p, x in ca.items():
                for q, y in cb.items():
                    acc[p + q] = acc.get(p + q, 0) + x * y
    return out


def chi_y_genus(n: int, degrees: Sequence[int]) -> list:
    """Hirzebruch chi_y genus sum_p chi(Omega^p) y^p of the complete intersection.

    Uses the generating function of the tangent-bundle factor
    Q_y(x) = x(1 + y e^{-x(1+y)}) / (1 - e^{-x(1+y)}) and returns the list of
    coefficients of y^0..y^dim.
    """
    dim = n - len(degrees)
    order = dim

    def series_Q(scale: int) -> dict:
        # Q_y(scale * x) with respect to x, as {x_power: {y_power: coeff}}
        # Q_y(t) = t(1+y) / (1 - e^{-t(1+y)}) - t y
        # expand t(1+y)/(1-e^{-t(1+y)}) = sum B_j^+ (t(1+y))^j / j!  (Bernoulli with B1=+1/2)
        out: dict = {}
        bern = _bernoulli_plus(order + 1)
        for j in range(order + 1):
            coeff = Fraction(bern[j], math.factorial(j)) * scale**j
            # (1+y)^j
            ys = {p: coeff * math.comb(j, p) for p in range(j + 1)}
            out[j] = ys
        # subtract t*y
        if order >= 1:
            out[1][1] = out[1].get(1, 0) - scale
        return out

    def series_inv(s: dict) -> dict:
        # inverse of a series with constant term 1 (in y too)
        inv = {0: {0: Fraction(1)}}
        for m in range(1, order + 1):
            acc: dict = {}
            for i in range(1, m + 1):
                if i not in s or (m - i) not in inv:
                    continue
                for p, x in s[i].items():
                    for q, y in inv[m - i].items():
                        acc[p + q] = acc.get(p + q, 0) - x * y
            inv[m] = acc
        return inv

    total = {0: {0: Fraction(1)}}
    for _ in range(n + 1):
        total = _poly_mul(total, series_Q(1), order)
    for d in degrees:
        total = _poly_mul(total, series_inv(series_Q(d)), order)
    top = total.get(dim, {})
    deg = math.prod(degrees)
    return [deg * top.get(p, 0) for p in range(dim + 1)]


def _bernoulli_plus(m: int) -> list:
    """Bernoulli numbers with B_1 = +1/2: t/(1-e^{-t}) = sum B_j t^j / j!."""
    B = [Fraction(0)] * (m + 1)
    B[0] = Fraction(1)
    for j in range(1, m + 1):
        B[j] = -sum(math.comb(j + 1, i) * B[i] for i in range(j)) / (j + 1)
    if m >= 1:
        B[1] = -B[1]
    return B


def primitive_hodge_numbers(n: int, degrees: Sequence[int]) -> tuple:
    """Primitive middle Hodge numbers h^{dim-p, p}_prim for p = 0..dim (experimental).

    Off-middle Hodge numbers of a complete intersection agree with projective
    space, so chi(Omega^p) determines the middle ones.
    """
    dim = n - len(degrees)
    chis = chi_y_genus(n, degrees)
    out = []
    for p in range(dim + 1):
        q = dim - p
        # chi(Omega^p) = sum_q (-1)^q h^{p,q}; ambient classes contribute h^{p,p} = 1
        ambient = (-1) ** p if 2 * p != dim else 0
        h_mid = (chis[p] - ambient) * (-1) ** q
        if 2 * p == dim:
            h_mid -= 1
        out.append(int(h_mid))
    return tuple(out)
