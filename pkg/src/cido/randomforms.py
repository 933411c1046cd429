"""Seeded random sections, forms and cochains for the property suites."""

from __future__ import annotations

import random
from itertools import combinations

from .cechdr import Cochain
from .deforms import Form, FormSpace, RationalSection
from .qpoly import Polynomial, Rational


def random_polynomial(rng: random.Random, nvars: int, terms: int = 3, max_exp: int = 2) -> Polynomial:
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = tuple(rng.randint(0, max_exp) if rng.random() < 0.4 else 0 for _ in range(nvars))
        c = Rational(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        out[m] = out.get(m, 0) + c
    p = Polynomial(out, nvars)
    return p if not p.is_zero() else Polynomial.constant(1, nvars)


def random_section(rng: random.Random, sp: FormSpace, g_pole: int = 1, s_pole: int = 2) -> RationalSection:
    num = random_polynomial(rng, sp.N)
    exps = tuple(rng.randint(0, g_pole) for _ in range(sp.k)) + (rng.randint(0, s_pole),)
    return RationalSection(num, exps, sp)


def random_form(rng: random.Random, sp: FormSpace, degree: int, terms: int = 2,
                g_pole: int = 1, s_pole: int = 2) -> Form:
    keys = list(combinations(range(sp.N), degree))
    out: dict = {}
    for key in rng.sample(keys, min(len(keys), rng.randint(1, terms))):
        out[key] = random_section(rng, sp, g_pole, s_pole)
    return Form(out, sp, degree)


def random_field(rng: random.Random, sp: FormSpace) -> list:
    return [random_polynomial(rng, sp.N, terms=2, max_exp=1) if rng.random() < 0.7
            else Polynomial.zero(sp.N) for _ in range(sp.N)]


def random_cochain(rng: random.Random, sp: FormSpace, q: int, p: int) -> Cochain:
    """Components with pole order at most 1 along every G."""
    comps = {}
    for key in combinations(range(1, sp.k + 1), q + 1):
        if rng.random() < 0.8:
            comps[key] = random_form(rng, sp, p, terms=1, g_pole=1, s_pole=1)
    return Cochain(q, comps, sp, p)
