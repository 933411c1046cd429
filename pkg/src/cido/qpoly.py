"""Sparse multivariate polynomials over the rationals, bigraded by charge and weight.

A polynomial lives in ``Q[q_1, ..., q_N]`` where, for a :class:`RingSpec`,
``q_1..q_k = y_1..y_k`` and ``q_{k+1}..q_N = x_0..x_n``.  Exponent vectors are
plain tuples indexed from 0, so ``exps[0]`` is the exponent of ``y_1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

try:  # gmpy2's mpq is an order of magnitude faster than fractions.Fraction
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    Rational = Fraction
NUMBER_TYPES = (int, Fraction, type(Rational(0)))
Monomial = tuple  # tuple[int, ...] of length N


class ParseError(ValueError):
    """Syntax error in a polynomial expression."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnknownVariableError(ParseError):
    pass


class Bidegree(NamedTuple):
    charge: int
    weight: int

    def __add__(self, other):
        return Bidegree(self.charge + other.charge, self.weight + other.weight)

    def __sub__(self, other):
        return Bidegree(self.charge - other.charge, self.weight - other.weight)

    def __mul__(self, m: int):
        return Bidegree(self.charge * m, self.weight * m)


def glex_key(m: Monomial):
    """Sort key for graded-lex order with q_1 > q_2 > ... > q_N."""
    return (sum(m), m)


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _add_exps(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero rationals."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nvars: int = 0):
        self.nvars = nvars
        clean = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has length {len(m)}, expected {nvars}")
                c = Rational(c)
                if c:
                    clean[tuple(m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        # trusted constructor: keys are tuples of the right length, values nonzero Fractions
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        c = Rational(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): Rational(1)}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        c = Rational(coeff)
        return cls._raw({exps: c} if c else {}, len(exps))

    # -- access ------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return self._terms

    def items(self):
        return self._terms.items()

    def monomials(self) -> list:
        """Support in descending graded-lex order."""
        return sorted(self._terms, key=glex_key, reverse=True)

    def coeff(self, m: Monomial) -> Rational:
        return self._terms.get(tuple(m), Rational(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Rational:
        return self._terms.get((0,) * self.nvars, Rational(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self._terms), default=-1)

    def uses_only(self, indices: Iterable[int]) -> bool:
        allowed = set(indices)
        return all(e == 0 or j in allowed for m in self._terms for j, e in enumerate(m))

    def leading(self, key=glex_key):
        m = max(self._terms, key=key)
        return m, self._terms[m]

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in rings of different dimension")
            return other
        if isinstance(other, NUMBER_TYPES):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = Rational(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw({m: v * c for m, v in self._terms.items()}, self.nvars)

    def mul_monomial(self, exps: Monomial, c=1) -> "Polynomial":
        c = Rational(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            {_add_exps(m, exps): v * c for m, v in self._terms.items()}, self.nvars
        )

    def __mul__(self, other):
        if isinstance(other, NUMBER_TYPES):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, NUMBER_TYPES):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                m2 = m[:i] + (e - 1,) + m[i + 1 :]
                out[m2] = c * e
        return Polynomial._raw(out, self.nvars)

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial | None":
        """Return ``self / divisor`` when the division is exact, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        lm, lc = divisor.leading(glex_key)
        quotient: dict = {}
        rem = dict(self._terms)
        while rem:
            m = max(rem, key=glex_key)
            c = rem[m]
            diff = tuple(a - b for a, b in zip(m, lm))
            if any(e < 0 for e in diff):
                return None
            f = c / lc
            quotient[diff] = quotient.get(diff, 0) + f
            for dm, dc in divisor._terms.items():
                mm = _add_exps(dm, diff)
                v = rem.get(mm, Rational(0)) - f * dc
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return Polynomial({m: c for m, c in quotient.items()}, self.nvars)

    def extend(self, extra: int) -> "Polynomial":
        """Embed into a ring with ``extra`` more variables appended."""
        pad = (0,) * extra
        return Polynomial._raw({m + pad: c for m, c in self._terms.items()}, self.nvars + extra)

    def evaluate(self, point: Sequence) -> Rational:
        total = Rational(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Rational(x) ** e
            total += v
        return total

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"q{i + 1}" for i in range(self.nvars)]
        return format_polynomial(self, names)

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


def monomial_string(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def format_polynomial(p: Polynomial, names: Sequence[str]) -> str:
    """Canonical text: descending graded-lex, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = []
    for i, m in enumerate(p.monomials()):
        c = p.terms[m]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = monomial_string(m, names) if any(m) else ""
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


@dataclass(frozen=True)
class RingSpec:
    """Ambient data ``(n, G_1..G_k)``; the degrees d_i are read off the generators."""

    n: int
    generators: tuple
    degrees: tuple = field(default=())

    def __post_init__(self):
        k = len(self.generators)
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if k < 1 or k > self.n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={self.n}")
        N = self.n + k + 1
        degs = []
        for i, g in enumerate(self.generators):
            if g.nvars != N:
                raise ValueError(f"G{i + 1} lives in {g.nvars} variables, expected {N}")
            if not g.uses_only(range(k, N)):
                raise ValueError(f"G{i + 1} involves y-variables")
            if g.is_zero():
                raise ValueError(f"G{i + 1} is zero")
            tds = {sum(m) for m in g.terms}
            if len(tds) != 1:
                raise ValueError(f"G{i + 1} is not homogeneous")
            d = tds.pop()
            if d < 1:
                raise ValueError(f"G{i + 1} must have positive degree")
            degs.append(d)
        if self.degrees and tuple(self.degrees) != tuple(degs):
            raise ValueError(f"declared degrees {self.degrees} disagree with generators {degs}")
        object.__setattr__(self, "degrees", tuple(degs))

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def N(self) -> int:
        return self.n + self.k + 1

    @property
    def names(self) -> list:
        return [f"y{i + 1}" for i in range(self.k)] + [f"x{j}" for j in range(self.n + 1)]

    def y(self, i: int) -> int:
        """Variable index of y_i (1-based i)."""
        return i - 1

    def x(self, j: int) -> int:
        """Variable index of x_j (0-based j)."""
        return self.k + j

    @property
    def x_indices(self) -> range:
        return range(self.k, self.N)

    def var_bidegree(self, i: int) -> Bidegree:
        if i < self.k:
            return Bidegree(-self.degrees[i], 1)
        return Bidegree(1, 0)

    def format(self, p: Polynomial) -> str:
        return format_polynomial(p, self.names)

    def parse(self, text: str) -> Polynomial:
        return parse_poly(text, self)

    @classmethod
    def from_strings(cls, n: int, polys: Sequence[str]) -> "RingSpec":
        k = len(polys)
        names = [f"y{i + 1}" for i in range(k)] + [f"x{j}" for j in range(n + 1)]
        gens = tuple(parse_with_names(t, names) for t in polys)
        return cls(n, gens)


def bidegree(m: Monomial, spec: RingSpec) -> Bidegree:
    k = spec.k
    weight = sum(m[:k])
    charge = sum(m[k:]) - sum(d * e for d, e in zip(spec.degrees, m[:k]))
    return Bidegree(charge, weight)


def poly_bidegree(p: Polynomial, spec: RingSpec) -> Bidegree | None:
    """Common bidegree of all terms, or None if p is zero or not bihomogeneous."""
    degs = {bidegree(m, spec) for m in p.terms}
    return degs.pop() if len(degs) == 1 else None


def split_by_weight(p: Polynomial, spec: RingSpec) -> dict:
    parts: dict = {}
    for m, c in p.terms.items():
        parts.setdefault(sum(m[: spec.k]), {})[m] = c
    return {w: Polynomial._raw(t, p.nvars) for w, t in parts.items()}


def derivative(p: Polynomial, index: int) -> Polynomial:
    return p.derivative(index)


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in combinations_with_replacement(range(parts), total):
        e = [0] * parts
        for b in bars:
            e[b] += 1
        yield tuple(e)


def enumerate_monomials(b: Bidegree, spec: RingSpec) -> list:
    """All monomials of bidegree ``b``, in descending graded-lex order."""
    charge, weight = b
    if weight < 0:
        return []
    k = spec.k
    out = []
    for ys in _compositions(weight, k):
        xdeg = charge + sum(d * e for d, e in zip(spec.degrees, ys))
        if xdeg < 0:
            continue
        for xs in _compositions(xdeg, spec.n + 1):
            out.append(ys + xs)
    out.sort(key=glex_key, reverse=True)
    return out


def count_monomials(b: Bidegree, spec: RingSpec) -> int:
    charge, weight = b
    total = 0
    for ys in _compositions(weight, spec.k):
        xdeg = charge + sum(d * e for d, e in zip(spec.degrees, ys))
        if xdeg >= 0:
            total += math.comb(xdeg + spec.n, spec.n)
    return total


# -- parser ----------------------------------------------------------------


class _Parser:
    # expr   := ['+'|'-'] term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := base ('^' nat)?
    # base   := var | rational | '(' expr ')'

    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.index = {name: i for i, name in enumerate(names)}
        self.nvars = len(names)
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a natural number", start)
        return int(self.text[start : self.pos])

    def parse(self) -> Polynomial:
        p = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        acc = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        b = self.base()
        if self.peek() == "^":
            self.pos += 1
            b = b ** self.nat()
        return b

    def base(self) -> Polynomial:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if ch.isdigit():
            num = self.nat()
            if self.peek() == "/":
                self.pos += 1
                den = self.nat()
                if den == 0:
                    raise ParseError("zero denominator", self.pos)
                return Polynomial.constant(Rational(num, den), self.nvars)
            return Polynomial.constant(num, self.nvars)
        if ch.isalpha():
            while self.pos < len(self.text) and self.text[self.pos].isalnum():
                self.pos += 1
            name = self.text[start : self.pos]
            if name not in self.index:
                raise UnknownVariableError(f"unknown variable {name!r}", start)
            return Polynomial.var(self.index[name], self.nvars)
        if not ch:
            raise ParseError("unexpected end of input", self.pos)
        raise ParseError(f"unexpected {ch!r}", self.pos)


def parse_with_names(text: str, names: Sequence[str]) -> Polynomial:
    return _Parser(text, names).parse()


def parse_poly(text: str, spec: RingSpec) -> Polynomial:
    return parse_with_names(text, spec.names)
