"""Exact multivariate polynomials and rational functions over named parameters.

Values are immutable. Coefficients are ``fractions.Fraction`` so every
operation is exact. A monomial is a tuple of ``(name, exponent)`` pairs sorted
by the canonical parameter order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

# Canonical order of the parameters used throughout the package; other
# declared names sort after these alphabetically.
CANONICAL_ORDER: tuple[str, ...] = ("n", "r", "q", "d", "t")

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]


def _name_key(name: str) -> tuple[int, str]:
    if name in CANONICAL_ORDER:
        return (CANONICAL_ORDER.index(name), "")
    return (len(CANONICAL_ORDER), name)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: dict[str, int] = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: _name_key(item[0])))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _name_rank(name: str) -> tuple:
    # Larger rank means earlier in the variable order.
    index, tail = _name_key(name)
    return (-index, tuple(-ord(ch) for ch in tail) + (0,))


def _mono_sort_key(m: Monomial) -> tuple:
    # Graded lexicographic; larger key means larger monomial.
    return (_mono_degree(m), tuple((_name_rank(name), e) for name, e in m))


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    eb = dict(b)
    return all(eb.get(name, 0) >= e for name, e in a)


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    exps = dict(b)
    for name, e in a:
        exps[name] -= e
    return tuple(sorted(((k, v) for k, v in exps.items() if v), key=lambda item: _name_key(item[0])))


class ParamPoly:
    """Polynomial with rational coefficients in named integer-valued parameters."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c:
                key = tuple(sorted(((n, e) for n, e in mono if e), key=lambda item: _name_key(item[0])))
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def const(cls, value: Scalar) -> ParamPoly:
        return cls({(): value})

    @classmethod
    def var(cls, name: str) -> ParamPoly:
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, value: ParamPoly | Scalar) -> ParamPoly:
        if isinstance(value, ParamPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to ParamPoly")

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def as_int(self) -> int:
        value = self.constant_value()
        if value.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return int(value)

    @property
    def variables(self) -> tuple[str, ...]:
        names = {name for mono in self._terms for name, _ in mono}
        return tuple(sorted(names, key=_name_key))

    def total_degree(self) -> int:
        return max((_mono_degree(m) for m in self._terms), default=0)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=0)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: _mono_sort_key(item[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def __add__(self, other: ParamPoly | Scalar) -> ParamPoly:
        other = ParamPoly.coerce(other)
        merged = dict(self._terms)
        for mono, c in other._terms.items():
            merged[mono] = merged.get(mono, Fraction(0)) + c
        return ParamPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> ParamPoly:
        return ParamPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: ParamPoly | Scalar) -> ParamPoly:
        return self + (-ParamPoly.coerce(other))

    def __rsub__(self, other: ParamPoly | Scalar) -> ParamPoly:
        return ParamPoly.coerce(other) - self

    def __mul__(self, other: ParamPoly | Scalar) -> ParamPoly:
        other = ParamPoly.coerce(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, Fraction(0)) + ca * cb
        return ParamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> ParamPoly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ParamPoly.const(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other: Scalar) -> ParamPoly:
        if isinstance(other, ParamPoly):
            if not other.is_constant():
                raise TypeError("use poly_divexact for polynomial division")
            other = other.constant_value()
        if Fraction(other) == 0:
            raise ZeroDivisionError("division by zero")
        return ParamPoly({m: c / Fraction(other) for m, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def subs(self, assignment: Mapping[str, ParamPoly | Scalar]) -> ParamPoly:
        result = ParamPoly()
        for mono, c in self._terms.items():
            term = ParamPoly.const(c)
            for name, e in mono:
                if name in assignment:
                    term = term * ParamPoly.coerce(assignment[name]) ** e
                else:
                    term = term * ParamPoly({((name, e),): 1})
            result = result + term
        return result

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        missing = [name for name in self.variables if name not in assignment]
        if missing:
            raise KeyError(f"assignment misses parameters {missing}")
        total = Fraction(0)
        for mono, c in self._terms.items():
            value = c
            for name, e in mono:
                value *= Fraction(assignment[name]) ** e
            total += value
        return total

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def __repr__(self) -> str:
        return f"ParamPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _format_coeff_mono(coeff: Fraction, mono: Monomial, latex: bool) -> str:
    parts = []
    for name, e in mono:
        if e == 1:
            parts.append(name)
        else:
            parts.append(f"{name}^{{{e}}}" if latex else f"{name}^{e}")
    mono_text = (" " if latex else "*").join(parts)
    mag = abs(coeff)
    if not mono:
        if latex and mag.denominator != 1:
            return f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        return str(mag)
    if mag == 1:
        return mono_text
    if latex:
        c = str(mag) if mag.denominator == 1 else f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        return f"{c} {mono_text}"
    return f"{mag}*{mono_text}"


def format_poly(p: ParamPoly, latex: bool = False) -> str:
    """Canonical text form: graded-lex descending, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = []
    for i, (mono, coeff) in enumerate(p.sorted_terms()):
        body = _format_coeff_mono(coeff, mono, latex)
        if i == 0:
            out.append(("-" if coeff < 0 else "") + body)
        else:
            out.append(("-" if coeff < 0 else "+") + body)
    return "".join(out)


class ParamSpace:
    """The set of parameter names declared for one computation."""

    def __init__(self, names: Iterable[str]) -> None:
        self.names: tuple[str, ...] = tuple(dict.fromkeys(names))
        for name in self.names:
            if not name.isidentifier():
                raise ValueError(f"invalid parameter name {name!r}")

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def symbol(self, name: str) -> ParamPoly:
        if name not in self.names:
            raise NameError(f"undeclared parameter {name!r}; declared: {', '.join(self.names)}")
        return ParamPoly.var(name)

    def symbols(self, *names: str) -> tuple[ParamPoly, ...]:
        return tuple(self.symbol(name) for name in names)

    def check(self, p: ParamPoly) -> ParamPoly:
        undeclared = [name for name in p.variables if name not in self.names]
        if undeclared:
            raise NameError(f"undeclared parameters {undeclared}")
        return p

    def union(self, other: ParamSpace) -> ParamSpace:
        return ParamSpace(self.names + other.names)


T = ParamPoly.var("t")


@dataclass(frozen=True)
class InexactDivision:
    """Report of a polynomial division that leaves a nonzero remainder."""

    numerator: ParamPoly
    denominator: ParamPoly
    quotient: ParamPoly
    remainder: ParamPoly

    @property
    def exact(self) -> bool:
        return False


def poly_divmod(num: ParamPoly, den: ParamPoly) -> tuple[ParamPoly, ParamPoly]:
    """Multivariate division by leading terms in graded-lex order."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_m, lead_c = den.leading_term()
    quotient = ParamPoly()
    remainder = ParamPoly()
    rest = num
    while not rest.is_zero():
        m, c = rest.leading_term()
        if _mono_divides(lead_m, m):
            factor = ParamPoly({_mono_div(m, lead_m): c / lead_c})
            quotient = quotient + factor
            rest = rest - factor * den
        else:
            head = ParamPoly({m: c})
            remainder = remainder + head
            rest = rest - head
    return quotient, remainder


def poly_divexact(num: ParamPoly, den: ParamPoly) -> ParamPoly | InexactDivision:
    """Quotient when ``den`` divides ``num``; otherwise an inexactness report."""
    quotient, remainder = poly_divmod(num, den)
    if remainder.is_zero():
        return quotient
    return InexactDivision(num, den, quotient, remainder)


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    UNDECIDABLE = "undecidable"


def parity_of(p: ParamPoly) -> Parity:
    """Decide the parity of ``p`` over all integer parameter values.

    On integers ``x^k`` and ``x`` have the same parity, so the polynomial is
    reduced to a multilinear polynomial over GF(2). It is constant on all
    integer points exactly when that reduction is constant.
    """
    if not p.has_integer_coefficients():
        raise ValueError(f"parity needs integer coefficients: {p}")
    reduced: dict[frozenset[str], int] = {}
    for mono, c in p.terms.items():
        support = frozenset(name for name, _ in mono)
        reduced[support] = (reduced.get(support, 0) + int(c)) % 2
    odd_supports = {s for s, v in reduced.items() if v}
    if not odd_supports:
        return Parity.EVEN
    if odd_supports == {frozenset()}:
        return Parity.ODD
    return Parity.UNDECIDABLE


def sign_of_power(exponent: ParamPoly) -> int:
    """Return ``(-1)**exponent``; raises when the parity is undecidable."""
    parity = parity_of(exponent)
    if parity is Parity.UNDECIDABLE:
        raise ParityError(exponent)
    return 1 if parity is Parity.EVEN else -1


class ParityError(ValueError):
    def __init__(self, exponent: ParamPoly) -> None:
        super().__init__(f"parity of exponent {exponent} is undecidable")
        self.exponent = exponent


# Rational functions. Reduction uses sympy's multivariate gcd.


def _to_sympy(p: ParamPoly, gens: tuple[str, ...]):
    import sympy

    symbols = sympy.symbols(gens)
    lookup = dict(zip(gens, symbols))
    expr = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for name, e in mono:
            term *= lookup[name] ** e
        expr += term
    return sympy.Poly(expr, *symbols, domain="QQ")


def _from_sympy(poly, gens: tuple[str, ...]) -> ParamPoly:
    terms: dict[Monomial, Fraction] = {}
    for exps, coeff in poly.terms():
        mono = tuple((name, e) for name, e in zip(gens, exps) if e)
        terms[mono] = Fraction(int(coeff.p), int(coeff.q))
    return ParamPoly(terms)


def poly_gcd(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Monic greatest common divisor (graded-lex leading coefficient 1)."""
    if a.is_zero() and b.is_zero():
        return ParamPoly()
    gens = tuple(sorted(set(a.variables) | set(b.variables), key=_name_key))
    if not gens:
        return ParamPoly.const(1)
    pa = _to_sympy(a, gens)
    pb = _to_sympy(b, gens)
    g = _from_sympy(pa.gcd(pb), gens)
    _, lead = g.leading_term()
    return g / lead


class ParamRational:
    """Reduced quotient of two ``ParamPoly`` values with a monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: ParamPoly | Scalar, denominator: ParamPoly | Scalar = 1) -> None:
        num = ParamPoly.coerce(numerator)
        den = ParamPoly.coerce(denominator)
        if den.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        if num.is_zero():
            num, den = ParamPoly(), ParamPoly.const(1)
        elif not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = _exact(num, g)
                den = _exact(den, g)
        _, lead = den.leading_term()
        self.numerator = num / lead
        self.denominator = den / lead

    @classmethod
    def coerce(cls, value: ParamRational | ParamPoly | Scalar) -> ParamRational:
        return value if isinstance(value, ParamRational) else cls(value)

    def is_polynomial(self) -> bool:
        return self.denominator == 1

    def as_poly(self) -> ParamPoly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.numerator

    def __add__(self, other: ParamRational | ParamPoly | Scalar) -> ParamRational:
        o = ParamRational.coerce(other)
        return ParamRational(self.numerator * o.denominator + o.numerator * self.denominator, self.denominator * o.denominator)

    __radd__ = __add__

    def __neg__(self) -> ParamRational:
        return ParamRational(-self.numerator, self.denominator)

    def __sub__(self, other: ParamRational | ParamPoly | Scalar) -> ParamRational:
        return self + (-ParamRational.coerce(other))

    def __mul__(self, other: ParamRational | ParamPoly | Scalar) -> ParamRational:
        o = ParamRational.coerce(other)
        return ParamRational(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other: ParamRational | ParamPoly | Scalar) -> ParamRational:
        o = ParamRational.coerce(other)
        if o.numerator.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return ParamRational(self.numerator * o.denominator, self.denominator * o.numerator)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = ParamRational(other)
        if not isinstance(other, ParamRational):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def reduced(self) -> ParamRational:
        return ParamRational(self.numerator, self.denominator)

    def __str__(self) -> str:
        if self.is_polynomial():
            return format_poly(self.numerator)
        return f"({format_poly(self.numerator)})/({format_poly(self.denominator)})"

    def __repr__(self) -> str:
        return f"ParamRational({str(self)!r})"


def _exact(num: ParamPoly, den: ParamPoly) -> ParamPoly:
    result = poly_divexact(num, den)
    if isinstance(result, InexactDivision):
        raise ArithmeticError(f"gcd {den} does not divide {num}")
    return result


@dataclass(frozen=True)
class PoleReport:
    """The denominator still vanishes at the point after cancellation."""

    function: ParamRational
    at: tuple[tuple[str, Fraction], ...]
    numerator_value: Fraction

    def __str__(self) -> str:
        point = ", ".join(f"{k}={v}" for k, v in self.at)
        return f"pole of {self.function} at {point} (numerator value {self.numerator_value})"


def eval_limit(f: ParamRational | ParamPoly, at: Mapping[str, Scalar]) -> Fraction | PoleReport:
    """Evaluate at a point, cancelling common factors when both sides vanish."""
    f = ParamRational.coerce(f)
    point = tuple(sorted(((k, Fraction(v)) for k, v in at.items()), key=lambda kv: _name_key(kv[0])))
    den = f.denominator.evaluate(at)
    num = f.numerator.evaluate(at)
    # Values are stored reduced, so common factors are already cancelled and a
    # vanishing denominator is a genuine pole.
    if den != 0:
        return num / den
    return PoleReport(f, point, num)
