"""Per-geometry data: classes, Hom/Ext dimensions, moduli, pairing and DT values.

Geometries load from a line-oriented config format::

    [params]    n r
    [pairing]   n
    [class]     A1 degree=1 chi=r rank=1 moduli=projective(n+r-1) stabilizer=Gm
    [hom]       A1 A0 off 1
    [ext1]      A0 A1 off n+r
    [nonsplit]  A0 A1 off flag(n+r)
    [dt]        1 1
    [ambient]   B 2n+2r-5
    [stratum]   B 1 grassmannian(2,n+r) Gm
    [integrals] B I1 A1 A0 n+r
    [dims]      B d1 2n+2r-5

Each entry sits on its own line below its section header; ``#`` starts a
comment. Expressions must not contain spaces.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .classes import NumClass, SheafClass
from .groups import GL2, GM, GroupExpr, SemiDirect, TorusPow, TorusUnion
from .motivic import (
    Affine,
    Bundle,
    Complement,
    Diagonal,
    Disjoint,
    DistinctPairs,
    EulerSpace,
    Flag12,
    FreeQuotient,
    Grassmannian,
    ModuliDescriptor,
    Point,
    Projective,
    Space,
    Torus,
    euler_char,
    off_diagonal,
    product,
)
from .parsing import Call, Node, ParseError, parse_node, parse_poly
from .polys import ParamPoly, ParamSpace, format_poly


class MissingOracleEntry(KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing oracle entry"


class OracleValidationError(ValueError):
    pass


@dataclass(frozen=True)
class ClassEntry:
    """A declared class of rank at most one; ``moduli`` is None when empty."""

    name: str
    cls: NumClass
    moduli: Optional[Space]
    stabilizer: GroupExpr


@dataclass(frozen=True)
class StratumSpec:
    """An explicit stratum ``coeff [space/group]`` of the semistable stack.

    When ``fixed`` is given, the maximal torus acts through a rank-one quotient
    that fixes ``fixed`` pointwise and acts freely on its complement.
    """

    coeff: Fraction
    space: Space
    group: GroupExpr
    fixed: Optional[Space] = None


@dataclass
class RankTwoEntry:
    name: str
    cls: NumClass
    ambient: Optional[ParamPoly] = None
    strata: list[StratumSpec] = field(default_factory=list)
    integrals_one: dict[tuple[NumClass, NumClass], ParamPoly] = field(default_factory=dict)
    integral_two: Optional[ParamPoly] = None
    chi_half: Optional[ParamPoly] = None
    dims: dict[str, ParamPoly] = field(default_factory=dict)


HomKey = tuple[NumClass, NumClass, bool]


class GeometryOracle:
    """Read-only table of geometric data for one threefold and curve class family."""

    def __init__(
        self,
        name: str,
        params: ParamSpace,
        twist: ParamPoly,
        classes: list[ClassEntry],
        rank_two: list[RankTwoEntry],
        hom: dict[HomKey, ParamPoly],
        ext1: dict[HomKey, ParamPoly],
        nonsplit: dict[HomKey, Space],
        dt: dict[int, Fraction],
    ) -> None:
        self.name = name
        self.params = params
        self.twist = twist
        self._classes = {c.name: c for c in classes}
        self._by_class = {c.cls: c for c in classes}
        self._rank_two = {e.name: e for e in rank_two}
        self._rank_two_by_class = {e.cls: e for e in rank_two}
        self._hom = dict(hom)
        self._ext1 = dict(ext1)
        self._nonsplit = dict(nonsplit)
        self._dt = dict(dt)

    # lookups

    def class_named(self, name: str) -> NumClass:
        if name in self._classes:
            return self._classes[name].cls
        if name in self._rank_two:
            return self._rank_two[name].cls
        raise MissingOracleEntry(f"undeclared class {name!r}")

    def name_of(self, c: NumClass) -> str:
        if c in self._by_class:
            return self._by_class[c].name
        if c in self._rank_two_by_class:
            return self._rank_two_by_class[c].name
        return str(c)

    def rank_one_classes(self) -> list[ClassEntry]:
        return [c for c in self._classes.values() if c.cls.rank == 1]

    def rank_two_classes(self) -> list[RankTwoEntry]:
        return list(self._rank_two.values())

    def rank_two_entry(self, c: NumClass) -> RankTwoEntry:
        try:
            return self._rank_two_by_class[c]
        except KeyError:
            raise MissingOracleEntry(f"no rank-2 data for class {c}") from None

    def is_declared(self, c: NumClass) -> bool:
        return c in self._by_class or c in self._rank_two_by_class

    def _check_declared(self, c: NumClass) -> None:
        if not self.is_declared(c):
            raise MissingOracleEntry(f"undeclared class {c}")

    def euler_pairing_Bp(self, a: NumClass, b: NumClass) -> ParamPoly:
        """Pairing of pair classes; the sheaf-sheaf part vanishes for curve classes."""
        self._check_declared(a)
        self._check_declared(b)
        return pairing_value(self.twist, a, b)

    def hom_dim(self, a: NumClass, b: NumClass, diagonal: bool = False) -> ParamPoly:
        return self._lookup(self._hom, "hom", a, b, diagonal)

    def ext1_dim(self, a: NumClass, b: NumClass, diagonal: bool = False) -> ParamPoly:
        return self._lookup(self._ext1, "ext1", a, b, diagonal)

    def nonsplit_locus(self, a: NumClass, b: NumClass, diagonal: bool = False) -> Optional[Space]:
        """Explicit locus of nonsplit extensions, when the table supplies one."""
        return self._nonsplit.get((a, b, diagonal))

    def _lookup(self, table: dict[HomKey, ParamPoly], what: str, a: NumClass, b: NumClass, diagonal: bool) -> ParamPoly:
        try:
            return table[(a, b, diagonal)]
        except KeyError:
            where = "diagonal" if diagonal else "off-diagonal"
            raise MissingOracleEntry(f"no {what} entry for {self.name_of(a)} -> {self.name_of(b)} ({where})") from None

    def moduli_descriptor(self, c: NumClass) -> tuple[Space, GroupExpr]:
        if c.rank > 1:
            raise ValueError("moduli descriptors exist for classes of rank at most one")
        entry = self._by_class.get(c)
        if entry is None:
            raise MissingOracleEntry(f"undeclared class {c}")
        if entry.moduli is None:
            raise MissingOracleEntry(f"class {entry.name} has empty moduli")
        return entry.moduli, entry.stabilizer

    def has_moduli(self, c: NumClass) -> bool:
        entry = self._by_class.get(c)
        return entry is not None and entry.moduli is not None

    def resolve(self, tag: str) -> Space:
        """Resolver for ``ModuliDescriptor`` tags, which name declared classes."""
        entry = self._classes.get(tag)
        if entry is None or entry.moduli is None:
            raise MissingOracleEntry(f"no moduli for descriptor {tag!r}")
        return entry.moduli

    def dt_value(self, sheaf: SheafClass | int) -> Fraction:
        degree = sheaf if isinstance(sheaf, int) else sheaf.degree
        if degree <= 0:
            raise ValueError("DT values are defined on effective curve classes only")
        try:
            return self._dt[degree]
        except KeyError:
            raise MissingOracleEntry(f"no DT value for degree {degree}") from None

    def dt_table(self) -> dict[int, Fraction]:
        return dict(self._dt)

    def with_dt(self, values: dict[int, Fraction]) -> GeometryOracle:
        """A copy with some DT values replaced."""
        clone = GeometryOracle(
            self.name,
            self.params,
            self.twist,
            list(self._classes.values()),
            list(self._rank_two.values()),
            self._hom,
            self._ext1,
            self._nonsplit,
            {**self._dt, **{k: Fraction(v) for k, v in values.items()}},
        )
        return clone

    def ambient_dim(self, c: NumClass) -> ParamPoly:
        entry = self.rank_two_entry(c)
        if entry.ambient is None:
            raise MissingOracleEntry(f"no ambient dimension for {entry.name}")
        return entry.ambient

    def populated_sheaf_classes(self) -> list[SheafClass]:
        """Effective sheaf classes carried by declared classes, in declaration order."""
        seen: dict[SheafClass, None] = {}
        for entry in self._classes.values():
            s = entry.cls.sheaf
            if s.degree > 0 and entry.moduli is not None:
                seen[s] = None
        return list(seen)

    def decompositions(self, beta: NumClass) -> list[tuple[NumClass, NumClass]]:
        """Ordered pairs of rank-one classes with nonempty moduli summing to ``beta``."""
        ones = [c.cls for c in self.rank_one_classes() if c.moduli is not None]
        return [(k, l) for k in ones for l in ones if k + l == beta]

    def sample_points(self, values: tuple[int, ...] = (1, 2, 3)) -> Iterator[dict[str, int]]:
        names = self.params.names
        for combo in itertools.product(values, repeat=len(names)):
            yield dict(zip(names, combo))

    def validate(self) -> None:
        for (a, b, diag), dim in self._hom.items():
            if diag and a != b:
                raise OracleValidationError(f"diagonal hom entry for distinct classes {self.name_of(a)}, {self.name_of(b)}")
            if a == b and a.rank == 1:
                expected = 1 if diag else 0
                if dim != ParamPoly.const(expected):
                    raise OracleValidationError(
                        f"hom between stable pairs of class {self.name_of(a)} must be {expected} "
                        f"{'on' if diag else 'off'} the diagonal, found {format_poly(dim)}"
                    )
        for key, dim in self._ext1.items():
            for point in self.sample_points():
                v = dim.evaluate(point)
                if v.denominator != 1 or v < 0:
                    a, b, _ = key
                    raise OracleValidationError(
                        f"ext1 entry {self.name_of(a)} -> {self.name_of(b)} = {format_poly(dim)} is {v} at {point}"
                    )
        for entry in self._classes.values():
            if entry.moduli is None:
                continue
            chi = euler_char(entry.moduli, self.resolve)
            for point in self.sample_points():
                if chi.evaluate(point) < 0:
                    raise OracleValidationError(f"moduli of {entry.name} has negative Euler characteristic at {point}")


def pairing_value(twist: ParamPoly, a: NumClass, b: NumClass) -> ParamPoly:
    """``e (twist deg_a + chi_a) - d (twist deg_b + chi_b)`` for ``a = (.., d)``, ``b = (.., e)``."""
    return b.rank * (twist * a.degree + a.chi) - a.rank * (twist * b.degree + b.chi)


# Config parsing

_SECTIONS = ("params", "pairing", "class", "hom", "ext1", "nonsplit", "dt", "ambient", "stratum", "integrals", "dims")
_GM_POWER = re.compile(r"Gm(?:\^(\d+))?$")
_SEMIDIRECT = re.compile(r"semidirect\((\d+),(\d+)\)$")


@dataclass(frozen=True)
class _Word:
    text: str
    column: int


def _words(line: str) -> list[_Word]:
    return [_Word(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


class _Loader:
    def __init__(self, name: str) -> None:
        self.name = name
        self.params = ParamSpace(())
        self.twist: Optional[ParamPoly] = None
        self.classes: list[ClassEntry] = []
        self.rank_two: list[RankTwoEntry] = []
        self.names: dict[str, NumClass] = {}
        self.hom: dict[HomKey, ParamPoly] = {}
        self.ext1: dict[HomKey, ParamPoly] = {}
        self.nonsplit: dict[HomKey, Space] = {}
        self.dt: dict[int, Fraction] = {}

    def poly(self, w: _Word, line: int) -> ParamPoly:
        return parse_poly(w.text, self.params, line, w.column - 1)

    def integer(self, w: _Word, line: int) -> int:
        value = self.poly(w, line)
        if not value.is_constant() or value.constant_value().denominator != 1:
            raise ParseError(f"expected an integer, found {w.text!r}", line, w.column)
        return int(value.constant_value())

    def rational(self, w: _Word, line: int) -> Fraction:
        value = self.poly(w, line)
        if not value.is_constant():
            raise ParseError(f"expected a number, found {w.text!r}", line, w.column)
        return value.constant_value()

    def class_ref(self, w: _Word, line: int) -> NumClass:
        if w.text not in self.names:
            raise ParseError(f"undeclared class {w.text!r}", line, w.column)
        return self.names[w.text]

    def rank_two_ref(self, w: _Word, line: int) -> RankTwoEntry:
        for e in self.rank_two:
            if e.name == w.text:
                return e
        raise ParseError(f"{w.text!r} is not a declared rank-2 class", line, w.column)

    def diag_flag(self, w: _Word, line: int) -> bool:
        if w.text not in ("diag", "off"):
            raise ParseError(f"expected 'diag' or 'off', found {w.text!r}", line, w.column)
        return w.text == "diag"

    def space(self, w: _Word, line: int) -> Optional[Space]:
        node = parse_node(w.text, self.params, line, w.column - 1)
        return self._space_node(node, line)

    def _space_node(self, node: Node, line: int) -> Optional[Space]:
        if isinstance(node, ParamPoly):
            raise ParseError("expected a space expression", line, 1)
        name, args = node.name, node.args

        def need(count: int) -> None:
            if len(args) != count:
                raise ParseError(f"{name} takes {count} argument(s), got {len(args)}", line, node.column)

        def poly_arg(i: int) -> ParamPoly:
            a = args[i]
            if isinstance(a, Call):
                raise ParseError(f"argument {i + 1} of {name} must be arithmetic", line, a.column)
            return a

        def int_arg(i: int) -> int:
            p = poly_arg(i)
            if not p.is_constant() or p.constant_value().denominator != 1:
                raise ParseError(f"argument {i + 1} of {name} must be an integer", line, node.column)
            return int(p.constant_value())

        def space_arg(i: int) -> Space:
            s = self._space_node(args[i], line)
            if s is None:
                raise ParseError("'empty' cannot appear inside a space expression", line, node.column)
            return s

        if name == "point":
            need(0)
            return Point()
        if name == "empty":
            need(0)
            return None
        if name == "affine":
            need(1)
            return Affine(poly_arg(0))
        if name == "torus":
            need(1)
            return Torus(int_arg(0))
        if name == "projective":
            need(1)
            return Projective(poly_arg(0))
        if name == "grassmannian":
            need(2)
            return Grassmannian(int_arg(0), poly_arg(1))
        if name == "flag":
            need(1)
            return Flag12(poly_arg(0))
        if name in ("product", "disjoint"):
            if len(args) < 2:
                raise ParseError(f"{name} needs at least two arguments", line, node.column)
            parts = [space_arg(i) for i in range(len(args))]
            if name == "product":
                return product(*parts)
            result = parts[0]
            for p in parts[1:]:
                result = Disjoint(result, p)
            return result
        if name == "complement":
            need(2)
            return Complement(space_arg(0), space_arg(1))
        if name == "diagonal":
            need(1)
            return Diagonal(space_arg(0))
        if name == "offdiagonal":
            need(1)
            return off_diagonal(space_arg(0))
        if name == "pairs":
            need(1)
            return DistinctPairs(space_arg(0))
        if name == "bundle":
            need(2)
            return Bundle(space_arg(0), space_arg(1))
        if name == "freequotient":
            need(1)
            return FreeQuotient(space_arg(0))
        if name == "chi":
            need(1)
            value = poly_arg(0)
            return EulerSpace(f"E[{format_poly(value)}]", value)
        if name == "moduli":
            need(1)
            ref = args[0]
            if not isinstance(ref, Call) or ref.args or ref.name not in self.names:
                raise ParseError("moduli(...) takes a declared class name", line, node.column)
            return ModuliDescriptor(ref.name)
        raise ParseError(f"unknown space constructor {name!r}", line, node.column)

    def group(self, w: _Word, line: int) -> GroupExpr:
        text = w.text
        m = _GM_POWER.match(text)
        if m:
            return TorusPow(int(m.group(1) or 1))
        if text == "GL2":
            return GL2()
        if text == "torusunion":
            return TorusUnion()
        if text == "trivial":
            return TorusPow(0)
        m = _SEMIDIRECT.match(text)
        if m:
            d, k = int(m.group(1)), int(m.group(2))
            return TorusPow(k) if d == 0 else SemiDirect(d, k)
        raise ParseError(f"unknown group {text!r}", line, w.column)

    # sections

    def load_params(self, words: list[_Word], line: int) -> None:
        for w in words:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", w.text) or w.text == "t":
                raise ParseError(f"invalid parameter name {w.text!r}", line, w.column)
        self.params = self.params.union(ParamSpace(w.text for w in words))

    def load_pairing(self, words: list[_Word], line: int) -> None:
        if len(words) != 1:
            raise ParseError("pairing takes exactly one twist parameter", line, words[0].column if words else 1)
        self.twist = self.poly(words[0], line)

    def load_class(self, words: list[_Word], line: int) -> None:
        name = words[0].text
        if name in self.names:
            raise ParseError(f"class {name!r} declared twice", line, words[0].column)
        fields: dict[str, _Word] = {}
        for w in words[1:]:
            key, eq, value = w.text.partition("=")
            if not eq:
                raise ParseError(f"expected key=value, found {w.text!r}", line, w.column)
            fields[key] = _Word(value, w.column + len(key) + 1)
        for required in ("degree", "chi", "rank"):
            if required not in fields:
                raise ParseError(f"class {name!r} is missing {required}=", line, words[0].column)
        cls = NumClass(
            self.integer(fields["degree"], line), self.poly(fields["chi"], line), self.integer(fields["rank"], line)
        )
        if cls.rank >= 2:
            self.rank_two.append(RankTwoEntry(name, cls))
        else:
            moduli = self.space(fields["moduli"], line) if "moduli" in fields else None
            stabilizer = self.group(fields["stabilizer"], line) if "stabilizer" in fields else GM
            self.classes.append(ClassEntry(name, cls, moduli, stabilizer))
        self.names[name] = cls

    def load_table(self, table: dict, words: list[_Word], line: int, as_space: bool = False) -> None:
        if len(words) != 4:
            raise ParseError("expected: source target diag|off value", line, words[0].column)
        a = self.class_ref(words[0], line)
        b = self.class_ref(words[1], line)
        diag = self.diag_flag(words[2], line)
        key = (a, b, diag)
        if key in table:
            raise ParseError("duplicate entry", line, words[0].column)
        if as_space:
            value = self.space(words[3], line)
            if value is None:
                raise ParseError("a nonsplit locus cannot be empty", line, words[3].column)
            table[key] = value
        else:
            table[key] = self.poly(words[3], line)

    def load_dt(self, words: list[_Word], line: int) -> None:
        if len(words) != 2:
            raise ParseError("expected: degree value", line, words[0].column)
        self.dt[self.integer(words[0], line)] = self.rational(words[1], line)

    def load_ambient(self, words: list[_Word], line: int) -> None:
        if len(words) != 2:
            raise ParseError("expected: class dimension", line, words[0].column)
        self.rank_two_ref(words[0], line).ambient = self.poly(words[1], line)

    def load_stratum(self, words: list[_Word], line: int) -> None:
        if len(words) not in (4, 5):
            raise ParseError("expected: class coefficient space group [fixed=space]", line, words[0].column)
        entry = self.rank_two_ref(words[0], line)
        coeff = self.rational(words[1], line)
        space = self.space(words[2], line)
        if space is None:
            return
        group = self.group(words[3], line)
        fixed = None
        if len(words) == 5:
            key, eq, value = words[4].text.partition("=")
            if key != "fixed" or not eq:
                raise ParseError("expected fixed=<space>", line, words[4].column)
            fixed = self.space(_Word(value, words[4].column + 6), line)
        entry.strata.append(StratumSpec(coeff, space, group, fixed))

    def load_integrals(self, words: list[_Word], line: int) -> None:
        entry = self.rank_two_ref(words[0], line)
        if len(words) < 2:
            raise ParseError("expected an integral name", line, words[0].column)
        kind = words[1].text
        if kind == "I1":
            if len(words) != 5:
                raise ParseError("expected: class I1 k l value", line, words[1].column)
            k = self.class_ref(words[2], line)
            l = self.class_ref(words[3], line)
            entry.integrals_one[(k, l)] = self.poly(words[4], line)
        elif kind in ("I2", "chi_half"):
            if len(words) != 3:
                raise ParseError(f"expected: class {kind} value", line, words[1].column)
            value = self.poly(words[2], line)
            if kind == "I2":
                entry.integral_two = value
            else:
                entry.chi_half = value
        else:
            raise ParseError(f"unknown integral {kind!r}", line, words[1].column)

    def load_dims(self, words: list[_Word], line: int) -> None:
        if len(words) != 3 or words[1].text not in ("d1", "d2", "d3", "d4"):
            raise ParseError("expected: class d1|d2|d3|d4 value", line, words[0].column)
        self.rank_two_ref(words[0], line).dims[words[1].text] = self.poly(words[2], line)

    def build(self) -> GeometryOracle:
        twist = self.twist
        if twist is None:
            twist = self.params.symbol("n") if "n" in self.params else ParamPoly()
        oracle = GeometryOracle(
            self.name, self.params, twist, self.classes, self.rank_two, self.hom, self.ext1, self.nonsplit, self.dt
        )
        oracle.validate()
        return oracle


def load_geometry(text: str, name: str = "custom") -> GeometryOracle:
    """Parse a geometry config; errors carry line and column."""
    loader = _Loader(name)
    section: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        words = _words(content)
        if not words:
            continue
        head = words[0].text
        if head.startswith("["):
            m = re.fullmatch(r"\[([a-z0-9]+)\]", head)
            if m is None or m.group(1) not in _SECTIONS or len(words) != 1:
                raise ParseError(f"unknown section header {content.strip()!r}", lineno, words[0].column)
            section = m.group(1)
            continue
        if section is None:
            raise ParseError("entry before any section header", lineno, words[0].column)
        if section == "params":
            loader.load_params(words, lineno)
        elif section == "pairing":
            loader.load_pairing(words, lineno)
        elif section == "class":
            loader.load_class(words, lineno)
        elif section == "hom":
            loader.load_table(loader.hom, words, lineno)
        elif section == "ext1":
            loader.load_table(loader.ext1, words, lineno)
        elif section == "nonsplit":
            loader.load_table(loader.nonsplit, words, lineno, as_space=True)
        elif section == "dt":
            loader.load_dt(words, lineno)
        elif section == "ambient":
            loader.load_ambient(words, lineno)
        elif section == "stratum":
            loader.load_stratum(words, lineno)
        elif section == "integrals":
            loader.load_integrals(words, lineno)
        elif section == "dims":
            loader.load_dims(words, lineno)
    return loader.build()


# Builtin geometries

CONIFOLD_DEGREE_ONE = """\
# Resolved conifold, curve class [P^1], sheaf Euler characteristic {c}.
[params]
n {c}
[pairing]
n
[class]
A0 degree=0 chi=0 rank=1 moduli=point stabilizer=Gm
A1 degree=1 chi={c} rank=1 moduli=projective(n+{c}-1) stabilizer=Gm
S1 degree=1 chi={c} rank=0 moduli=point stabilizer=Gm
B degree=1 chi={c} rank=2
[hom]
A1 A0 off 1
A0 A1 off 0
A1 A1 diag 1
A0 A0 diag 1
[ext1]
# extensions by the section: one per line in H^0(O(n+{c}-1)), counted by the pairing
A0 A1 off n+{c}
# the reversed order only admits split extensions
A1 A0 off 0
A1 A1 diag n+{c}-1
[nonsplit]
# a nonsplit extension is a flag: a section inside the plane of the rank-2 pair
A0 A1 off flag(n+{c})
[dt]
1 1
[ambient]
B 2n+2{c}-5
[stratum]
# sections spanning a line, with stabilizer A^1 x| Gm^2
B 1 projective(n+{c}-1) semidirect(1,2)
# sections spanning a plane
B 1 grassmannian(2,n+{c}) Gm
[integrals]
B I1 A1 A0 n+{c}
B I1 A0 A1 0
[dims]
B d1 2n+2{c}-5
"""

CONIFOLD_DEGREE_TWO = """\
# Resolved conifold, curve class 2[P^1], sheaf Euler characteristic 2{c}.
# Only sheaves on the reduced curve are modelled.
[params]
n {c}
[pairing]
n
[class]
A0 degree=0 chi=0 rank=1 moduli=point stabilizer=Gm
A1 degree=1 chi={c} rank=1 moduli=projective(n+{c}-1) stabilizer=Gm
A2 degree=2 chi=2{c} rank=1 moduli=grassmannian(2,n+{c}) stabilizer=Gm
S1 degree=1 chi={c} rank=0 moduli=point stabilizer=Gm
S2 degree=2 chi=2{c} rank=0 moduli=point stabilizer=GL2
B degree=2 chi=2{c} rank=2
[hom]
A2 A0 off 1
A0 A2 off 0
A1 A0 off 1
A0 A1 off 0
A1 A1 off 0
A1 A1 diag 1
A2 A2 diag 1
A0 A0 diag 1
[ext1]
# pairing count; the honest nonsplit locus is listed below
A0 A2 off 2n+2{c}
A2 A0 off 0
A0 A1 off n+{c}
A1 A0 off 0
A1 A1 off n+{c}-2
A1 A1 diag n+{c}-1
[nonsplit]
# a plane of sections together with a line in the quotient by that plane
A0 A2 off product(grassmannian(2,n+{c}),projective(2n+2{c}-2))
[dt]
1 1
2 1/4
[ambient]
B 4n+4{c}-8
[stratum]
# two sections of O(n+{c}-1)^2 spanning a plane, modulo GL2 acting on both
B 1 grassmannian(2,2n+2{c}) GL2 fixed=disjoint(grassmannian(2,n+{c}),grassmannian(2,n+{c}),product(projective(n+{c}-1),projective(n+{c}-1)))
"""

EMPTY_GEOMETRY = """\
# A rank-2 class with no semistable objects.
[params]
n
[class]
B degree=1 chi=0 rank=2
"""

EMPTY_DEGREE_TWO = """\
# Odd Euler characteristic on 2[P^1]: no semistable sheaves.
[params]
n {c}
[pairing]
n
[class]
B degree=2 chi={chi} rank=2
[dt]
1 1
2 1/4
"""


class UnsupportedGeometry(ValueError):
    pass


def conifold(degree: int = 1, chi: str = "r") -> GeometryOracle:
    """The resolved conifold for curve class ``degree [P^1]`` and Euler characteristic ``chi``."""
    if degree == 1:
        sym = chi.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", sym) or sym in ("n", "t"):
            raise UnsupportedGeometry(f"degree 1 needs a fresh symbol for chi, got {chi!r}")
        return load_geometry(CONIFOLD_DEGREE_ONE.format(c=sym), f"conifold-d1-{sym}")
    if degree == 2:
        text = chi.replace(" ", "")
        m = re.fullmatch(r"2\*?([A-Za-z_][A-Za-z_0-9]*)", text)
        if m and m.group(1) not in ("n", "t"):
            sym = m.group(1)
            return load_geometry(CONIFOLD_DEGREE_TWO.format(c=sym), f"conifold-d2-{sym}")
        m = re.fullmatch(r"2\*?([A-Za-z_][A-Za-z_0-9]*)\+1", text)
        if m and m.group(1) not in ("n", "t"):
            sym = m.group(1)
            return load_geometry(EMPTY_DEGREE_TWO.format(c=sym, chi=f"2{sym}+1"), f"conifold-d2-odd-{sym}")
        raise UnsupportedGeometry(f"degree 2 needs chi of the form 2q or 2q+1, got {chi!r}")
    raise UnsupportedGeometry(f"the builtin conifold covers degrees 1 and 2, not {degree}")


def empty_geometry() -> GeometryOracle:
    return load_geometry(EMPTY_GEOMETRY, "empty")


BUILTINS = ("conifold", "empty")


def builtin_geometry(name: str, degree: int = 1, chi: Optional[str] = None) -> GeometryOracle:
    if name == "conifold":
        return conifold(degree, chi or ("r" if degree == 1 else "2q"))
    if name == "empty":
        return empty_geometry()
    raise UnsupportedGeometry(f"unknown builtin geometry {name!r}")


__all__ = [
    "ClassEntry",
    "GeometryOracle",
    "MissingOracleEntry",
    "OracleValidationError",
    "RankTwoEntry",
    "StratumSpec",
    "UnsupportedGeometry",
    "builtin_geometry",
    "conifold",
    "empty_geometry",
    "load_geometry",
    "pairing_value",
]
