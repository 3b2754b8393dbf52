"""Sparse multivariate polynomials over Q or a prime field.

A polynomial is an immutable map from exponent tuples to nonzero
coefficients.  Monomials are plain tuples of non-negative ints whose length
is the number of ring variables.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Field",
    "QQ",
    "GF32003",
    "Ring",
    "Polynomial",
    "MonomialOrder",
    "Lex",
    "GrevLex",
    "BlockOrder",
    "LEX",
    "GREVLEX",
    "compare",
    "leading_term",
    "RingMismatchError",
    "ParseError",
]


class RingMismatchError(ValueError):
    """Operands live in different polynomial rings."""


class ParseError(ValueError):
    """Malformed polynomial text.  ``offset`` is the 0-based column."""

    def __init__(self, message: str, text: str = "", offset: int | None = None):
        self.text = text
        self.offset = offset
        where = f" at column {offset + 1}" if offset is not None else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals when ``p`` is None, else GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (self.p <= 2 or not _is_prime(self.p)):
            raise ValueError(f"field characteristic must be an odd prime, got {self.p}")

    def __call__(self, c) -> int | Fraction:
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(c, str):
            c = Fraction(c)
        if self.p is None:
            if isinstance(c, Fraction):
                return int(c) if c.denominator == 1 else c
            return int(c)
        if isinstance(c, Fraction):
            den = c.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {self.p}")
            return c.numerator * pow(den, -1, self.p) % self.p
        return int(c) % self.p

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return Fraction(1) / c if isinstance(c, Fraction) else Fraction(1, c)
        return pow(c, -1, self.p)

    def signed(self, c):
        """Representative used for printing (symmetric range for GF(p))."""
        if self.p is not None and c > self.p // 2:
            return c - self.p
        return c

    def __str__(self):
        return "q" if self.p is None else f"gf:{self.p}"

    @classmethod
    def from_string(cls, text: str) -> "Field":
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls()
        m = re.fullmatch(r"(?:gf|zz|fp)[:/]?(\d+)", t)
        if not m:
            raise ValueError(f"unknown field {text!r}; expected 'q' or 'gf:<prime>'")
        return cls(int(m.group(1)))


QQ = Field()
GF32003 = Field(32003)


# ---------------------------------------------------------------- orders


class MonomialOrder:
    """Base class.  Subclasses provide ``sort_key``.

    Sorting exponent tuples ascending by ``sort_key`` lists them from the
    largest monomial to the smallest, so ``min(..., key=sort_key)`` is the
    leading monomial and heaps pop the largest monomial first.
    """

    def sort_key(self, exp: Sequence[int]) -> tuple:
        raise NotImplementedError

    def compare(self, m1: Sequence[int], m2: Sequence[int]) -> int:
        if len(m1) != len(m2):
            raise ValueError("exponent vectors of different length")
        k1, k2 = self.sort_key(m1), self.sort_key(m2)
        return (k1 < k2) - (k1 > k2)


@dataclass(frozen=True)
class Lex(MonomialOrder):
    def sort_key(self, exp):
        return tuple(-e for e in exp)

    def __str__(self):
        return "lex"


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    def sort_key(self, exp):
        return (-sum(exp),) + tuple(reversed(exp))

    def __str__(self):
        return "grevlex"


@dataclass(frozen=True)
class BlockOrder(MonomialOrder):
    """Elimination order: the variables at indices ``elim`` dominate.

    Monomials are compared first by ``outer`` on the eliminated exponents,
    then by ``inner`` on the remaining ones.
    """

    elim: tuple[int, ...]
    outer: MonomialOrder = GrevLex()
    inner: MonomialOrder = GrevLex()

    def sort_key(self, exp):
        elim = self.elim
        ex = tuple(exp[i] for i in elim)
        rest = tuple(e for i, e in enumerate(exp) if i not in elim)
        return self.outer.sort_key(ex) + self.inner.sort_key(rest)

    def __str__(self):
        return f"block({','.join(map(str, self.elim))};{self.outer};{self.inner})"


LEX = Lex()
GREVLEX = GrevLex()


def order_from_string(text: str) -> MonomialOrder:
    t = text.strip().lower()
    if t == "lex":
        return LEX
    if t in ("grevlex", "degrevlex", "revlex"):
        return GREVLEX
    raise ValueError(f"unknown monomial order {text!r}")


def compare(m1: Sequence[int], m2: Sequence[int], order: MonomialOrder) -> int:
    """-1, 0 or 1 as m1 is smaller than, equal to or larger than m2."""
    return order.compare(m1, m2)


# ------------------------------------------------------------------ ring


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Ring:
    """Polynomial ring K[names].  Earlier names are larger in every order."""

    names: tuple[str, ...]
    field: Field = GF32003

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        for n in self.names:
            if not _NAME.match(n):
                raise ValueError(f"invalid variable name {n!r}")

    @cached_property
    def index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def gen(self, name: str) -> "Polynomial":
        try:
            i = self.index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of this ring") from None
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): self.field(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(n) for n in self.names]

    def __call__(self, value) -> "Polynomial":
        """Coerce a Polynomial, number, or string into this ring."""
        if isinstance(value, Polynomial):
            if value.ring == self:
                return value
            return value.embed(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.names, field)

    def extend(self, names: Iterable[str]) -> "Ring":
        return Ring(self.names + tuple(names), self.field)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def __str__(self):
        return f"{self.field}[{', '.join(self.names)}]"


# ------------------------------------------------------------ polynomial


class Polynomial:
    """Immutable sparse polynomial.  Zero coefficients are never stored."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object]):
        self.ring = ring
        self.terms = terms if isinstance(terms, dict) else dict(terms)
        self._hash = None

    # -- construction helpers
    def _new(self, terms):
        return Polynomial(self.ring, terms)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p is not None:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p is None:
            return self._new({m: -c for m, c in self.terms.items()})
        return self._new({m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = get(m, 0) + c1 * c2
        if p is not None:
            out = {m: c % p for m, c in out.items()}
        return self._new({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        if p is None:
            return self._new({m: v * c for m, v in self.terms.items()})
        return self._new({m: v * c % p for m, v in self.terms.items()})

    def mul_monomial(self, exp: Sequence[int], c=1) -> "Polynomial":
        return self * self.ring.monomial(exp, c)

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection
    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def support(self) -> set[int]:
        """Indices of the variables that occur."""
        s: set[int] = set()
        for m in self.terms:
            s.update(i for i, e in enumerate(m) if e)
        return s

    def variables(self) -> list[str]:
        names = self.ring.names
        return [names[i] for i in sorted(self.support())]

    def occurs(self, name: str) -> bool:
        i = self.ring.index[name]
        return any(m[i] for m in self.terms)

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), 0)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[tuple, object]]:
        key = order.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def leading_term(self, order: MonomialOrder = GREVLEX):
        """(coefficient, exponent tuple) of the order-maximal term."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        m = min(self.terms, key=order.sort_key)
        return self.terms[m], m

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        c, _ = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    # -- substitution
    def subs(self, mapping: Mapping[str, "Polynomial"], ring: Ring | None = None) -> "Polynomial":
        """Substitute polynomials for variables.

        Variables absent from ``mapping`` are sent to the same-named variable
        of ``ring`` (which defaults to this ring).
        """
        target = ring or self.ring
        images = []
        for n in self.ring.names:
            v = mapping.get(n)
            if v is None:
                v = target.gen(n)
            else:
                v = target(v)
            images.append(v)
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        result = target.zero()
        for m, c in self.terms.items():
            term = target.constant(c if target.field == self.ring.field else self._lift(c))
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def _lift(self, c):
        return self.ring.field.signed(c) if self.ring.field.p is not None else c

    def permute(self, perm: Mapping[str, str]) -> "Polynomial":
        """Rename variables by a bijection of the ring's names."""
        names = self.ring.names
        full = {n: perm.get(n, n) for n in names}
        if sorted(full.values()) != sorted(names):
            raise ValueError("permutation is not a bijection of the ring's variables")
        idx = self.ring.index
        target = [idx[full[n]] for n in names]
        out = {}
        for m, c in self.terms.items():
            e = [0] * len(m)
            for i, k in enumerate(m):
                e[target[i]] = k
            out[tuple(e)] = c
        return self._new(out)

    def embed(self, ring: Ring) -> "Polynomial":
        """Map into a ring whose names include every variable that occurs."""
        if ring.field != self.ring.field:
            return self.subs({}, ring)
        idx = ring.index
        pos = []
        for i, n in enumerate(self.ring.names):
            pos.append(idx.get(n))
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    j = pos[i]
                    if j is None:
                        raise RingMismatchError(f"variable {self.ring.names[i]!r} missing from {ring}")
                    e[j] = k
            out[tuple(e)] = c
        return Polynomial(ring, out)

    # -- text
    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        field = self.ring.field
        parts = []
        for m, c in self.sorted_terms(order):
            c = field.signed(c)
            neg = c < 0
            c = -c if neg else c
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e:
                    factors.append(f"{names[i]}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


def leading_term(p: Polynomial, order: MonomialOrder = GREVLEX):
    return p.leading_term(order)


# ---------------------------------------------------------------- parser


class _Parser:
    """Polynomial grammar parsed through Python's expression AST.

    ``^`` is power, ``*`` product; integer literals, parentheses, unary
    minus, and division by nonzero constants are accepted.
    """

    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text

    def fail(self, message, node=None):
        offset = getattr(node, "col_offset", None) if node is not None else None
        raise ParseError(message, self.text, offset)

    def parse(self) -> Polynomial:
        src = self.text.replace("^", "**")
        if "**" in self.text:
            self.fail("use '^' for powers")
        try:
            tree = ast.parse(src.strip() or "0", mode="eval")
        except SyntaxError as e:
            raise ParseError("syntax error", self.text, (e.offset or 1) - 1) from None
        return self.visit(tree.body)

    def visit(self, node) -> Polynomial:
        ring = self.ring
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                self.fail("only integer constants are allowed", node)
            return ring.constant(node.value)
        if isinstance(node, ast.Name):
            if node.id not in ring.index:
                self.fail(f"unknown variable {node.id!r}", node)
            return ring.gen(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.visit(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = self.visit(node.left)
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0):
                    self.fail("exponent must be a non-negative integer", e)
                return base ** e.value
            left, right = self.visit(node.left), self.visit(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.degree() > 0 or right.is_zero():
                    self.fail("division only by nonzero constants", node)
                return left.scale(ring.field.inv(right.terms[(0,) * ring.nvars]))
        self.fail(f"unsupported syntax {type(node).__name__}", node)
