"""Sparse elements of K[x, x^-1, y] and a small infix parser for them."""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .field import ONE, ZERO, FieldElem, root_of_unity


class LaurentPoly2:
    """Finite map ``(a, b) -> coefficient`` for monomials ``x^a y^b``.

    ``a`` may be negative, ``b`` never is.  Zero coefficients are never
    stored, so two equal polynomials have equal term dictionaries.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (a, b), c in terms.items():
                c = FieldElem.coerce(c)
                if b < 0:
                    raise ValueError("negative powers of y are not allowed")
                if c:
                    clean[(int(a), int(b))] = c
        self._t = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a, b, c=ONE):
        return cls({(a, b): c})

    @classmethod
    def x(cls):
        return cls.monomial(1, 0)

    @classmethod
    def y(cls):
        return cls.monomial(0, 1)

    @classmethod
    def _raw(cls, terms):
        out = cls.__new__(cls)
        out._t = terms
        out._hash = None
        return out

    # -- inspection -------------------------------------------------------
    @property
    def terms(self):
        return self._t

    def items(self):
        return self._t.items()

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_polynomial(self):
        return all(a >= 0 for a, _ in self._t)

    def deg_y(self):
        if not self._t:
            raise ValueError("deg_y of the zero polynomial")
        return max(b for _, b in self._t)

    def total_degree(self):
        if not self._t:
            raise ValueError("degree of the zero polynomial")
        return max(a + b for a, b in self._t)

    def y_coefficient(self, b):
        """Coefficient of ``y^b`` as a map from x-exponent to coefficient."""
        return {a: c for (a, bb), c in self._t.items() if bb == b}

    def leading_y_coefficient(self):
        return self.y_coefficient(self.deg_y())

    def is_monic_in_y(self):
        lead = self.leading_y_coefficient()
        return len(lead) == 1 and lead.get(0, ZERO).is_one()

    def is_rational(self):
        return all(c.is_rational() for c in self._t.values())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly2):
            other = LaurentPoly2.const(other)
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly2._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly2):
            other = LaurentPoly2.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly2):
            c = FieldElem.coerce(other)
            if not c:
                return LaurentPoly2()
            return LaurentPoly2._raw({k: v * c for k, v in self._t.items()})
        out = {}
        for (a1, b1), c1 in self._t.items():
            for (a2, b2), c2 in other._t.items():
                k = (a1 + a2, b1 + b2)
                v = out.get(k)
                p = c1 * c2
                out[k] = p if v is None else v + p
        return LaurentPoly2._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self._t) != 1:
                raise ValueError("only monomials can be inverted")
            ((a, b), c), = self._t.items()
            if b:
                raise ValueError("cannot invert a power of y")
            return LaurentPoly2.monomial(a * e, 0, c.inverse() ** (-e))
        result = LaurentPoly2.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = LaurentPoly2.const(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((k, hash(c)) for k, c in self._t.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self._t.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))

    def sort_key(self):
        return tuple((k, str(c)) for k, c in self.sorted_terms())

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly2({self})"


# -- formatting ---------------------------------------------------------------

def _format_monomial(a, b):
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


def format_poly(f: LaurentPoly2) -> str:
    if f.is_zero():
        return "0"
    out = []
    for (a, b), c in f.sorted_terms():
        mono = _format_monomial(a, b)
        if c.is_rational():
            q = c.to_fraction()
            sign = "-" if q < 0 else "+"
            q = abs(q)
            if mono:
                body = mono if q == 1 else f"{q}*{mono}"
            else:
                body = str(q)
        else:
            sign = "+"
            body = f"{c}*{mono}" if mono else str(c)
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x|y|z\d+)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ParseError(f"unexpected character {text[pos]!r}", path=f"column {pos + 1}")
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", int(num), start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg):
        _, _, pos = self.peek()
        raise ParseError(msg, path=f"column {pos + 1}")

    def expect(self, op):
        kind, val, _ = self.peek()
        if kind != "op" or val != op:
            self.error(f"expected {op!r}")
        self.take()

    def parse(self):
        f = self.expr()
        if self.peek()[0] != "end":
            self.error("trailing input")
        return f

    def expr(self):
        kind, val, _ = self.peek()
        neg = False
        if kind == "op" and val in "+-":
            self.take()
            neg = val == "-"
        f = self.term()
        if neg:
            f = -f
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def _starts_atom(self):
        kind, val, _ = self.peek()
        return kind in ("num", "name") or (kind == "op" and val == "(")

    def term(self):
        f = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.power()
            elif kind == "op" and val == "/":
                self.take()
                g = self.power()
                if len(g.terms) != 1 or (0, 0) not in g.terms:
                    self.error("division is only allowed by nonzero constants")
                f = f * g.terms[(0, 0)].inverse()
            elif self._starts_atom():
                f = f * self.power()
            else:
                return f

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            paren = False
            if self.peek()[:2] == ("op", "("):
                self.take()
                paren = True
            sign = 1
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
            kind, val, _ = self.peek()
            if kind != "num":
                self.error("expected an integer exponent")
            self.take()
            if paren:
                self.expect(")")
            try:
                return base ** (sign * val)
            except ValueError as exc:
                self.error(str(exc))
        return base

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            return LaurentPoly2.const(val)
        if kind == "name":
            self.take()
            if val == "x":
                return LaurentPoly2.x()
            if val == "y":
                return LaurentPoly2.y()
            return LaurentPoly2.const(root_of_unity(int(val[1:])))
        if kind == "op" and val == "(":
            self.take()
            f = self.expr()
            self.expect(")")
            return f
        self.error("expected a number, x, y or '('")


def parse_poly(text: str) -> LaurentPoly2:
    """Parse infix notation such as ``y^2 - x^5 - 2*x^-1*y``.

    ``z<n>`` denotes a primitive n-th root of unity; juxtaposition
    multiplies, so ``2x y`` is ``2*x*y``.
    """
    return _Parser(text).parse()
