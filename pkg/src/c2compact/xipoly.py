"""Univariate polynomials in the generic coefficient xi."""

from __future__ import annotations

from .field import ONE, ZERO, FieldElem


class XiPoly:
    """Polynomial sum c_k xi^k, coefficients stored low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [FieldElem.coerce(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def from_dict(cls, d):
        if not d:
            return cls()
        top = max(d)
        return cls([d.get(k, ZERO) for k in range(top + 1)])

    @classmethod
    def xi(cls):
        return cls([ZERO, ONE])

    # -- inspection -------------------------------------------------------
    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def deg(self) -> int:
        if not self.c:
            raise ValueError("degree of the zero polynomial")
        return len(self.c) - 1

    def is_constant(self):
        return len(self.c) <= 1

    def coefficient(self, k) -> FieldElem:
        return self.c[k] if 0 <= k < len(self.c) else ZERO

    def leading(self) -> FieldElem:
        return self.c[-1]

    def __call__(self, v):
        acc = ZERO
        for a in reversed(self.c):
            acc = acc * v + a
        return acc

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        return XiPoly([self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __neg__(self):
        return XiPoly([-a for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, XiPoly):
            other = XiPoly([other])
        if not self.c or not other.c:
            return XiPoly()
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return XiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = XiPoly([ONE])
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, XiPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(hash(a) for a in self.c))

    def divide_linear(self, root):
        """Synthetic division by (xi - root); returns (quotient, remainder)."""
        if not self.c:
            return XiPoly(), ZERO
        q = [ZERO] * (len(self.c) - 1)
        acc = ZERO
        for i in range(len(self.c) - 1, -1, -1):
            acc = acc * root + self.c[i]
            if i:
                q[i - 1] = acc
        return XiPoly(q), acc

    def ord_at(self, root) -> int:
        """Multiplicity of ``root`` as a root (0 if it is not a root)."""
        if not self.c:
            raise ValueError("order of the zero polynomial")
        root = FieldElem.coerce(root)
        if not root:
            return self.ord_at_zero()
        k, cur = 0, self
        while cur.deg() > 0:
            q, r = cur.divide_linear(root)
            if r:
                break
            k, cur = k + 1, q
        return k

    def ord_at_zero(self) -> int:
        for k, a in enumerate(self.c):
            if a:
                return k
        raise ValueError("order of the zero polynomial")

    def shape(self, P: int):
        """Decompose as ``const * xi^s * (xi^P - c)^t``.

        Returns ``(const, s, c, t)``; ``c`` is 0 and ``t`` is 0 when the
        polynomial is a monomial.  Raises ``ValueError`` for other shapes.
        """
        s = self.ord_at_zero()
        rest = XiPoly(self.c[s:])
        const = rest.leading()
        D = rest.deg()
        if D == 0:
            return const, s, ZERO, 0
        if D % P:
            raise ValueError(f"{self} is not of the form xi^s (xi^{P} - c)^t")
        t = D // P
        c = -rest.coefficient(D - P) / (const * t)
        target = XiPoly([const]) * (XiPoly([-c] + [ZERO] * (P - 1) + [ONE]) ** t)
        if target != rest:
            raise ValueError(f"{self} is not of the form xi^s (xi^{P} - c)^t")
        return const, s, c, t

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k in range(len(self.c) - 1, -1, -1):
            a = self.c[k]
            if not a:
                continue
            mono = "" if k == 0 else ("xi" if k == 1 else f"xi^{k}")
            if a.is_rational():
                q = a.to_fraction()
                sign, q = ("-" if q < 0 else "+"), abs(q)
                body = (mono if q == 1 else f"{q}*{mono}") if mono else str(q)
            else:
                sign, body = "+", (f"{a}*{mono}" if mono else str(a))
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"XiPoly({self})"
