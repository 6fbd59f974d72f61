"""Exact univariate polynomials over Q and prime fields."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

Scalar = Union[int, Fraction]


class FieldMismatch(ValueError):
    pass


class PolyParseError(ValueError):
    pass


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``modulus`` is None, otherwise the prime field F_p."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime_int(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def mod(cls, p: int) -> "FieldSpec":
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower().replace(" ", "")
        if t in ("q", "overq", "rationals"):
            return cls.rationals()
        m = re.fullmatch(r"(?:mod|f_?|gf\(?|fp)(\d+)\)?", t)
        if m:
            return cls.mod(int(m.group(1)))
        raise ValueError(f"unrecognised field spec {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    def __str__(self) -> str:
        return "Q" if self.modulus is None else f"F_{self.modulus}"

    def suffix(self) -> str:
        return "over Q" if self.modulus is None else f"mod {self.modulus}"

    def coerce(self, value) -> Scalar:
        if self.modulus is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            num = value.numerator % self.modulus
            den = value.denominator % self.modulus
            if den == 0:
                raise ZeroDivisionError(f"{value} has no image in {self}")
            return num * pow(den, -1, self.modulus) % self.modulus
        return int(value) % self.modulus

    def inverse(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus is None:
            return 1 / Fraction(a)
        return pow(int(a), -1, self.modulus)

    def elements(self) -> list[int]:
        if self.modulus is None:
            raise ValueError("Q is infinite")
        return list(range(self.modulus))


class Poly:
    """Coefficients in ascending degree, normalized with no trailing zeros."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self._hash = hash((field, self.coeffs))

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FieldSpec, c) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def parse(cls, text: str, field: Optional[FieldSpec] = None) -> "Poly":
        """Parse ``x^3+2*x+1 mod 5`` or ``x^2-1 over Q`` (field suffix optional
        when ``field`` is given)."""
        body, suffix = split_field_suffix(text)
        if suffix is not None:
            if field is not None and suffix != field:
                raise FieldMismatch(f"{text!r} names {suffix}, expected {field}")
            field = suffix
        if field is None:
            raise PolyParseError(f"no field given for {text!r}")
        return _Parser(body, field).parse()

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else self.field.coerce(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(self.field, other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def sort_key(self) -> tuple:
        """(degree, coefficients from the leading one down)."""
        return (self.degree, tuple(reversed(self.coeffs)))

    def __lt__(self, other: "Poly") -> bool:
        return self.sort_key() < other.sort_key()

    # -- arithmetic --------------------------------------------------------

    def _check(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.field, other)
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other) -> "Poly":
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(self.field, (x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.field, (-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        return self + (-self._check(other))

    def __rsub__(self, other) -> "Poly":
        return self._check(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly(self.field)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out, base = Poly.const(self.field, 1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        inv = f.inverse(other.lc)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(f), self
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = f.coerce(rem[k + other.degree] * inv)
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = f.coerce(rem[k + j] - c * b)
        return Poly(f, quot), Poly(f, rem[: other.degree] if other.degree > 0 else ())

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        """``self | other``."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.field.inverse(self.lc)
        return Poly(self.field, (c * inv for c in self.coeffs))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
        a, b = self, self._check(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def lcm(self, other: "Poly") -> "Poly":
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.field)
        return (self * other).exact_div(self.gcd(other)).monic()

    def derivative(self) -> "Poly":
        return Poly(self.field, (k * c for k, c in enumerate(self.coeffs) if k))

    def __call__(self, a) -> Scalar:
        acc = self.field.coerce(0)
        for c in reversed(self.coeffs):
            acc = self.field.coerce(acc * a + c)
        return acc

    def pth_root(self) -> "Poly":
        """For ``f = h(x^p)`` over F_p return ``h``; the Frobenius is the
        identity on the prime field so no coefficient roots are needed."""
        p = self.field.modulus
        if p is None:
            raise ValueError("p-th roots only over F_p")
        if any(c and k % p for k, c in enumerate(self.coeffs)):
            raise ValueError("not a polynomial in x^p")
        return Poly(self.field, self.coeffs[::p])

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if self.field.modulus is None:
                neg = c < 0
                mag = -c if neg else c
            else:
                neg, mag = False, c
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"Poly({self} {self.field.suffix()})"

    def to_json(self) -> dict:
        return {"field": str(self.field), "coefficients": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        field = FieldSpec.parse(data["field"])
        return cls(field, (Fraction(c) for c in data["coefficients"]))


def split_field_suffix(text: str) -> tuple[str, Optional[FieldSpec]]:
    m = re.search(r"\s+(mod\s+\d+|over\s+Q)\s*$", text, flags=re.IGNORECASE)
    if not m:
        return text.strip(), None
    return text[: m.start()].strip(), FieldSpec.parse(m.group(1))


class _Parser:
    _token = re.compile(r"\s*(?:(\d+)|(x)|(.))")

    def __init__(self, text: str, field: FieldSpec):
        self.field = field
        self.toks: list[tuple[str, str]] = []
        for num, var, other in self._token.findall(text):
            if num:
                self.toks.append(("num", num))
            elif var:
                self.toks.append(("x", var))
            elif other.strip():
                self.toks.append(("op", other))
        self.i = 0

    def peek(self) -> Optional[tuple[str, str]]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, value: Optional[str] = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            raise PolyParseError(f"expected {value or 'token'} at position {self.i}")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            raise PolyParseError("empty polynomial")
        out = self.expr()
        if self.peek() is not None:
            raise PolyParseError(f"trailing input at token {self.peek()[1]!r}")
        return out

    def expr(self) -> Poly:
        out = self.term()
        while self.peek() and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Poly:
        out = self.unary()
        while True:
            tok = self.peek()
            if tok is None:
                return out
            if tok[1] == "*":
                self.take()
                out = out * self.unary()
            elif tok[1] == "/":
                self.take()
                d = self.unary()
                if not d.is_constant() or d.is_zero():
                    raise PolyParseError("division only by nonzero constants")
                out = out * Poly.const(self.field, self.field.inverse(d.lc))
            elif tok[0] in ("num", "x") or tok[1] == "(":
                out = out * self.unary()
            else:
                return out

    def unary(self) -> Poly:
        if self.peek() and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek() and self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() and self.peek()[1] == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise PolyParseError("exponent must be a non-negative integer")
            return base ** int(val)
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok[0] == "num":
            return Poly.const(self.field, int(tok[1]))
        if tok[0] == "x":
            return Poly.x(self.field)
        if tok[1] == "(":
            out = self.expr()
            self.take(")")
            return out
        raise PolyParseError(f"unexpected {tok[1]!r}")
