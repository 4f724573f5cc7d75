"""Exact scalars over the rationals or a prime field GF(p).

Rationals are plain :class:`fractions.Fraction` values.  Prime-field
elements are :class:`Fp` residues.  Both support the usual arithmetic
operators, so the algebra elsewhere in the package is written once and
runs over either field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


class ZeroInverse(ZeroDivisionError):
    """Inverse of zero requested."""


class FieldMismatch(TypeError):
    """Elements (or matrices) from two different fields were combined."""


class ParseError(ValueError):
    """Malformed textual scalar, tuple, matrix or field specification."""


class Fp:
    """A residue modulo a prime ``p``, kept canonical in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction) and other.denominator == 1:
            return other.numerator
        raise FieldMismatch(f"cannot combine GF({self.p}) with {type(other).__name__}")

    def __add__(self, other):
        return Fp(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Fp(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other) % self.p
        if o == 0:
            raise ZeroInverse(f"division by zero in GF({self.p})")
        return Fp(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        if self.value == 0:
            raise ZeroInverse(f"division by zero in GF({self.p})")
        return Fp(self._coerce(other) * pow(self.value, -1, self.p), self.p)

    def __pow__(self, n: int):
        if n < 0:
            if self.value == 0:
                raise ZeroInverse(f"0 ** {n} in GF({self.p})")
            return Fp(pow(pow(self.value, -1, self.p), -n, self.p), self.p)
        return Fp(pow(self.value, n, self.p), self.p)

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


@dataclass(frozen=True)
class FieldConfig:
    """Which exact field scalars live in.

    ``kind`` is ``"Q"`` for the rationals or ``"GF"`` for a prime field, in
    which case ``modulus`` is the prime.
    """

    kind: str = "Q"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.modulus is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "GF":
            if self.modulus is None or not is_prime(self.modulus):
                raise ValueError(f"GF modulus must be prime, got {self.modulus}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def from_string(cls, text: str) -> "FieldConfig":
        text = text.strip()
        if text == "Q":
            return cls("Q")
        m = re.fullmatch(r"GF:(\d+)", text)
        if not m:
            raise ParseError(f"field must be 'Q' or 'GF:p', got {text!r}")
        try:
            return cls("GF", int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self):
        return "Q" if self.kind == "Q" else f"GF:{self.modulus}"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "GF"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.modulus

    def __call__(self, x):
        """Embed an int, Fraction, Fp or scalar string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "Q":
            if isinstance(x, Fp):
                raise FieldMismatch("prime-field element used over Q")
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FieldMismatch(f"cannot embed {type(x).__name__} in Q")
        if isinstance(x, Fp):
            if x.p != self.modulus:
                raise FieldMismatch(f"GF({x.p}) element used over GF({self.modulus})")
            return x
        if isinstance(x, int):
            return Fp(x, self.modulus)
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.modulus) / x.denominator
        raise FieldMismatch(f"cannot embed {type(x).__name__} in GF({self.modulus})")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def contains(self, x) -> bool:
        if self.kind == "Q":
            return isinstance(x, Fraction)
        return isinstance(x, Fp) and x.p == self.modulus

    # raw values are what matrices store: Fraction over Q, int in [0, p) over GF(p)
    def raw(self, x):
        x = self(x)
        return x.value if self.kind == "GF" else x

    def wrap(self, r):
        return Fp(r, self.modulus) if self.kind == "GF" else r

    def parse(self, text: str):
        """Parse ``"n"`` / ``"n/d"`` over Q, or ``"k"`` with 0 <= k < p over GF(p)."""
        if not isinstance(text, str):
            raise ParseError(f"scalar must be a string, got {type(text).__name__}")
        s = text.strip()
        if self.kind == "Q":
            if not _RATIONAL_RE.match(s):
                raise ParseError(f"malformed rational {text!r}")
            try:
                return Fraction(s)
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {text!r}") from None
        if not s.isdigit():
            raise ParseError(f"malformed GF({self.modulus}) residue {text!r}")
        k = int(s)
        if k >= self.modulus:
            raise ParseError(f"residue {k} not in [0, {self.modulus})")
        return Fp(k, self.modulus)

    def format(self, x) -> str:
        x = self(x)
        return str(x)

    def sqrt(self, x):
        """A square root of ``x`` in this field, or None if there is none.

        Over GF(p) the smallest root in [0, p) is returned; over Q the
        nonnegative one.
        """
        x = self(x)
        if self.kind == "Q":
            if x < 0:
                return None
            n, d = isqrt(x.numerator), isqrt(x.denominator)
            if n * n == x.numerator and d * d == x.denominator:
                return Fraction(n, d)
            return None
        if x.value == 0:
            return x
        from sympy.ntheory import sqrt_mod

        r = sqrt_mod(x.value, self.modulus)
        return None if r is None else Fp(r, self.modulus)


Q = FieldConfig("Q")


def GF(p: int) -> FieldConfig:
    return FieldConfig("GF", p)


def is_prime(n: int) -> bool:
    """Deterministic primality test (sympy's; exact below 2**64)."""
    from sympy import isprime

    return isinstance(n, int) and isprime(n)


def field_of(x) -> FieldConfig:
    if isinstance(x, Fp):
        return GF(x.p)
    if isinstance(x, (int, Fraction)):
        return Q
    raise FieldMismatch(f"{type(x).__name__} is not a field element")


def inv(x):
    """Multiplicative inverse; raises ZeroInverse on zero."""
    if not x:
        raise ZeroInverse("inverse of zero")
    if isinstance(x, Fp):
        return 1 / x
    return 1 / Fraction(x)


def int_pow(x, n: int):
    """``x**n`` for any signed integer ``n`` (binary exponentiation)."""
    if n < 0:
        return int_pow(inv(x), -n)
    if isinstance(x, int):
        x = Fraction(x)
    # builtin pow on Fraction/Fp already squares-and-multiplies
    return x**n


def q_pochhammer(x, t, n: int):
    """``(x; t)_n = (1 - x)(1 - x t) ... (1 - x t^(n-1))``; 1 when n == 0."""
    if n < 0:
        raise ValueError("q_pochhammer needs n >= 0")
    out = x * 0 + 1
    term = x
    for _ in range(n):
        out = out * (1 - term)
        term = term * t
    return out
