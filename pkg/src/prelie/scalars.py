"""Exact scalar fields: the rationals and prime fields F_p.

All arithmetic in this package is exact.  Rational scalars are plain
`fractions.Fraction` values (always in lowest terms with positive
denominator); prime-field scalars are `FpElement` values carrying their
residue and modulus.  Both support +, -, *, / and compare equal to plain
ints where that makes sense, so generic code can test ``x == 0`` without
knowing the field.

Serialized form: rationals as "n" or "n/d" (e.g. "3", "-1/2"),
prime-field values as "r mod p" (e.g. "2 mod 3").
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FpElement:
    """An element of F_p, stored as a residue in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> "FpElement":
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(self.value * pow(o.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} mod {self.p}"


class RationalField:
    """The field of rational numbers; elements are `fractions.Fraction`."""

    char = 0
    name = "Q"

    def __call__(self, v) -> Fraction:
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return self.parse(v)
        raise TypeError(f"cannot coerce {v!r} into Q")

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def parse(self, s: str) -> Fraction:
        return Fraction(s.strip())

    def format(self, x: Fraction) -> str:
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def elements(self):
        from .errors import InfiniteFieldError

        raise InfiniteFieldError("Q is infinite")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The finite field F_p for a prime p; elements are `FpElement`."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"F{p}"

    def __call__(self, v) -> FpElement:
        if isinstance(v, FpElement):
            if v.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{v.p}")
            return v
        if isinstance(v, int):
            return FpElement(v, self.p)
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise ZeroDivisionError(f"{v} has no image in F_{self.p}")
            return FpElement(v.numerator, self.p) / FpElement(v.denominator, self.p)
        if isinstance(v, str):
            return self.parse(v)
        raise TypeError(f"cannot coerce {v!r} into F_{self.p}")

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.p)

    def parse(self, s: str) -> FpElement:
        s = s.strip()
        if "mod" in s:
            r, _, p = s.partition("mod")
            p = int(p)
            if p != self.p:
                raise FieldMismatchError(f"scalar is mod {p}, field is F_{self.p}")
            return FpElement(int(r), self.p)
        # field-generic fixtures store plain integers or fractions
        return self(Fraction(s))

    def format(self, x: FpElement) -> str:
        return f"{x.value} mod {self.p}"

    def contains(self, x) -> bool:
        return isinstance(x, FpElement) and x.p == self.p

    def elements(self):
        return [FpElement(i, self.p) for i in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F{self.p}"


QQ = RationalField()

_FIELD_NAMES = {"q": QQ}


def field_by_name(name: str):
    """Field from its CLI name: "q" or "f<p>" (e.g. "f2", "f7")."""
    key = name.strip().lower()
    if key in _FIELD_NAMES:
        return _FIELD_NAMES[key]
    if key.startswith("f") and key[1:].isdigit():
        return PrimeField(int(key[1:]))
    raise ValueError(f"unknown field name {name!r}")


def field_name(field) -> str:
    if isinstance(field, RationalField):
        return "q"
    return f"f{field.p}"


def scalar_to_str(x) -> str:
    if isinstance(x, Fraction):
        return QQ.format(x)
    if isinstance(x, FpElement):
        return f"{x.value} mod {x.p}"
    raise TypeError(f"not a scalar: {x!r}")


def field_of(x):
    """The field a scalar belongs to."""
    if isinstance(x, Fraction):
        return QQ
    if isinstance(x, FpElement):
        return PrimeField(x.p)
    raise TypeError(f"not a scalar: {x!r}")
