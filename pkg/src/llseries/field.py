"""Exact ground fields: the rationals and prime fields F_p.

Elements of the rational field are plain :class:`fractions.Fraction` values.
Prime-field elements are :class:`Mod` instances.  Both support the usual
arithmetic operators and compare equal to the integer ``0`` when zero, which
is all the elimination code relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    pass


class Mod:
    """Residue class modulo a prime; representative kept in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError("mixed prime fields: %d vs %d" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return "Mod(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class RationalField:
    """The field of rational numbers, exact."""

    name = "rational"

    def __call__(self, x) -> Fraction:
        if isinstance(x, Mod):
            raise FieldError("cannot coerce a prime-field element to Q")
        if type(x) is Fraction:
            return x
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def parse(self, s: str) -> Fraction:
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError("bad rational literal %r" % (s,)) from exc

    def format(self, x) -> str:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)

    def to_json(self):
        return "rational"

    def __str__(self):
        return "rational"


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % k == 0 for k in range(2, int(self.p ** 0.5) + 1)):
            raise FieldError("%d is not prime" % self.p)

    @property
    def name(self) -> str:
        return "prime:%d" % self.p

    def __call__(self, x) -> Mod:
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldError("element of F_%d given to F_%d" % (x.p, self.p))
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError("%s has no image in F_%d" % (x, self.p))
            return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Mod(int(x), self.p)

    @property
    def zero(self) -> Mod:
        return Mod(0, self.p)

    @property
    def one(self) -> Mod:
        return Mod(1, self.p)

    def parse(self, s: str) -> Mod:
        return self(RationalField().parse(s))

    def format(self, x) -> str:
        return str(self(x).v)

    def to_json(self):
        return {"prime": self.p}

    def __str__(self):
        return self.name


QQ = RationalField()


def field_from_json(obj):
    """Inverse of ``Field.to_json``: ``"rational"`` or ``{"prime": p}``."""
    if obj == "rational" or obj is None:
        return QQ
    if isinstance(obj, dict) and set(obj) == {"prime"}:
        return PrimeField(int(obj["prime"]))
    raise FieldError("unrecognised field spec %r" % (obj,))


def parse_field(text: str):
    """Parse the command-line form ``rational`` or ``prime:P``."""
    text = text.strip()
    if text == "rational":
        return QQ
    if text.startswith("prime:"):
        return PrimeField(int(text.split(":", 1)[1]))
    raise FieldError("field must be 'rational' or 'prime:P', got %r" % (text,))
