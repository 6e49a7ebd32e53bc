"""Exact scalar arithmetic: the rationals and prime fields F_p.

Every computation in this package is exact; there is no floating point
anywhere. Rationals are gmpy2.mpq when available (C-implemented, much
faster), falling back to fractions.Fraction. Prime-field elements are a
thin wrapper over residues mod p.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover - gmpy2 is normally installed
    from fractions import Fraction as _rational


class RationalField:
    """The field of rational numbers."""

    name = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = _rational(0)
        self.one = _rational(1)

    def of(self, n):
        return _rational(n)

    def parse(self, s):
        return _rational(str(s))

    def fmt(self, x):
        return str(x)

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


QQ = RationalField()


class FpElement:
    """Residue class mod p. Arithmetic only with elements of the same field."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def __add__(self, other):
        return FpElement(self.p, self.v + other.v)

    def __sub__(self, other):
        return FpElement(self.p, self.v - other.v)

    def __mul__(self, other):
        return FpElement(self.p, self.v * other.v)

    def __truediv__(self, other):
        if other.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return FpElement(self.p, self.v * pow(other.v, -1, self.p))

    def __neg__(self):
        return FpElement(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        return NotImplemented

    def __bool__(self):
        return self.v != 0

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return "%d" % self.v


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The prime field F_p, p prime and < 2^31."""

    characteristic: int

    def __init__(self, p):
        if not (2 <= p < 2**31 and _is_prime(p)):
            raise ValueError("p must be a prime below 2^31, got %r" % (p,))
        self.p = p
        self.name = "Fp:%d" % p
        self.characteristic = p
        self.zero = FpElement(p, 0)
        self.one = FpElement(p, 1)

    def of(self, n):
        return FpElement(self.p, n)

    def parse(self, s):
        s = str(s).strip()
        if "/" in s:
            a, b = s.split("/")
            return self.of(int(a)) / self.of(int(b))
        return self.of(int(s))

    def fmt(self, x):
        return str(x.v)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


def field_by_name(name):
    """Parse "Q" or "Fp:<p>" into a field object."""
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return PrimeField(int(name[3:]))
    raise ValueError("unknown field %r (expected 'Q' or 'Fp:<p>')" % (name,))
