"""Exact coefficient fields: the rationals and prime fields.

Scalars are plain python objects: ``Fraction`` (or ``int``) in
characteristic 0, residues ``0..p-1`` in characteristic p.  No floating
point appears anywhere in the package.
"""

from fractions import Fraction

from .errors import InputError

_MAX_CHAR = 2**31


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """The field of rational numbers (characteristic 0) or F_p."""

    __slots__ = ("char",)

    def __init__(self, characteristic=0):
        if characteristic != 0:
            if not _is_prime(characteristic) or characteristic >= _MAX_CHAR:
                raise InputError(
                    "field characteristic must be 0 or a prime < 2^31, got %r"
                    % (characteristic,))
        object.__setattr__(self, "char", characteristic)

    def __setattr__(self, *a):
        raise AttributeError("Field is immutable")

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else "GF(%d)" % self.char

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def of(self, x):
        """Coerce an int or Fraction into a scalar of this field."""
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.char
            if den == 0:
                raise InputError("denominator divisible by %d" % self.char)
            return (x.numerator * pow(den, -1, self.char)) % self.char
        return x % self.char

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if self.char == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        return pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = Field(0)


def GF(p):
    """Prime field with p elements."""
    if p == 0:
        raise InputError("use QQ for characteristic zero")
    return Field(p)


def parse_scalar(field, text):
    """Parse ``7`` or ``3/4`` into a field scalar."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return field.of(Fraction(int(num), int(den)))
        return field.of(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("bad coefficient %r: %s" % (text, exc)) from None
