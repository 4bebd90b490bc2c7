"""Words and formal sums in the generators of a graded presentation.

A word is a tuple of generator indices; the empty tuple is the unit.  An
NcPoly is a finite formal sum of words with exact field coefficients.  The
free product here is plain concatenation: no sign conventions are imposed
by the engine, Koszul signs live in whatever relations the caller supplies.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .fields import parse_scalar


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InputError(
                "generators must have positive degree (%s has %d)"
                % (self.name, self.degree))


class NcPoly:
    """Formal sum word -> coefficient; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if c != 0:
                    self.terms[tuple(w)] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def unit(cls, field):
        return cls({(): field.one})

    @classmethod
    def gen(cls, index, field):
        return cls({(index,): field.one})

    def is_zero(self):
        return not self.terms

    def add(self, other, field):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = field.add(out.get(w, field.zero), c)
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
        return NcPoly(out)

    def scale(self, c, field):
        if c == 0:
            return NcPoly()
        return NcPoly(dict((w, field.mul(c, x)) for w, x in self.terms.items()))

    def neg(self, field):
        return NcPoly(dict((w, field.neg(x)) for w, x in self.terms.items()))

    def sub(self, other, field):
        return self.add(other.neg(field), field)

    def mul(self, other, field):
        """Free concatenation product."""
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = field.add(out.get(w, field.zero), field.mul(c1, c2))
                if s == 0:
                    out.pop(w, None)
                else:
                    out[w] = s
        return NcPoly(out)

    def map_words(self, fn):
        out = {}
        for w, c in self.terms.items():
            out[fn(w)] = c
        return NcPoly(out)

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __repr__(self):
        return "NcPoly(%r)" % (self.terms,)


def word_degree(word, generators):
    return sum(generators[i].degree for i in word)


def poly_degree(poly, generators):
    """Common degree of a homogeneous polynomial; InputError if mixed."""
    degs = set(word_degree(w, generators) for w in poly.terms)
    if not degs:
        return None
    if len(degs) > 1:
        raise InputError("polynomial is not homogeneous (degrees %s)"
                         % sorted(degs))
    return degs.pop()


def word_name(word, generators):
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        g = generators[word[i]].name
        parts.append(g if j - i == 1 else "%s^%d" % (g, j - i))
        i = j
    return "*".join(parts)


def poly_name(poly, generators):
    if not poly.terms:
        return "0"
    items = sorted(poly.terms.items())
    parts = []
    for w, c in items:
        name = word_name(w, generators)
        if c == 1 and w:
            term = name
        elif w:
            term = "%s*%s" % (c, name)
        else:
            term = str(c)
        parts.append(term)
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise InputError("malformed token %r at column %d" % (ch, i + 1))
    return tokens


def parse_ncpoly(text, generators, field):
    """Parse 'x*y - y*x', 'a^4', '1/2*x', ... against a generator table.

    Terms are joined by + and -; a term is an optional integer or a/b
    coefficient followed by *-separated generator powers.
    """
    index = dict((g.name, i) for i, g in enumerate(generators))
    tokens = _tokenize(text)
    if not tokens:
        raise InputError("empty polynomial")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, None)

    def term():
        nonlocal pos
        coeff = field.one
        word = []
        saw_anything = False
        kind, val, col = peek()
        if kind == "num":
            pos += 1
            if peek()[0] == "/":
                pos += 1
                k2, v2, c2 = peek()
                if k2 != "num":
                    raise InputError("expected denominator at column %d"
                                     % ((c2 or 0) + 1))
                pos += 1
                coeff = parse_scalar(field, "%s/%s" % (val, v2))
            else:
                coeff = field.of(int(val))
            saw_anything = True
            if peek()[0] == "*":
                pos += 1
        while True:
            kind, val, col = peek()
            if kind != "name":
                break
            if val not in index:
                raise InputError("unknown generator %r at column %d"
                                 % (val, col + 1))
            pos += 1
            power = 1
            if peek()[0] == "^":
                pos += 1
                k2, v2, c2 = peek()
                if k2 != "num":
                    raise InputError("expected exponent at column %d"
                                     % ((c2 or 0) + 1))
                pos += 1
                power = int(v2)
            word.extend([index[val]] * power)
            saw_anything = True
            if peek()[0] == "*":
                pos += 1
                k2 = peek()[0]
                if k2 not in ("name", "num"):
                    raise InputError("dangling '*' at column %d" % (col + 1))
                continue
            break
        if not saw_anything:
            kind, val, col = peek()
            raise InputError("expected a term at column %d"
                             % ((col if col is not None else len(text)) + 1))
        return tuple(word), coeff

    result = NcPoly()
    sign = field.one
    kind, val, col = peek()
    if kind in ("+", "-"):
        sign = field.one if kind == "+" else field.neg(field.one)
        pos += 1
    while True:
        w, c = term()
        result = result.add(NcPoly({w: field.mul(sign, c)}), field)
        kind, val, col = peek()
        if kind is None:
            break
        if kind == "+":
            sign = field.one
        elif kind == "-":
            sign = field.neg(field.one)
        else:
            raise InputError("unexpected %r at column %d" % (val, col + 1))
        pos += 1
    return result


def substitute(poly, images, field):
    """Map a polynomial through generator images (free substitution)."""
    out = NcPoly()
    for word, c in poly.terms.items():
        acc = NcPoly({(): c})
        for g in word:
            acc = acc.mul(images[g], field)
        out = out.add(acc, field)
    return out
