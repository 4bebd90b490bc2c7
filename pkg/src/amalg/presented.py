"""Connected graded algebras presented by generators and relations.

The basis of the quotient is computed degree by degree as a linear-algebra
cokernel: at degree d the candidate words g * (basis word of degree d-|g|)
span the quotient, and one relation row is written down for every pair
(relation r, basis word of degree d - |r|).  This span equals the span of
all products u*r*v of the same degree (every u*r*v is reachable by peeling
leading letters through already-computed lower quotients), so the resulting
dimensions satisfy dim_d = #words_d - rank(I_d); tests re-derive that rank
from the raw word space on small inputs.

Basis representatives are the deglex-smallest words in their residue class,
with the declaration order of generators fixing the comparison.
"""

from .errors import DegreeOverflow, InputError
from .linalg import Echelon, echelon_rewrites
from .ncpoly import (Generator, NcPoly, parse_ncpoly, poly_degree,
                     substitute, word_degree, word_name)


class PresentedAlgebra:
    """Generators with positive degrees plus homogeneous relations."""

    def __init__(self, field, generators, relations):
        self.field = field
        self.generators = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g)
            self.generators.append(g)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise InputError("generator names must be unique")
        self.relations = []
        self.relation_degrees = []
        for r in relations:
            if r.is_zero():
                continue
            d = poly_degree(r, self.generators)
            if d < 1:
                raise InputError("relations must have positive degree")
            self.relations.append(r)
            self.relation_degrees.append(d)

    @classmethod
    def build(cls, field, gens, rels):
        """Convenience constructor: gens as (name, degree) pairs, relations
        as text in the CLI polynomial grammar."""
        generators = [Generator(n, d) for n, d in gens]
        parsed = []
        for r in rels:
            if isinstance(r, str):
                r = parse_ncpoly(r, generators, field)
            parsed.append(r)
        return cls(field, generators, parsed)

    def gen_index(self, name):
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise InputError("unknown generator %r" % name)

    def parse(self, text):
        return parse_ncpoly(text, self.generators, self.field)

    def word_degree(self, word):
        return word_degree(word, self.generators)

    def word_name(self, word):
        return word_name(word, self.generators)


def truncated_basis(algebra, cutoff):
    """Degreewise normal basis and reduction data up to the cutoff."""
    return TruncatedAlgebra(algebra, cutoff)


class TruncatedAlgebra:
    """Normal basis plus reduction data for a presented algebra, degrees
    0..cutoff.  Immutable after construction; reduction is idempotent."""

    def __init__(self, algebra, cutoff):
        if cutoff < 0:
            raise InputError("cutoff must be >= 0")
        self.algebra = algebra
        self.field = algebra.field
        self.cutoff = cutoff
        self.inert_relations = [i for i, d in enumerate(algebra.relation_degrees)
                                if d > cutoff]
        self._basis = {0: [()]}
        self._index = {0: {(): 0}}
        self._cand_pos = {}   # d -> {(gen, low_idx): position}
        self._rw = {}         # d -> list per position of dense basis vectors
        self._reduce_cache = {}
        self._pair_cache = {}
        for d in range(1, cutoff + 1):
            self._build_degree(d)

    # -- construction ----------------------------------------------------

    def _build_degree(self, d):
        F = self.field
        gens = self.algebra.generators
        cands = []
        for gi, g in enumerate(gens):
            if g.degree <= d:
                low = self._basis.get(d - g.degree, [])
                for k, w in enumerate(low):
                    cands.append(((gi,) + w, gi, k))
        # descending word order: position 0 carries the deglex-largest word,
        # so pivots rewrite into strictly smaller words
        cands.sort(key=lambda t: t[0], reverse=True)
        pos_of = {}
        for p, (_, gi, k) in enumerate(cands):
            pos_of[(gi, k)] = p
        rows = []
        for r, e in zip(self.algebra.relations, self.algebra.relation_degrees):
            if e > d:
                continue
            for beta in range(self.dim(d - e)):
                beta_word = self._basis[d - e][beta]
                row = {}
                for word, coeff in r.terms.items():
                    gi = word[0]
                    rest = word[1:] + beta_word
                    sub = self.reduce_word(rest)
                    for k, c in enumerate(sub):
                        if c != 0:
                            p = pos_of[(gi, k)]
                            s = F.add(row.get(p, F.zero), F.mul(coeff, c))
                            if s == 0:
                                row.pop(p, None)
                            else:
                                row[p] = s
                if row:
                    rows.append(row)
        pivots, rewrites = echelon_rewrites(rows, len(cands), F)
        pivot_set = set(pivots)
        nonpiv = [p for p in range(len(cands)) if p not in pivot_set]
        nonpiv.reverse()  # ascending deglex
        basis_idx = dict((p, i) for i, p in enumerate(nonpiv))
        self._basis[d] = [cands[p][0] for p in nonpiv]
        self._index[d] = dict((w, i) for i, w in enumerate(self._basis[d]))
        n = len(nonpiv)
        vecs = []
        for p in range(len(cands)):
            v = [F.zero] * n
            if p in basis_idx:
                v[basis_idx[p]] = F.one
            else:
                for q, c in rewrites[p]:
                    v[basis_idx[q]] = c
            vecs.append(v)
        self._cand_pos[d] = pos_of
        self._rw[d] = vecs

    # -- queries -----------------------------------------------------------

    def dim(self, d):
        if not (0 <= d <= self.cutoff):
            raise DegreeOverflow(
                "degree %d is outside the truncation range 0..%d"
                % (d, self.cutoff))
        return len(self._basis.get(d, ()))

    def dims(self):
        return [self.dim(d) for d in range(self.cutoff + 1)]

    def basis_words(self, d):
        self.dim(d)
        return list(self._basis.get(d, ()))

    def basis_names(self, d):
        return [self.word_name(w) for w in self.basis_words(d)]

    def basis_index(self, word):
        d = self.algebra.word_degree(word)
        return self._index[d].get(word)

    def word_name(self, word):
        return self.algebra.word_name(word)

    def unit(self):
        return [self.field.one]

    # -- reduction and multiplication ---------------------------------------

    def reduce_word(self, word):
        """Coordinates of a raw word in the degreewise normal basis."""
        d = self.algebra.word_degree(word)
        if d > self.cutoff:
            raise DegreeOverflow("word of degree %d exceeds cutoff %d"
                                 % (d, self.cutoff))
        if not word:
            return [self.field.one]
        cached = self._reduce_cache.get(word)
        if cached is not None:
            return cached
        idx = self._index[d].get(word)
        if idx is not None:
            v = [self.field.zero] * self.dim(d)
            v[idx] = self.field.one
            self._reduce_cache[word] = v
            return v
        F = self.field
        gi = word[0]
        sub = self.reduce_word(word[1:])
        vecs = self._rw[d]
        pos_of = self._cand_pos[d]
        out = [F.zero] * self.dim(d)
        for k, c in enumerate(sub):
            if c != 0:
                rw = vecs[pos_of[(gi, k)]]
                for j, x in enumerate(rw):
                    if x != 0:
                        out[j] = F.add(out[j], F.mul(c, x))
        self._reduce_cache[word] = out
        return out

    def reduce_poly(self, poly):
        """(degree, coordinates) of a homogeneous polynomial."""
        d = poly_degree(poly, self.algebra.generators)
        if d is None:
            return 0, []
        F = self.field
        out = [F.zero] * self.dim(d)
        for w, c in poly.terms.items():
            v = self.reduce_word(w)
            for j, x in enumerate(v):
                if x != 0:
                    out[j] = F.add(out[j], F.mul(c, x))
        return d, out

    def multiply_basis(self, d1, i1, d2, i2):
        key = (d1, i1, d2, i2)
        cached = self._pair_cache.get(key)
        if cached is None:
            cached = self.reduce_word(self._basis[d1][i1] + self._basis[d2][i2])
            self._pair_cache[key] = cached
        return cached

    def mult(self, d1, v1, d2, v2):
        """Bilinear product of coordinate vectors."""
        F = self.field
        if d1 + d2 > self.cutoff:
            raise DegreeOverflow("product degree %d exceeds cutoff %d"
                                 % (d1 + d2, self.cutoff))
        out = [F.zero] * self.dim(d1 + d2)
        for i1, c1 in enumerate(v1):
            if c1 == 0:
                continue
            for i2, c2 in enumerate(v2):
                if c2 == 0:
                    continue
                c = F.mul(c1, c2)
                prod = self.multiply_basis(d1, i1, d2, i2)
                for j, x in enumerate(prod):
                    if x != 0:
                        out[j] = F.add(out[j], F.mul(c, x))
        return out

    def multiply_mod_ideal(self, u, v):
        """(degree, coordinates) of the product of two homogeneous
        polynomials in the quotient."""
        du = poly_degree(u, self.algebra.generators)
        dv = poly_degree(v, self.algebra.generators)
        if du is None or dv is None:
            return 0, []
        if du + dv > self.cutoff:
            raise DegreeOverflow("product degree %d exceeds cutoff %d"
                                 % (du + dv, self.cutoff))
        prod = u.mul(v, self.field)
        return self.reduce_poly(prod)

    def element_name(self, d, coords):
        parts = []
        for i, c in enumerate(coords):
            if c == 0:
                continue
            name = self.word_name(self._basis[d][i])
            parts.append(name if c == 1 else "%s*%s" % (c, name))
        return " + ".join(parts) if parts else "0"

    def augmentation_ideal_basis(self):
        """Per-degree basis of the positive-degree part."""
        return dict((d, self.basis_words(d))
                    for d in range(1, self.cutoff + 1) if self.dim(d))


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class MorphismReport:
    def __init__(self, ok, failures, unchecked):
        self.ok = ok
        self.failures = failures      # list of (relation index, degree)
        self.unchecked = unchecked    # relation indices beyond the cutoff

    def __bool__(self):
        return self.ok


class AlgebraMorphism:
    """Degree-preserving algebra map given on generators.

    images maps each source generator name to a homogeneous polynomial of
    equal degree over the target presentation.
    """

    def __init__(self, source, target, images):
        if source.field != target.field:
            raise InputError("morphism between different fields")
        self.source = source
        self.target = target
        self.field = source.field
        self.images = []
        src_gens = source.algebra.generators
        for g in src_gens:
            if g.name not in images:
                raise InputError("missing image for generator %r" % g.name)
            img = images[g.name]
            if isinstance(img, str):
                img = target.algebra.parse(img)
            d = poly_degree(img, target.algebra.generators)
            if d is not None and d != g.degree:
                raise InputError(
                    "degree mismatch: %s has degree %d but its image has "
                    "degree %d" % (g.name, g.degree, d))
            self.images.append(img)
        self._word_cache = {}

    def word_coords(self, word):
        """Coordinates of the image of a source word in the target basis."""
        d = self.source.algebra.word_degree(word)
        if not word:
            return self.target.unit()
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        gi = word[0]
        img = self.images[gi]
        dg = self.source.algebra.generators[gi].degree
        _, head = self.target.reduce_poly(img)
        tailv = self.word_coords(word[1:])
        out = self.target.mult(dg, head, d - dg, tailv)
        self._word_cache[word] = out
        return out

    def matrix(self, d):
        """dim_target(d) x dim_source(d) matrix in the chosen bases."""
        cols = [self.word_coords(w) for w in self.source.basis_words(d)]
        nr = self.target.dim(d)
        return [[col[i] for col in cols] for i in range(nr)]

    def apply(self, poly):
        """Image of a homogeneous source polynomial, as (degree, coords)."""
        d = poly_degree(poly, self.source.algebra.generators)
        F = self.field
        out = [F.zero] * self.target.dim(d)
        for w, c in poly.terms.items():
            v = self.word_coords(w)
            for j, x in enumerate(v):
                if x != 0:
                    out[j] = F.add(out[j], F.mul(c, x))
        return d, out

    def compose(self, inner):
        """self o inner, by free substitution of image polynomials."""
        if inner.target is not self.source:
            raise InputError("composition requires matching middle algebra")
        images = {}
        for g, img in zip(inner.source.algebra.generators, inner.images):
            images[g.name] = substitute(img, self.images, self.field)
        return AlgebraMorphism(inner.source, self.target, images)


def check_morphism(f):
    """Do all source relations map to zero in the target, up to the cutoff?

    Relations of degree beyond the target cutoff cannot be checked and are
    reported as unchecked; everything else either passes or is listed with
    its degree.
    """
    failures = []
    unchecked = []
    for i, (rel, d) in enumerate(zip(f.source.algebra.relations,
                                     f.source.algebra.relation_degrees)):
        if d > f.target.cutoff:
            unchecked.append(i)
            continue
        _, coords = f.apply(rel)
        if any(c != 0 for c in coords):
            failures.append((i, d))
    return MorphismReport(not failures, failures, unchecked)


# ---------------------------------------------------------------------------
# raw word-space oracle (tests only; exponential in the degree)
# ---------------------------------------------------------------------------

def naive_quotient_dims(algebra, cutoff):
    """Quotient dimensions from the literal span of all u*r*v products
    inside the full word space.  Small inputs only."""
    F = algebra.field
    words = {0: [()]}
    for d in range(1, cutoff + 1):
        out = []
        for gi, g in enumerate(algebra.generators):
            if g.degree <= d:
                out.extend((gi,) + w for w in words[d - g.degree])
        words[d] = out
    dims = [1]
    for d in range(1, cutoff + 1):
        index = dict((w, i) for i, w in enumerate(words[d]))
        span = Echelon(F, len(words[d]))
        rank = 0
        for rel, e in zip(algebra.relations, algebra.relation_degrees):
            if e > d:
                continue
            for a in range(d - e + 1):
                for u in words[a]:
                    for v in words[d - e - a]:
                        row = [F.zero] * len(words[d])
                        for w, c in rel.terms.items():
                            row[index[u + w + v]] = F.add(
                                row[index[u + w + v]], c)
                        if span.add(row):
                            rank += 1
        dims.append(len(words[d]) - rank)
    return dims
