"""Normal-form engine for pushouts of connected graded algebras along
injective split maps.

An amalgam element is a combination of normal words: an alternating
sequence of transversal letters from the two factors followed by a basis
element of the base algebra (tails stay rightmost; the factors are right
modules over the base throughout).  Multiplication contracts same-factor
adjacencies inside that factor and re-splits along
B_i = f_i(B_0) (+) span(transversal * B_0) until the word is normal again.

Products past the cutoff raise DegreeOverflow: degrees above the cutoff
are undefined, not zero.
"""

from .errors import (CheckFailure, DegreeOverflow, FreenessFailure,
                     InputError)
from .linalg import (Echelon, GradedVectorSpace, ModuleData, invert_columns,
                     matvec, tensor_over_algebra, trivial_module)
from .ncpoly import Generator, NcPoly
from .presented import (AlgebraMorphism, PresentedAlgebra, check_morphism,
                        truncated_basis)
from .series import PoincareSeries


class TransversalElement:
    __slots__ = ("degree", "vec", "word", "name")

    def __init__(self, degree, vec, word, name):
        self.degree = degree
        self.vec = vec
        self.word = word
        self.name = name


class ModuleTransversal:
    """Right-module complement data for one factor over the base.

    The factor decomposes as f(B0) (+) span(m * B0) with the unit and the
    elements m generating it freely as a right module; per degree we keep
    the column layout of that decomposition and the inverse matrix that
    splits arbitrary coordinates along it.
    """

    def __init__(self, factor_index, elements):
        self.factor_index = factor_index
        self.elements = elements
        self.split_inverse = {}   # degree -> rows of S^{-1}
        self.pair_layout = {}     # degree -> list of (letter_idx, b0_idx)

    def degrees(self):
        return sorted(set(m.degree for m in self.elements))


def module_complement_basis(factor, morphism, transversal_index):
    """Greedy degreewise transversal of f(B0) inside a factor.

    Extends the image of the base by deglex-smallest basis words whose
    right-B0-span stays independent, verifying the freeness dimension
    count at every degree.  Raises FreenessFailure when the structured
    span vectors become dependent.
    """
    base = morphism.source
    F = factor.field
    elements = []
    trans = ModuleTransversal(transversal_index, elements)
    for d in range(factor.cutoff + 1):
        dim = factor.dim(d)
        span = Echelon(F, dim)
        columns = []
        pairs = []
        fmat = morphism.matrix(d)
        for k in range(base.dim(d)):
            col = [fmat[i][k] for i in range(dim)]
            if not span.add(col):
                raise FreenessFailure(
                    d, "image of the base is degenerate at degree %d" % d)
            columns.append(col)
        for mi, m in enumerate(elements):
            if m.degree > d:
                continue
            e = d - m.degree
            femat = morphism.matrix(e)
            for k in range(base.dim(e)):
                img = [femat[i][k] for i in range(factor.dim(e))]
                col = factor.mult(m.degree, m.vec, e, img)
                if not span.add(col):
                    raise FreenessFailure(
                        d, "factor is not free over the base: dependency "
                           "among transversal products at degree %d" % d)
                columns.append(col)
                pairs.append((mi, k))
        for idx, w in enumerate(factor.basis_words(d)):
            if span.rank == dim:
                break
            col = [F.one if k == idx else F.zero for k in range(dim)]
            if span.add(col):
                m = TransversalElement(d, col, w, factor.word_name(w))
                elements.append(m)
                columns.append(col)
                pairs.append((len(elements) - 1, 0))
        if span.rank != dim:
            raise FreenessFailure(
                d, "span did not close at degree %d" % d)
        trans.split_inverse[d] = invert_columns(columns, F)
        trans.pair_layout[d] = pairs
    return trans


class FreenessReport:
    """Outcome of the homological-freeness check for one diagram."""

    def __init__(self):
        self.ok = True
        self.morphism_failures = {}     # side -> MorphismReport
        self.injectivity_failure = {}   # side -> first bad degree
        self.freeness_failure = {}      # side -> (degree, message)
        self.transversals = {}          # side -> ModuleTransversal

    def __bool__(self):
        return self.ok

    def transversal_degrees(self, side):
        t = self.transversals.get(side)
        return [m.degree for m in t.elements] if t else None


def check_homologically_free(b0, b1, b2, f1, f2):
    """Injectivity of both maps degreewise plus split freeness of both
    factors; on success the report carries the transversals."""
    report = FreenessReport()
    for side, factor, f in ((1, b1, f1), (2, b2, f2)):
        mrep = check_morphism(f)
        if not mrep.ok:
            report.ok = False
            report.morphism_failures[side] = mrep
            continue
        bad = None
        for d in range(factor.cutoff + 1):
            span = Echelon(factor.field, factor.dim(d))
            mat = f.matrix(d)
            rank = 0
            for k in range(f.source.dim(d)):
                if span.add([mat[i][k] for i in range(factor.dim(d))]):
                    rank += 1
            if rank < f.source.dim(d):
                bad = d
                break
        if bad is not None:
            report.ok = False
            report.injectivity_failure[side] = bad
            continue
        try:
            report.transversals[side] = module_complement_basis(
                factor, f, side)
        except FreenessFailure as exc:
            report.ok = False
            report.freeness_failure[side] = (exc.degree, str(exc))
    return report


class AmalgamDiagram:
    """A validated pushout diagram of truncated algebras with its normal
    basis, ready for multiplication and the series bookkeeping."""

    def __init__(self, b0, b1, b2, f1, f2, report):
        self.b0 = b0
        self.b1 = b1
        self.b2 = b2
        self.f = {1: f1, 2: f2}
        self.field = b0.field
        self.cutoff = b0.cutoff
        self.report = report
        self.transversals = report.transversals
        self.letters = {1: report.transversals[1].elements,
                        2: report.transversals[2].elements}
        self._build_words()
        self._push_cache = {}
        self._pair_cache = {}
        self._embed_cache = {}
        self._tensor_down = {}
        self._second_filtration = {}

    @classmethod
    def build(cls, b0, b1, b2, f1, f2):
        if not (b0.cutoff == b1.cutoff == b2.cutoff):
            raise InputError("all three algebras need one cutoff")
        if not (b0.field == b1.field == b2.field):
            raise InputError("all three algebras need one field")
        if f1.source is not b0 or f2.source is not b0:
            raise InputError("both maps must start at the base algebra")
        if f1.target is not b1 or f2.target is not b2:
            raise InputError("maps must land in the two factors")
        report = check_homologically_free(b0, b1, b2, f1, f2)
        if not report.ok:
            if report.morphism_failures:
                side, mrep = next(iter(report.morphism_failures.items()))
                idx, deg = mrep.failures[0]
                raise CheckFailure(
                    "map into factor %d does not respect relation %d "
                    "(degree %d)" % (side, idx, deg))
            if report.injectivity_failure:
                side, d = next(iter(report.injectivity_failure.items()))
                raise CheckFailure(
                    "map into factor %d fails injectivity at degree %d"
                    % (side, d))
            side, (d, msg) = next(iter(report.freeness_failure.items()))
            raise FreenessFailure(d, msg)
        return cls(b0, b1, b2, f1, f2, report)

    # -- the normal word basis -------------------------------------------

    def _build_words(self):
        N = self.cutoff
        seqs = [[((), 0)]]  # per length: (letters tuple, degree)
        while True:
            prev = seqs[-1]
            nxt = []
            for letters, deg in prev:
                last = letters[-1][0] if letters else 0
                for j in (1, 2):
                    if j == last:
                        continue
                    for mi, m in enumerate(self.letters[j]):
                        if deg + m.degree <= N:
                            nxt.append((letters + ((j, mi),), deg + m.degree))
            if not nxt:
                break
            nxt.sort(key=lambda t: t[0])
            seqs.append(nxt)
        self._words = {d: [] for d in range(N + 1)}
        for length_list in seqs:
            for letters, deg in length_list:
                for d in range(deg, N + 1):
                    for k in range(self.b0.dim(d - deg)):
                        self._words[d].append((letters, d - deg, k))
        self._index = {}
        for d in range(N + 1):
            self._index[d] = dict((w, i) for i, w in enumerate(self._words[d]))

    def dim(self, d):
        if not (0 <= d <= self.cutoff):
            raise DegreeOverflow(
                "degree %d is outside the truncation range 0..%d"
                % (d, self.cutoff))
        return len(self._words[d])

    def words(self, d):
        self.dim(d)
        return list(self._words[d])

    def word_degree(self, key):
        letters, tdeg, _ = key
        return tdeg + sum(self.letters[j][mi].degree for j, mi in letters)

    def word_name(self, key):
        letters, tdeg, tidx = key
        inner = ",".join(self.letters[j][mi].name for j, mi in letters)
        tail = self.b0.word_name(self.b0.basis_words(tdeg)[tidx])
        return "(%s)|%s" % (inner, tail)

    def basis_names(self, d):
        return [self.word_name(w) for w in self.words(d)]

    def poincare_series(self):
        return PoincareSeries([self.dim(d) for d in range(self.cutoff + 1)],
                              self.cutoff)

    def graded_pieces(self, n):
        """Series of normal words whose shape has length exactly n."""
        dims = [0] * (self.cutoff + 1)
        for d in range(self.cutoff + 1):
            for letters, _, _ in self._words[d]:
                if len(letters) == n:
                    dims[d] += 1
        return PoincareSeries(dims, self.cutoff)

    # -- splitting ---------------------------------------------------------

    def split(self, j, d, vec):
        """Split a factor element along f(B0) (+) transversal * B0.

        Returns (base_coeffs over B0(d), [(letter_idx, b0_idx, coeff)]).
        """
        trans = self.transversals[j]
        coords = matvec(trans.split_inverse[d], vec, self.field)
        nb = self.f[j].source.dim(d)
        base = coords[:nb]
        pairs = []
        for (mi, k), c in zip(trans.pair_layout[d], coords[nb:]):
            if c != 0:
                pairs.append((mi, k, c))
        return base, pairs

    # -- multiplication ------------------------------------------------------

    def _push_element(self, key, j, deg, vec):
        """Right-multiply the normal word key by a factor-j element."""
        F = self.field
        letters, tdeg, tidx = key
        factor = self.b1 if j == 1 else self.b2
        if tdeg == 0:
            y = list(vec)
        else:
            fmat = self.f[j].matrix(tdeg)
            fa = [fmat[i][tidx] for i in range(factor.dim(tdeg))]
            y = factor.mult(tdeg, fa, deg, vec)
        ydeg = tdeg + deg
        if letters and letters[-1][0] == j:
            m = self.letters[j][letters[-1][1]]
            z = factor.mult(m.degree, m.vec, ydeg, y)
            return self._push_element((letters[:-1], 0, 0), j,
                                      m.degree + ydeg, z)
        base, pairs = self.split(j, ydeg, y)
        out = {}
        for k, c in enumerate(base):
            if c != 0:
                out[(letters, ydeg, k)] = c
        for mi, k, c in pairs:
            m = self.letters[j][mi]
            nkey = (letters + ((j, mi),), ydeg - m.degree, k)
            prev = out.get(nkey, F.zero)
            s = F.add(prev, c)
            if s == 0:
                out.pop(nkey, None)
            else:
                out[nkey] = s
        return out

    def _push_transversal(self, key, j, mi):
        ck = (key, j, mi)
        cached = self._push_cache.get(ck)
        if cached is None:
            m = self.letters[j][mi]
            cached = self._push_element(key, j, m.degree, m.vec)
            self._push_cache[ck] = cached
        return cached

    def _word_product(self, k1, k2):
        ck = (k1, k2)
        cached = self._pair_cache.get(ck)
        if cached is not None:
            return cached
        F = self.field
        letters2, tdeg2, tidx2 = k2
        current = {k1: F.one}
        for j, mi in letters2:
            nxt = {}
            for key, c in current.items():
                for key2, c2 in self._push_transversal(key, j, mi).items():
                    s = F.add(nxt.get(key2, F.zero), F.mul(c, c2))
                    if s == 0:
                        nxt.pop(key2, None)
                    else:
                        nxt[key2] = s
            current = nxt
        if tdeg2 > 0:
            e2 = [F.one if k == tidx2 else F.zero
                  for k in range(self.b0.dim(tdeg2))]
            nxt = {}
            for key, c in current.items():
                letters, tda, tia = key
                e1 = [F.one if k == tia else F.zero
                      for k in range(self.b0.dim(tda))]
                prod = self.b0.mult(tda, e1, tdeg2, e2)
                for k3, c3 in enumerate(prod):
                    if c3 == 0:
                        continue
                    nkey = (letters, tda + tdeg2, k3)
                    s = F.add(nxt.get(nkey, F.zero), F.mul(c, c3))
                    if s == 0:
                        nxt.pop(nkey, None)
                    else:
                        nxt[nkey] = s
            current = nxt
        self._pair_cache[ck] = current
        return current

    def multiply(self, u, v):
        """Product of two amalgam elements, in normal form."""
        if u.degree + v.degree > self.cutoff:
            raise DegreeOverflow(
                "product degree %d exceeds cutoff %d"
                % (u.degree + v.degree, self.cutoff))
        F = self.field
        out = {}
        for k1, c1 in u.terms.items():
            for k2, c2 in v.terms.items():
                c = F.mul(c1, c2)
                for key, x in self._word_product(k1, k2).items():
                    s = F.add(out.get(key, F.zero), F.mul(c, x))
                    if s == 0:
                        out.pop(key, None)
                    else:
                        out[key] = s
        return AmalgamElement(self, u.degree + v.degree, out)

    # -- elements ----------------------------------------------------------

    def element_from_word(self, key):
        return AmalgamElement(self, self.word_degree(key),
                              {key: self.field.one})

    def basis_element(self, d, i):
        return self.element_from_word(self._words[d][i])

    def coords(self, elem):
        v = [self.field.zero] * self.dim(elem.degree)
        for key, c in elem.terms.items():
            v[self._index[elem.degree][key]] = c
        return v

    def embed(self, j, d, idx):
        """Image in the amalgam of the idx-th basis word of B_j at degree d."""
        ck = (j, d, idx)
        cached = self._embed_cache.get(ck)
        if cached is not None:
            return cached
        F = self.field
        if j == 0:
            elem = AmalgamElement(self, d, {((), d, idx): F.one})
        else:
            factor = self.b1 if j == 1 else self.b2
            e = [F.one if k == idx else F.zero for k in range(factor.dim(d))]
            base, pairs = self.split(j, d, e)
            terms = {}
            for k, c in enumerate(base):
                if c != 0:
                    terms[((), d, k)] = c
            for mi, k, c in pairs:
                m = self.letters[j][mi]
                terms[(((j, mi),), d - m.degree, k)] = c
            elem = AmalgamElement(self, d, terms)
        self._embed_cache[ck] = elem
        return elem

    # -- derived series ------------------------------------------------------

    def tensor_down(self, j):
        """P (x)_{B_j} k as a graded vector space (j = 0, 1 or 2)."""
        cached = self._tensor_down.get(j)
        if cached is not None:
            return cached
        algebra = (self.b0, self.b1, self.b2)[j]
        space = GradedVectorSpace(
            self.field, dict((d, self.dim(d))
                             for d in range(self.cutoff + 1)), self.cutoff)

        def action(vd, vi, ad, ai):
            word = self._words[vd][vi]
            prod = self.multiply(self.element_from_word(word),
                                 self.embed(j, ad, ai))
            return self.coords(prod)

        V = ModuleData(space, action, "right")
        out = tensor_over_algebra(
            V, algebra, trivial_module(self.field, self.cutoff, "left"),
            self.cutoff, spot_check=False)
        if j == 0:
            # sanity: the quotient must count alternating words with
            # trivial tails
            for d in range(self.cutoff + 1):
                count = sum(1 for letters, tdeg, _ in self._words[d]
                            if tdeg == 0)
                if out.dim(d) != count:
                    raise CheckFailure(
                        "tensor-down over the base disagrees with the "
                        "trivial-tail count at degree %d" % d)
        self._tensor_down[j] = out
        return out

    def bruhat_check(self):
        """dim(P (x)_{B0} k)_d = dim(P (x)_{B1} k)_d + dim(P (x)_{B2} k)_d
        in positive degrees, with a one-dimensional cokernel in degree 0.
        Returns the verified degree range; raises CheckFailure otherwise."""
        t0 = self.tensor_down(0)
        t1 = self.tensor_down(1)
        t2 = self.tensor_down(2)
        if t1.dim(0) + t2.dim(0) - t0.dim(0) != 1:
            raise CheckFailure("cokernel at degree 0 is not one-dimensional")
        for d in range(1, self.cutoff + 1):
            if t0.dim(d) != t1.dim(d) + t2.dim(d):
                raise CheckFailure(
                    "comparison fails at degree %d: %d versus %d + %d"
                    % (d, t0.dim(d), t1.dim(d), t2.dim(d)))
        return self.cutoff

    def second_filtration_pieces(self, j, n):
        """Series of P_n B_j / P_{n-1} B_j: words of length n not ending in
        j, tensored with all of B_j.  Counts are cross-checked against the
        span filtration of actual products."""
        if j not in (1, 2):
            raise InputError("second filtration needs j in {1, 2}")
        pieces = self._second_filtration.get(j)
        if pieces is None:
            pieces = self._second_filtration_series(j)
            self._second_filtration[j] = pieces
        if n >= len(pieces):
            return PoincareSeries([0] * (self.cutoff + 1), self.cutoff)
        return pieces[n]

    def _second_filtration_series(self, j):
        N = self.cutoff
        algebra = (None, self.b1, self.b2)[j]
        shapes = {}  # length -> list of (letters, degree) not ending in j
        all_lengths = 0
        for d in range(N + 1):
            for letters, tdeg, tidx in self._words[d]:
                if tdeg != 0 or tidx != 0:
                    continue
                all_lengths = max(all_lengths, len(letters))
                if letters and letters[-1][0] == j:
                    continue
                shapes.setdefault(len(letters), []).append(
                    (letters, self.word_degree((letters, 0, 0))))
        max_len = all_lengths
        counts = []
        for n in range(max_len + 1):
            dims = [0] * (N + 1)
            for letters, deg in shapes.get(n, ()):
                for d in range(deg, N + 1):
                    dims[d] += algebra.dim(d - deg)
            counts.append(PoincareSeries(dims, N))
        # cross-check against the direct span filtration of actual products
        spans = [Echelon(self.field, self.dim(d)) for d in range(N + 1)]
        prev = [0] * (N + 1)
        for n in range(max_len + 1):
            for d in range(N + 1):
                for key in self._words[d]:
                    if len(key[0]) != n:
                        continue
                    word_elem = self.element_from_word(key)
                    for e in range(N - d + 1):
                        for ai in range(algebra.dim(e)):
                            prod = self.multiply(word_elem,
                                                 self.embed(j, e, ai))
                            spans[d + e].add(self.coords(prod))
            for d in range(N + 1):
                if spans[d].rank - prev[d] != counts[n].dims[d]:
                    raise CheckFailure(
                        "second filtration piece n=%d disagrees with the "
                        "span computation at degree %d" % (n, d))
            prev = [sp.rank for sp in spans]
        return counts

    def boundary_dims(self, n):
        """Series of the boundary subspace W_n inside Q_n, asserting
        dim Q_n - dim W_n = dim P_n / P_{n-1} degreewise."""
        if n < 1:
            raise InputError("boundary_dims needs n >= 1")
        N = self.cutoff
        w_dims = [0] * (N + 1)
        q_dims = [0] * (N + 1)
        for first in (1, 2):
            shape = tuple((first, 2 if first == 1 else 1)[k % 2]
                          for k in range(n))
            space = ShapeTensorSpace(self, shape)
            for d in range(N + 1):
                q_dims[d] += len(space.basis(d))
            spans = [Echelon(self.field, len(space.basis(d)))
                     for d in range(N + 1)]
            for sub in _proper_subshapes(shape):
                subspace = ShapeTensorSpace(self, sub)
                for d in range(N + 1):
                    for key in subspace.basis(d):
                        vec = space.inclusion_coords(sub, key, d)
                        spans[d].add(vec)
            for d in range(N + 1):
                w_dims[d] += spans[d].rank
        pieces = self.graded_pieces(n)
        for d in range(N + 1):
            if q_dims[d] - w_dims[d] != pieces.dims[d]:
                raise CheckFailure(
                    "boundary identity fails for n=%d at degree %d: "
                    "%d - %d != %d" % (n, d, q_dims[d], w_dims[d],
                                       pieces.dims[d]))
        return PoincareSeries(w_dims, N)

    def brute_force_pushout(self, guard=10**7):
        """Assemble the raw pushout presentation (generators: the positive
        bases of both factors; relations: base identifications and product
        contractions) and recompute the series through the generic
        presented-algebra backend."""
        N = self.cutoff
        gens = []
        origin = []  # (factor index, degree, basis index)
        for j, factor in ((1, self.b1), (2, self.b2)):
            tag = "l" if j == 1 else "r"
            for d in range(1, N + 1):
                for i, w in enumerate(factor.basis_words(d)):
                    gens.append(Generator("%s:%s" % (tag, factor.word_name(w)),
                                          d))
                    origin.append((j, d, i))
        gen_at = dict(((j, d, i), g) for g, (j, d, i) in enumerate(origin))
        counts = [0] * (N + 1)
        counts[0] = 1
        total = 1
        for d in range(1, N + 1):
            c = 0
            for g in gens:
                if g.degree <= d:
                    c += counts[d - g.degree]
            counts[d] = c
            total += c
            if total > guard:
                raise InputError(
                    "word-space estimate exceeds the enumeration guard")
        F = self.field
        relations = []

        def poly_from_coords(j, d, coords, negate=False):
            terms = {}
            for i, c in enumerate(coords):
                if c != 0:
                    terms[(gen_at[(j, d, i)],)] = F.neg(c) if negate else c
            return terms

        for j, factor in ((1, self.b1), (2, self.b2)):
            for d1 in range(1, N + 1):
                for i1 in range(factor.dim(d1)):
                    for d2 in range(1, N - d1 + 1):
                        for i2 in range(factor.dim(d2)):
                            prod = factor.multiply_basis(d1, i1, d2, i2)
                            terms = dict(
                                poly_from_coords(j, d1 + d2, prod,
                                                 negate=True))
                            key = (gen_at[(j, d1, i1)], gen_at[(j, d2, i2)])
                            terms[key] = F.add(terms.get(key, F.zero), F.one)
                            relations.append(NcPoly(terms))
        for d in range(1, N + 1):
            f1mat = self.f[1].matrix(d)
            f2mat = self.f[2].matrix(d)
            for k in range(self.b0.dim(d)):
                terms = {}
                for i in range(self.b1.dim(d)):
                    if f1mat[i][k] != 0:
                        terms[(gen_at[(1, d, i)],)] = f1mat[i][k]
                for i in range(self.b2.dim(d)):
                    if f2mat[i][k] != 0:
                        key = (gen_at[(2, d, i)],)
                        terms[key] = F.sub(terms.get(key, F.zero),
                                           f2mat[i][k])
                relations.append(NcPoly(terms))
        presentation = PresentedAlgebra(F, gens, relations)
        quotient = truncated_basis(presentation, N)
        return PoincareSeries(quotient.dims(), N)


class AmalgamElement:
    """Homogeneous combination of normal words."""

    __slots__ = ("diagram", "degree", "terms")

    def __init__(self, diagram, degree, terms):
        self.diagram = diagram
        self.degree = degree
        self.terms = dict((k, c) for k, c in terms.items() if c != 0)

    def is_zero(self):
        return not self.terms

    def add(self, other):
        F = self.diagram.field
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise InputError("cannot add elements of different degrees")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = F.add(out.get(k, F.zero), c)
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return AmalgamElement(self.diagram, self.degree, out)

    def scale(self, c):
        F = self.diagram.field
        return AmalgamElement(
            self.diagram, self.degree,
            dict((k, F.mul(c, x)) for k, x in self.terms.items()))

    def name(self):
        parts = []
        for key in sorted(self.terms, key=lambda k: (len(k[0]), k)):
            c = self.terms[key]
            w = self.diagram.word_name(key)
            parts.append(w if c == 1 else "%s*%s" % (c, w))
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other):
        return (isinstance(other, AmalgamElement)
                and self.degree == other.degree
                and self.terms == other.terms)


# ---------------------------------------------------------------------------
# iterated tensor spaces over the base (the Q_n / W_n bookkeeping)
# ---------------------------------------------------------------------------

def _proper_subshapes(shape):
    """All strictly smaller shapes in the componentwise order with 0 < 1,2."""
    n = len(shape)
    out = []
    for mask in range((1 << n) - 1):
        sub = tuple(shape[k] if (mask >> k) & 1 else 0 for k in range(n))
        out.append(sub)
    return out


class ShapeTensorSpace:
    """B_{i_1} (x)_{B0} ... (x)_{B0} B_{i_n} for a shape over {0, 1, 2}.

    Freeness turns the iterated tensor into a plain vector space with basis
    (t_1, ..., t_{n-1}, y): each t_k the unit or a transversal letter of the
    k-th factor, y a basis word of the last factor.  Keys are
    (prefix, y_deg, y_idx) with prefix entries None or a letter index.
    """

    def __init__(self, diagram, shape):
        self.D = diagram
        self.shape = tuple(shape)
        if not self.shape:
            raise InputError("shapes must be nonempty")
        self._algebras = tuple(
            (diagram.b0, diagram.b1, diagram.b2)[j] for j in self.shape)
        self._basis = {}
        self._index = {}
        N = diagram.cutoff
        prefixes = [((), 0)]
        for pos in range(len(self.shape) - 1):
            j = self.shape[pos]
            nxt = []
            for prefix, deg in prefixes:
                nxt.append((prefix + (None,), deg))
                if j != 0:
                    for mi, m in enumerate(diagram.letters[j]):
                        if deg + m.degree <= N:
                            nxt.append((prefix + (mi,), deg + m.degree))
            prefixes = nxt
        last = self._algebras[-1]

        def sort_key(key):
            prefix, ydeg, yidx = key
            return (tuple(-1 if t is None else t for t in prefix), ydeg, yidx)

        for d in range(N + 1):
            basis = []
            for prefix, deg in prefixes:
                rest = d - deg
                if rest < 0:
                    continue
                for yi in range(last.dim(rest)):
                    basis.append((prefix, rest, yi))
            basis.sort(key=sort_key)
            self._basis[d] = basis
            self._index[d] = dict((k, i) for i, k in enumerate(basis))

    def basis(self, d):
        return self._basis[d]

    def dim(self, d):
        return len(self._basis[d])

    # -- coordinates of pure tensors -----------------------------------------

    def _left_base(self, pos, adeg, avec, tail):
        """Left action of a base element on a partial tail at position pos."""
        D = self.D
        F = D.field
        n = len(self.shape)
        out = {}
        if adeg == 0:
            scale = avec[0]
            if scale == 0:
                return {}
            if scale == F.one:
                return dict(tail)
            return dict((k, F.mul(scale, c)) for k, c in tail.items())
        for key, c in tail.items():
            prefix, ydeg, yidx = key
            if pos == n - 1:
                algebra = self._algebras[-1]
                j = self.shape[-1]
                if j == 0:
                    img = avec
                else:
                    img = matvec(D.f[j].matrix(adeg), avec, F)
                ey = [F.one if k == yidx else F.zero
                      for k in range(algebra.dim(ydeg))]
                prod = algebra.mult(adeg, img, ydeg, ey)
                for k, x in enumerate(prod):
                    if x != 0:
                        nkey = (prefix, adeg + ydeg, k)
                        s = F.add(out.get(nkey, F.zero), F.mul(c, x))
                        _set(out, nkey, s)
                continue
            t = prefix[0]
            rest_tail = {(prefix[1:], ydeg, yidx): c}
            j = self.shape[pos]
            if t is None or j == 0:
                sub = self._left_base(pos + 1, adeg, avec, rest_tail)
                for (sp, sy, si), x in sub.items():
                    nkey = ((t,) + sp, sy, si)
                    s = F.add(out.get(nkey, F.zero), x)
                    _set(out, nkey, s)
                continue
            algebra = self._algebras[pos]
            m = D.letters[j][t]
            fmat = D.f[j].matrix(adeg)
            img = matvec(fmat, avec, F)
            am = algebra.mult(adeg, img, m.degree, m.vec)
            base, pairs = D.split(j, adeg + m.degree, am)
            if any(x != 0 for x in base):
                sub = self._left_base(pos + 1, adeg + m.degree, base,
                                      rest_tail)
                for (sp, sy, si), x in sub.items():
                    nkey = ((None,) + sp, sy, si)
                    s = F.add(out.get(nkey, F.zero), x)
                    _set(out, nkey, s)
            for mi, bk, x in pairs:
                eb = [F.one if k == bk else F.zero
                      for k in range(D.b0.dim(adeg + m.degree
                                              - D.letters[j][mi].degree))]
                sub = self._left_base(
                    pos + 1, adeg + m.degree - D.letters[j][mi].degree, eb,
                    rest_tail)
                for (sp, sy, si), y in sub.items():
                    nkey = ((mi,) + sp, sy, si)
                    s = F.add(out.get(nkey, F.zero), F.mul(x, y))
                    _set(out, nkey, s)
        return out

    def prepend(self, pos, xvec, xdeg, tail):
        """Coordinates of x (x) tail with x in the pos-th factor."""
        D = self.D
        F = D.field
        j = self.shape[pos]
        out = {}
        if j == 0:
            sub = self._left_base(pos + 1, xdeg, xvec, tail)
            for (sp, sy, si), x in sub.items():
                _accum(out, ((None,) + sp, sy, si), x, F)
            return out
        base, pairs = D.split(j, xdeg, xvec)
        if any(x != 0 for x in base):
            sub = self._left_base(pos + 1, xdeg, base, tail)
            for (sp, sy, si), x in sub.items():
                _accum(out, ((None,) + sp, sy, si), x, F)
        for mi, bk, c in pairs:
            bdeg = xdeg - D.letters[j][mi].degree
            eb = [F.one if k == bk else F.zero for k in range(D.b0.dim(bdeg))]
            sub = self._left_base(pos + 1, bdeg, eb, tail)
            for (sp, sy, si), x in sub.items():
                _accum(out, ((mi,) + sp, sy, si), F.mul(c, x), F)
        return out

    def inclusion_coords(self, subshape, key, d):
        """Dense coordinates in this space of a basis element of the
        subshape (componentwise below this shape)."""
        D = self.D
        F = D.field
        n = len(self.shape)
        prefix, ydeg, yidx = key
        last_sub = subshape[-1]
        last_amb = self.shape[-1]
        if last_sub == last_amb:
            tail = {((), ydeg, yidx): F.one}
        else:
            # base maps into the last ambient factor
            algebra = self._algebras[-1]
            fmat = D.f[last_amb].matrix(ydeg)
            img = [fmat[i][yidx] for i in range(algebra.dim(ydeg))]
            tail = {}
            for k, c in enumerate(img):
                if c != 0:
                    tail[((), ydeg, k)] = c
        for pos in range(n - 2, -1, -1):
            t = prefix[pos]
            js, ja = subshape[pos], self.shape[pos]
            algebra = self._algebras[pos]
            if ja == 0:
                xvec = [F.one]
                xdeg = 0
            elif js == ja and t is not None:
                m = D.letters[ja][t]
                xvec, xdeg = m.vec, m.degree
            else:
                # the unit of the ambient factor
                xvec = [F.one if k == algebra.basis_index(()) else F.zero
                        for k in range(algebra.dim(0))]
                xdeg = 0
            tail = self.prepend(pos, xvec, xdeg, tail)
        vec = [F.zero] * self.dim(d)
        for k, c in tail.items():
            vec[self._index[d][k]] = c
        return vec


def _set(out, key, value):
    if value == 0:
        out.pop(key, None)
    else:
        out[key] = value


def _accum(out, key, value, field):
    s = field.add(out.get(key, field.zero), value)
    _set(out, key, s)
