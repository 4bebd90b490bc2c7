"""Hopf structure on a truncated algebra, verified degreewise.

Coproduct and antipode are supplied on generators and extended: the
coproduct multiplicatively, the antipode antimultiplicatively with the
Koszul sign c(uv) = (-1)^{|u||v|} c(v)c(u).  The tensor square multiplies
with the usual graded rule (x1 (x) y1)(x2 (x) y2) =
(-1)^{|y1||x2|} x1x2 (x) y1y2.
"""

from .errors import InputError
from .ncpoly import poly_degree


class HopfData:
    """Coproduct and antipode on generators.

    coproduct: name -> list of (left, right) polynomial texts (or NcPoly),
    each pair homogeneous with degrees summing to the generator degree.
    antipode: name -> polynomial of the generator's degree.
    The augmentation is the projection to degree 0 and carries no data.
    """

    def __init__(self, coproduct, antipode):
        self.coproduct = dict(coproduct)
        self.antipode = dict(antipode)

    @classmethod
    def primitive(cls, algebra):
        """Every generator primitive, antipode the sign flip."""
        cop, anti = {}, {}
        for g in algebra.generators:
            cop[g.name] = [(g.name, "1"), ("1", g.name)]
            anti[g.name] = "-" + g.name
        return cls(cop, anti)


class HopfReport:
    def __init__(self):
        self.failures = []  # (axiom, degree, witness)

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def add(self, axiom, degree, witness):
        self.failures.append((axiom, degree, witness))


class _HopfChecker:
    def __init__(self, T, data):
        self.T = T
        self.F = T.field
        self.gens = T.algebra.generators
        self._psi_gen = {}
        self._psi_word = {(): {(0, 0, 0): self.F.one}}
        self._anti_gen = {}
        self._anti_word = {(): [self.F.one]}
        for i, g in enumerate(self.gens):
            if g.name not in data.coproduct:
                raise InputError("missing coproduct for generator %r"
                                 % g.name)
            if g.name not in data.antipode:
                raise InputError("missing antipode for generator %r" % g.name)
            self._psi_gen[i] = self._expand_coproduct(g, data.coproduct[g.name])
            img = data.antipode[g.name]
            if isinstance(img, str):
                img = T.algebra.parse(img)
            d = poly_degree(img, self.gens)
            if d is not None and d != g.degree:
                raise InputError("antipode image of %s has degree %s"
                                 % (g.name, d))
            self._anti_gen[i] = T.reduce_poly(img)[1] if d is not None \
                else [self.F.zero] * T.dim(g.degree)

    def _expand_coproduct(self, g, pairs):
        out = {}
        F = self.F
        for left, right in pairs:
            if isinstance(left, str):
                left = self.T.algebra.parse(left)
            if isinstance(right, str):
                right = self.T.algebra.parse(right)
            dl = poly_degree(left, self.gens)
            dr = poly_degree(right, self.gens)
            if left.is_zero() or right.is_zero():
                continue
            dl = dl or 0
            dr = dr or 0
            if dl + dr != g.degree:
                raise InputError(
                    "coproduct component of %s has degree %d, expected %d"
                    % (g.name, dl + dr, g.degree))
            _, lv = self.T.reduce_poly(left)
            _, rv = self.T.reduce_poly(right)
            for i, a in enumerate(lv):
                if a == 0:
                    continue
                for j, b in enumerate(rv):
                    if b == 0:
                        continue
                    key = (dl, i, j)
                    s = F.add(out.get(key, F.zero), F.mul(a, b))
                    if s == 0:
                        out.pop(key, None)
                    else:
                        out[key] = s
        return out

    # tensor-square elements: {(left_deg, left_idx, right_idx): coeff},
    # the total degree being carried by the caller

    def _t2_mult(self, x, dx, y, dy):
        F, T = self.F, self.T
        out = {}
        for (p1, i1, j1), c1 in x.items():
            q1 = dx - p1
            for (p2, i2, j2), c2 in y.items():
                q2 = dy - p2
                c = F.mul(c1, c2)
                if F.char != 2 and (q1 * p2) % 2:
                    c = F.neg(c)
                lv = T.multiply_basis(p1, i1, p2, i2)
                rv = T.multiply_basis(q1, j1, q2, j2)
                for k, a in enumerate(lv):
                    if a == 0:
                        continue
                    ca = F.mul(c, a)
                    for l, b in enumerate(rv):
                        if b == 0:
                            continue
                        key = (p1 + p2, k, l)
                        s = F.add(out.get(key, F.zero), F.mul(ca, b))
                        if s == 0:
                            out.pop(key, None)
                        else:
                            out[key] = s
        return out

    def psi_word(self, word):
        cached = self._psi_word.get(word)
        if cached is not None:
            return cached
        g = word[0]
        dg = self.gens[g].degree
        rest = word[1:]
        out = self._t2_mult(self._psi_gen[g], dg, self.psi_word(rest),
                            self.T.algebra.word_degree(rest))
        self._psi_word[word] = out
        return out

    def anti_word(self, word):
        """Antipode on a word: c(g w') = (-1)^{|g||w'|} c(w') c(g)."""
        cached = self._anti_word.get(word)
        if cached is not None:
            return cached
        F, T = self.F, self.T
        g = word[0]
        dg = self.gens[g].degree
        rest = word[1:]
        dr = T.algebra.word_degree(rest)
        v = T.mult(dr, self.anti_word(rest), dg, self._anti_gen[g])
        if F.char != 2 and (dg * dr) % 2:
            v = [F.neg(x) for x in v]
        self._anti_word[word] = v
        return v


def hopf_check(T, data):
    """Verify coassociativity, the counit law, the antipode convolution
    identity m(c (x) id) psi = unit . eps, and that the coproduct is an
    algebra map, degreewise up to the cutoff.  Failures carry witnesses."""
    chk = _HopfChecker(T, data)
    F = chk.F
    report = HopfReport()

    # coproduct respects the relations
    for rel, d in zip(T.algebra.relations, T.algebra.relation_degrees):
        if d > T.cutoff:
            continue
        acc = {}
        for w, c in rel.terms.items():
            for key, x in chk.psi_word(w).items():
                s = F.add(acc.get(key, F.zero), F.mul(c, x))
                if s == 0:
                    acc.pop(key, None)
                else:
                    acc[key] = s
        if acc:
            report.add("coproduct-algebra-map", d,
                       T.algebra.word_name(next(iter(rel.terms))))

    for d in range(T.cutoff + 1):
        for idx, w in enumerate(T.basis_words(d)):
            psi = chk.psi_word(w)
            # counit: both slices give back the element
            left = [F.zero] * T.dim(d)
            right = [F.zero] * T.dim(d)
            for (p, i, j), c in psi.items():
                if p == 0:
                    left[j] = F.add(left[j], c)
                if p == d:
                    right[i] = F.add(right[i], c)
            unit_vec = [F.one if k == idx else F.zero
                        for k in range(T.dim(d))]
            if left != unit_vec or right != unit_vec:
                report.add("counit", d, T.word_name(w))
            # coassociativity
            lhs, rhs = {}, {}
            for (p, i, j), c in psi.items():
                for (p2, i2, j2), c2 in chk.psi_word(
                        T.basis_words(p)[i]).items():
                    key = (p2, i2, p - p2, j2, j)
                    s = F.add(lhs.get(key, F.zero), F.mul(c, c2))
                    if s == 0:
                        lhs.pop(key, None)
                    else:
                        lhs[key] = s
                for (q2, i2, j2), c2 in chk.psi_word(
                        T.basis_words(d - p)[j]).items():
                    key = (p, i, q2, i2, j2)
                    s = F.add(rhs.get(key, F.zero), F.mul(c, c2))
                    if s == 0:
                        rhs.pop(key, None)
                    else:
                        rhs[key] = s
            if lhs != rhs:
                report.add("coassociativity", d, T.word_name(w))
            # antipode convolution: m(c (x) id) psi = unit . eps
            conv = [F.zero] * T.dim(d)
            for (p, i, j), c in psi.items():
                cw = chk.anti_word(T.basis_words(p)[i])
                ej = [F.one if k == j else F.zero
                      for k in range(T.dim(d - p))]
                prod = T.mult(p, cw, d - p, ej)
                for k, x in enumerate(prod):
                    if x != 0:
                        conv[k] = F.add(conv[k], F.mul(c, x))
            expect = ([F.one] if d == 0 else [F.zero] * T.dim(d))
            if conv != expect:
                report.add("antipode", d, T.word_name(w))
    return report
