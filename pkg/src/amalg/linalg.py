"""Exact dense linear algebra: row reduction over Q and F_p, integer Smith
normal form, graded carriers, and the coequalizer tensor-over-an-algebra.

Matrices are lists of rows.  Row reduction over F_2 uses integer bitmasks
internally; everything else is straightforward exact elimination.  Pivoting
is deterministic: leftmost nonzero column, smallest row index.
"""

from fractions import Fraction

from .errors import CheckFailure, InputError
from .fields import Field


# ---------------------------------------------------------------------------
# incremental echelon spans
# ---------------------------------------------------------------------------

class Echelon:
    """Incremental row-echelon accumulator over a fixed coordinate range.

    add() feeds one vector and reports whether the span grew.  Rows are kept
    reduced with leading coefficient 1, so membership tests are a single
    sweep.  F_2 vectors are packed into python ints.
    """

    def __init__(self, field, ncols):
        self.field = field
        self.ncols = ncols
        self._gf2 = field.char == 2
        self.rows = {}  # pivot column -> row

    @property
    def rank(self):
        return len(self.rows)

    def _pack(self, vec):
        r = 0
        for j, x in enumerate(vec):
            if x & 1:
                r |= 1 << j
        return r

    def add(self, vec):
        """Insert a vector; return True if it was independent of the span."""
        if self._gf2:
            r = self._pack(vec) if not isinstance(vec, int) else vec
            rows = self.rows
            while r:
                j = (r & -r).bit_length() - 1
                p = rows.get(j)
                if p is None:
                    rows[j] = r
                    return True
                r ^= p
            return False
        F = self.field
        v = list(vec)
        n = self.ncols
        j = 0
        while j < n:
            x = v[j]
            if x == 0:
                j += 1
                continue
            p = self.rows.get(j)
            if p is None:
                c = F.inv(x)
                self.rows[j] = [F.mul(c, y) for y in v]
                return True
            v = [F.sub(a, F.mul(x, b)) for a, b in zip(v, p)]
            j += 1
        return False

    def residual(self, vec):
        """Reduce a vector against the span; zero iff it is contained."""
        if self._gf2:
            r = self._pack(vec) if not isinstance(vec, int) else vec
            rows = self.rows
            while r:
                j = (r & -r).bit_length() - 1
                p = rows.get(j)
                if p is None:
                    break
                r ^= p
            return [(r >> j) & 1 for j in range(self.ncols)]
        F = self.field
        v = list(vec)
        for j in range(self.ncols):
            if v[j] == 0:
                continue
            p = self.rows.get(j)
            if p is not None:
                x = v[j]
                v = [F.sub(a, F.mul(x, b)) for a, b in zip(v, p)]
        return v

    def contains(self, vec):
        return all(x == 0 for x in self.residual(vec))


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------

def _rref_gf2(rows, ncols):
    packed = []
    for row in rows:
        r = 0
        for j, x in enumerate(row):
            if x & 1:
                r |= 1 << j
        packed.append(r)
    table = {}
    for r in packed:
        while r:
            j = (r & -r).bit_length() - 1
            p = table.get(j)
            if p is None:
                table[j] = r
                break
            r ^= p
    pivots = sorted(table)
    # back substitution, from the rightmost pivot leftwards
    for p in reversed(pivots):
        r = table[p]
        rest = r & ~((1 << (p + 1)) - 1)
        while rest:
            q = (rest & -rest).bit_length() - 1
            if q in table:
                r ^= table[q]
            rest &= rest - 1
            rest |= r & ~((1 << (q + 1)) - 1)
            rest &= ~((1 << (q + 1)) - 1)
        table[p] = r
    out = []
    for p in pivots:
        r = table[p]
        out.append([(r >> j) & 1 for j in range(ncols)])
    return len(pivots), pivots, out


def rref(rows, ncols, field):
    """Reduced row echelon form.  Returns (rank, pivot_cols, rref_rows)."""
    if field.char == 2:
        return _rref_gf2(rows, ncols)
    F = field
    work = [list(r) for r in rows]
    pivots = []
    out = []
    for j in range(ncols):
        src = None
        for i, row in enumerate(work):
            if row[j] != 0:
                src = i
                break
        if src is None:
            continue
        row = work.pop(src)
        c = F.inv(row[j])
        row = [F.mul(c, x) for x in row]
        for other in work:
            x = other[j]
            if x != 0:
                for k in range(j, ncols):
                    other[k] = F.sub(other[k], F.mul(x, row[k]))
        for other in out:
            x = other[j]
            if x != 0:
                for k in range(j, ncols):
                    other[k] = F.sub(other[k], F.mul(x, row[k]))
        out.append(row)
        pivots.append(j)
        if not work:
            break
    return len(pivots), pivots, out


def row_reduce(rows, ncols, field):
    """Rank, kernel basis and image basis of a matrix acting on columns.

    Returns (rank, kernel, image): kernel vectors v satisfy M v = 0 exactly;
    image is the list of pivot columns of M.
    """
    rank, pivots, red = rref(rows, ncols, field)
    pivot_set = dict((p, i) for i, p in enumerate(pivots))
    kernel = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [field.zero] * ncols
        v[j] = field.one
        for p, i in pivot_set.items():
            v[p] = field.neg(red[i][j])
        kernel.append(v)
    image = []
    for p in pivots:
        image.append([row[p] for row in rows])
    return rank, kernel, image


def echelon_rewrites(sparse_rows, ncols, field):
    """Full reduction of relation rows given as {column: coeff} dicts.

    Returns (pivots, rewrites) where each pivot column p satisfies
    x_p = sum(coeff * x_c for (c, coeff) in rewrites[p]) over non-pivot
    columns c.  Column order is the given one.
    """
    if field.char == 2:
        rows = []
        for row in sparse_rows:
            r = 0
            for j, x in row.items():
                if x & 1:
                    r |= 1 << j
            rows.append(r)
        rank, pivots, red = _rref_gf2_packed(rows)
        rewrites = {}
        for p, r in zip(pivots, red):
            r ^= 1 << p
            terms = []
            while r:
                j = (r & -r).bit_length() - 1
                terms.append((j, 1))
                r &= r - 1
            rewrites[p] = terms
        return pivots, rewrites
    F = field
    table = {}  # pivot col -> dict row
    for row in sparse_rows:
        v = dict((j, x) for j, x in row.items() if x != 0)
        while v:
            j = min(v)
            p = table.get(j)
            if p is None:
                c = F.inv(v[j])
                table[j] = dict((k, F.mul(c, x)) for k, x in v.items())
                break
            x = v.pop(j)
            for k, y in p.items():
                if k == j:
                    continue
                new = F.sub(v.get(k, F.zero), F.mul(x, y))
                if new == 0:
                    v.pop(k, None)
                else:
                    v[k] = new
    pivots = sorted(table)
    for p in reversed(pivots):
        v = table[p]
        changed = True
        while changed:
            changed = False
            for k in sorted(v):
                if k != p and k in table:
                    x = v.pop(k)
                    for kk, y in table[k].items():
                        if kk == k:
                            continue
                        new = F.sub(v.get(kk, F.zero), F.mul(x, y))
                        if new == 0:
                            v.pop(kk, None)
                        else:
                            v[kk] = new
                    changed = True
                    break
    rewrites = {}
    for p in pivots:
        terms = [(k, F.neg(x)) for k, x in sorted(table[p].items()) if k != p]
        rewrites[p] = terms
    return pivots, rewrites


def _rref_gf2_packed(rows):
    table = {}
    for r in rows:
        while r:
            j = (r & -r).bit_length() - 1
            p = table.get(j)
            if p is None:
                table[j] = r
                break
            r ^= p
    pivots = sorted(table)
    for p in reversed(pivots):
        r = table[p]
        rest = r & ~((1 << (p + 1)) - 1)
        while rest:
            q = (rest & -rest).bit_length() - 1
            if q in table and q != p:
                r ^= table[q]
            rest &= ~((1 << (q + 1)) - 1)
            rest |= r & ~((1 << (q + 1)) - 1)
        table[p] = r
    return len(pivots), pivots, [table[p] for p in pivots]


def matvec(rows, vec, field):
    out = []
    for row in rows:
        s = field.zero
        for a, b in zip(row, vec):
            if a != 0 and b != 0:
                s = field.add(s, field.mul(a, b))
        out.append(s)
    return out


def invert_columns(columns, field):
    """Inverse of the square matrix whose j-th column is columns[j].

    Returns the inverse as a list of rows, so that coordinates of x in the
    column basis are matvec(inverse, x).  Raises CheckFailure if singular.
    """
    n = len(columns)
    if n == 0:
        return []
    if any(len(c) != n for c in columns):
        raise InputError("invert_columns needs a square system")
    aug = []
    for i in range(n):
        row = [columns[j][i] for j in range(n)]
        row += [field.one if k == i else field.zero for k in range(n)]
        aug.append(row)
    rank, pivots, red = rref(aug, 2 * n, field)
    if rank < n or pivots != list(range(n)):
        raise CheckFailure("singular matrix: expected an invertible system")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# integers: Smith normal form and finitely generated abelian groups
# ---------------------------------------------------------------------------

class SmithNormalForm:
    """U * M * V = diag(factors), with all four transforms integral."""

    def __init__(self, factors, U, V, Uinv, Vinv, shape):
        self.factors = factors
        self.rank = len(factors)
        self.U = U
        self.V = V
        self.Uinv = Uinv
        self.Vinv = Vinv
        self.shape = shape


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(M, nrows=None, ncols=None):
    """Smith normal form of an integer matrix (list of rows).

    Returns a SmithNormalForm with invariant factors d_1 | d_2 | ... >= 1.
    """
    if nrows is None:
        nrows = len(M)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    A = [[int(x) for x in row] for row in M]
    for row in A:
        if len(row) != ncols:
            raise InputError("ragged integer matrix")
    m, n = nrows, ncols
    U, Uinv = _identity(m), _identity(m)
    V, Vinv = _identity(n), _identity(n)

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]
        for r in Uinv:
            r[i], r[k] = r[k], r[i]

    def swap_cols(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]
        Vinv[j], Vinv[k] = Vinv[k], Vinv[j]

    def add_row(i, k, c):
        # row_i += c * row_k
        A[i] = [a + c * b for a, b in zip(A[i], A[k])]
        U[i] = [a + c * b for a, b in zip(U[i], U[k])]
        for r in Uinv:
            r[k] -= c * r[i]

    def add_col(j, k, c):
        # col_j += c * col_k
        for r in A:
            r[j] += c * r[k]
        for r in V:
            r[j] += c * r[k]
        Vinv[k] = [a - c * b for a, b in zip(Vinv[k], Vinv[j])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = abs(A[i][j])
                if a and (best is None or a < best):
                    best = a
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        if A[t][t] < 0:
            negate_row(t)
        while True:
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)  # strictly smaller remainder
                        moved = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        moved = True
            if A[t][t] < 0:
                negate_row(t)
            if moved:
                continue
            if any(A[i][t] for i in range(t + 1, m)):
                continue
            if any(A[t][j] for j in range(t + 1, n)):
                continue
            # enforce divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        t += 1

    factors = [A[i][i] for i in range(min(m, n)) if A[i][i] != 0]
    return SmithNormalForm(factors, U, V, Uinv, Vinv, (m, n))


def z_quotient(ngens, rows):
    """Z^ngens modulo the row span: (free rank, invariant torsion tuple)."""
    if not rows or ngens == 0:
        return ngens, ()
    snf = smith_normal_form(rows, len(rows), ngens)
    torsion = tuple(d for d in snf.factors if d > 1)
    return ngens - snf.rank, torsion


def z_kernel_basis(rows, ngens):
    """Basis of {v in Z^k : v * M = 0} for M with k rows of width ngens."""
    k = len(rows)
    if k == 0:
        return []
    snf = smith_normal_form(rows, k, ngens)
    return [snf.U[i] for i in range(snf.rank, k)]


def z_rowspan_basis(rows, ngens):
    """Basis of the integer row span."""
    if not rows:
        return []
    snf = smith_normal_form(rows, len(rows), ngens)
    basis = []
    for i in range(snf.rank):
        d = snf.factors[i]
        basis.append([d * x for x in snf.Vinv[i]])
    return basis


def z_in_rowspan(rows, vec):
    """Does vec lie in the integer row span of rows?"""
    if all(x == 0 for x in vec):
        return True
    if not rows:
        return False
    n = len(vec)
    snf = smith_normal_form(rows, len(rows), n)
    y = [sum(vec[i] * snf.V[i][j] for i in range(n)) for j in range(n)]
    for j in range(n):
        if j < snf.rank:
            if y[j] % snf.factors[j]:
                return False
        elif y[j]:
            return False
    return True


def z_solve_in_basis(basis_rows, vec):
    """Integer coordinates of vec in a lattice basis, or None."""
    k = len(basis_rows)
    if k == 0:
        return [] if all(x == 0 for x in vec) else None
    n = len(vec)
    aug = []
    for j in range(n):
        aug.append([Fraction(basis_rows[i][j]) for i in range(k)]
                   + [Fraction(vec[j])])
    from .fields import QQ
    rank, pivots, red = rref(aug, k + 1, QQ)
    if k in pivots:
        return None  # inconsistent
    coords = [Fraction(0)] * k
    for p, row in zip(pivots, red):
        coords[p] = row[k]
    if any(c.denominator != 1 for c in coords):
        return None
    # verify (the system may be underdetermined only if basis is not a basis)
    for j in range(n):
        if sum(int(coords[i]) * basis_rows[i][j] for i in range(k)) != vec[j]:
            return None
    return [int(c) for c in coords]


def z_map_kernel(m, rels_src, n, rels_tgt, matrix):
    """Kernel of the map Z^m/<rels_src> -> Z^n/<rels_tgt>, x -> x*matrix.

    The sources are row conventions: rels are lists of length-m (resp. -n)
    rows.  Returns (free_rank, torsion, gens) where gens is a list of
    (order, row in Z^m) in Smith form; order 0 means infinite.
    """
    for r in rels_src:
        img = [sum(r[i] * matrix[i][j] for i in range(m)) for j in range(n)]
        if not z_in_rowspan(rels_tgt, img):
            raise InputError("map not well defined: a source relation "
                             "does not land in the target relations")
    stacked = [list(matrix[i]) for i in range(m)] + \
              [[-x for x in r] for r in rels_tgt]
    kern = z_kernel_basis(stacked, n)
    gens_L = [row[:m] for row in kern]
    basis = z_rowspan_basis(gens_L, m) if gens_L else []
    k = len(basis)
    if k == 0:
        return 0, (), []
    coords = []
    for r in rels_src:
        c = z_solve_in_basis(basis, list(r))
        if c is None:
            raise CheckFailure("relation escaped the kernel lattice")
        coords.append(c)
    if not coords:
        gens = [(0, basis[i]) for i in range(k)]
        return k, (), gens
    snf = smith_normal_form(coords, len(coords), k)
    free = k - snf.rank
    torsion = tuple(d for d in snf.factors if d > 1)
    gens = []
    for i in range(k):
        order = snf.factors[i] if i < snf.rank else 0
        if order == 1:
            continue
        row = [sum(snf.Vinv[i][t] * basis[t][j] for t in range(k))
               for j in range(m)]
        gens.append((order, row))
    return free, torsion, gens


def z_map_cokernel(n, rels_tgt, matrix):
    rows = [list(r) for r in matrix] + [list(r) for r in rels_tgt]
    return z_quotient(n, rows)


def normalize_torsion(values):
    """Collapse arbitrary cyclic orders into an invariant-factor chain."""
    return _chain_from_factorizations(values)


def _factorize(v):
    out = {}
    d = 2
    while d * d <= v:
        while v % d == 0:
            out[d] = out.get(d, 0) + 1
            v //= d
        d += 1
    if v > 1:
        out[v] = out.get(v, 0) + 1
    return out


def _chain_from_factorizations(values):
    per_prime = {}
    for v in values:
        if v <= 1:
            continue
        for p, e in _factorize(int(v)).items():
            per_prime.setdefault(p, []).append(e)
    if not per_prime:
        return ()
    for p in per_prime:
        per_prime[p].sort(reverse=True)
    length = max(len(es) for es in per_prime.values())
    chain = []
    for i in range(length):
        f = 1
        for p, es in per_prime.items():
            if i < len(es):
                f *= p ** es[i]
        chain.append(f)
    chain.reverse()
    return tuple(chain)


# ---------------------------------------------------------------------------
# graded carriers
# ---------------------------------------------------------------------------

class GradedVectorSpace:
    """Degreewise finite dimensional vector space, degrees 0..truncation.

    Degrees above the truncation are undefined, not zero; dim() raises there.
    """

    def __init__(self, field, dims, truncation, labels=None):
        self.field = field
        self.truncation = truncation
        self.dims = {}
        for d, k in dims.items():
            if not (0 <= d <= truncation):
                raise InputError("degree %d outside 0..%d" % (d, truncation))
            if k < 0:
                raise InputError("negative dimension")
            if k:
                self.dims[d] = k
        self.labels = labels or {}

    def dim(self, d):
        if not (0 <= d <= self.truncation):
            raise InputError(
                "degree %d is outside the truncation range 0..%d"
                % (d, self.truncation))
        return self.dims.get(d, 0)

    def dim_vector(self):
        return [self.dim(d) for d in range(self.truncation + 1)]

    def __eq__(self, other):
        return (isinstance(other, GradedVectorSpace)
                and self.truncation == other.truncation
                and self.dims == other.dims)

    def __repr__(self):
        return "GradedVectorSpace(%r)" % (self.dim_vector(),)


class GradedMap:
    """Degreewise linear map; matrix at degree d is dim_target x dim_source."""

    def __init__(self, source, target, matrices):
        if source.truncation != target.truncation:
            raise InputError("source and target truncations differ")
        if source.field != target.field:
            raise InputError("source and target fields differ")
        self.source = source
        self.target = target
        self.field = source.field
        self.matrices = {}
        for d, rows in matrices.items():
            nr, nc = target.dim(d), source.dim(d)
            rows = [list(r) for r in rows]
            if len(rows) != nr or any(len(r) != nc for r in rows):
                raise InputError("matrix shape mismatch at degree %d" % d)
            self.matrices[d] = rows

    def matrix(self, d):
        nr, nc = self.target.dim(d), self.source.dim(d)
        return self.matrices.get(
            d, [[self.field.zero] * nc for _ in range(nr)])


class GradedAbelianGroup:
    """Degreewise finitely generated abelian group: free rank plus an
    invariant-factor torsion chain per degree."""

    def __init__(self, components, truncation):
        self.truncation = truncation
        self.components = {}
        for d, (rank, torsion) in components.items():
            torsion = tuple(int(t) for t in torsion)
            if not (0 <= d <= truncation):
                raise InputError("degree %d outside 0..%d" % (d, truncation))
            for a, b in zip(torsion, torsion[1:]):
                if b % a:
                    raise InputError("torsion %r is not a divisibility chain"
                                     % (torsion,))
            if any(t < 2 for t in torsion):
                raise InputError("torsion coefficients must be >= 2")
            if rank or torsion:
                self.components[d] = (rank, torsion)

    def rank(self, d):
        return self.piece(d)[0]

    def torsion(self, d):
        return self.piece(d)[1]

    def piece(self, d):
        if not (0 <= d <= self.truncation):
            raise InputError(
                "degree %d is outside the truncation range 0..%d"
                % (d, self.truncation))
        return self.components.get(d, (0, ()))

    def describe(self, d):
        """Human form: 'Z^2 + (Z/2)^3', runs of length <= 2 stay unrolled."""
        rank, torsion = self.piece(d)
        parts = []
        if rank == 1:
            parts.append("Z")
        elif rank > 1:
            parts.append("Z^%d" % rank)
        i = 0
        while i < len(torsion):
            j = i
            while j < len(torsion) and torsion[j] == torsion[i]:
                j += 1
            count = j - i
            if count <= 2:
                parts.extend(["Z/%d" % torsion[i]] * count)
            else:
                parts.append("(Z/%d)^%d" % (torsion[i], count))
            i = j
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other):
        return (isinstance(other, GradedAbelianGroup)
                and self.truncation == other.truncation
                and self.components == other.components)

    def __repr__(self):
        return "GradedAbelianGroup(%r)" % (self.components,)


class ZGradedMap:
    """Degreewise map of presented finitely generated abelian groups.

    pieces[d] = (m, rels_src, n, rels_tgt, matrix) in row convention:
    generators are rows, the map sends x to x*matrix.
    """

    def __init__(self, pieces, truncation):
        self.pieces = dict(pieces)
        self.truncation = truncation


def kernel_cokernel(f):
    """Degreewise kernel and cokernel of a graded map.

    Field maps give a pair of GradedVectorSpaces; integer maps a pair of
    GradedAbelianGroups (torsion through Smith normal form).
    """
    if isinstance(f, GradedMap):
        ker, cok = {}, {}
        for d in range(f.source.truncation + 1):
            nc, nr = f.source.dim(d), f.target.dim(d)
            rank, _, _ = rref(f.matrix(d), nc, f.field) if nr else (0, [], [])
            ker[d] = nc - rank
            cok[d] = nr - rank
        N = f.source.truncation
        return (GradedVectorSpace(f.field, ker, N),
                GradedVectorSpace(f.field, cok, N))
    if isinstance(f, ZGradedMap):
        ker, cok = {}, {}
        for d, (m, rs, n, rt, mat) in f.pieces.items():
            free, tors, _ = z_map_kernel(m, rs, n, rt, mat)
            ker[d] = (free, tors)
            cok[d] = z_map_cokernel(n, rt, mat)
        return (GradedAbelianGroup(ker, f.truncation),
                GradedAbelianGroup(cok, f.truncation))
    raise InputError("kernel_cokernel expects a GradedMap or ZGradedMap")


# ---------------------------------------------------------------------------
# tensor product over an algebra, as a coequalizer
# ---------------------------------------------------------------------------

class ModuleData:
    """A graded module over a truncated algebra, given by its action.

    action(v_deg, v_idx, a_deg, a_idx) returns the coordinates of the acted
    basis vector in degree v_deg + a_deg.  side is 'right' for v*a and
    'left' for a*w.
    """

    def __init__(self, space, action, side):
        if side not in ("left", "right"):
            raise InputError("side must be 'left' or 'right'")
        self.space = space
        self.action = action
        self.side = side


def trivial_module(field, truncation, side):
    """The ground field as a module through the augmentation."""
    space = GradedVectorSpace(field, {0: 1}, truncation)

    def action(v_deg, v_idx, a_deg, a_idx):
        return [field.zero] * (1 if v_deg + a_deg == 0 else 0)

    return ModuleData(space, action, side)


def _spot_check_associativity(mod, algebra, N, cap=120):
    """(v.a).b == v.(ab) on a deterministic sample of triples."""
    done = 0
    for dv in range(N + 1):
        for i in range(mod.space.dim(dv)):
            for da in range(1, N - dv + 1):
                for ia in range(algebra.dim(da)):
                    for db in range(1, N - dv - da + 1):
                        for ib in range(algebra.dim(db)):
                            if done >= cap:
                                return
                            done += 1
                            _check_triple(mod, algebra, dv, i, da, ia, db, ib)


def _check_triple(mod, algebra, dv, i, da, ia, db, ib):
    F = algebra.field
    if mod.side == "right":
        va = mod.action(dv, i, da, ia)
        lhs = [F.zero] * mod.space.dim(dv + da + db)
        for k, c in enumerate(va):
            if c != 0:
                step = mod.action(dv + da, k, db, ib)
                lhs = [F.add(x, F.mul(c, y)) for x, y in zip(lhs, step)]
        ab = algebra.multiply_basis(da, ia, db, ib)
        rhs = [F.zero] * mod.space.dim(dv + da + db)
        for k, c in enumerate(ab):
            if c != 0:
                step = mod.action(dv, i, da + db, k)
                rhs = [F.add(x, F.mul(c, y)) for x, y in zip(rhs, step)]
    else:
        # left module: a.(b.w) == (ab).w
        bw = mod.action(dv, i, db, ib)
        lhs = [F.zero] * mod.space.dim(dv + da + db)
        for k, c in enumerate(bw):
            if c != 0:
                step = mod.action(dv + db, k, da, ia)
                lhs = [F.add(x, F.mul(c, y)) for x, y in zip(lhs, step)]
        ab = algebra.multiply_basis(da, ia, db, ib)
        rhs = [F.zero] * mod.space.dim(dv + da + db)
        for k, c in enumerate(ab):
            if c != 0:
                step = mod.action(dv, i, da + db, k)
                rhs = [F.add(x, F.mul(c, y)) for x, y in zip(rhs, step)]
    if lhs != rhs:
        raise InputError(
            "module action inconsistent with the algebra multiplication "
            "(associativity fails at degrees %d,%d,%d)" % (dv, da, db))


def tensor_over_algebra(V, A, W, N, spot_check=True):
    """Degreewise V (x)_A W as the coequalizer of the two action maps.

    V is a right module, W a left module over the truncated algebra A; the
    degree-0 part of A acts through the unit.  Returns a GradedVectorSpace
    of dimensions for degrees 0..N.
    """
    field = V.space.field
    if V.side != "right" or W.side != "left":
        raise InputError("tensor_over_algebra needs (right, algebra, left)")
    if spot_check:
        _spot_check_associativity(V, A, N)
        _spot_check_associativity(W, A, N)
    dims = {}
    for d in range(N + 1):
        pairs = []
        offset = {}
        for dv in range(d + 1):
            for i in range(V.space.dim(dv)):
                for j in range(W.space.dim(d - dv)):
                    offset[(dv, i, j)] = len(pairs)
                    pairs.append((dv, i, j))
        ncols = len(pairs)
        span = Echelon(field, ncols)
        rank = 0
        for da in range(1, d + 1):
            for ia in range(A.dim(da)):
                for dv in range(d - da + 1):
                    dw = d - da - dv
                    for i in range(V.space.dim(dv)):
                        va = V.action(dv, i, da, ia)
                        for j in range(W.space.dim(dw)):
                            aw = W.action(dw, j, da, ia)
                            row = [field.zero] * ncols
                            for k, c in enumerate(va):
                                if c != 0:
                                    row[offset[(dv + da, k, j)]] = c
                            for k, c in enumerate(aw):
                                if c != 0:
                                    pos = offset[(dv, i, k)]
                                    row[pos] = field.sub(row[pos], c)
                            if span.add(row):
                                rank += 1
        dims[d] = ncols - rank
    return GradedVectorSpace(field, dims, N)
