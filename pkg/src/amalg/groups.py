"""Amalgamated free products of finite groups at desk scale: normal forms,
word reduction, the length filtration, growth counting, and exhaustive
verification of the normal-form bijection.

A normal word is an alternating sequence of nontrivial coset
representatives (factor tags alternate, no representative is the identity)
followed by a tail in the base group; the tail stays rightmost.
"""

from .errors import CheckFailure, InputError


class FiniteGroup:
    """Multiplication table with identity and inverse lookups.

    Group axioms are verified at construction: the full triple check for
    order <= 64, a fixed deterministic sample above that.
    """

    def __init__(self, table, name="G"):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.name = name
        n = self.order
        if n == 0:
            raise InputError("empty multiplication table")
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise InputError("table entries must index group elements")
        identity = None
        for e in range(n):
            if all(self.table[e][x] == x == self.table[x][e]
                   for x in range(n)):
                identity = e
                break
        if identity is None:
            raise InputError("no identity element in the table")
        self.identity = identity
        self.inverse = [None] * n
        for x in range(n):
            for y in range(n):
                if self.table[x][y] == identity:
                    self.inverse[x] = y
                    break
            if self.inverse[x] is None or \
                    self.table[self.inverse[x]][x] != identity:
                raise InputError("element %d has no two-sided inverse" % x)
        self._check_associativity()

    def _check_associativity(self):
        n = self.order
        if n <= 64:
            triples = ((a, b, c) for a in range(n) for b in range(n)
                       for c in range(n))
        else:
            import random
            rng = random.Random(0xA5A5)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(20000))
        for a, b, c in triples:
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise InputError(
                    "non-associative table: witness triple (%d, %d, %d)"
                    % (a, b, c))

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def __len__(self):
        return self.order

    def __repr__(self):
        return "FiniteGroup(%s, order=%d)" % (self.name, self.order)

    @classmethod
    def cyclic(cls, n):
        if n < 1:
            raise InputError("cyclic group order must be >= 1")
        return cls([[(i + j) % n for j in range(n)] for i in range(n)],
                   name="Z/%d" % n)

    @classmethod
    def trivial(cls):
        return cls([[0]], name="1")

    @classmethod
    def direct_product(cls, G, H):
        n, m = G.order, H.order
        table = [[0] * (n * m) for _ in range(n * m)]
        for a in range(n):
            for b in range(m):
                for c in range(n):
                    for d in range(m):
                        table[a * m + b][c * m + d] = \
                            G.table[a][c] * m + H.table[b][d]
        return cls(table, name="%sx%s" % (G.name, H.name))


class GroupHom:
    """Homomorphism given by an image array; checked on all pairs."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = list(images)
        if len(self.images) != source.order:
            raise InputError("image array length mismatch")
        for x in range(source.order):
            for y in range(source.order):
                if self.images[source.mul(x, y)] != \
                        target.mul(self.images[x], self.images[y]):
                    raise InputError(
                        "not a homomorphism: fails at (%d, %d)" % (x, y))

    def is_injective(self):
        return len(set(self.images)) == self.source.order

    def __call__(self, x):
        return self.images[x]


class Transversal:
    """Coset representatives for a subgroup: the identity represents the
    subgroup itself, every other coset its smallest element index."""

    def __init__(self, group, subgroup):
        self.group = group
        sub = sorted(set(subgroup))
        for x in sub:
            for y in sub:
                if group.mul(x, y) not in set(sub):
                    raise InputError(
                        "subgroup is not closed under the product")
        if group.identity not in sub:
            raise InputError("subgroup misses the identity")
        self.subgroup = sub
        subset = set(sub)
        assigned = {}
        reps = []
        # force the identity as the representative of the subgroup coset
        for h in sub:
            assigned[h] = group.identity
        reps.append(group.identity)
        for g in range(group.order):
            if g in assigned:
                continue
            reps.append(g)
            for h in sub:
                assigned[group.mul(g, h)] = g
        self.representatives = reps
        self.coset_rep = [assigned[g] for g in range(group.order)]

    def decompose(self, x):
        """x = rep * h with h in the subgroup; returns (rep, h)."""
        r = self.coset_rep[x]
        return r, self.group.mul(self.group.inv(r), x)


def build_group(spec):
    """Constructors: ('cyclic', n), ('product', specA, specB),
    ('table', rows), or a FiniteGroup passed through."""
    if isinstance(spec, FiniteGroup):
        return spec
    kind = spec[0]
    if kind == "cyclic":
        return FiniteGroup.cyclic(spec[1])
    if kind == "trivial":
        return FiniteGroup.trivial()
    if kind == "product":
        return FiniteGroup.direct_product(build_group(spec[1]),
                                          build_group(spec[2]))
    if kind == "table":
        return FiniteGroup(spec[1])
    raise InputError("unknown group spec %r" % (kind,))


class GroupAmalgam:
    """Two finite factors glued along verified monomorphisms from a base."""

    def __init__(self, base, left, right, f1, f2, name="P"):
        self.base = base
        self.factors = {1: left, 2: right}
        self.maps = {1: f1, 2: f2}
        self.name = name
        for j in (1, 2):
            f = self.maps[j]
            if f.source is not base or f.target is not self.factors[j]:
                raise InputError("map %d does not match the diagram" % j)
            if not f.is_injective():
                raise InputError(
                    "map into factor %d is not injective; the normal form "
                    "requires monomorphisms" % j)
        self.transversals = {}
        self.finv = {}
        for j in (1, 2):
            f = self.maps[j]
            self.transversals[j] = Transversal(self.factors[j], f.images)
            self.finv[j] = dict((f.images[h], h) for h in range(base.order))

    # -- normal forms -------------------------------------------------------
    # a normal word is (letters, tail): letters a tuple of (factor, element)
    # with nonidentity coset representatives and alternating factors

    def identity_word(self):
        return ((), self.base.identity)

    def push(self, state, j, x):
        """Multiply a normal word on the right by x in factor j."""
        letters, tail = state
        G = self.factors[j]
        y = G.mul(self.maps[j](tail), x)
        if letters and letters[-1][0] == j:
            y = G.mul(letters[-1][1], y)
            letters = letters[:-1]
        if y in self.finv[j]:
            return (letters, self.finv[j][y])
        r, h = self.transversals[j].decompose(y)
        return (letters + ((j, r),), self.finv[j][h])

    def reduce(self, word):
        """Left-to-right reduction of a raw word [(factor, element), ...]."""
        state = self.identity_word()
        for j, x in word:
            if j not in (1, 2):
                raise InputError("letters must come from factor 1 or 2")
            state = self.push(state, j, x)
        return state

    def prepend(self, j, x, state):
        """Multiply a normal word on the left by x in factor j."""
        letters, tail = state
        if letters and letters[0][0] == j:
            z = self.factors[j].mul(x, letters[0][1])
            return self._prepend_reduced(j, z, (letters[1:], tail))
        return self._prepend_reduced(j, x, state)

    def _prepend_reduced(self, j, y, state):
        if y in self.finv[j]:
            return self._prepend_base(self.finv[j][y], state)
        r, h = self.transversals[j].decompose(y)
        sub = self._prepend_base(self.finv[j][h], state)
        return (((j, r),) + sub[0], sub[1])

    def _prepend_base(self, a, state):
        letters, tail = state
        if not letters:
            return ((), self.base.mul(a, tail))
        j, r = letters[0]
        y = self.factors[j].mul(self.maps[j](a), r)
        # f(a) r stays outside the subgroup, so the representative survives
        rr, h = self.transversals[j].decompose(y)
        sub = self._prepend_base(self.finv[j][h], (letters[1:], tail))
        return (((j, rr),) + sub[0], sub[1])

    def reduce_right_to_left(self, word):
        state = self.identity_word()
        for j, x in reversed(word):
            state = self.prepend(j, x, state)
        return state

    def multiply(self, u, v):
        """Product of normal words, again in normal form."""
        letters, tail = u
        state = (letters, tail)
        for j, r in v[0]:
            state = self.push(state, j, r)
        return (state[0], self.base.mul(state[1], v[1]))

    def inverse(self, u):
        letters, tail = u
        raw = []
        inv_tail = self.base.inv(tail)
        raw.append((1, self.maps[1](inv_tail)))
        for j, r in reversed(letters):
            raw.append((j, self.factors[j].inv(r)))
        return self.reduce(raw)

    # -- counting ------------------------------------------------------------

    def letter_counts(self):
        return dict((j, len(self.transversals[j].representatives) - 1)
                    for j in (1, 2))

    def alternating_word_counts(self, n_max):
        """Number of alternating representative words of each length."""
        counts = self.letter_counts()
        out = [1]
        ending = {1: 0, 2: 0}
        for n in range(1, n_max + 1):
            new = {}
            if n == 1:
                new[1] = counts[1]
                new[2] = counts[2]
            else:
                new[1] = ending[2] * counts[1]
                new[2] = ending[1] * counts[2]
            ending = new
            out.append(new[1] + new[2])
        return out

    def filtration_sizes(self, n_max):
        """|P_0|, ..., |P_n up to n_max|: base order times the cumulative
        alternating word count."""
        words = self.alternating_word_counts(n_max)
        sizes = []
        total = 0
        for n in range(n_max + 1):
            total += words[n]
            sizes.append(self.base.order * total)
        return sizes

    def filtration_states(self, n_max):
        """The actual filtration sets, by breadth-first products."""
        frontier = {self.identity_word()}
        seen = [frozenset(frontier)]
        for _ in range(n_max):
            nxt = set(frontier)
            for state in frontier:
                for j in (1, 2):
                    for x in range(self.factors[j].order):
                        nxt.add(self.push(state, j, x))
            frontier = nxt
            seen.append(frozenset(frontier))
        return seen

    def normal_form_bijection_check(self, length, confluence_samples=0,
                                    seed=20240301):
        """Exhaustively verify the normal-form bijection through the given
        syllable length.

        Checks that (a) the count of distinct normal forms of words of
        length <= n matches the closed transversal formula for every
        n <= length, (b) distinct normal forms of length <= length//2 never
        collide under multiplication-based equality u * v^{-1}, and
        optionally (c) two reduction strategies agree on random raw words.
        Returns the verified filtration sizes.
        """
        raw_count = (self.factors[1].order + self.factors[2].order) ** length
        if raw_count > 10**7:
            raise InputError("enumeration exceeds the 10^7 word guard")
        sizes = self.filtration_sizes(length)
        states = self.filtration_states(length)
        for n, expect in enumerate(sizes):
            if len(states[n]) != expect:
                raise CheckFailure(
                    "filtration size at n=%d is %d, formula says %d"
                    % (n, len(states[n]), expect))
        half = states[length // 2]
        for u in half:
            for v in half:
                if u == v:
                    continue
                if self.multiply(u, self.inverse(v)) == self.identity_word():
                    raise CheckFailure(
                        "normal forms collide: %r and %r" % (u, v))
        if confluence_samples:
            import random
            rng = random.Random(seed)
            for _ in range(confluence_samples):
                n = rng.randint(0, length)
                word = []
                for _ in range(n):
                    j = rng.choice((1, 2))
                    word.append((j, rng.randrange(self.factors[j].order)))
                a = self.reduce(word)
                b = self.reduce_right_to_left(word)
                if a != b:
                    raise CheckFailure(
                        "reduction strategies disagree on %r" % (word,))
        return sizes

    # -- the staircase action -------------------------------------------------

    def orbit_quotient_size(self, shape):
        """Orbit count of the staircase base action on the product over a
        shape in {0, 1, 2}^n; verifies the action is free."""
        n = len(shape)
        if n == 0 or n > 6:
            raise InputError("shape length must be between 1 and 6")
        groups = []
        maps = []
        for j in shape:
            if j == 0:
                groups.append(self.base)
                maps.append(lambda a: a)
            elif j in (1, 2):
                groups.append(self.factors[j])
                maps.append(self.maps[j])
            else:
                raise InputError("shape entries must be 0, 1 or 2")
        total = 1
        for G in groups:
            total *= G.order
        if total > 10**6:
            raise InputError("product too large to enumerate")

        def act(tup, pos, a):
            # multiply position pos by f(a) on the right and position pos+1
            # by f(a)^{-1} on the left
            out = list(tup)
            out[pos] = groups[pos].mul(out[pos], maps[pos](a))
            ainv = self.base.inv(a)
            out[pos + 1] = groups[pos + 1].mul(maps[pos + 1](ainv),
                                               out[pos + 1])
            return tuple(out)

        sizes = [G.order for G in groups]

        def unrank(k):
            out = []
            for s in reversed(sizes):
                out.append(k % s)
                k //= s
            return tuple(reversed(out))

        seen = set()
        orbits = 0
        expected_orbit = self.base.order ** (n - 1)
        for k in range(total):
            tup = unrank(k)
            if tup in seen:
                continue
            orbits += 1
            stack = [tup]
            orbit = {tup}
            while stack:
                cur = stack.pop()
                for pos in range(n - 1):
                    for a in range(self.base.order):
                        nxt = act(cur, pos, a)
                        if nxt not in orbit:
                            orbit.add(nxt)
                            stack.append(nxt)
            if len(orbit) != expected_orbit:
                raise CheckFailure(
                    "staircase action is not free on shape %r" % (shape,))
            seen |= orbit
        expect = total // expected_orbit
        if orbits != expect:
            raise CheckFailure(
                "orbit count %d disagrees with %d" % (orbits, expect))
        return orbits
