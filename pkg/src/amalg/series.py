"""Poincare series: nonnegative integer dimension vectors indexed by degree,
with the handful of operations the fiber-sequence bookkeeping needs
(products, suspension, smash, join, tensor-algebra series)."""

from .errors import InputError


class PoincareSeries:
    """dims[d] for d = 0..truncation; truncation is explicit."""

    __slots__ = ("dims", "truncation")

    def __init__(self, dims, truncation=None):
        dims = [int(x) for x in dims]
        if truncation is None:
            truncation = len(dims) - 1
        if len(dims) != truncation + 1:
            raise InputError("series length does not match its truncation")
        if any(x < 0 for x in dims):
            raise InputError("series coefficients must be nonnegative")
        self.dims = dims
        self.truncation = truncation

    def coefficient(self, d):
        if not (0 <= d <= self.truncation):
            raise InputError("degree %d outside 0..%d" % (d, self.truncation))
        return self.dims[d]

    def __eq__(self, other):
        return (isinstance(other, PoincareSeries)
                and self.truncation == other.truncation
                and self.dims == other.dims)

    def __repr__(self):
        return "PoincareSeries(%r)" % (self.dims,)


def _common(P, Q):
    if P.truncation != Q.truncation:
        raise InputError("series must share one truncation degree")
    return P.truncation


def product(P, Q):
    """Coefficientwise convolution (series of a product of spaces)."""
    N = _common(P, Q)
    dims = [sum(P.dims[k] * Q.dims[d - k] for k in range(d + 1))
            for d in range(N + 1)]
    return PoincareSeries(dims, N)


def reduced_part(P):
    """Strip the unit: requires a connected series (dims[0] == 1)."""
    if P.dims[0] != 1:
        raise InputError("reduced_part needs a connected series")
    return PoincareSeries([0] + P.dims[1:], P.truncation)


def shift(P, s):
    """Suspension s times: reduced part moves up by s, unit stays."""
    if s < 0:
        raise InputError("shift must be nonnegative")
    red = reduced_part(P).dims
    dims = [0] * (P.truncation + 1)
    dims[0] = 1
    for d in range(1, P.truncation + 1):
        if d - s >= 1:
            dims[d] = red[d - s]
    return PoincareSeries(dims, P.truncation)


def reduced_product(P, Q):
    """Smash product: unit plus the product of the reduced parts."""
    N = _common(P, Q)
    p, q = reduced_part(P).dims, reduced_part(Q).dims
    dims = [sum(p[k] * q[d - k] for k in range(d + 1)) for d in range(N + 1)]
    dims[0] = 1
    return PoincareSeries(dims, N)


def join(P, Q):
    """Join = suspension of the smash."""
    return shift(reduced_product(P, Q), 1)


def tensor_algebra_series(P):
    """Series of the tensor algebra on a reduced series: 1/(1 - P)."""
    if P.dims[0] != 0:
        raise InputError("tensor_algebra_series needs a reduced series "
                         "(coefficient 1 at degree 0 is not allowed)")
    N = P.truncation
    out = [0] * (N + 1)
    out[0] = 1
    for d in range(1, N + 1):
        out[d] = sum(P.dims[k] * out[d - k] for k in range(1, d + 1))
    return PoincareSeries(out, N)


def expand_quotient(num, den, N):
    """Power series num/den through degree N; den[0] must be a unit."""
    num = list(num) + [0] * (N + 1 - len(num))
    den = list(den) + [0] * (N + 1 - len(den))
    if den[0] not in (1, -1):
        raise InputError("denominator must start with a unit")
    out = [0] * (N + 1)
    for d in range(N + 1):
        acc = num[d] - sum(den[k] * out[d - k] for k in range(1, d + 1))
        out[d] = acc // den[0]
    if any(x < 0 for x in out):
        raise InputError("quotient is not a dimension series")
    return PoincareSeries(out, N)
