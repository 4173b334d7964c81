"""Perversity functions and the combinatorics derived from them.

A perversity is an integer function on codimensions k >= 1 with
p(k) <= p(k+1) <= p(k) + 1.  For an n-dimensional space it is extended to all
of Z (slope one below k = 1, constant above k = n); the dual q(k) = k-2-p(k)
then is constant below 1 and has slope one above n.  ``ExtendedPerversity``
stores the values on 1..n together with those two slopes, which is enough to
evaluate either kind of function anywhere and to make ``dual`` an involution.
"""

from dataclasses import dataclass
import json

from .errors import GrowthViolation, UnderspecifiedRange, ValidationError
from .infinity import INF, NEG_INF

PRESETS = ("zero", "top", "ultra")


def _check_growth(values):
    for k in range(1, len(values)):
        lo, hi = values[k - 1], values[k]
        if hi < lo or hi > lo + 1:
            raise GrowthViolation(k)


@dataclass(frozen=True)
class Perversity:
    """Values p(1), ..., p(K)."""

    values: tuple

    def __post_init__(self):
        if not self.values:
            raise ValidationError("a perversity needs at least one value")
        _check_growth(self.values)

    @property
    def K(self):
        return len(self.values)

    def __call__(self, k):
        if not 1 <= k <= self.K:
            raise IndexError(f"perversity defined on 1..{self.K}, asked for {k}")
        return self.values[k - 1]

    def to_json(self):
        return list(self.values)


def new_perversity(values):
    return Perversity(tuple(int(v) for v in values))


def preset(name, n):
    """Named perversities on codimensions 1..n."""
    if n < 1:
        raise ValidationError("ambient dimension must be >= 1")
    if name == "zero":
        vals = [0] * n
    elif name == "top":
        vals = [k - 2 for k in range(1, n + 1)]
    elif name == "ultra":
        vals = [k - 1 for k in range(1, n + 1)]
    else:
        raise ValidationError(f"unknown perversity preset {name!r}; choose from {PRESETS}")
    return Perversity(tuple(vals))


def parse_perversity(spec, n=None):
    """Accept a preset name, a JSON array string, or a list of ints."""
    if isinstance(spec, Perversity):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s in PRESETS:
            if n is None:
                raise ValidationError("preset perversities need the ambient dimension")
            return preset(s, n)
        try:
            spec = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"cannot parse perversity {spec!r}") from exc
        if isinstance(spec, str):
            return parse_perversity(spec, n)
    if not isinstance(spec, (list, tuple)):
        raise ValidationError(f"cannot parse perversity {spec!r}")
    return new_perversity(spec)


def _grow(values, K):
    vals = list(values)
    while len(vals) < K:
        vals.append(vals[-1] + 1)
    return vals


def classify(p):
    """One of 'traditional', 'super', 'sub', 'other' (exclusive)."""
    vals = _grow(p.values, 2)
    p1, p2 = vals[0], vals[1]
    if p2 > 0:
        return "super"
    if p2 < 0:
        return "sub"
    if p1 == 0:
        return "traditional"
    return "other"


@dataclass(frozen=True)
class ExtendedPerversity:
    """A perversity-like function on all of Z.

    ``values`` holds f(1..n); below 1 the function continues with slope
    ``below`` and above n with slope ``above``.
    """

    values: tuple
    below: int = 1
    above: int = 0

    def __post_init__(self):
        _check_growth(self.values)

    @property
    def n(self):
        return len(self.values)

    def __call__(self, k):
        n = self.n
        if k < 1:
            return self.values[0] + self.below * (k - 1)
        if k > n:
            return self.values[-1] + self.above * (k - n)
        return self.values[k - 1]

    def window(self, lo, hi):
        return [self(k) for k in range(lo, hi + 1)]


def extend(p, n, fill=False):
    """Extend p to Z for an n-dimensional space.

    With ``fill`` a perversity given on fewer than n codimensions is continued
    upward with unit steps; otherwise that is an error.
    """
    if n < 1:
        raise ValidationError("ambient dimension must be >= 1")
    if p.K < n:
        if not fill:
            raise UnderspecifiedRange(p.K, n)
        vals = _grow(p.values, n)
    else:
        vals = list(p.values[:n])
    return ExtendedPerversity(tuple(vals), below=1, above=0)


def backfill(values_from_two):
    """Perversity given on k >= 2 only: prepend p(1) = p(2) - 1."""
    vals = [int(v) for v in values_from_two]
    if not vals:
        raise ValidationError("need at least p(2)")
    return new_perversity([vals[0] - 1] + vals)


def dual(p):
    """q(k) = k - 2 - p(k) on all of Z."""
    vals = tuple(k - 2 - v for k, v in enumerate(p.values, start=1))
    return ExtendedPerversity(vals, below=1 - p.below, above=1 - p.above)


def inverse(p, j):
    """min{c : p(c) >= j}, +inf if j > p(n), -inf if j <= p(k) for every k."""
    n = p.n
    if j > p(n):
        return INF
    if p.below <= 0 and j <= p(1):
        # constant (or increasing towards -inf) below 1: every c works
        return NEG_INF
    if p.below > 0 and j <= p(1):
        # p(c) = p(1) + below*(c-1) >= j  <=>  c >= 1 + ceil((j - p(1)) / below)
        need = j - p(1)
        return 1 + (-((-need) // p.below))
    for c in range(1, n + 1):
        if p(c) >= j:
            return c
    return INF  # unreachable: j <= p(n)


def codim_threshold(p):
    """c_p = q^{-1}(0): least k with p(k) <= k-2, or +inf."""
    return inverse(dual(p), 0)


def ultra_range(p):
    """Largest m with p(k) >= k-1 for all 1 <= k <= m (0 if p(1) < 0)."""
    m = 0
    for k in range(1, p.n + 1):
        if p(k) >= k - 1:
            m = k
        else:
            break
    return m
