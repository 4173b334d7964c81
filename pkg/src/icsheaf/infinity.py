"""Symbolic +inf / -inf that compare and combine exactly with Python ints."""

from functools import total_ordering


@total_ordering
class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "inf" if self.sign > 0 else "-inf"

    def __hash__(self):
        return hash(("inf", self.sign))

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        if isinstance(other, int):
            return self.sign < 0
        return NotImplemented

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __add__(self, other):
        if isinstance(other, int):
            return self
        if isinstance(other, _Infinity):
            if other.sign != self.sign:
                raise ArithmeticError("inf - inf is undefined")
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other


INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def is_infinite(x):
    return isinstance(x, _Infinity)


def to_json(x):
    """Integers pass through; infinities become the strings "inf" / "-inf"."""
    return str(x) if isinstance(x, _Infinity) else x


def from_json(x):
    if x == "inf":
        return INF
    if x == "-inf":
        return NEG_INF
    return int(x)
