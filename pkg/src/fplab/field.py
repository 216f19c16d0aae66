"""Exact arithmetic in the prime field F_p."""

from __future__ import annotations

from dataclasses import dataclass

# Keeping p below 2^16 means every coefficient product fits comfortably in a
# native 64-bit intermediate, even before reduction.
PRIME_LIMIT = 1 << 16


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Prime(int):
    """A validated prime characteristic in [2, 2^16). Behaves like an int."""

    def __new__(cls, p):
        p = int(p)
        if not 2 <= p < PRIME_LIMIT:
            raise ValueError(f"characteristic must be in [2, {PRIME_LIMIT}), got {p}")
        if not _is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        return super().__new__(cls, p)

    def __repr__(self):
        return f"Prime({int(self)})"


@dataclass(frozen=True, slots=True)
class FpScalar:
    """An element of F_p, stored reduced to [0, p)."""

    value: int
    p: Prime

    def __post_init__(self):
        p = self.p if isinstance(self.p, Prime) else Prime(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", self.value % p)

    def _coerce(self, other) -> "FpScalar":
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ValueError(f"mismatched characteristic: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return FpScalar(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0 and self.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpScalar(pow(self.value, k, self.p), self.p)

    def inverse(self) -> "FpScalar":
        if self.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpScalar(pow(self.value, -1, self.p), self.p)

    def pth_root(self) -> "FpScalar":
        # x -> x^p is the identity on F_p, so every element is its own p-th root.
        return self

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)
