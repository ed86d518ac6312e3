"""Truncated power series in the formal variable u.

Coefficients are ring elements: Fraction, MultiPoly, or LocalizedRational.
A series knows its truncation order N and stores exactly the coefficients
0..N; asking past N is a contract violation, not a zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .errors import UsageError


def elt_is_zero(x) -> bool:
    if isinstance(x, Fraction):
        return not x
    return x.is_zero()


class USeries:
    __slots__ = ("coeffs", "order", "zero_elt")

    def __init__(self, coeffs: Sequence, order: int, zero_elt):
        if order < 0:
            raise UsageError("series order must be non-negative")
        coeffs = list(coeffs)
        if len(coeffs) > order + 1:
            raise UsageError("more coefficients than the truncation order allows")
        while len(coeffs) < order + 1:
            coeffs.append(zero_elt)
        self.coeffs = tuple(coeffs)
        self.order = order
        self.zero_elt = zero_elt

    @staticmethod
    def zero(order: int, zero_elt) -> "USeries":
        return USeries([], order, zero_elt)

    @staticmethod
    def from_scalar(value, order: int, zero_elt) -> "USeries":
        return USeries([value], order, zero_elt)

    def coeff(self, k: int):
        if not 0 <= k <= self.order:
            raise UsageError("coefficient %d outside truncation order %d" % (k, self.order))
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return all(elt_is_zero(c) for c in self.coeffs)

    def _require_compatible(self, other: "USeries") -> None:
        if self.order != other.order:
            raise UsageError(
                "series truncation orders differ (%d vs %d)" % (self.order, other.order)
            )

    def __add__(self, other) -> "USeries":
        if not isinstance(other, USeries):
            return NotImplemented
        self._require_compatible(other)
        return USeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.zero_elt
        )

    def __neg__(self) -> "USeries":
        return USeries([-c for c in self.coeffs], self.order, self.zero_elt)

    def __sub__(self, other) -> "USeries":
        if not isinstance(other, USeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "USeries":
        """Convolution product, truncated; also accepts a plain scalar."""
        if isinstance(other, (int, Fraction)):
            return USeries([c * other for c in self.coeffs], self.order, self.zero_elt)
        if not isinstance(other, USeries):
            return NotImplemented
        self._require_compatible(other)
        out = [self.zero_elt] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if elt_is_zero(a):
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if not elt_is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return USeries(out, self.order, self.zero_elt)

    def __rmul__(self, other) -> "USeries":
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def scale_elt(self, e) -> "USeries":
        """Multiply every coefficient by one ring element."""
        return USeries([c * e for c in self.coeffs], self.order, self.zero_elt)

    def shift(self, s: int) -> "USeries":
        """Multiply by u**s, keeping every known coefficient (order grows)."""
        if s < 0:
            raise UsageError("cannot shift by a negative power of u")
        return USeries([self.zero_elt] * s + list(self.coeffs), self.order + s, self.zero_elt)

    def shift_truncate(self, s: int) -> "USeries":
        """Multiply by u**s at fixed truncation order (top coefficients drop)."""
        if s < 0:
            raise UsageError("cannot shift by a negative power of u")
        return USeries(
            ([self.zero_elt] * s + list(self.coeffs))[: self.order + 1],
            self.order,
            self.zero_elt,
        )

    def truncate(self, order: int) -> "USeries":
        if order > self.order:
            raise UsageError("cannot extend a truncated series (have %d, want %d)"
                             % (self.order, order))
        return USeries(self.coeffs[: order + 1], order, self.zero_elt)

    def star(self) -> "USeries":
        """u -> -u."""
        return USeries(
            [c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)],
            self.order,
            self.zero_elt,
        )

    def map(self, fn: Callable, zero_elt=None) -> "USeries":
        zero = self.zero_elt if zero_elt is None else zero_elt
        return USeries([fn(c) for c in self.coeffs], self.order, zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, USeries):
            return NotImplemented
        self._require_compatible(other)
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __str__(self) -> str:
        parts = [
            "(%s) u^%d" % (c, k)
            for k, c in enumerate(self.coeffs)
            if not elt_is_zero(c)
        ]
        body = " + ".join(parts) if parts else "0"
        return "%s + O(u^%d)" % (body, self.order + 1)

    def __repr__(self) -> str:
        return "USeries(%s)" % self
