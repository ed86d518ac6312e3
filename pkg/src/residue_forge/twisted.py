"""The localization operators Phi, the b-coefficient series they generate,
and normal forms of u-series classes modulo the twisted boundary.

Phi_j deposits a pole along the j-th partial derivative and trades x_j
depth for powers of u:

    Phi_j(v) = sum_k (1/F_j d_j)^k (-v/F_j) u^k,

extended u-linearly to truncated series. Composing all n of them in any
order (they commute; checked in the verifier suites) gives the
b-coefficient series of a polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import UsageError
from .groebner import MilnorAlgebra, milnor_data
from .localized import DenominatorFamily, LocalizedRational
from .poly import MultiPoly, VarSet
from .series import USeries


def jacobian_family(f: MultiPoly, negate: bool = False) -> DenominatorFamily:
    vs = f.vars
    polys = [f.diff(name) for name in vs.active]
    if negate:
        polys = [-p for p in polys]
    for name, p in zip(vs.active, polys):
        if p.is_zero():
            raise UsageError("partial derivative along %s vanishes identically" % name)
    return DenominatorFamily(vs, polys)


def deformed_family(
    f: MultiPoly, etas: Sequence[MultiPoly], z_names: Sequence[str], negate: bool = False
) -> tuple[MultiPoly, DenominatorFamily, VarSet]:
    """F = f + sum_i z_i eta_i over the variable set extended by the z's,
    together with the family of its partial derivatives."""
    vs = f.vars
    if len(etas) != len(z_names):
        raise UsageError("need as many deformation coordinates as sections")
    ext = vs.with_parameters(z_names)
    big = f.transport(ext)
    for z, eta in zip(z_names, etas):
        big = big + MultiPoly.variable(ext, z) * eta.transport(ext)
    if negate:
        big = -big
    polys = [big.diff(name) for name in ext.active]
    for name, p in zip(ext.active, polys):
        if p.is_zero():
            raise UsageError("partial derivative along %s vanishes identically" % name)
    return big, DenominatorFamily(ext, polys), ext


def as_series(
    family: DenominatorFamily, value: Union[MultiPoly, LocalizedRational, USeries], order: int
) -> USeries:
    zero = LocalizedRational.zero(family)
    if isinstance(value, USeries):
        if value.order != order:
            raise UsageError("series order mismatch")
        return value
    if isinstance(value, MultiPoly):
        value = LocalizedRational.from_poly(family, value)
    if not isinstance(value, LocalizedRational):
        raise UsageError("expected a polynomial, localized rational, or series")
    if value.family != family:
        raise UsageError("value lives over a different denominator family")
    return USeries.from_scalar(value, order, zero)


def phi(
    family: DenominatorFamily,
    j: int,
    value: Union[MultiPoly, LocalizedRational, USeries],
    order: int,
) -> USeries:
    """Apply Phi_j at truncation order `order` (0-based member index)."""
    if not 0 <= j < len(family.polys):
        raise UsageError("family member index %d out of range" % j)
    v = as_series(family, value, order)
    name = family.vars.active[j]
    zero = LocalizedRational.zero(family)
    out = [zero] * (order + 1)
    for l, a in enumerate(v.coeffs):
        if a.is_zero():
            continue
        t = (-a).div_member(j)
        out[l] = out[l] + t
        for s in range(l + 1, order + 1):
            t = t.diff(name).div_member(j)
            out[s] = out[s] + t
    return USeries(out, order, zero)


def phi_chain(
    family: DenominatorFamily,
    indices: Sequence[int],
    value: Union[MultiPoly, LocalizedRational, USeries],
    order: int,
) -> USeries:
    """Phi_{i_1} o ... o Phi_{i_k} for ascending indices, rightmost first."""
    v = as_series(family, value, order)
    for j in reversed(sorted(indices)):
        v = phi(family, j, v, order)
    return v


_B_CACHE: dict[tuple, USeries] = {}


def b_series(family: DenominatorFamily, h: MultiPoly, order: int) -> USeries:
    """The full b-coefficient series of h: every Phi applied once.

    b_0 = (-1)^n h / (F_1 ... F_n); the higher coefficients carry the
    deeper poles.
    """
    cache_key = (family.key(), h.key())
    got = _B_CACHE.get(cache_key)
    if got is not None and got.order >= order:
        return got.truncate(order)
    out = phi_chain(family, range(len(family.polys)), h, order)
    _B_CACHE[cache_key] = out
    return out


def b_coeff_closed(family: DenominatorFamily, h: MultiPoly, k: int) -> LocalizedRational:
    """Direct expansion of the k-th b-coefficient as a sum over compositions
    of k, computed without the series recursion. Used to cross-check
    b_series."""
    n = len(family.polys)
    if h.vars != family.vars:
        raise UsageError("polynomial lives over a different variable set")
    total = LocalizedRational.zero(family)
    sign = Fraction(-1) ** n

    def compositions(total_left: int, parts: int):
        if parts == 1:
            yield (total_left,)
            return
        for first in range(total_left + 1):
            for rest in compositions(total_left - first, parts - 1):
                yield (first,) + rest

    for comp in compositions(k, n):
        t = None
        for j in range(n - 1, -1, -1):
            if t is None:
                t = LocalizedRational.from_poly(family, h).div_member(j)
            else:
                t = t.div_member(j)
            name = family.vars.active[j]
            for _ in range(comp[j]):
                t = t.diff(name).div_member(j)
        total = total + t
    return total * sign


@dataclass(frozen=True)
class TwistedClass:
    """A truncated u-series of polynomial coefficients standing for the
    class  (sum_k h_k u^k) dx  in the twisted complex of f."""

    f: MultiPoly
    coeffs: tuple[MultiPoly, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise UsageError("a class needs at least the u^0 coefficient")
        for c in self.coeffs:
            if c.vars != self.f.vars:
                raise UsageError("class coefficient over a different variable set")

    @staticmethod
    def from_poly(f: MultiPoly, h: MultiPoly, order: int = 0) -> "TwistedClass":
        pad = [MultiPoly.zero(f.vars)] * order
        return TwistedClass(f, (h, *pad))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def shift(self, s: int = 1) -> "TwistedClass":
        return TwistedClass(self.f, (MultiPoly.zero(self.f.vars),) * s + self.coeffs)

    def scale(self, c) -> "TwistedClass":
        return TwistedClass(self.f, tuple(p * c for p in self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __str__(self) -> str:
        return " + ".join("(%s) u^%d" % (c, k) for k, c in enumerate(self.coeffs))


def twisted_normal_form(tc: TwistedClass, milnor: MilnorAlgebra | None = None) -> TwistedClass:
    """Reduce every u-slab to standard monomials, pushing the boundary
    correction (the divergence of the reduction cofactors) one u-order up.

    The top slab absorbs its correction nowhere, so the result represents
    the same class only through the original truncation order.
    """
    if milnor is None:
        milnor = milnor_data(tc.f)
    elif milnor.f != tc.f:
        raise UsageError("Milnor data belongs to a different function")
    vs = tc.f.vars
    out: list[MultiPoly] = []
    carry = MultiPoly.zero(vs)
    for h in tc.coeffs:
        r, combo = milnor.normal_form(h + carry)
        out.append(r)
        carry = MultiPoly.zero(vs)
        for name, a in zip(vs.active, combo):
            carry = carry + a.diff(name)
    return TwistedClass(tc.f, tuple(out))
