"""Rational functions with poles along a fixed family of divisors.

A value is num / prod_j F_j^{m_j} where the F_j are the members of a
DenominatorFamily (one per active variable, typically the partial
derivatives of the function under study). Numerators and exponent vectors
are never cancelled against each other: equality is decided by
cross-multiplication, so a zero numerator with a fat denominator is still
zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .errors import UsageError
from .poly import MultiPoly, VarSet

Rat = Union[Fraction, int]


class DenominatorFamily:
    """An ordered family of nonzero polynomials, one per active variable."""

    __slots__ = ("vars", "polys", "_key", "_pp_cache", "_diff_cache")

    def __init__(self, vars: VarSet, polys: Sequence[MultiPoly]):
        polys = tuple(polys)
        if len(polys) != vars.n:
            raise UsageError(
                "need one denominator per active variable (%d), got %d"
                % (vars.n, len(polys))
            )
        for p in polys:
            if p.vars != vars:
                raise UsageError("family member lives over a different variable set")
            if p.is_zero():
                raise UsageError("family members must be nonzero")
        self.vars = vars
        self.polys = polys
        self._key = (vars.names, vars.n, tuple(p.key() for p in polys))
        self._pp_cache: dict[tuple[int, ...], MultiPoly] = {}
        self._diff_cache: dict[tuple[int, int], MultiPoly] = {}

    def key(self):
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, DenominatorFamily) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return "DenominatorFamily(%s)" % ", ".join(str(p) for p in self.polys)

    def power_product(self, m: Sequence[int]) -> MultiPoly:
        """prod_j polys[j] ** m[j], cached."""
        key = tuple(m)
        got = self._pp_cache.get(key)
        if got is None:
            got = MultiPoly.const(self.vars, 1)
            for p, e in zip(self.polys, key):
                if e:
                    got = got * p ** e
            self._pp_cache[key] = got
        return got

    def member_diff(self, l: int, var_index: int) -> MultiPoly:
        key = (l, var_index)
        got = self._diff_cache.get(key)
        if got is None:
            got = self.polys[l].diff(self.vars.names[var_index])
            self._diff_cache[key] = got
        return got

    def scale_ratios(self, other: "DenominatorFamily") -> tuple[Fraction, ...] | None:
        """Constants c with other.polys[j] == c_j * self.polys[j], if any."""
        if other.vars != self.vars or len(other.polys) != len(self.polys):
            return None
        ratios = []
        for mine, theirs in zip(self.polys, other.polys):
            exps, coeff = mine.leading()
            c = theirs.coeff(exps) / coeff
            if not c or mine * c != theirs:
                return None
            ratios.append(c)
        return tuple(ratios)


class LocalizedRational:
    __slots__ = ("family", "num", "m")

    def __init__(self, family: DenominatorFamily, num: MultiPoly, m: Sequence[int]):
        if num.vars != family.vars:
            raise UsageError("numerator lives over a different variable set")
        m = tuple(m)
        if len(m) != len(family.polys) or any(e < 0 for e in m):
            raise UsageError("bad denominator exponent vector %r" % (m,))
        self.family = family
        self.num = num
        self.m = m

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(family: DenominatorFamily) -> "LocalizedRational":
        return LocalizedRational(family, MultiPoly.zero(family.vars), (0,) * len(family.polys))

    @staticmethod
    def from_poly(family: DenominatorFamily, p: MultiPoly) -> "LocalizedRational":
        return LocalizedRational(family, p, (0,) * len(family.polys))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def key(self):
        return (self.family.key(), self.num.key(), self.m)

    def _require_same_family(self, other: "LocalizedRational") -> None:
        if self.family != other.family:
            raise UsageError("denominator families differ; convert first")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "LocalizedRational":
        if not isinstance(other, LocalizedRational):
            return NotImplemented
        self._require_same_family(other)
        m = tuple(max(a, b) for a, b in zip(self.m, other.m))
        lift_a = self.family.power_product(tuple(x - y for x, y in zip(m, self.m)))
        lift_b = self.family.power_product(tuple(x - y for x, y in zip(m, other.m)))
        return LocalizedRational(self.family, self.num * lift_a + other.num * lift_b, m)

    def __neg__(self) -> "LocalizedRational":
        return LocalizedRational(self.family, -self.num, self.m)

    def __sub__(self, other) -> "LocalizedRational":
        if not isinstance(other, LocalizedRational):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "LocalizedRational":
        if isinstance(other, (int, Fraction)):
            return LocalizedRational(self.family, self.num * other, self.m)
        if isinstance(other, MultiPoly):
            return LocalizedRational(self.family, self.num * other, self.m)
        if not isinstance(other, LocalizedRational):
            return NotImplemented
        self._require_same_family(other)
        return LocalizedRational(
            self.family,
            self.num * other.num,
            tuple(a + b for a, b in zip(self.m, other.m)),
        )

    def __rmul__(self, other) -> "LocalizedRational":
        return self.__mul__(other)

    def div_member(self, j: int) -> "LocalizedRational":
        """Divide by family member j."""
        m = list(self.m)
        m[j] += 1
        return LocalizedRational(self.family, self.num, m)

    def diff(self, name: str) -> "LocalizedRational":
        """Quotient rule. Only the factors that are present and actually
        depend on the variable get their exponent raised."""
        v = self.family.vars.index(name)
        fam = self.family
        touched = [
            l
            for l in range(len(self.m))
            if self.m[l] and not fam.member_diff(l, v).is_zero()
        ]
        if not touched:
            return LocalizedRational(fam, self.num.diff(name), self.m)
        m = list(self.m)
        for l in touched:
            m[l] += 1
        lift = fam.power_product(
            tuple(1 if l in touched else 0 for l in range(len(self.m)))
        )
        num = self.num.diff(name) * lift
        for l in touched:
            rest = MultiPoly.const(fam.vars, 1)
            for t in touched:
                if t != l:
                    rest = rest * fam.polys[t]
            num = num - self.num * (self.m[l] * fam.member_diff(l, v) * rest)
        return LocalizedRational(fam, num, m)

    def convert(self, target: DenominatorFamily) -> "LocalizedRational":
        """Re-express over a family whose members are constant multiples of
        this one's."""
        if target == self.family:
            return self
        ratios = self.family.scale_ratios(target)
        if ratios is None:
            raise UsageError("families are not constant multiples of each other")
        scale = Fraction(1)
        for c, e in zip(ratios, self.m):
            scale *= c ** e
        return LocalizedRational(target, self.num * scale, self.m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalizedRational):
            return NotImplemented
        self._require_same_family(other)
        m = tuple(max(a, b) for a, b in zip(self.m, other.m))
        lift_a = self.family.power_product(tuple(x - y for x, y in zip(m, self.m)))
        lift_b = self.family.power_product(tuple(x - y for x, y in zip(m, other.m)))
        return self.num * lift_a == other.num * lift_b

    __hash__ = None  # semantic equality is not hash-compatible; use key()

    def __str__(self) -> str:
        if all(e == 0 for e in self.m):
            return str(self.num)
        den = []
        for p, e in zip(self.family.polys, self.m):
            if e == 1:
                den.append("(%s)" % p)
            elif e > 1:
                den.append("(%s)^%d" % (p, e))
        return "(%s) / %s" % (self.num, "*".join(den) if den else "1")

    def __repr__(self) -> str:
        return "LocalizedRational(%s)" % self
