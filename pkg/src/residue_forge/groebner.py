"""Groebner bases with cofactor tracking, and the quotient-algebra data
built from them.

Everything here works over the active variables only (grevlex order); the
cofactor rows express each basis element as an explicit combination of the
original generators, so every normal form comes back with a certificate
that can be re-multiplied and checked.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputValidationError, InternalInvariantError, UsageError
from .poly import MultiPoly, VarSet, grevlex_key


def _check_active_only(p: MultiPoly, what: str) -> None:
    if p.uses_parameters():
        raise UsageError("%s must not involve parameter variables: %s" % (what, p))


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Tracked:
    """A polynomial together with its expression over the generators."""

    __slots__ = ("poly", "row", "lm", "lc")

    def __init__(self, poly: MultiPoly, row: list[MultiPoly]):
        self.poly = poly
        self.row = row
        if poly.is_zero():
            self.lm = None
            self.lc = None
        else:
            self.lm, self.lc = poly.leading()


def _reduce_full(
    poly: MultiPoly, row: list[MultiPoly], items: list[_Tracked]
) -> _Tracked:
    vs = poly.vars
    work = dict(poly.terms)
    remainder: dict[tuple[int, ...], Fraction] = {}
    row = list(row)
    while work:
        exps = max(work, key=grevlex_key)
        coeff = work[exps]
        for item in items:
            if item.lm is not None and _divides(item.lm, exps):
                quot = tuple(a - b for a, b in zip(exps, item.lm))
                factor = coeff / item.lc
                mono = MultiPoly.monomial(vs, quot, factor)
                for de, dc in item.poly.terms.items():
                    key = tuple(a + b for a, b in zip(quot, de))
                    s = work.get(key, Fraction(0)) - factor * dc
                    if s:
                        work[key] = s
                    else:
                        work.pop(key, None)
                for t in range(len(row)):
                    if item.row[t]:
                        row[t] = row[t] - mono * item.row[t]
                break
        else:
            remainder[exps] = coeff
            del work[exps]
    return _Tracked(MultiPoly(vs, remainder), row)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced grevlex basis. basis[i] == sum_j cofactors[i][j] * generators[j]."""

    generators: tuple[MultiPoly, ...]
    basis: tuple[MultiPoly, ...]
    cofactors: tuple[tuple[MultiPoly, ...], ...]

    @property
    def vars(self) -> VarSet:
        return self.generators[0].vars


def buchberger(generators) -> GroebnerBasis:
    gens = tuple(generators)
    if not gens:
        raise UsageError("need at least one generator")
    vs = gens[0].vars
    for g in gens:
        if g.vars != vs:
            raise UsageError("generators live over different variable sets")
        _check_active_only(g, "ideal generator")
    k = len(gens)
    items: list[_Tracked] = []
    for j, g in enumerate(gens):
        if g.is_zero():
            continue
        row = [MultiPoly.zero(vs) for _ in range(k)]
        row[j] = MultiPoly.const(vs, 1)
        items.append(_Tracked(g, row))
    if not items:
        raise UsageError("all generators are zero")

    pending: list[tuple[int, int, int]] = []

    def push_pairs(new_index: int) -> None:
        for i in range(new_index):
            lm_i = items[i].lm
            lm_j = items[new_index].lm
            lcm = tuple(max(a, b) for a, b in zip(lm_i, lm_j))
            heapq.heappush(pending, (sum(lcm), i, new_index))

    for idx in range(1, len(items)):
        push_pairs(idx)

    while pending:
        _, i, j = heapq.heappop(pending)
        a, b = items[i], items[j]
        lcm = tuple(max(x, y) for x, y in zip(a.lm, b.lm))
        # coprime leading monomials reduce to zero; skip
        if all(x + y == z for x, y, z in zip(a.lm, b.lm, lcm)):
            continue
        mono_a = MultiPoly.monomial(vs, tuple(x - y for x, y in zip(lcm, a.lm)), 1 / a.lc)
        mono_b = MultiPoly.monomial(vs, tuple(x - y for x, y in zip(lcm, b.lm)), 1 / b.lc)
        spoly = mono_a * a.poly - mono_b * b.poly
        srow = [mono_a * ra - mono_b * rb for ra, rb in zip(a.row, b.row)]
        reduced = _reduce_full(spoly, srow, items)
        if not reduced.poly.is_zero():
            items.append(reduced)
            push_pairs(len(items) - 1)

    # inter-reduce to the unique reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(items)):
            others = items[:i] + items[i + 1 :]
            if not others:
                continue
            red = _reduce_full(items[i].poly, items[i].row, others)
            if red.poly.terms != items[i].poly.terms:
                changed = True
            items[i] = red
        items = [it for it in items if not it.poly.is_zero()]

    normalized: list[tuple[MultiPoly, tuple[MultiPoly, ...]]] = []
    for it in items:
        inv = 1 / it.lc
        normalized.append((it.poly * inv, tuple(r * inv for r in it.row)))
    normalized.sort(key=lambda pair: grevlex_key(pair[0].leading()[0]))

    basis = tuple(p for p, _ in normalized)
    cofactors = tuple(row for _, row in normalized)
    for p, row in zip(basis, cofactors):
        acc = MultiPoly.zero(vs)
        for r, g in zip(row, gens):
            acc = acc + r * g
        if acc != p:
            raise InternalInvariantError("cofactor row does not rebuild basis element")
    return GroebnerBasis(gens, basis, cofactors)


def normal_form(gb: GroebnerBasis, p: MultiPoly) -> tuple[MultiPoly, tuple[MultiPoly, ...]]:
    """Unique remainder modulo the ideal, plus a combination over the
    ORIGINAL generators with p == remainder + sum_j combo[j] * generators[j]."""
    vs = gb.vars
    if p.vars != vs:
        raise UsageError("polynomial lives over a different variable set")
    _check_active_only(p, "normal form input")
    work = dict(p.terms)
    remainder: dict[tuple[int, ...], Fraction] = {}
    quotients = [MultiPoly.zero(vs) for _ in gb.basis]
    lead = [b.leading() for b in gb.basis]
    while work:
        exps = max(work, key=grevlex_key)
        coeff = work[exps]
        for i, (lm, lc) in enumerate(lead):
            if _divides(lm, exps):
                quot = tuple(a - b for a, b in zip(exps, lm))
                mono = MultiPoly.monomial(vs, quot, coeff / lc)
                quotients[i] = quotients[i] + mono
                for de, dc in gb.basis[i].terms.items():
                    key = tuple(a + b for a, b in zip(quot, de))
                    s = work.get(key, Fraction(0)) - (coeff / lc) * dc
                    if s:
                        work[key] = s
                    else:
                        work.pop(key, None)
                break
        else:
            remainder[exps] = coeff
            del work[exps]
    combo = []
    for j in range(len(gb.generators)):
        acc = MultiPoly.zero(vs)
        for i, q in enumerate(quotients):
            if q:
                acc = acc + q * gb.cofactors[i][j]
        combo.append(acc)
    return MultiPoly(vs, remainder), tuple(combo)


def standard_monomials(gb: GroebnerBasis) -> tuple[tuple[int, ...], ...] | None:
    """Monomials outside the leading-term ideal, grevlex-ascending, or None
    if there are infinitely many."""
    vs = gb.vars
    n = vs.n
    width = len(vs.names)
    lms = [b.leading()[0] for b in gb.basis]
    bounds = []
    for i in range(n):
        cap = None
        for lm in lms:
            if lm[i] and all(e == 0 for k, e in enumerate(lm) if k != i):
                cap = lm[i] if cap is None else min(cap, lm[i])
        if cap is None:
            return None
        bounds.append(cap)

    out: list[tuple[int, ...]] = []

    def rec(i: int, acc: list[int]) -> None:
        if i == n:
            exps = tuple(acc) + (0,) * (width - n)
            if not any(_divides(lm, exps) for lm in lms):
                out.append(exps)
            return
        for e in range(bounds[i]):
            rec(i + 1, acc + [e])

    rec(0, [])
    out.sort(key=grevlex_key)
    return tuple(out)


@dataclass(frozen=True)
class MilnorAlgebra:
    """The Jacobian quotient of an isolated singularity at the origin."""

    f: MultiPoly
    jacobian: tuple[MultiPoly, ...]
    gb: GroebnerBasis
    basis_exps: tuple[tuple[int, ...], ...]
    mu: int

    def basis_polys(self) -> tuple[MultiPoly, ...]:
        vs = self.f.vars
        return tuple(MultiPoly.monomial(vs, e) for e in self.basis_exps)

    def normal_form(self, p: MultiPoly) -> tuple[MultiPoly, tuple[MultiPoly, ...]]:
        return normal_form(self.gb, p)

    def reduce(self, p: MultiPoly) -> MultiPoly:
        return self.normal_form(p)[0]


def milnor_data(f: MultiPoly) -> MilnorAlgebra:
    vs = f.vars
    _check_active_only(f, "the function")
    jac = tuple(f.diff(name) for name in vs.active)
    if all(g.is_zero() for g in jac):
        raise InputValidationError("the gradient vanishes identically")
    for name, g in zip(vs.active, jac):
        if g.constant_term():
            raise InputValidationError(
                "the gradient does not vanish at the origin (d/d%s has a constant term)" % name
            )
    gb = buchberger(jac)
    std = standard_monomials(gb)
    if std is None:
        raise InputValidationError(
            "the critical point is not isolated: the Jacobian quotient is infinite-dimensional"
        )
    mu = len(std)
    # The quotient must be supported at the origin alone. Zero-dimensionality
    # over the rationals is not enough (a second critical point with rational
    # coordinates would sneak in), so require every variable to be nilpotent.
    for name in vs.active:
        power = MultiPoly.variable(vs, name) ** mu
        r, _ = normal_form(gb, power)
        if not r.is_zero():
            raise InputValidationError(
                "the critical locus has points away from the origin"
                " (%s is not nilpotent in the Jacobian quotient)" % name
            )
    return MilnorAlgebra(f, jac, gb, std, mu)


@dataclass(frozen=True)
class PowerCertificate:
    """Rows expressing pure variable powers inside an ideal:
    active[i] ** exponents[i] == sum_j rows[i][j] * generators[j]."""

    generators: tuple[MultiPoly, ...]
    exponents: tuple[int, ...]
    rows: tuple[tuple[MultiPoly, ...], ...]

    def raised(self) -> "PowerCertificate":
        """The same containment one degree higher in every variable; used to
        re-check that downstream values do not depend on the certificate."""
        vs = self.generators[0].vars
        exps = tuple(d + 1 for d in self.exponents)
        rows = tuple(
            tuple(MultiPoly.variable(vs, vs.active[i]) * c for c in row)
            for i, row in enumerate(self.rows)
        )
        return PowerCertificate(self.generators, exps, rows)

    def check(self) -> None:
        vs = self.generators[0].vars
        for i, row in enumerate(self.rows):
            acc = MultiPoly.zero(vs)
            for c, g in zip(row, self.generators):
                acc = acc + c * g
            if acc != MultiPoly.variable(vs, vs.active[i]) ** self.exponents[i]:
                raise InternalInvariantError("power certificate row %d does not rebuild" % i)


def power_containment(generators) -> PowerCertificate:
    """Find, for every active variable, the least pure power lying in the
    ideal, together with explicit cofactors."""
    gens = tuple(generators)
    gb = buchberger(gens)
    std = standard_monomials(gb)
    if std is None:
        raise InputValidationError(
            "the ideal is not zero-dimensional; no pure-power containment exists"
        )
    bound = len(std)
    vs = gb.vars
    exponents: list[int] = []
    rows: list[tuple[MultiPoly, ...]] = []
    for name in vs.active:
        x = MultiPoly.variable(vs, name)
        for d in range(1, bound + 1):
            r, combo = normal_form(gb, x ** d)
            if r.is_zero():
                exponents.append(d)
                rows.append(combo)
                break
        else:
            raise InputValidationError(
                "the ideal is not primary to the origin: no pure power of %r is contained"
                % name
            )
    cert = PowerCertificate(gens, tuple(exponents), tuple(rows))
    cert.check()
    return cert


def quasi_homogeneous_weights(f: MultiPoly) -> tuple[Fraction, ...] | None:
    """Positive rational weights giving every monomial of f weight 1, if they
    exist and are uniquely determined; otherwise None."""
    vs = f.vars
    _check_active_only(f, "the function")
    n = vs.n
    rows = [[Fraction(e) for e in exps[:n]] + [Fraction(1)] for exps in f.terms]
    if not rows:
        return None
    # Gauss-Jordan over the rationals
    cols = n
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][cols]:
            return None  # inconsistent: not quasi-homogeneous
    if len(pivots) < cols:
        return None  # underdetermined: treat as not quasi-homogeneous
    w = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        w[c] = rows[i][cols]
    if any(x <= 0 for x in w):
        return None
    return tuple(w)
