"""Sparse multivariate polynomials with exact rational coefficients.

Everything downstream (Groebner bases, localized rationals, residues,
pairings) is built on the two classes here. A polynomial is a dict from
exponent tuples to nonzero Fraction coefficients over a fixed VarSet, so
structural equality is semantic equality and no normalization pass is
ever needed after construction.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import InternalInvariantError, UsageError

Rat = Union[Fraction, int]


class VarSet:
    """Ordered variable universe: active variables first, then parameters.

    Active variables are the ones differentials, Jacobian ideals, and
    residues act on; parameters (diagonal copies, deformation coordinates)
    ride along in coefficients. The order is fixed at construction and
    shared by every polynomial over the set.
    """

    __slots__ = ("active", "parameters", "names", "_index")

    def __init__(self, active: Iterable[str], parameters: Iterable[str] = ()):
        self.active = tuple(active)
        self.parameters = tuple(parameters)
        self.names = self.active + self.parameters
        if not self.active:
            raise UsageError("a variable set needs at least one active variable")
        if len(set(self.names)) != len(self.names):
            raise UsageError("duplicate variable name in %r" % (self.names,))
        for name in self.names:
            if not name or not (name[0].isalpha() or name[0] == "_"):
                raise UsageError("invalid variable name %r" % (name,))
        self._index = {name: i for i, name in enumerate(self.names)}

    @property
    def n(self) -> int:
        return len(self.active)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError("unknown variable %r (have %r)" % (name, self.names)) from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VarSet)
            and self.active == other.active
            and self.parameters == other.parameters
        )

    def __hash__(self) -> int:
        return hash((self.active, self.parameters))

    def __repr__(self) -> str:
        return "VarSet(active=%r, parameters=%r)" % (self.active, self.parameters)

    def with_parameters(self, extra: Iterable[str]) -> "VarSet":
        return VarSet(self.active, self.parameters + tuple(extra))


def grevlex_key(exps: Sequence[int]):
    # graded reverse lexicographic: higher total degree wins, ties broken by
    # smaller exponent on the last distinguishing variable
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MultiPoly:
    """Immutable sparse polynomial over a VarSet."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: VarSet, terms: Mapping[tuple[int, ...], Rat]):
        self.vars = vars
        width = len(vars.names)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in terms.items():
            if len(exps) != width:
                raise UsageError(
                    "exponent tuple %r has length %d, expected %d" % (exps, len(exps), width)
                )
            if any(e < 0 for e in exps):
                raise UsageError("negative exponent in %r" % (exps,))
            c = Fraction(coeff)
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(vars: VarSet) -> "MultiPoly":
        return MultiPoly(vars, {})

    @staticmethod
    def const(vars: VarSet, c: Rat) -> "MultiPoly":
        return MultiPoly(vars, {(0,) * len(vars.names): Fraction(c)})

    @staticmethod
    def variable(vars: VarSet, name: str) -> "MultiPoly":
        exps = [0] * len(vars.names)
        exps[vars.index(name)] = 1
        return MultiPoly(vars, {tuple(exps): Fraction(1)})

    @staticmethod
    def monomial(vars: VarSet, exps: Sequence[int], c: Rat = 1) -> "MultiPoly":
        return MultiPoly(vars, {tuple(exps): Fraction(c)})

    # -- predicates and views ------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars.names), Fraction(0))

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise UsageError("polynomial %s is not constant" % self)
        return self.constant_term()

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def active_coefficient(self, active_exps: Sequence[int]) -> "MultiPoly":
        """Collect the coefficient of the active monomial x^active_exps as a
        polynomial in the parameters (active exponents zeroed out)."""
        n = self.vars.n
        target = tuple(active_exps)
        if len(target) != n:
            raise UsageError("expected %d active exponents, got %r" % (n, active_exps))
        width = len(self.vars.names)
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            if exps[:n] == target:
                key = (0,) * n + exps[n:]
                out[key] = out.get(key, Fraction(0)) + c
        return MultiPoly(self.vars, out)

    def uses_parameters(self) -> bool:
        n = self.vars.n
        return any(any(exps[n:]) for exps in self.terms)

    def key(self):
        """Canonical hashable fingerprint, used for caching."""
        return (self.vars.names, self.vars.n, tuple(sorted(self.terms.items())))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- ring operations ------------------------------------------------

    def _check_same_vars(self, other: "MultiPoly") -> None:
        if self.vars != other.vars:
            raise UsageError(
                "variable sets differ: %r vs %r" % (self.vars.names, other.vars.names)
            )

    def __add__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_vars(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, Fraction(0)) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return MultiPoly._trusted(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._trusted(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly.zero(self.vars)
            return MultiPoly._trusted(self.vars, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_vars(other)
        # clear denominators once so the convolution runs on plain ints
        da = math.lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1
        db = math.lcm(*(c.denominator for c in other.terms.values())) if other.terms else 1
        ia = [(e, c.numerator * (da // c.denominator)) for e, c in self.terms.items()]
        ib = [(e, c.numerator * (db // c.denominator)) for e, c in other.terms.items()]
        acc: dict[tuple[int, ...], int] = {}
        get = acc.get
        for ea, ca in ia:
            for eb, cb in ib:
                key = tuple(map(sum, zip(ea, eb)))
                acc[key] = get(key, 0) + ca * cb
        den = da * db
        out = {e: Fraction(v, den) for e, v in acc.items() if v}
        return MultiPoly._trusted(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise UsageError("polynomial powers take a non-negative integer exponent")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    @staticmethod
    def _trusted(vars: VarSet, terms: dict[tuple[int, ...], Fraction]) -> "MultiPoly":
        p = object.__new__(MultiPoly)
        p.vars = vars
        p.terms = terms
        return p

    # -- calculus and substitution ---------------------------------------

    def diff(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                key = exps[:i] + (e - 1,) + exps[i + 1 :]
                s = out.get(key, Fraction(0)) + c * e
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MultiPoly._trusted(self.vars, out)

    def subs(self, mapping: Mapping[str, Union["MultiPoly", Rat]]) -> "MultiPoly":
        """Simultaneous substitution. Values are polynomials over the same
        VarSet or plain rationals."""
        if not mapping:
            return self
        idx: dict[int, MultiPoly] = {}
        for name, value in mapping.items():
            i = self.vars.index(name)
            if isinstance(value, (int, Fraction)):
                value = MultiPoly.const(self.vars, value)
            self._check_same_vars(value)
            idx[i] = value
        total = MultiPoly.zero(self.vars)
        powers: dict[tuple[int, int], MultiPoly] = {}
        for exps, c in self.terms.items():
            untouched = tuple(0 if i in idx else e for i, e in enumerate(exps))
            term = MultiPoly.monomial(self.vars, untouched, c)
            for i, e in enumerate(exps):
                if i in idx and e:
                    p = powers.get((i, e))
                    if p is None:
                        p = idx[i] ** e
                        powers[(i, e)] = p
                    term = term * p
            total = total + term
        return total

    def transport(self, target: VarSet) -> "MultiPoly":
        """Re-express over another VarSet by variable name. Every variable
        actually used must exist in the target."""
        if target == self.vars:
            return self
        width = len(target.names)
        pos: list[int | None] = [
            target._index.get(name) for name in self.vars.names
        ]
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            key = [0] * width
            for i, e in enumerate(exps):
                if not e:
                    continue
                j = pos[i]
                if j is None:
                    raise UsageError(
                        "variable %r not present in target set %r"
                        % (self.vars.names[i], target.names)
                    )
                key[j] = e
            k = tuple(key)
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return MultiPoly._trusted(target, out)

    # -- leading terms and printing --------------------------------------

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        exps = max(self.terms, key=grevlex_key)
        return exps, self.terms[exps]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for exps, c in self.sorted_terms():
            mono = []
            for name, e in zip(self.vars.names, exps):
                if e == 1:
                    mono.append(name)
                elif e > 1:
                    mono.append("%s^%d" % (name, e))
            mag = abs(c)
            if mag != 1 or not mono:
                mono.insert(0, str(mag))
            body = "*".join(mono)
            if not chunks:
                chunks.append(body if c > 0 else "-" + body)
            else:
                chunks.append(("+ " if c > 0 else "- ") + body)
        return " ".join(chunks)

    def __repr__(self) -> str:
        return "MultiPoly(%s)" % self


# -- single-divisor division ------------------------------------------------


def div_single(p: MultiPoly, d: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Divide by one polynomial under grevlex: p = q*d + r with no term of r
    divisible by the leading monomial of d."""
    p._check_same_vars(d)
    if d.is_zero():
        raise UsageError("division by the zero polynomial")
    d_exps, d_coeff = d.leading()
    work = dict(p.terms)
    q: dict[tuple[int, ...], Fraction] = {}
    r: dict[tuple[int, ...], Fraction] = {}
    while work:
        exps = max(work, key=grevlex_key)
        c = work[exps]
        quot = tuple(a - b for a, b in zip(exps, d_exps))
        if any(e < 0 for e in quot):
            r[exps] = work.pop(exps)
            continue
        factor = c / d_coeff
        q[quot] = q.get(quot, Fraction(0)) + factor
        for de, dc in d.terms.items():
            key = tuple(a + b for a, b in zip(quot, de))
            s = work.get(key, Fraction(0)) - factor * dc
            if s:
                work[key] = s
            else:
                work.pop(key, None)
    return MultiPoly._trusted(p.vars, q), MultiPoly._trusted(p.vars, r)


def div_exact(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Division that must come out even; anything else is a broken internal
    assumption, not a user error."""
    q, r = div_single(p, d)
    if not r.is_zero():
        raise InternalInvariantError(
            "expected exact division but got remainder %s (dividing %s by %s)" % (r, p, d)
        )
    return q


# -- divided differences and determinants ------------------------------------


def divided_difference(p: MultiPoly, j: int, copies: Sequence[str]) -> MultiPoly:
    """j-th divided difference (0-based) toward the parameter copies.

    Substitutes copies for the active variables from position j (numerator A)
    and from position j+1 (numerator B) and divides A - B exactly by
    copies[j] - active[j].
    """
    vs = p.vars
    n = vs.n
    if len(copies) != n:
        raise UsageError("need %d copy names, got %r" % (n, copies))
    if not 0 <= j < n:
        raise UsageError("divided difference index %d out of range" % j)
    copy_vars = [MultiPoly.variable(vs, c) for c in copies]
    a = p.subs({vs.active[i]: copy_vars[i] for i in range(j, n)})
    b = p.subs({vs.active[i]: copy_vars[i] for i in range(j + 1, n)})
    den = copy_vars[j] - MultiPoly.variable(vs, vs.active[j])
    return div_exact(a - b, den)


def det_bareiss(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square polynomial matrix by fraction-free
    elimination; every division along the way is exact."""
    n = len(rows)
    if n == 0:
        raise UsageError("determinant of an empty matrix")
    vs = rows[0][0].vars
    m = [list(row) for row in rows]
    for row in m:
        if len(row) != n:
            raise UsageError("determinant needs a square matrix")
        for entry in row:
            if entry.vars != vs:
                raise UsageError("matrix entries live over different variable sets")
    if n == 1:
        return m[0][0]
    sign = 1
    prev = MultiPoly.const(vs, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(vs)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = div_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
            m[i][k] = MultiPoly.zero(vs)
        prev = m[k][k]
    result = m[n - 1][n - 1]
    return result if sign > 0 else -result


def monomials_up_to(vars: VarSet, degree: int) -> list[tuple[int, ...]]:
    """All active exponent tuples of total degree <= degree, grevlex order."""
    n = vars.n
    width = len(vars.names)
    out = []
    for total in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(n), total):
            exps = [0] * width
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
    return sorted(out, key=grevlex_key)
