"""Grothendieck residues against powers of a denominator family.

The engine reduces every residue to the monomial base case

    Res[ phi dx / (x_1^{D_1}, ..., x_n^{D_n}) ] = coeff of x^{D-1} in phi

through a power certificate: rows expressing x_i^{D_i} over the actual
denominators. The law applied is

    Res[ phi dx / (g_1, ..., g_n) ] = Res[ det(c) phi dx / (x^{D_1}, ..., x^{D_n}) ]

with x_i^{D_i} = sum_j c_ij g_j. Each value is recomputed from a second,
independently derived certificate one degree higher; disagreement means the
engine is broken and raises instead of returning.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalInvariantError, UsageError
from .groebner import PowerCertificate, buchberger, normal_form, power_containment
from .localized import DenominatorFamily, LocalizedRational
from .poly import MultiPoly, det_bareiss
from .twisted import jacobian_family

_CERT_CACHE: dict[tuple, tuple[PowerCertificate, MultiPoly, PowerCertificate, MultiPoly]] = {}


def res_monomial(num: MultiPoly, exponents) -> MultiPoly:
    """Base case: the coefficient of x^(exponents - 1), as a polynomial in
    the parameters."""
    exponents = tuple(exponents)
    if any(d < 1 for d in exponents):
        raise UsageError("monomial residue needs exponents >= 1")
    return num.active_coefficient(tuple(d - 1 for d in exponents))


def _certificates(gens: tuple[MultiPoly, ...]):
    key = tuple(g.key() for g in gens)
    got = _CERT_CACHE.get(key)
    if got is not None:
        return got
    cert = power_containment(gens)
    det = det_bareiss(cert.rows)
    # a genuinely different certificate one degree up: fresh normal forms,
    # not the old rows multiplied through
    vs = gens[0].vars
    gb = buchberger(gens)
    rows2 = []
    for i, name in enumerate(vs.active):
        power = MultiPoly.variable(vs, name) ** (cert.exponents[i] + 1)
        r, combo = normal_form(gb, power)
        if not r.is_zero():
            raise InternalInvariantError("raised power fell outside the ideal")
        rows2.append(combo)
    cert2 = PowerCertificate(gens, tuple(d + 1 for d in cert.exponents), tuple(rows2))
    cert2.check()
    det2 = det_bareiss(cert2.rows)
    got = (cert, det, cert2, det2)
    _CERT_CACHE[key] = got
    return got


def res_localized(value: LocalizedRational) -> MultiPoly:
    """Residue of  value dx  against its denominator family, one family
    member per active variable."""
    fam = value.family
    for p in fam.polys:
        if p.uses_parameters():
            raise UsageError("residues need parameter-free denominators")
    if any(e == 0 for e in value.m):
        # a unit slot makes the denominator sequence generate everything
        return MultiPoly.zero(fam.vars)
    gens = tuple(p ** e for p, e in zip(fam.polys, value.m))
    cert, det, cert2, det2 = _certificates(gens)
    first = res_monomial(value.num * det, cert.exponents)
    second = res_monomial(value.num * det2, cert2.exponents)
    if first != second:
        raise InternalInvariantError(
            "residue depends on the certificate: %s vs %s" % (first, second)
        )
    return first


def res_pairing(f: MultiPoly, h: MultiPoly, g: MultiPoly) -> Fraction:
    """Residue pairing of two polynomials against the Jacobian of f."""
    fam = jacobian_family(f)
    value = LocalizedRational(fam, h * g, (1,) * len(fam.polys))
    out = res_localized(value)
    return out.as_fraction()
