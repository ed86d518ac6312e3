"""Higher residue pairings and everything assembled from them.

The order-k pairing of two polynomials is

    H^k(h, g) = Res[ (-1)^n b_k(h) g dx ]  =  Res[ b_k^-(g) h dx ],

where b^- is the b-series over the sign-flipped family. Both forms are
always computed and must agree; the engine refuses to return a value
otherwise. Series pairings extend this u-linearly in the first slot and
u-antilinearly in the second.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInvariantError, UsageError
from .groebner import MilnorAlgebra, milnor_data
from .localized import DenominatorFamily
from .poly import MultiPoly, VarSet, det_bareiss, divided_difference
from .residue import res_localized
from .series import USeries
from .twisted import TwistedClass, b_series, jacobian_family

CONVENTIONS = ("hres", "saito", "canonical")

_MILNOR_CACHE: dict[tuple, MilnorAlgebra] = {}


def get_milnor(f: MultiPoly) -> MilnorAlgebra:
    key = f.key()
    got = _MILNOR_CACHE.get(key)
    if got is None:
        got = milnor_data(f)
        _MILNOR_CACHE[key] = got
    return got


def hres_series(f: MultiPoly, h: MultiPoly, g: MultiPoly, order: int) -> list[Fraction]:
    """H^0..H^order for polynomial arguments, each value computed through
    both one-sided residue forms."""
    fam = jacobian_family(f)
    famn = jacobian_family(f, negate=True)
    n = f.vars.n
    sign = Fraction((-1) ** n)
    bh = b_series(fam, h, order)
    bg = b_series(famn, g, order)
    out: list[Fraction] = []
    for k in range(order + 1):
        first = res_localized(bh.coeffs[k] * g * sign).as_fraction()
        second = res_localized(bg.coeffs[k] * h).as_fraction()
        if first != second:
            raise InternalInvariantError(
                "one-sided pairing forms disagree at order %d: %s vs %s"
                % (k, first, second)
            )
        out.append(first)
    return out


def hres_order(f: MultiPoly, h: MultiPoly, g: MultiPoly, k: int) -> Fraction:
    return hres_series(f, h, g, k)[k]


def pairing_series(
    f: MultiPoly,
    w1: TwistedClass,
    w2: TwistedClass,
    order: int,
    convention: str = "hres",
) -> USeries:
    """Pairing of two truncated classes as a u-series of rationals.

    hres is the bare series; saito multiplies by u^n (the order grows by n);
    canonical multiplies by (-1)^(n(n+1)/2).
    """
    if convention not in CONVENTIONS:
        raise UsageError("unknown convention %r (have %s)" % (convention, ", ".join(CONVENTIONS)))
    if w1.f != f or w2.f != f:
        raise UsageError("classes belong to a different function")
    n = f.vars.n
    base = [Fraction(0)] * (order + 1)
    for i, h in enumerate(w1.coeffs):
        if h.is_zero() or i > order:
            continue
        for j, g in enumerate(w2.coeffs):
            if g.is_zero() or i + j > order:
                continue
            sign = (-1) ** j
            for k, v in enumerate(hres_series(f, h, g, order - i - j)):
                base[i + j + k] += sign * v
    series = USeries(base, order, Fraction(0))
    if convention == "hres":
        return series
    if convention == "canonical":
        return series * Fraction((-1) ** (n * (n + 1) // 2))
    return series.shift(n)


@dataclass(frozen=True)
class PairingMatrix:
    """Gram data of the pairing on the monomial basis of the quotient.

    entries[a][b] is the hres-core series for (basis[a], basis[b]); the
    convention contributes the sign baked into the entries (canonical) or
    the u-shift (saito) recorded separately.
    """

    f: MultiPoly
    convention: str
    basis: tuple[str, ...]
    entries: tuple[tuple[USeries, ...], ...]
    shift: int
    order: int

    def series(self, a: int, b: int) -> USeries:
        return self.entries[a][b].shift(self.shift)


def pairing_matrix(
    f: MultiPoly, order: int, convention: str = "hres", milnor: MilnorAlgebra | None = None
) -> PairingMatrix:
    if convention not in CONVENTIONS:
        raise UsageError("unknown convention %r (have %s)" % (convention, ", ".join(CONVENTIONS)))
    if milnor is None:
        milnor = get_milnor(f)
    n = f.vars.n
    basis = milnor.basis_polys()
    sign = Fraction((-1) ** (n * (n + 1) // 2)) if convention == "canonical" else Fraction(1)
    entries = []
    for ha in basis:
        row = []
        for hb in basis:
            core = USeries(hres_series(f, ha, hb, order), order, Fraction(0))
            row.append(core * sign)
        entries.append(tuple(row))
    return PairingMatrix(
        f=f,
        convention=convention,
        basis=tuple(str(p) for p in basis),
        entries=tuple(entries),
        shift=n if convention == "saito" else 0,
        order=order,
    )


@dataclass(frozen=True)
class DiagonalKernel:
    """det of the divided-difference matrix of the gradient, over the
    variable set doubled by one parameter copy per active variable."""

    f: MultiPoly
    vars2: VarSet
    copies: tuple[str, ...]
    delta: MultiPoly


def _copy_names(vs: VarSet) -> tuple[str, ...]:
    taken = set(vs.names)
    out = []
    for name in vs.active:
        candidate = name + "_c"
        while candidate in taken:
            candidate += "_"
        taken.add(candidate)
        out.append(candidate)
    return tuple(out)


def chern_delta(f: MultiPoly) -> DiagonalKernel:
    """Divided-difference kernel of the gradient. Its restriction to the
    diagonal must be the Hessian determinant, and that is checked here."""
    vs = f.vars
    if f.uses_parameters():
        raise UsageError("the function must not involve parameter variables")
    copies = _copy_names(vs)
    vs2 = vs.with_parameters(copies)
    n = vs.n
    grads = [f.diff(name).transport(vs2) for name in vs.active]
    rows = [[divided_difference(grads[i], j, copies) for j in range(n)] for i in range(n)]
    delta = det_bareiss(rows)
    on_diagonal = delta.subs(
        {c: MultiPoly.variable(vs2, v) for c, v in zip(copies, vs.active)}
    )
    hessian = det_bareiss(
        [[f.diff(a).diff(b) for b in vs.active] for a in vs.active]
    ).transport(vs2)
    if on_diagonal != hessian:
        raise InternalInvariantError("diagonal kernel does not restrict to the Hessian")
    return DiagonalKernel(f=f, vars2=vs2, copies=copies, delta=delta)


def characteristic_slabs(
    f: MultiPoly, eta: MultiPoly, order: int, kernel: DiagonalKernel | None = None
) -> TwistedClass:
    """P_k = Res_x[ (-1)^n b_k(eta) delta(x, y) dx ], re-read as a class in
    the original variables. Its twisted normal form must be eta at u^0 and
    zero above; the verifier suite enforces that."""
    if kernel is None:
        kernel = chern_delta(f)
    vs = f.vars
    vs2 = kernel.vars2
    n = vs.n
    fam2 = DenominatorFamily(vs2, [f.diff(name).transport(vs2) for name in vs.active])
    sign = Fraction((-1) ** n)
    b = b_series(fam2, eta.transport(vs2), order)
    back = {c: MultiPoly.variable(vs2, v) for c, v in zip(kernel.copies, vs.active)}
    slabs = []
    for k in range(order + 1):
        integrand = b.coeffs[k] * kernel.delta * sign
        value = res_localized(integrand)  # a polynomial in the copies
        slabs.append(value.subs(back).transport(vs))
    return TwistedClass(f, tuple(slabs))
