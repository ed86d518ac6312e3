"""Randomized and exhaustive identity suites.

Each suite runs a family of exact identities and returns a VerifyReport;
nothing is tolerance-based, a failure records the fingerprint of the
instance plus both sides verbatim. Reports are deterministic given
(seed, trials, order) and failures are sorted by fingerprint.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cech import cech_differential, omega_rep, wedge_top_reduction
from .errors import InternalInvariantError, UsageError
from .groebner import quasi_homogeneous_weights
from .pairing import (
    characteristic_slabs,
    chern_delta,
    get_milnor,
    hres_series,
    pairing_series,
)
from .poly import MultiPoly, VarSet
from .residue import res_pairing
from .series import USeries
from .localized import LocalizedRational
from .twisted import (
    TwistedClass,
    as_series,
    b_series,
    deformed_family,
    jacobian_family,
    phi,
    twisted_normal_form,
)

SUITES = ("closedness", "flatness-u", "flatness-z", "char-eq", "symmetry")


@dataclass(frozen=True)
class Failure:
    fingerprint: str
    expected: str
    got: str


@dataclass
class VerifyReport:
    suite: str
    f: str
    order: int
    trials: int
    seed: int
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def sort(self) -> None:
        self.failures.sort(key=lambda x: x.fingerprint)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "f": self.f,
            "order": self.order,
            "trials": self.trials,
            "seed": self.seed,
            "instances": self.instances,
            "failures": [
                {"fingerprint": x.fingerprint, "expected": x.expected, "got": x.got}
                for x in self.failures
            ],
            "smallest_failure": (
                {"fingerprint": self.failures[0].fingerprint,
                 "expected": self.failures[0].expected,
                 "got": self.failures[0].got}
                if self.failures
                else None
            ),
            "passed": self.passed,
        }


def random_poly(
    rng: random.Random,
    vs: VarSet,
    max_degree: int = 4,
    max_terms: int = 6,
    allow_zero: bool = False,
) -> MultiPoly:
    """Sparse random polynomial: <= max_terms terms of total degree <=
    max_degree, nonzero integer coefficients in [-5, 5]."""
    n = vs.n
    width = len(vs.names)
    for _ in range(50):
        terms: dict[tuple[int, ...], Fraction] = {}
        for _ in range(rng.randint(1, max_terms)):
            exps = [0] * width
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.randrange(n)] += 1
            coeff = rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        p = MultiPoly(vs, terms)
        if allow_zero or not p.is_zero():
            return p
    return MultiPoly.const(vs, 1)


def _record(report: VerifyReport, ok: bool, fingerprint: str, expected, got) -> None:
    report.instances += 1
    if not ok:
        report.failures.append(Failure(fingerprint, str(expected), str(got)))


def check_closedness(f: MultiPoly, trials: int, seed: int, N: int) -> VerifyReport:
    """D(omega_rep) = 0 through order N for random h, on both sign
    conventions, plus the boundary-certified top reduction."""
    get_milnor(f)
    report = VerifyReport("closedness", str(f), N, trials, seed)
    rng = random.Random(seed)
    for trial in range(trials):
        h = random_poly(rng, f.vars)
        g = random_poly(rng, f.vars)
        for negate, label in ((False, "+"), (True, "-")):
            twist = -f if negate else f
            image = cech_differential(omega_rep(f, h, N, negate=negate), twist)
            _record(
                report,
                image.is_zero(),
                "trial=%02d sign=%s check=closedness h=%s" % (trial, label, h),
                "0",
                image,
            )
        try:
            wedge_top_reduction(f, h, g, N)
            _record(
                report, True,
                "trial=%02d check=top-reduction h=%s g=%s" % (trial, h, g), "", "",
            )
        except InternalInvariantError as exc:
            _record(
                report, False,
                "trial=%02d check=top-reduction h=%s g=%s" % (trial, h, g),
                "boundary identity",
                str(exc),
            )
    report.sort()
    return report


def random_denominator_poly(rng: random.Random, vs: VarSet) -> MultiPoly:
    """Random polynomial with a nonzero partial along every active variable,
    the only requirement the localization operators place on it."""
    for _ in range(100):
        p = random_poly(rng, vs)
        if all(not p.diff(name).is_zero() for name in vs.active):
            return p
    base = MultiPoly.zero(vs)
    for name in vs.active:
        base = base + MultiPoly.variable(vs, name) ** 2
    return base


def check_phi_identities(trials: int, seed: int, N: int, max_n: int = 3) -> VerifyReport:
    """Pairwise commutativity of the localization operators and the fact
    that (-F_j + u d_j) undoes Phi_j, on random (f, h) with 1..max_n
    variables."""
    report = VerifyReport("phi", "random(n<=%d)" % max_n, N, trials, seed)
    rng = random.Random(seed)
    names = ("x", "y", "w")
    for trial in range(trials):
        n = rng.randint(1, max_n)
        vs = VarSet(names[:n])
        f = random_denominator_poly(rng, vs)
        h = random_poly(rng, vs)
        fam = jacobian_family(f)
        single = {j: phi(fam, j, h, N) for j in range(n)}
        for i in range(n):
            for j in range(i + 1, n):
                lhs = phi(fam, i, single[j], N)
                rhs = phi(fam, j, single[i], N)
                _record(
                    report,
                    lhs == rhs,
                    "trial=%02d check=commute n=%d i=%d j=%d f=%s h=%s"
                    % (trial, n, i, j, f, h),
                    lhs,
                    rhs,
                )
        target = as_series(fam, h, N)
        for j in range(n):
            w = single[j]
            name = vs.active[j]
            Fj = fam.polys[j]
            back = [-(w.coeffs[0] * Fj)]
            for k in range(1, N + 1):
                back.append(-(w.coeffs[k] * Fj) + w.coeffs[k - 1].diff(name))
            got = USeries(back, N, LocalizedRational.zero(fam))
            _record(
                report,
                got == target,
                "trial=%02d check=invert n=%d j=%d f=%s h=%s" % (trial, n, j, f, h),
                target,
                got,
            )
    report.sort()
    return report


def check_flatness_u(f: MultiPoly, kmax: int, trials: int, seed: int) -> VerifyReport:
    """The u-direction ladder: multiplying by f moves one step down the
    b-series, in both sign conventions and at the pairing level."""
    get_milnor(f)
    report = VerifyReport("flatness-u", str(f), kmax, trials, seed)
    rng = random.Random(seed)
    vs = f.vars
    n = vs.n
    fam = jacobian_family(f)
    famn = jacobian_family(f, negate=True)
    for trial in range(trials):
        h = random_poly(rng, vs)
        g = random_poly(rng, vs)
        b_h = b_series(fam, h, kmax + 1)
        b_fh = b_series(fam, f * h, kmax + 1)
        bn_g = b_series(famn, g, kmax + 1)
        bn_fg = b_series(famn, f * g, kmax + 1)
        hs = hres_series(f, h, g, kmax + 1)
        hs_fh = hres_series(f, f * h, g, kmax + 1)
        hs_hfg = hres_series(f, h, f * g, kmax + 1)
        for k in range(kmax + 1):
            lhs = b_fh.coeffs[k + 1] - b_h.coeffs[k + 1] * f
            rhs = b_h.coeffs[k] * Fraction(k + n)
            _record(
                report,
                lhs == rhs,
                "trial=%02d k=%d check=ladder+ h=%s" % (trial, k, h),
                rhs,
                lhs,
            )
            lhs_n = bn_g.coeffs[k + 1] * f - bn_fg.coeffs[k + 1]
            rhs_n = bn_g.coeffs[k] * Fraction(k + n)
            _record(
                report,
                lhs_n == rhs_n,
                "trial=%02d k=%d check=ladder- g=%s" % (trial, k, g),
                rhs_n,
                lhs_n,
            )
            lhs_p = hs_fh[k + 1] - hs_hfg[k + 1]
            rhs_p = Fraction(k + n) * hs[k]
            _record(
                report,
                lhs_p == rhs_p,
                "trial=%02d k=%d check=ladder-pairing h=%s g=%s" % (trial, k, h, g),
                rhs_p,
                lhs_p,
            )
    report.sort()
    return report


def check_flatness_z(
    f: MultiPoly, etas, kmax: int, trials: int, seed: int
) -> VerifyReport:
    """The z-direction flatness of the b-series for the deformation
    F = f + sum z_i eta_i, in both sign conventions."""
    milnor = get_milnor(f)
    etas = list(etas) if etas is not None else list(milnor.basis_polys())
    report = VerifyReport("flatness-z", str(f), kmax, trials, seed)
    rng = random.Random(seed)
    vs = f.vars
    taken = set(vs.names)
    z_names = []
    for i in range(len(etas)):
        name = "z%d" % (i + 1)
        while name in taken:
            name += "_"
        taken.add(name)
        z_names.append(name)
    _, fam_pos, ext = deformed_family(f, etas, z_names)
    _, fam_neg, _ = deformed_family(f, etas, z_names, negate=True)
    etas_ext = [e.transport(ext) for e in etas]
    for trial in range(trials):
        h = random_poly(rng, vs).transport(ext)
        for fam, sgn, label in ((fam_pos, 1, "+"), (fam_neg, -1, "-")):
            b_h = b_series(fam, h, kmax + 1)
            for i, (z, eta) in enumerate(zip(z_names, etas_ext)):
                b_eh = b_series(fam, eta * h, kmax + 1)
                for k in range(kmax + 1):
                    lhs = b_h.coeffs[k].diff(z)
                    rhs = (b_eh.coeffs[k + 1] - b_h.coeffs[k + 1] * eta) * Fraction(-sgn)
                    _record(
                        report,
                        lhs == rhs,
                        "trial=%02d sign=%s eta=%s k=%d check=z-flatness h=%s"
                        % (trial, label, etas[i], k, h),
                        rhs,
                        lhs,
                    )
    report.sort()
    return report


def check_characteristic_equation(f: MultiPoly, N: int) -> VerifyReport:
    """The diagonal-kernel residues must reproduce each basis element on
    the nose: u^0 slab equal to it, all higher slabs boundary-trivial."""
    milnor = get_milnor(f)
    report = VerifyReport("char-eq", str(f), N, 0, 0)
    kernel = chern_delta(f)
    for eta in milnor.basis_polys():
        slabs = characteristic_slabs(f, eta, N, kernel)
        nf = twisted_normal_form(slabs, milnor)
        _record(
            report,
            nf.coeffs[0] == eta,
            "eta=%s slab=0" % eta,
            eta,
            nf.coeffs[0],
        )
        for k in range(1, N + 1):
            _record(
                report,
                nf.coeffs[k].is_zero(),
                "eta=%s slab=%d" % (eta, k),
                "0",
                nf.coeffs[k],
            )
    report.sort()
    return report


def qh_vanishing_failures(f: MultiPoly, kmax: int) -> tuple[int, list[Failure]]:
    """For quasi-homogeneous f the pairing is concentrated at order zero on
    the monomial basis. Returns (checks, failures); empty check count when
    no positive weight system exists."""
    if quasi_homogeneous_weights(f) is None:
        return 0, []
    milnor = get_milnor(f)
    basis = milnor.basis_polys()
    checks = 0
    failures: list[Failure] = []
    for a in basis:
        for b in basis:
            series = hres_series(f, a, b, kmax)
            for i in range(1, kmax + 1):
                checks += 1
                if series[i]:
                    failures.append(
                        Failure(
                            "qh a=%s b=%s i=%d" % (a, b, i),
                            "0",
                            str(series[i]),
                        )
                    )
    return checks, failures


def check_symmetries(f: MultiPoly, trials: int, seed: int, N: int) -> VerifyReport:
    """Sign flip of the b-series, the (-1)^i symmetry, sesquilinearity,
    hermitian symmetry of the u^n-shifted pairing, its leading behavior,
    and quasi-homogeneous vanishing when weights exist."""
    get_milnor(f)
    report = VerifyReport("symmetry", str(f), N, trials, seed)
    rng = random.Random(seed)
    vs = f.vars
    n = vs.n
    fam = jacobian_family(f)
    famn = jacobian_family(f, negate=True)
    for trial in range(trials):
        h = random_poly(rng, vs)
        g = random_poly(rng, vs)
        bg_pos = b_series(fam, g, N)
        bg_neg = b_series(famn, g, N)
        for k in range(N + 1):
            lhs = bg_neg.coeffs[k].convert(fam)
            rhs = bg_pos.coeffs[k] * Fraction((-1) ** (n + k))
            _record(
                report,
                lhs == rhs,
                "trial=%02d k=%d check=b-sign-flip g=%s" % (trial, k, g),
                rhs,
                lhs,
            )
        hs = hres_series(f, h, g, N)
        sh = hres_series(f, g, h, N)
        for k in range(N + 1):
            _record(
                report,
                hs[k] == (-1) ** k * sh[k],
                "trial=%02d k=%d check=alternating-symmetry h=%s g=%s" % (trial, k, h, g),
                (-1) ** k * sh[k],
                hs[k],
            )
        w1 = TwistedClass(f, (h, random_poly(rng, vs, allow_zero=True)))
        w2 = TwistedClass(f, (g, random_poly(rng, vs, allow_zero=True)))
        base = pairing_series(f, w1, w2, N)
        left_shift = pairing_series(f, w1.shift(), w2, N)
        right_shift = pairing_series(f, w1, w2.shift(), N)
        expected = base.truncate(N - 1).shift(1) if N else USeries.zero(N, Fraction(0))
        _record(
            report,
            left_shift == expected,
            "trial=%02d check=sesquilinear-left h=%s g=%s" % (trial, h, g),
            expected,
            left_shift,
        )
        _record(
            report,
            right_shift == -expected,
            "trial=%02d check=sesquilinear-right h=%s g=%s" % (trial, h, g),
            -expected,
            right_shift,
        )
        saito_12 = pairing_series(f, w1, w2, N, convention="saito")
        saito_21 = pairing_series(f, w2, w1, N, convention="saito")
        _record(
            report,
            saito_12 == saito_21.star() * Fraction((-1) ** n),
            "trial=%02d check=hermitian h=%s g=%s" % (trial, h, g),
            saito_21.star() * Fraction((-1) ** n),
            saito_12,
        )
        _record(
            report,
            all(not saito_12.coeffs[k] for k in range(n)),
            "trial=%02d check=leading-order h=%s g=%s" % (trial, h, g),
            "0" * n,
            saito_12.coeffs[:n],
        )
        plain = pairing_series(
            f, TwistedClass.from_poly(f, h), TwistedClass.from_poly(f, g), 0, "saito"
        )
        _record(
            report,
            plain.coeffs[n] == res_pairing(f, h, g),
            "trial=%02d check=leading-residue h=%s g=%s" % (trial, h, g),
            res_pairing(f, h, g),
            plain.coeffs[n],
        )
    checks, failures = qh_vanishing_failures(f, min(N, 6) if N else 0)
    report.instances += checks
    report.failures.extend(failures)
    report.sort()
    return report


def run_suite(
    f: MultiPoly,
    suite: str,
    order: int,
    trials: int,
    seed: int,
    etas=None,
) -> list[VerifyReport]:
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise UsageError("unknown suite %r (have all, %s)" % (suite, ", ".join(SUITES)))
    reports = []
    for name in names:
        if name == "closedness":
            reports.append(check_closedness(f, trials, seed, order))
        elif name == "flatness-u":
            reports.append(check_flatness_u(f, order, trials, seed))
        elif name == "flatness-z":
            reports.append(check_flatness_z(f, etas, order, trials, seed))
        elif name == "char-eq":
            reports.append(check_characteristic_equation(f, order))
        elif name == "symmetry":
            reports.append(check_symmetries(f, trials, seed, order))
    return reports
