import random
from fractions import Fraction

import pytest

from residue_forge.cech import (
    CechElement,
    cech_differential,
    kunneth_wedge,
    omega_rep,
    wedge_top_reduction,
)
from residue_forge.errors import UsageError
from residue_forge.localized import DenominatorFamily, LocalizedRational
from residue_forge.pairing import hres_series
from residue_forge.parse import parse_poly
from residue_forge.poly import MultiPoly, VarSet
from residue_forge.residue import res_localized
from residue_forge.series import USeries
from residue_forge.twisted import jacobian_family
from residue_forge.verify import random_poly

VS1 = VarSet(("x",))
VS2 = VarSet(("x", "y"))


def mk(text, vs=VS2):
    return parse_poly(text, vs)


def const_series(fam, poly, order):
    zero = LocalizedRational.zero(fam)
    return USeries([LocalizedRational.from_poly(fam, poly)], order, zero)


def lifted(fam, numtext, m, vs=VS2):
    return LocalizedRational(fam, parse_poly(numtext, vs), m)


class TestElementBasics:
    def setup_method(self):
        self.fam = jacobian_family(mk("x^3+y^3"))
        self.zero = LocalizedRational.zero(self.fam)

    def series(self, poly):
        return const_series(self.fam, poly, 1)

    def test_zero_components_pruned(self):
        e = CechElement(self.fam, 1, {((), ()): USeries.zero(1, self.zero)})
        assert e.components == {}
        assert e.is_zero()

    def test_bad_index_sets(self):
        s = self.series(mk("x"))
        for key in (((1, 0), ()), ((0, 0), ()), ((), (2,))):
            with pytest.raises(UsageError):
                CechElement(self.fam, 1, {key: s})

    def test_order_mismatch(self):
        with pytest.raises(UsageError):
            CechElement(self.fam, 2, {((), ()): self.series(mk("x"))})

    def test_component_defaults_to_zero(self):
        e = CechElement(self.fam, 1, {((0,), ()): self.series(mk("x"))})
        assert e.component(((), (1,))).is_zero()
        assert e.component(((0,), ())) == self.series(mk("x"))

    def test_linear_structure(self):
        a = CechElement(self.fam, 1, {((0,), ()): self.series(mk("x"))})
        b = CechElement(self.fam, 1, {((0,), ()): self.series(mk("y"))})
        s = a + b
        assert s.component(((0,), ())) == self.series(mk("x+y"))
        assert (s - a) == b
        assert (a * Fraction(0)).is_zero()
        assert (-a) + a == CechElement.zero(self.fam, 1)


class TestWedge:
    def setup_method(self):
        self.fam = jacobian_family(mk("x^3+y^3"))

    def one_term(self, key, poly):
        return CechElement(self.fam, 1, {key: const_series(self.fam, poly, 1)})

    def test_odd_generators_anticommute(self):
        pairs = [
            (((0,), ()), ((1,), ())),
            (((0,), ()), ((), (1,))),
            (((), (0,)), ((), (1,))),
            (((0,), (1,)), ((1,), (0,))),
        ]
        for k1, k2 in pairs:
            deg1 = len(k1[0]) + len(k1[1])
            deg2 = len(k2[0]) + len(k2[1])
            e1 = self.one_term(k1, mk("x"))
            e2 = self.one_term(k2, mk("y+1"))
            flip = Fraction((-1) ** (deg1 * deg2))
            assert e1.wedge(e2) == e2.wedge(e1) * flip

    def test_repeated_generator_vanishes(self):
        e = self.one_term(((0,), ()), mk("x"))
        assert e.wedge(e).is_zero()
        d = self.one_term(((), (0,)), mk("1"))
        assert d.wedge(d).is_zero()

    def test_normal_order_sign(self):
        # dx1 appearing left of a1 pays one inversion
        a1 = self.one_term(((0,), ()), mk("1"))
        dx1 = self.one_term(((), (0,)), mk("1"))
        expect = CechElement(
            self.fam, 1, {((0,), (0,)): const_series(self.fam, mk("1"), 1)}
        )
        assert a1.wedge(dx1) == expect
        assert dx1.wedge(a1) == expect * Fraction(-1)


class TestDifferentialByHand:
    """Single-variable images, frozen term by term."""

    def setup_method(self):
        self.f = parse_poly("x^3", VS1)
        self.fam = jacobian_family(self.f)
        self.zero = LocalizedRational.zero(self.fam)

    def test_untwisted_on_a_function(self):
        h = parse_poly("x", VS1)
        e = CechElement(self.fam, 1, {((), ()): const_series(self.fam, h, 1)})
        img = cech_differential(e, None)
        assert img.component(((0,), ())) == const_series(self.fam, h, 1)
        # u d(x) = u dx
        want = USeries(
            [self.zero, LocalizedRational.from_poly(self.fam, parse_poly("1", VS1))],
            1,
            self.zero,
        )
        assert img.component(((), (0,))) == want
        assert set(img.components) == {((0,), ()), ((), (0,))}

    def test_twisted_on_a_function(self):
        h = parse_poly("x", VS1)
        e = CechElement(self.fam, 1, {((), ()): const_series(self.fam, h, 1)})
        img = cech_differential(e, self.f)
        # dx slot now carries -x d(x^3) + u dx = (-3x^3 + u) dx
        want = USeries(
            [
                LocalizedRational.from_poly(self.fam, parse_poly("-3*x^3", VS1)),
                LocalizedRational.from_poly(self.fam, parse_poly("1", VS1)),
            ],
            1,
            self.zero,
        )
        assert img.component(((), (0,))) == want

    def test_on_alpha_slot(self):
        # e = (1/(3x^2)) a1; with twist x^3 the dx part of D e is
        # (1 + u * 6x/(9x^4)) a1 dx
        v = LocalizedRational(self.fam, parse_poly("1", VS1), (1,))
        e = CechElement(self.fam, 1, {((0,), ()): USeries([v], 1, self.zero)})
        img = cech_differential(e, self.f)
        want = USeries(
            [
                LocalizedRational.from_poly(self.fam, parse_poly("1", VS1)),
                LocalizedRational(self.fam, parse_poly("6*x", VS1), (2,)),
            ],
            1,
            self.zero,
        )
        assert set(img.components) == {((0,), (0,))}
        assert img.component(((0,), (0,))) == want

    def test_dx_slot_only_grows_alpha(self):
        h = parse_poly("x^2", VS1)
        e = CechElement(self.fam, 1, {((), (0,)): const_series(self.fam, h, 1)})
        img = cech_differential(e, self.f)
        assert set(img.components) == {((0,), (0,))}
        assert img.component(((0,), (0,))) == const_series(self.fam, h, 1)


class TestDifferentialSquared:
    def test_dd_is_zero_two_vars(self):
        f = mk("x^3+y^3")
        fam = jacobian_family(f)
        zero = LocalizedRational.zero(fam)
        rng = random.Random(31)
        keys = [((), ()), ((0,), ()), ((), (1,)), ((1,), (0,))]
        for _ in range(3):
            comps = {}
            for key in keys:
                coeffs = [
                    LocalizedRational(
                        fam, random_poly(rng, VS2), (rng.randrange(0, 2), rng.randrange(0, 2))
                    )
                    for _ in range(3)
                ]
                comps[key] = USeries(coeffs, 2, zero)
            e = CechElement(fam, 2, comps)
            for twist in (f, -f, None):
                assert cech_differential(cech_differential(e, twist), twist).is_zero()


class TestOmegaRep:
    def test_function_slot_is_h(self):
        f = mk("x^3+y^3")
        h = mk("x*y+2")
        e = omega_rep(f, h, 2)
        fam = e.family
        assert e.component(((), (0, 1))) == const_series(fam, h, 2)
        assert set(e.components) <= {((), (0, 1)), ((0,), (1,)), ((1,), (0,)), ((0, 1), ())}

    def test_closed_under_twisted_differential(self):
        for ftext, vs in (("x^2", VS1), ("x^2+y^3", VS2)):
            f = parse_poly(ftext, vs)
            h = parse_poly("1", vs) + f
            assert cech_differential(omega_rep(f, h, 3), f).is_zero()
            assert cech_differential(omega_rep(f, h, 3, negate=True), -f).is_zero()

    def test_not_closed_for_wrong_twist(self):
        f = parse_poly("x^2", VS1)
        e = omega_rep(f, parse_poly("1", VS1), 2)
        assert not cech_differential(e, -f).is_zero()


class TestTopReduction:
    @pytest.mark.parametrize(
        "ftext,vs", [("x^2", VS1), ("x^3", VS1), ("x^3+y^3", VS2)]
    )
    def test_matches_direct_series(self, ftext, vs):
        f = parse_poly(ftext, vs)
        rng = random.Random(32)
        n = vs.n
        for _ in range(3):
            h = random_poly(rng, vs)
            g = random_poly(rng, vs)
            red = wedge_top_reduction(f, h, g, 3)
            direct = hres_series(f, h, g, 3)
            got = [res_localized(red.coeff(k)).as_fraction() * (-1) ** n for k in range(4)]
            assert got == direct

    def test_kunneth_wedge_lands_on_top(self):
        f = mk("x^2+y^3")
        a = omega_rep(f, mk("x"), 2)
        b = omega_rep(f, mk("y"), 2, negate=True)
        w = kunneth_wedge(a, b)
        assert set(w.components) <= {((0, 1), (0, 1))}

    def test_convert_family_requires_constant_ratios(self):
        fam = jacobian_family(mk("x^3+y^3"))
        other = DenominatorFamily(VS2, (mk("3*x^2"), mk("y^3")))
        e = CechElement(fam, 1, {((), ()): const_series(fam, mk("x"), 1)})
        with pytest.raises(UsageError):
            e.convert_family(other)
