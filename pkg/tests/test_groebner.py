import random
from fractions import Fraction

import pytest

from oracles import brute_force_quotient_dimension
from residue_forge.errors import InputValidationError, UsageError
from residue_forge.groebner import (
    MilnorAlgebra,
    buchberger,
    milnor_data,
    normal_form,
    power_containment,
    quasi_homogeneous_weights,
    standard_monomials,
)
from residue_forge.parse import parse_poly
from residue_forge.poly import MultiPoly, VarSet


def mk(text, names=("x", "y")):
    return parse_poly(text, VarSet(tuple(names)))


class TestBuchberger:
    def test_pure_powers_stay_put(self):
        gb = buchberger([mk("3*x^2"), mk("3*y^2")])
        assert sorted(str(b) for b in gb.basis) == ["x^2", "y^2"]

    def test_cofactors_rebuild_basis(self):
        gens = [mk("x^2 + y"), mk("x*y - 1"), mk("y^3 + x")]
        gb = buchberger(gens)
        for b, row in zip(gb.basis, gb.cofactors):
            rebuilt = MultiPoly.zero(b.vars)
            for c, g in zip(row, gens):
                rebuilt = rebuilt + c * g
            assert rebuilt == b

    def test_basis_is_reduced_and_monic(self):
        gb = buchberger([mk("2*x^2 + y"), mk("5*y^2")])
        for i, b in enumerate(gb.basis):
            assert b.leading()[1] == 1
            for j, other in enumerate(gb.basis):
                if i == j:
                    continue
                lm = other.leading()[0]
                assert all(
                    any(e < m for e, m in zip(exps, lm)) for exps in b.terms
                )

    def test_random_systems_cofactor_identity(self):
        rng = random.Random(3)
        vs = VarSet(("x", "y"))
        for _ in range(10):
            gens = []
            for _ in range(rng.randint(1, 3)):
                terms = {
                    (rng.randint(0, 3), rng.randint(0, 3)): Fraction(rng.randint(-4, 4))
                    for _ in range(rng.randint(1, 4))
                }
                p = MultiPoly(vs, terms)
                if not p.is_zero():
                    gens.append(p)
            if not gens:
                continue
            gb = buchberger(gens)
            for b, row in zip(gb.basis, gb.cofactors):
                rebuilt = MultiPoly.zero(vs)
                for c, g in zip(row, gens):
                    rebuilt = rebuilt + c * g
                assert rebuilt == b

    def test_rejects_parameters_and_zero(self):
        big = VarSet(("x",), parameters=("z",))
        with pytest.raises(UsageError):
            buchberger([MultiPoly.variable(big, "z")])
        with pytest.raises(UsageError):
            buchberger([])
        with pytest.raises(UsageError):
            buchberger([MultiPoly.zero(VarSet(("x",)))])


class TestNormalForm:
    def test_remainder_plus_combination(self):
        gens = [mk("x^2 - y"), mk("y^2 - 1")]
        gb = buchberger(gens)
        p = mk("x^5 + x*y^3 - 2")
        r, combo = normal_form(gb, p)
        rebuilt = r
        for c, g in zip(combo, gens):
            rebuilt = rebuilt + c * g
        assert rebuilt == p
        for b in gb.basis:
            lm = b.leading()[0]
            assert all(any(e < m for e, m in zip(exps, lm)) for exps in r.terms)

    def test_membership_detection(self):
        gens = [mk("x^2"), mk("y^2")]
        gb = buchberger(gens)
        r, _ = normal_form(gb, mk("x^3*y + x^2"))
        assert r.is_zero()
        r, _ = normal_form(gb, mk("x*y"))
        assert r == mk("x*y")


class TestStandardMonomials:
    def test_finite_cases(self):
        gb = buchberger([mk("3*x^2"), mk("3*y^2")])
        std = standard_monomials(gb)
        assert std == ((0, 0), (0, 1), (1, 0), (1, 1))

    def test_infinite_detected(self):
        # x^2*y has gradient (2xy, x^2): no pure power of y in the ideal
        f = mk("x^2*y")
        gb = buchberger([f.diff("x"), f.diff("y")])
        assert standard_monomials(gb) is None


MU_TABLE = [
    ("x^2", ("x",), 1),
    ("x^3", ("x",), 2),
    ("x^4", ("x",), 3),
    ("x^6", ("x",), 5),
    ("x^2+y^3", ("x", "y"), 2),
    ("x^3+y^3", ("x", "y"), 4),
    ("x^2+y^2", ("x", "y"), 1),
    ("x^3+y^3+x^2*y", ("x", "y"), 4),
    ("x^4+y^4+x^2*y^2", ("x", "y"), 9),
]


class TestMilnorData:
    @pytest.mark.parametrize("text,names,mu", MU_TABLE, ids=[t for t, _, _ in MU_TABLE])
    def test_mu_against_quotient_dimension_oracle(self, text, names, mu):
        f = mk(text, names)
        md = milnor_data(f)
        assert md.mu == mu
        gens = [f.diff(n) for n in f.vars.active]
        cap = 8
        d1 = brute_force_quotient_dimension(gens, cap)
        d2 = brute_force_quotient_dimension(gens, cap + 1)
        assert d1 == d2 == md.mu

    def test_basis_starts_with_one(self):
        for text, names, _ in MU_TABLE:
            md = milnor_data(mk(text, names))
            assert str(md.basis_polys()[0]) == "1"

    def test_frozen_bases(self):
        assert [str(b) for b in milnor_data(mk("x^2+y^3")).basis_polys()] == ["1", "y"]
        assert [str(b) for b in milnor_data(mk("x^3+y^3")).basis_polys()] == [
            "1", "y", "x", "x*y",
        ]

    def test_reduce_projects_to_basis_span(self):
        md = milnor_data(mk("x^3+y^3"))
        r = md.reduce(mk("x^2*y^2 + x + 1"))
        basis_exps = set(md.basis_exps)
        assert set(r.terms) <= basis_exps

    def test_rejections(self):
        with pytest.raises(InputValidationError):
            milnor_data(mk("x^2*y"))          # non-isolated
        with pytest.raises(InputValidationError):
            milnor_data(mk("x^3+x^4", ("x",)))  # critical locus off the origin
        with pytest.raises(InputValidationError):
            milnor_data(mk("x^2+x", ("x",)))  # gradient nonzero at origin
        with pytest.raises(InputValidationError):
            milnor_data(mk("0", ("x",)))
        with pytest.raises(InputValidationError):
            milnor_data(mk("x^2"))            # y-partial identically zero


class TestPowerContainment:
    def test_certificate_identity(self):
        f = mk("x^3+y^3+x^2*y")
        gens = tuple(f.diff(n) for n in f.vars.active)
        cert = power_containment(gens)
        cert.check()
        vs = gens[0].vars
        for i, name in enumerate(vs.active):
            power = MultiPoly.variable(vs, name) ** cert.exponents[i]
            rebuilt = MultiPoly.zero(vs)
            for c, g in zip(cert.rows[i], gens):
                rebuilt = rebuilt + c * g
            assert rebuilt == power

    def test_exponents_bounded_by_quotient_dimension(self):
        f = mk("x^3+y^3")
        gens = tuple(f.diff(n) for n in f.vars.active)
        cert = power_containment(gens)
        assert all(1 <= d <= 4 for d in cert.exponents)

    def test_non_primary_rejected(self):
        f = mk("x^2*y")
        gens = tuple(f.diff(n) for n in f.vars.active)
        with pytest.raises(InputValidationError):
            power_containment(gens)


class TestQuasiHomogeneousWeights:
    def test_known_weight_systems(self):
        assert quasi_homogeneous_weights(mk("x^3+y^3")) == (
            Fraction(1, 3), Fraction(1, 3),
        )
        assert quasi_homogeneous_weights(mk("x^2+y^3")) == (
            Fraction(1, 2), Fraction(1, 3),
        )
        assert quasi_homogeneous_weights(mk("x^5", ("x",))) == (Fraction(1, 5),)

    def test_weight_system_validates(self):
        f = mk("x^3+y^3+x^2*y")
        w = quasi_homogeneous_weights(f)
        assert w == (Fraction(1, 3), Fraction(1, 3))
        for exps in f.terms:
            assert sum(wi * e for wi, e in zip(w, exps[:2])) == 1

    def test_inconsistent_terms_give_none(self):
        assert quasi_homogeneous_weights(mk("x^4+y^4+x^2*y^2+x^3*y^2")) is None
