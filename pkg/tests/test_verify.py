import json
import random

import pytest

from residue_forge.errors import UsageError
from residue_forge.parse import parse_poly
from residue_forge.poly import VarSet
from residue_forge.verify import (
    Failure,
    VerifyReport,
    check_characteristic_equation,
    check_closedness,
    check_flatness_u,
    check_flatness_z,
    check_phi_identities,
    check_symmetries,
    qh_vanishing_failures,
    random_denominator_poly,
    random_poly,
    run_suite,
)

VS1 = VarSet(("x",))
VS2 = VarSet(("x", "y"))


class TestRandomPoly:
    def test_respects_bounds(self):
        rng = random.Random(51)
        for _ in range(50):
            p = random_poly(rng, VS2, max_degree=3, max_terms=4)
            assert not p.is_zero()
            assert len(p.terms) <= 4
            assert all(sum(e) <= 3 for e in p.terms)
            assert all(c.denominator == 1 for c in p.terms.values())

    def test_seeded_stream_is_stable(self):
        a = [str(random_poly(random.Random(7), VS1)) for _ in range(3)]
        b = [str(random_poly(random.Random(7), VS1)) for _ in range(3)]
        assert a == b

    def test_denominator_candidates_have_nonzero_partials(self):
        rng = random.Random(52)
        for _ in range(20):
            p = random_denominator_poly(rng, VS2)
            assert all(not p.diff(name).is_zero() for name in VS2.active)


class TestReportShape:
    def test_sorting_and_smallest(self):
        r = VerifyReport("closedness", "x^2", 2, 1, 0)
        r.instances = 3
        r.failures = [
            Failure("trial=02 z", "0", "1"),
            Failure("trial=01 a", "0", "2"),
        ]
        r.sort()
        assert [x.fingerprint for x in r.failures] == ["trial=01 a", "trial=02 z"]
        d = r.to_dict()
        assert d["passed"] is False
        assert d["smallest_failure"]["fingerprint"] == "trial=01 a"
        assert d["failures"][0]["got"] == "2"
        json.dumps(d)  # must be serializable as-is

    def test_empty_report_passes(self):
        r = VerifyReport("symmetry", "x^2", 1, 1, 0)
        assert r.passed
        assert r.to_dict()["smallest_failure"] is None


class TestSuitesPass:
    def test_closedness_small(self):
        f = parse_poly("x^2", VS1)
        r = check_closedness(f, trials=2, seed=3, N=2)
        assert r.passed and r.instances == 6

    def test_flatness_u_small(self):
        f = parse_poly("x^3", VS1)
        r = check_flatness_u(f, kmax=2, trials=2, seed=3)
        assert r.passed and r.instances > 0

    def test_flatness_z_small(self):
        f = parse_poly("x^2", VS1)
        r = check_flatness_z(f, None, 2, trials=1, seed=3)
        assert r.passed and r.instances > 0

    def test_flatness_z_explicit_etas(self):
        f = parse_poly("x^2", VS1)
        etas = [parse_poly("1", VS1), parse_poly("x", VS1)]
        r = check_flatness_z(f, etas, 2, trials=1, seed=3)
        assert r.passed

    def test_char_eq_small(self):
        f = parse_poly("x^3", VS1)
        r = check_characteristic_equation(f, N=3)
        assert r.passed and r.instances > 0

    def test_symmetry_small(self):
        f = parse_poly("x^2+y^3", VS2)
        r = check_symmetries(f, trials=2, seed=3, N=2)
        assert r.passed and r.instances > 0

    def test_phi_identities_small(self):
        r = check_phi_identities(trials=6, seed=3, N=3)
        assert r.passed and r.instances > 0

    def test_qh_vanishing(self):
        f = parse_poly("x^3+y^3", VS2)
        count, failures = qh_vanishing_failures(f, kmax=4)
        assert count > 0 and failures == []


class TestDeterminism:
    def test_same_seed_same_report(self):
        f = parse_poly("x^2+y^3", VS2)
        a = check_symmetries(f, trials=2, seed=9, N=2).to_dict()
        b = check_symmetries(f, trials=2, seed=9, N=2).to_dict()
        assert a == b
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_different_seeds_differ_in_fingerprints_only(self):
        f = parse_poly("x^2", VS1)
        a = check_closedness(f, trials=1, seed=1, N=2)
        b = check_closedness(f, trials=1, seed=2, N=2)
        assert a.passed and b.passed
        assert a.seed != b.seed


class TestRunSuite:
    def test_single_suite(self):
        f = parse_poly("x^2", VS1)
        reports = run_suite(f, "closedness", order=2, trials=1, seed=0)
        assert [r.suite for r in reports] == ["closedness"]

    def test_all_runs_everything(self):
        f = parse_poly("x^2", VS1)
        reports = run_suite(f, "all", order=2, trials=1, seed=0)
        assert [r.suite for r in reports] == [
            "closedness",
            "flatness-u",
            "flatness-z",
            "char-eq",
            "symmetry",
        ]
        assert all(r.passed for r in reports)

    def test_unknown_suite(self):
        with pytest.raises(UsageError):
            run_suite(parse_poly("x^2", VS1), "everything", 2, 1, 0)


class TestRejectsBadInput:
    def test_non_isolated_function(self):
        from residue_forge.errors import InputValidationError

        f = parse_poly("x^2", VS2)  # no y dependence: gradient degenerate
        with pytest.raises((UsageError, InputValidationError)):
            run_suite(f, "closedness", 2, 1, 0)
