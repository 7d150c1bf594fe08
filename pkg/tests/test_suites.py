import pytest

from msolab.errors import InputError
from msolab.inner import monomial_inner
from msolab.laurent import LaurentPolynomial
from msolab.suites import SuiteConfig, run_fuzz, run_suite


def test_run_suite_dispatch_and_unknown():
    report = run_suite("fuzz", SuiteConfig(cases=3, seed=5))
    assert report["suite"] == "fuzz" and report["pass"]
    with pytest.raises(InputError):
        run_suite("everything")


def test_fuzz_records_are_ordered_and_detailed():
    report = run_fuzz(SuiteConfig(cases=4, seed=5, workers=2))
    assert [rec["case"] for rec in report["records"]] == [0, 1, 2, 3]
    rec = report["records"][0]
    assert set(rec["membership_defects"]) == {
        "that-toeplitz", "tcheck-coupling", "hankel-intertwine",
        "corner-consistency"}
    assert rec["shift_defect"] <= 1e-10


def test_fuzz_honours_pinned_operator():
    config = SuiteConfig(theta=monomial_inner(2), alpha=monomial_inner(2),
                         symbol=LaurentPolynomial({1: 1.0}), M=8, cases=2,
                         seed=1)
    report = run_fuzz(config)
    assert report["pass"]
    assert all(rec["M"] == 8 for rec in report["records"])


def test_config_guard_validation():
    config = SuiteConfig(theta=monomial_inner(2), alpha=monomial_inner(2),
                         symbol=LaurentPolynomial({3: 1.0}), M=5)
    with pytest.raises(InputError):
        config.validate()
    with pytest.raises(InputError):
        SuiteConfig(tol=-1.0).validate()


def test_workers_do_not_change_results():
    serial = run_fuzz(SuiteConfig(cases=4, seed=17, workers=1))
    parallel = run_fuzz(SuiteConfig(cases=4, seed=17, workers=4))
    assert serial["records"] == parallel["records"]
