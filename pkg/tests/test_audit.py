import pytest

from periodkit.audit import CHECKS, audit


@pytest.mark.parametrize("n", [1, 2])
def test_full_audit_passes(n):
    report = audit(n)
    assert report["all_pass"], {k: v for k, v in report["checks"].items() if not v["pass"]}
    assert list(report["checks"]) == sorted(CHECKS)
    assert all(c["checked"] > 0 for c in report["checks"].values())


def test_sign_flip_mutation_is_caught():
    report = audit(2, mutation="rep-sign-flip", only=["graph.rho-covariance"])
    entry = report["checks"]["graph.rho-covariance"]
    assert not entry["pass"] and entry["failures"]
    assert not report["all_pass"]


def test_worker_pool_merges_deterministically():
    assert audit(2, jobs=3) == audit(2)


def test_unknown_mutation():
    with pytest.raises(ValueError):
        audit(1, mutation="nonsense")
