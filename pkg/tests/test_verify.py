import pytest

from qho_fourier import verify


@pytest.mark.parametrize("suite", verify.SUITES)
def test_suite_passes(suite):
    checks = verify.run_suite(suite)
    assert checks
    for c in checks:
        assert c.name.startswith(suite + ".")
        assert c.passed, c


def test_check_names_unique():
    names = [c.name for c in verify.run_suite("all")]
    assert len(names) == len(set(names))


def test_check_at_most():
    assert verify.Check.at_most("x.y", 1.0, 1.0).passed
    assert not verify.Check.at_most("x.y", float("nan"), 1.0).passed


def test_scan_values_include_endpoint():
    values = verify.scan_values(-0.45, 6.05, 0.05)
    assert values[0] == -0.45 and values[-1] == 6.05 and len(values) == 131
    assert 0.0 in values and 6.0 in values
