"""Acceptance criteria 1-11, one pass/fail line each.

Every criterion is checked exactly as stated. Criteria that disagree with the
differentials are left failing; see the diagnostics in test_specseq.py.
"""
import pytest

from bcdual.verify import CRITERIA, run_all


@pytest.fixture(scope="session")
def reports():
    return {k: (rep, secs) for k, rep, secs in run_all()}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, reports, capsys):
    rep, secs = reports[k]
    with capsys.disabled():
        print(f"\nACCEPTANCE criterion {k:2d}: {'PASS' if rep.ok else 'FAIL'} ({secs:.1f}s) {rep.name}")
        for line in rep.details[:3]:
            print(f"    {line}")
    assert rep.ok, "\n".join(rep.details[:10])
