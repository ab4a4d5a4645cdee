"""Acceptance table: every criterion runs at its stated tolerance.

Each test executes one criterion end to end and prints the same PASS/FAIL
line the reproduce-paper command emits, so `pytest -v` doubles as the
acceptance report.
"""

import pytest

from planepart import reproduce


@pytest.mark.parametrize("name,func", reproduce.CRITERIA, ids=[n for n, _ in reproduce.CRITERIA])
def test_criterion(name, func, tmp_path, capsys):
    ok, detail, records = func(str(tmp_path))
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert records, "every criterion must log at least one run record"
    assert ok, detail


def test_manifest_written(tmp_path):
    rc = reproduce.run(outdir=str(tmp_path), only="criterion-3")
    assert rc == 0
    assert (tmp_path / "manifest.json").exists()
