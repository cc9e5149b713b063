import pytest

from smlat.casebook import run_casebook
from smlat.errors import FixtureMismatch
from smlat.fixtures import NAMES, PAIRS, load, load_pair


def test_all_fixtures_load_and_validate():
    for name in NAMES:
        inst = load(name)
        assert inst.name == name
    for pair in PAIRS:
        a, b = load_pair(pair)
        assert a.n == b.n


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load("zzz")


def test_casebook_all_pass():
    report = run_casebook(raise_on_failure=True)
    assert report.ok
    assert len(report.verdicts) >= 30
    for v in report.verdicts:
        assert v["detail"].startswith(("claimed", "trivial", "derived"))
    # every fixture pair contributes facts
    names = {v["name"].split(":")[0] for v in report.verdicts}
    assert names == {"n4", "n5-firms", "n5-both", "n6"}


def test_casebook_mismatch_raises(monkeypatch):
    import smlat.casebook as cb

    def sabotaged(add):
        add("n4", "deliberately false", "derived", lambda: False)

    monkeypatch.setattr(cb, "_facts_n4", sabotaged)
    with pytest.raises(FixtureMismatch, match="deliberately false"):
        cb.run_casebook(raise_on_failure=True)
    report = cb.run_casebook()
    assert not report.ok
