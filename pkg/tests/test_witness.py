import json

import pytest

from lierack.errors import ClaimFailed, UnknownWitness
from lierack.witness import CATALOG, Recorder, run_all, run_witness, witness_ids


@pytest.mark.parametrize("wid", witness_ids())
def test_fast_witness_passes(wid):
    rep = run_witness(wid, abort=False)
    assert rep.ok, rep.failed
    assert rep.results
    assert all(r.tag == "fast" for r in rep.results)


def test_ids_are_unique_and_stable():
    ids = witness_ids()
    assert len(ids) == len(set(ids))
    assert ids[0] == "W-SP4-9" and "W-SU4" in ids


def test_unknown_witness():
    with pytest.raises(UnknownWitness):
        run_witness("W-NOPE")


def test_recorder_aborts_on_first_failure():
    rec = Recorder("W-T", {"fast"}, abort=True)
    rec.claim("holds", True)
    with pytest.raises(ClaimFailed):
        rec.claim("breaks", False, detail=[1, 2])
    assert [r.passed for r in rec.results] == [True, False]


def test_recorder_skips_unwanted_tags():
    rec = Recorder("W-T", {"fast"}, abort=True)
    assert rec.claim("slow one", False, tag="slow") is None
    assert rec.results == []


def test_run_all_filters():
    assert run_all("none") == []
    with pytest.raises(ValueError):
        run_all("sometimes")
    fast = run_all("fast")
    assert [r.id for r in fast] == witness_ids()


def test_json_lines_are_parseable():
    rep = run_witness("W-LABELPAIR")
    for line in rep.json_lines():
        obj = json.loads(line)
        assert obj["witness"] == "W-LABELPAIR"
        assert set(obj) == {"witness", "claim", "kind", "tag", "passed", "values"}


def test_slow_cases_declared():
    assert [c.id for c in CATALOG if c.has_slow] == ["W-SU4"]
