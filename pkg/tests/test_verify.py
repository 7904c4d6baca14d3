import json

from mgdiv.verify import FAIL, FLAGGED, KNOWN_MISMATCHES, PASS, SUITES, Check, VerifyReport, run_suite


def test_full_report_shape(full_report):
    s = full_report.summary
    assert s["fail"] == 0
    assert s["flagged"] == len(KNOWN_MISMATCHES) == 2
    assert s["total"] == s["pass"] + s["flagged"]
    ids = [ch.id for ch in full_report.checks]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)
    assert {ch.id.split("/")[0] for ch in full_report.checks} == {
        "eq", "curves", "canrep11", "canrep10", "uniruled", "slope", "node7"}


def test_named_checks(full_report):
    by_id = {ch.id: ch for ch in full_report.checks}
    ch = by_id["curves/Rtilde.K[g=11]"]
    assert ch.status == PASS and ch.computed == "-1"
    assert by_id["canrep11/pointed/d[1:0]"].status == FLAGGED
    assert by_id["canrep10/d[1:0]"].status == FLAGGED


def test_json_round_trip(full_report):
    data = json.loads(full_report.render("json"))
    back = VerifyReport.from_json(data)
    assert back.render("json") == full_report.render("json")


def test_tsv_and_text(full_report):
    tsv = full_report.render("tsv").splitlines()
    assert tsv[0].split("\t")[0] == "id"
    assert len(tsv) == len(full_report.checks) + 1
    text = full_report.render("text")
    assert text.rstrip().endswith("2 flagged")
    assert "." not in full_report.summary.__repr__()


def test_exit_code_contract():
    good = VerifyReport("x", (Check("a", "", 1, "derived", "1", PASS),))
    flagged = VerifyReport("x", (Check("a", "", 1, "derived", "2", FLAGGED),))
    bad = VerifyReport("x", (Check("a", "", 1, "derived", "2", FAIL),))
    assert good.exit_code() == 0 and flagged.exit_code() == 0 and bad.exit_code() == 1
    assert VerifyReport("all", ()).exit_code() != 0


def test_each_suite_runs():
    for suite in ("canrep10", "slope"):
        rep = run_suite(suite)
        assert rep.checks and all(ch.id.startswith(suite) for ch in rep.checks)
    assert len(SUITES) == 7


def test_rationals_print_exactly(full_report):
    for ch in full_report.checks:
        assert "e-" not in ch.computed and "0." not in ch.computed
