import csv
import io
import json

from legdet.cli import main as cli_main
from legdet.harness import (
    CHECK_IDS,
    CheckResult,
    RunConfig,
    applicable_primes,
    code_version,
    default_d_list,
    primes_between,
    revalidate,
    run,
    run_check,
    verify_background,
    verify_conjecture_a,
    verify_corollary_a,
    verify_theorem_a,
)


def test_primes_between():
    assert primes_between(3, 20) == [3, 5, 7, 11, 13, 17, 19]
    assert applicable_primes("theorem-a", 30) == [5, 13, 17, 29]
    assert applicable_primes("conjecture-a", 30) == [3, 7, 11, 19, 23]
    assert applicable_primes("carlitz", 12) == [3, 5, 7, 11]


def test_default_d_list_deterministic():
    d1 = default_d_list(13)
    d2 = default_d_list(13)
    assert d1 == d2
    for base in (1, 2, 3, 5, 12):
        assert base in d1
    assert all(0 <= d < 13 for d in d1)


def test_theorem_a_full_sweep_p13():
    results = run_check("theorem-a", 13, {"full_sweep": True})
    assert len(results) == 13
    assert all(r.status == "pass" for r in results)
    by_d = {r.params["d"]: r for r in results}
    assert by_d[2].witness["S"] == "0"        # (2/13) = -1 forces S = 0
    assert by_d[1].witness["S"] == "-27"
    assert by_d[1].witness["a"] == "-3"
    assert by_d[1].witness["root"] == "3"
    assert by_d[0].witness["S"] == "0"


def test_theorem_a_stream_small():
    results = list(verify_theorem_a(13, d_list=[1, 2]))
    assert [(r.p, r.params["d"]) for r in results] == [(5, 1), (5, 2), (13, 1), (13, 2)]
    assert all(r.status == "pass" for r in results)


def test_corollary_stream():
    results = list(verify_corollary_a(17))
    assert [r.p for r in results] == [5, 13, 17]
    assert all(r.status == "pass" for r in results)
    assert results[2].witness["Sstar"] == "-441"
    assert results[2].witness["root"] == "21"


def test_conjecture_stream():
    results = list(verify_conjecture_a(11))
    assert [r.p for r in results] == [3, 7, 11]
    assert all(r.status == "pass" for r in results)
    assert results[0].witness["S"] == "-1"


def test_background_stream_small():
    results = list(verify_background(7))
    ids = [(r.check_id, r.p) for r in results]
    assert ("carlitz", 5) in ids and ("chapman-star", 7) in ids
    # the Chapman closed forms genuinely fail at p = 3
    failures = {(r.check_id, r.p) for r in results if r.status == "fail"}
    assert failures == {("chapman", 3), ("chapman-star", 3)}


def test_every_check_runs_on_a_small_prime():
    for check_id in CHECK_IDS:
        p = applicable_primes(check_id, 50)[0]
        results = run_check(check_id, p, {})
        assert results, check_id
        for r in results:
            assert r.check_id == check_id
            assert r.status in ("pass", "fail", "skipped")


def test_revalidate_pass_witnesses():
    sample = []
    sample += run_check("theorem-a", 13, {"d_list": [0, 1, 2, 4]})
    sample += run_check("corollary-a", 13, {})
    sample += run_check("conjecture-a", 7, {})
    sample += run_check("lemma-sign", 13, {})
    sample += run_check("eigen", 13, {})
    sample += run_check("product", 13, {})
    sample += run_check("jacobsthal", 13, {})
    sample += run_check("row-identity", 13, {})
    sample += run_check("carlitz", 7, {})
    sample += run_check("chapman", 13, {})
    sample += run_check("chapman-star", 11, {})
    sample += run_check("sun-zero", 13, {"d_list": [2]})
    sample += run_check("sun-qr", 13, {"d_list": [1, 3]})
    assert all(r.status == "pass" for r in sample)
    for r in sample:
        assert revalidate(r), r


def test_revalidate_catches_tampering():
    r = run_check("theorem-a", 13, {"d_list": [1]})[0]
    bad = CheckResult(r.check_id, r.p, r.params, r.status, dict(r.witness, root="4"))
    assert not revalidate(bad)
    r2 = run_check("product", 13, {})[0]
    bad2 = CheckResult(r2.check_id, r2.p, r2.params, r2.status, dict(r2.witness, prod="0"))
    assert not revalidate(bad2)


def test_run_exit_codes_and_text_output():
    out = io.StringIO()
    config = RunConfig(checks=("corollary-a",), pmax=17, fmt="text")
    assert run(config, out) == 0
    text = out.getvalue()
    assert "PASS  corollary-a" in text
    assert "failed: 0" in text
    # chapman at p = 3 is an honest failure, so the exit code is nonzero
    out = io.StringIO()
    assert run(RunConfig(checks=("chapman",), pmax=3, fmt="text"), out) == 1
    assert "FAIL" in out.getvalue()


def test_run_json_format():
    out = io.StringIO()
    run(RunConfig(checks=("jacobsthal",), pmax=20, fmt="json"), out)
    lines = [l for l in out.getvalue().splitlines() if not l.startswith("#")]
    records = [json.loads(l) for l in lines]
    assert [r["p"] for r in records] == [5, 13, 17]
    assert list(records[0]) == ["check_id", "p", "params", "status", "witness"]


def test_run_csv_format():
    out = io.StringIO()
    run(RunConfig(checks=("jacobsthal",), pmax=20, fmt="csv"), out)
    lines = [l for l in out.getvalue().splitlines() if l and not l.startswith("#")]
    rows = list(csv.reader(lines))
    assert rows[0] == ["check_id", "p", "params", "status", "witness"]
    assert rows[1][0] == "jacobsthal" and rows[1][3] == "pass"
    assert json.loads(rows[1][4])["sum"] == "-1"


def test_cache_warm_run_is_identical_and_append_only(tmp_path):
    cache = tmp_path / "results.jsonl"
    config = RunConfig(
        checks=("corollary-a", "jacobsthal"), pmax=17, fmt="json", cache_path=str(cache)
    )
    out1 = io.StringIO()
    assert run(config, out1) == 0
    size_after_first = cache.stat().st_size
    lines_after_first = cache.read_text().count("\n")
    out2 = io.StringIO()
    assert run(config, out2) == 0
    assert out1.getvalue() == out2.getvalue()
    assert cache.stat().st_size == size_after_first  # warm run appends nothing
    assert cache.read_text().count("\n") == lines_after_first
    for line in cache.read_text().splitlines():
        rec = json.loads(line)
        assert rec["version"] == code_version()


def test_cache_distinguishes_parameters(tmp_path):
    cache = tmp_path / "results.jsonl"
    c1 = RunConfig(checks=("theorem-a",), pmax=5, fmt="json",
                   cache_path=str(cache), d_list=[1])
    c2 = RunConfig(checks=("theorem-a",), pmax=5, fmt="json",
                   cache_path=str(cache), d_list=[2])
    out1, out2 = io.StringIO(), io.StringIO()
    run(c1, out1)
    run(c2, out2)
    assert out1.getvalue() != out2.getvalue()
    assert cache.read_text().count("\n") == 2


def test_cache_covers_empty_result_tasks(tmp_path):
    # d=1 is a residue, so sun-zero yields no results; the task must still cache
    cache = tmp_path / "results.jsonl"
    config = RunConfig(checks=("sun-zero",), pmax=5, fmt="json",
                       cache_path=str(cache), d_list=[1])
    out = io.StringIO()
    run(config, out)
    assert cache.read_text().count("\n") == 1
    from legdet.harness import ResultCache

    warm = ResultCache(cache)
    key = [k for k in warm._records][0]
    assert warm.get(key) == []


def test_parallel_matches_serial():
    serial, parallel = io.StringIO(), io.StringIO()
    run(RunConfig(checks=("corollary-a",), pmax=29, fmt="json", jobs=1), serial)
    run(RunConfig(checks=("corollary-a",), pmax=29, fmt="json", jobs=2), parallel)
    assert serial.getvalue() == parallel.getvalue()


def test_cli_det(capsys):
    assert cli_main(["det", "--matrix", "s", "--p", "13"]) == 0
    assert capsys.readouterr().out.strip() == "-27"
    assert cli_main(["det", "--matrix", "sstar", "--p", "17"]) == 0
    assert capsys.readouterr().out.strip() == "-441"
    assert cli_main(["det", "--matrix", "chapman", "--p", "13"]) == 0
    assert capsys.readouterr().out.strip() == "96*x - 32"
    assert cli_main(["det", "--matrix", "s", "--p", "13", "--d", "2"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert cli_main(["det", "--matrix", "evil", "--p", "7"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_cli_eigen(capsys):
    assert cli_main(["eigen", "--p", "13", "--exact"]) == 0
    rows = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert len(rows) == 6
    assert rows[5]["lambda_exact"] == [-1]
    assert all(row["residual"] == 0 for row in rows)


def test_cli_verify(capsys):
    code = cli_main(
        ["verify", "--what", "jacobsthal,corollary-a", "--pmax", "17",
         "--format", "json"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert sum(1 for l in out.splitlines() if not l.startswith("#")) == 6


def test_cli_verify_rejects_unknown_check(capsys):
    assert cli_main(["verify", "--what", "nope"]) == 2
    assert "unknown checks" in capsys.readouterr().err


def test_cli_reports_contract_violations(capsys):
    assert cli_main(["eigen", "--p", "7"]) == 2        # needs p = 1 (mod 4)
    assert "error:" in capsys.readouterr().err
    assert cli_main(["det", "--matrix", "s", "--p", "15"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_verify_with_cache(tmp_path, capsys):
    cache = str(tmp_path / "c.jsonl")
    args = ["verify", "--what", "jacobsthal", "--pmax", "17",
            "--format", "json", "--cache", cache]
    assert cli_main(args) == 0
    first = capsys.readouterr().out
    assert cli_main(args) == 0
    assert capsys.readouterr().out == first
