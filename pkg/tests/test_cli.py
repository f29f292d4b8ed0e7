import json
import shutil
import subprocess

import pytest

from dialect_forge.bundled import seed_corpus_path, seed_lexicon_path
from dialect_forge.cli import main


def _run(*args):
    return main(list(args))


@pytest.fixture(scope="module")
def seed_path():
    return str(seed_corpus_path())


def test_steer_prints_moroccan_golden(capsys):
    assert _run("steer", "--text", "الطعام لذيذ", "--region", "Moroccan") == 0
    assert capsys.readouterr().out.strip() == "الماكلة بنينة"


def test_steer_accepts_levantine_alias(capsys):
    assert _run("steer", "--text", "أريد أن أذهب إلى السوق",
                "--region", "Levantine") == 0
    assert "بدي" in capsys.readouterr().out


def test_steer_unknown_region_is_domain_error(capsys):
    assert _run("steer", "--text", "x", "--region", "Mars") == 1
    assert "Mars" in capsys.readouterr().err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        _run("steer", "--region", "Gulf")  # --text missing
    assert exc.value.code == 2


def test_no_subcommand_exits_2(capsys):
    assert _run() == 2


def test_ingest_tsv(tmp_path, capsys):
    raw = tmp_path / "raw.tsv"
    raw.write_text("hello\tمرحبا\n", encoding="utf-8")
    out = tmp_path / "records.jsonl"
    assert _run("ingest", "--format", "tsv", "--in", str(raw), "--out", str(out)) == 0
    row = json.loads(out.read_text(encoding="utf-8"))
    assert row == {"input": "hello", "target": "مرحبا", "region": "MSA-General",
                   "context": "General", "style": "Formal"}


def test_augment_is_byte_identical_under_fixed_seed(tmp_path, seed_path):
    first = tmp_path / "a.jsonl"
    second = tmp_path / "b.jsonl"
    args = ["augment", "--in", seed_path, "--lexicon", str(seed_lexicon_path()),
            "--regions", "Egyptian,Gulf", "--target", "100", "--seed", "7",
            "--random-variants"]
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_balance_missing_class_is_domain_error(tmp_path, capsys):
    rows = tmp_path / "rows.jsonl"
    rows.write_text(json.dumps({
        "input": "x", "target": "y", "region": "Egyptian",
        "context": "General", "style": "Informal"}) + "\n", encoding="utf-8")
    code = _run("balance", "--in", str(rows), "--target", "5",
                "--regions", "Egyptian,Gulf", "--out", str(tmp_path / "out.jsonl"))
    assert code == 1
    assert "Gulf" in capsys.readouterr().err


def test_stage_chain_equals_build(tmp_path, seed_path):
    funneled = tmp_path / "funneled.jsonl"
    augmented = tmp_path / "augmented.jsonl"
    balanced = tmp_path / "balanced.jsonl"
    tagged = tmp_path / "tagged.jsonl"
    built = tmp_path / "built.jsonl"
    assert _run("funnel", "--in", seed_path, "--out", str(funneled)) == 0
    assert _run("augment", "--in", str(funneled), "--regions", "all",
                "--target", "50", "--seed", "11", "--out", str(augmented)) == 0
    assert _run("balance", "--in", str(augmented), "--target", "50",
                "--regions", "all", "--seed", "11", "--out", str(balanced)) == 0
    assert _run("tag", "--in", str(balanced), "--out", str(tagged)) == 0
    assert _run("build", "--in", seed_path, "--regions", "all", "--target", "50",
                "--seed", "11", "--out", str(built)) == 0
    assert tagged.read_bytes() == built.read_bytes()


@pytest.mark.skipif(shutil.which("forge") is None, reason="forge not on PATH")
def test_unix_pipe_matches_build(tmp_path, seed_path):
    built = tmp_path / "built.jsonl"
    assert _run("build", "--in", seed_path, "--regions", "all", "--target", "20",
                "--seed", "5", "--out", str(built)) == 0
    piped = subprocess.run(
        f"forge funnel --in {seed_path} | forge augment --regions all --seed 5"
        " | forge balance --target 20 --regions all --seed 5 | forge tag",
        shell=True, capture_output=True)
    assert piped.returncode == 0
    assert piped.stdout.decode("utf-8") == built.read_text(encoding="utf-8")


def test_stats_reports_uniform_regions(tmp_path, seed_path, capsys):
    balanced = tmp_path / "balanced.jsonl"
    assert _run("build", "--in", seed_path, "--regions", "all", "--target", "25",
                "--seed", "3", "--out", str(tmp_path / "tagged.jsonl"),
                "--records-out", str(balanced)) == 0
    assert _run("stats", "--in", str(balanced)) == 0
    stats = json.loads(capsys.readouterr().out)
    assert set(stats["regions"].values()) == {25}
    assert stats["total"] == 225


def test_jobs_flag_matches_sequential_output(tmp_path, seed_path):
    sequential = tmp_path / "seq.jsonl"
    parallel = tmp_path / "par.jsonl"
    args = ["augment", "--in", seed_path, "--regions", "all", "--target", "10",
            "--seed", "2"]
    assert main(args + ["--out", str(sequential)]) == 0
    assert main(args + ["--out", str(parallel), "--jobs", "2"]) == 0
    assert sequential.read_bytes() == parallel.read_bytes()


def test_evaluate_pairs_file(tmp_path, capsys):
    pairs = tmp_path / "pairs.jsonl"
    pairs.write_text(
        json.dumps({"hypothesis": "عايز أروح", "reference": "عايز أروح",
                    "region": "Egyptian"}, ensure_ascii=False) + "\n",
        encoding="utf-8")
    assert _run("evaluate", "--in", str(pairs)) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["corpus_bleu"] == pytest.approx(100.0)
    assert report["per_region"]["Egyptian"]["authenticity"] == 5.0
