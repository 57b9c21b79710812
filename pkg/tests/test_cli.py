"""End-to-end pipeline runs through the console entry point."""

from __future__ import annotations

import json
import socket
import wave
from pathlib import Path

import pytest

from askit.cli import main
from askit.jsonl import read_jsonl, write_jsonl


def run(*argv: str) -> int:
    return main([str(a) for a in argv])


@pytest.fixture()
def no_network(monkeypatch):
    def deny(*args, **kwargs):
        raise AssertionError("network access attempted")

    monkeypatch.setattr(socket.socket, "connect", deny)
    monkeypatch.setattr(socket, "create_connection", deny)
    monkeypatch.setattr(socket, "getaddrinfo", deny)


@pytest.fixture()
def pipeline(tmp_path, fixtures_dir, session_audio, no_network):
    """Full replay pipeline: parse -> clean -> enhance -> mix, offline."""
    out = tmp_path
    assert run("parse", fixtures_dir, "--out-dir", out / "parse", "--audio-dir", session_audio) == 0
    assert run("clean", "--in", out / "parse" / "parsed.jsonl", "--out-dir", out / "clean") == 0
    assert (
        run(
            "enhance",
            "--in",
            out / "clean" / "cleaned.jsonl",
            "--out-dir",
            out / "enhance",
            "--mode",
            "replay",
            "--cache",
            fixtures_dir / "enhance-cache.jsonl",
        )
        == 0
    )
    assert (
        run(
            "ingest-standard",
            "--stm",
            fixtures_dir / "standard.stm",
            "--out-dir",
            out / "standard",
            "--audio-dir",
            session_audio,
        )
        == 0
    )
    assert (
        run(
            "mix",
            "--aphasia",
            out / "enhance" / "enhanced.jsonl",
            "--standard",
            out / "standard" / "standard.jsonl",
            "--ratio",
            "0.5",
            "--total",
            "20",
            "--seed",
            "7",
            "--out-dir",
            out / "mix",
        )
        == 0
    )
    return out


def test_parse_stage_outputs(tmp_path, fixtures_dir, session_audio):
    out = tmp_path / "parse"
    assert run("parse", fixtures_dir, "--out-dir", out, "--audio-dir", session_audio) == 0
    rows = list(read_jsonl(out / "parsed.jsonl"))
    assert len(rows) == 15
    assert all(row["id"].startswith(row["file_id"]) for row in rows)
    assert any(row["context"] for row in rows)
    assert any(row["start_ms"] is None for row in rows)  # untimed tier kept at this stage
    assert all(Path(row["audio_path"]).parent == Path(session_audio) for row in rows)
    echoed = json.loads((out / "effective-config.json").read_text())
    assert echoed["command"] == "parse"
    assert echoed["patient"] == ["PAR"]


def test_clean_stage_outputs(tmp_path, fixtures_dir):
    out = tmp_path
    run("parse", fixtures_dir, "--out-dir", out / "parse")
    assert run("clean", "--in", out / "parse" / "parsed.jsonl", "--out-dir", out / "clean") == 0
    rows = list(read_jsonl(out / "clean" / "cleaned.jsonl"))
    assert len(rows) == 15
    dropped = [r for r in rows if r["dropped"]]
    assert len(dropped) == 1 and dropped[0]["raw_text"] == "xxx ."
    assert all("policy_version" in r for r in rows)
    assert all("[" not in r["clean_text"] and "&" not in r["clean_text"] for r in rows)
    summary = json.loads((out / "clean" / "clean-summary.json").read_text())
    assert summary["rows"] == 15 and summary["dropped"] == 1
    assert "+ exc" in summary["other_bracket_codes"]


def test_enhance_replay_covers_all_cleanable_rows(pipeline):
    rows = list(read_jsonl(pipeline / "enhance" / "enhanced.jsonl"))
    assert len(rows) == 15
    enhanced = [r for r in rows if r.get("enhanced_text")]
    assert len(enhanced) == 14  # everything except the dropped xxx row
    assert all(r["prompt_version"] == "v1" for r in enhanced)
    assert {r["enhanced_text"] for r in enhanced if "brown water" in r["raw_text"]} == {
        "I want a coffee."
    }


def test_enhance_replay_miss_fails_with_events(tmp_path, fixtures_dir, capsys):
    run("parse", fixtures_dir, "--out-dir", tmp_path / "parse")
    run("clean", "--in", tmp_path / "parse" / "parsed.jsonl", "--out-dir", tmp_path / "clean")
    empty_cache = tmp_path / "empty-cache.jsonl"
    code = run(
        "enhance",
        "--in",
        tmp_path / "clean" / "cleaned.jsonl",
        "--out-dir",
        tmp_path / "enhance",
        "--mode",
        "replay",
        "--cache",
        empty_cache,
    )
    assert code == 1
    rows = list(read_jsonl(tmp_path / "enhance" / "enhanced.jsonl"))
    assert sum(1 for r in rows if "enhance_error" in r) == 14
    err = capsys.readouterr().err
    assert '"event": "enhance_error"' in err or '"event":"enhance_error"' in err


def test_mix_outputs_counts_and_manifest(pipeline):
    counts = json.loads((pipeline / "mix" / "counts.json").read_text())
    assert counts["counts"]["aphasia"] == {"train": 8, "dev": 1, "test": 1}
    assert counts["counts"]["standard"] == {"train": 8, "dev": 1, "test": 1}
    assert counts["total"] == 20
    rows = list(read_jsonl(pipeline / "mix" / "manifest.jsonl"))
    assert len(rows) == 20
    assert {r["domain"] for r in rows} == {"aphasia", "standard"}
    aphasia_rows = [r for r in rows if r["domain"] == "aphasia"]
    assert all(r["enhanced_text"] for r in aphasia_rows)


def test_mix_rerun_is_byte_identical(pipeline):
    out2 = pipeline / "mix2"
    assert (
        run(
            "mix",
            "--aphasia",
            pipeline / "enhance" / "enhanced.jsonl",
            "--standard",
            pipeline / "standard" / "standard.jsonl",
            "--ratio",
            "0.5",
            "--total",
            "20",
            "--seed",
            "7",
            "--out-dir",
            out2,
        )
        == 0
    )
    assert (out2 / "manifest.jsonl").read_bytes() == (
        pipeline / "mix" / "manifest.jsonl"
    ).read_bytes()
    assert (out2 / "counts.json").read_bytes() == (pipeline / "mix" / "counts.json").read_bytes()


def test_slice_materializes_audio(pipeline):
    out = pipeline / "sliced"
    assert run("slice", "--manifest", pipeline / "mix" / "manifest.jsonl", "--out-dir", out) == 0
    rows = list(read_jsonl(out / "sliced-manifest.jsonl"))
    assert len(rows) == 20
    for row in rows:
        wav_path = out / row["audio_path"]
        assert wav_path.exists()
        assert row["start_ms"] == 0
        with wave.open(str(wav_path), "rb") as w:
            ms = w.getnframes() * 1000 // w.getframerate()
        assert abs(ms - row["end_ms"]) <= 1


def test_slice_missing_audio_fails_per_row(pipeline):
    broken = pipeline / "broken.jsonl"
    rows = list(read_jsonl(pipeline / "mix" / "manifest.jsonl"))
    rows[0] = {**rows[0], "audio_path": "nowhere.wav"}
    write_jsonl(broken, rows)
    out = pipeline / "sliced-broken"
    assert run("slice", "--manifest", broken, "--out-dir", out) == 1
    assert len(list(read_jsonl(out / "sliced-manifest.jsonl"))) == 19


def hypotheses_from_manifest(manifest_path: Path, out_path: Path, degrade_every: int = 2):
    """Reference-echo hypotheses where every Nth row loses its first word."""
    rows = []
    for i, row in enumerate(read_jsonl(manifest_path)):
        text = row["enhanced_text"] or row["clean_text"]
        if i % degrade_every == 0:
            text = " ".join(text.split()[1:])
        rows.append({"id": row["id"], "text": text})
    write_jsonl(out_path, rows)


def test_score_and_reports(pipeline):
    manifest = pipeline / "mix" / "manifest.jsonl"
    for split in ("dev", "test"):
        for model, degrade in (("echo", 10**9), ("degraded", 1)):
            hyp = pipeline / f"hyp-{model}-{split}.jsonl"
            hypotheses_from_manifest(manifest, hyp, degrade_every=degrade)
            assert (
                run(
                    "score",
                    "--refs",
                    manifest,
                    "--hyps",
                    hyp,
                    "--split",
                    split,
                    "--out-dir",
                    pipeline / f"score-{model}-{split}",
                    "--run-name",
                    f"{model}-{split}",
                    "--model",
                    model,
                    "--dataset",
                    "merged",
                    "--ratio",
                    "0.5",
                )
                == 0
            )
    perfect = json.loads((pipeline / "score-echo-dev" / "score.json").read_text())
    assert perfect["summary"]["macro_wer"] == 0.0
    assert set(perfect["by_domain"]) == {"aphasia", "standard"}
    degraded = json.loads((pipeline / "score-degraded-test" / "score.json").read_text())
    assert 0.0 < degraded["summary"]["macro_wer"] <= 1.0
    utts = list(read_jsonl(pipeline / "score-degraded-test" / "utterances.jsonl"))
    assert len(utts) == 2
    assert all(set(u) == {"id", "S", "D", "I", "N", "wer"} for u in utts)

    # model x dataset table over the two models
    table_dir = pipeline / "report-baseline"
    assert (
        run(
            "report",
            "--layout",
            "baseline-table",
            "--out-dir",
            table_dir,
            *(
                pipeline / f"score-{model}-{split}" / "score.json"
                for model in ("echo", "degraded")
                for split in ("dev", "test")
            ),
        )
        == 0
    )
    md = (table_dir / "report.md").read_text()
    assert md.splitlines()[0] == "| Model | Dataset | Dev WER | Test WER |"
    assert "| echo | merged | 0.000 | 0.000 |" in md

    # ratio sweep from per-domain numbers (same eval sets per split)
    sweep_sources = []
    for ratio, model in (("0.3", "echo"), ("0.7", "degraded")):
        for split in ("dev", "test"):
            src = pipeline / f"sweep-{ratio}-{split}"
            hyp = pipeline / f"hyp-{model}-{split}.jsonl"
            assert (
                run(
                    "score",
                    "--refs",
                    manifest,
                    "--hyps",
                    hyp,
                    "--split",
                    split,
                    "--out-dir",
                    src,
                    "--model",
                    "tiny",
                    "--dataset",
                    "merged",
                    "--ratio",
                    ratio,
                )
                == 0
            )
            sweep_sources.append(src / "score.json")
    sweep_dir = pipeline / "report-sweep"
    assert run("report", "--layout", "ratio-sweep", "--out-dir", sweep_dir, *sweep_sources) == 0
    csv_lines = (sweep_dir / "report.csv").read_text().splitlines()
    assert csv_lines[0] == "ratio,aphasia_dev_wer,aphasia_test_wer,standard_dev_wer,standard_test_wer"
    assert [line.split(",")[0] for line in csv_lines[1:]] == ["0.3", "0.7"]


def test_score_counts_missing_hypotheses(pipeline):
    manifest = pipeline / "mix" / "manifest.jsonl"
    hyp = pipeline / "hyp-partial.jsonl"
    rows = [
        {"id": row["id"], "text": row["enhanced_text"] or row["clean_text"]}
        for row in read_jsonl(manifest)
    ][:-5]
    write_jsonl(hyp, rows)
    out = pipeline / "score-partial"
    assert run("score", "--refs", manifest, "--hyps", hyp, "--out-dir", out) == 0
    score = json.loads((out / "score.json").read_text())
    assert score["missing_hypotheses"] == 5
    assert score["summary"]["macro_wer"] > 0.0


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run("not-a-command")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("mix", "--ratio", "0.5")  # missing required pool paths
    assert exc.value.code == 2


def test_domain_errors_exit_1(tmp_path, capsys):
    assert run("parse", tmp_path / "missing-dir", "--out-dir", tmp_path) == 1
    err = capsys.readouterr().err
    assert '"event":"error"' in err
    assert run("clean", "--in", tmp_path / "nope.jsonl", "--out-dir", tmp_path) == 1


def test_non_integral_mix_request_fails_cleanly(pipeline, capsys):
    code = run(
        "mix",
        "--aphasia",
        pipeline / "enhance" / "enhanced.jsonl",
        "--standard",
        pipeline / "standard" / "standard.jsonl",
        "--ratio",
        "0.5",
        "--total",
        "14",
        "--out-dir",
        pipeline / "bad-mix",
    )
    assert code == 1
    assert "NonIntegralSplitError" in capsys.readouterr().err


def test_config_file_supplies_defaults(tmp_path, fixtures_dir):
    cfg = tmp_path / "askit.toml"
    cfg.write_text(
        '[paths]\nout_dir = "%s"\n\n[parse]\npatient = "PAR"\nclinician = "INV"\n'
        % (tmp_path / "from-config"),
        encoding="utf-8",
    )
    assert run("parse", fixtures_dir, "--config", cfg) == 0
    assert (tmp_path / "from-config" / "parsed.jsonl").exists()
    # flag overrides config
    assert run("parse", fixtures_dir, "--config", cfg, "--out-dir", tmp_path / "flag") == 0
    assert (tmp_path / "flag" / "parsed.jsonl").exists()


def test_bad_config_exits_1(tmp_path, fixtures_dir, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("not toml ][", encoding="utf-8")
    assert run("parse", fixtures_dir, "--config", cfg, "--out-dir", tmp_path) == 1
    assert "ConfigError" in capsys.readouterr().err
