"""askit — build and score mixed aphasic/standard speech corpora.

Subcommands map 1:1 onto library operations and compose through JSONL
files, so a full experiment is a shell loop:

  parse            .cha transcripts -> dialog segment rows
  clean            markup removal -> clean_text per row
  enhance          LLM rewrites of cleaned utterances (live or replay)
  ingest-standard  STM references -> standard-domain segment pool
  mix              ratio mix + train/dev/test split -> manifest.jsonl
  slice            cut per-utterance WAVs out of session audio
  score            WER of hypothesis JSONL against manifest references
  report           cross-run comparison tables (markdown + CSV)

All outputs land under --out-dir, flags override the optional TOML
config, and the resolved settings are echoed to effective-config.json.
Diagnostics are one JSON event per line on stderr. Exit codes: 0 ok,
1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from askit import AskitError, __version__, events
from askit.chat import extract_dialog, parse_transcript
from askit.cleaning import CleanPolicy, UnbalancedDelimiterError, clean_text
from askit.config import PipelineConfig, pick
from askit.corpus import (
    MixSpec,
    build_manifest,
    load_pool,
    read_stm,
    slice_audio,
    write_counts,
    write_manifest,
)
from askit.corpus.records import record_to_row
from askit.enhance import (
    CACHE_FILENAME,
    ChatClient,
    EnhanceCache,
    EnhancementRequest,
    enhance_batch,
)
from askit.jsonl import read_jsonl, write_json, write_jsonl
from askit.wer import LabeledReport, NormPolicy, compare_runs, score_corpus


def _out_dir(args, cfg: PipelineConfig) -> Path:
    out = Path(pick(args.out_dir, cfg.get("paths", "out_dir"), "out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _echo_config(out: Path, command: str, resolved: dict) -> None:
    write_json(
        out / "effective-config.json",
        {"tool": "askit", "version": __version__, "command": command, **resolved},
    )


def _cha_inputs(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files.extend(sorted(path.glob("*.cha")))
        else:
            files.append(path)
    return files


# ---------------------------------------------------------------- parse


def _cmd_parse(args, cfg: PipelineConfig) -> int:
    out = _out_dir(args, cfg)
    patient = set(pick(args.patient, cfg.get("parse", "patient"), "PAR").split(","))
    clinician = set(pick(args.clinician, cfg.get("parse", "clinician"), "INV").split(","))
    audio_dir = pick(args.audio_dir, cfg.get("paths", "audio_dir"), "")
    audio_ext = pick(args.audio_ext, cfg.get("paths", "audio_ext"), ".wav")
    files = _cha_inputs(args.inputs)
    if not files:
        raise AskitError("no .cha inputs found")

    rows = []
    for path in files:
        transcript = parse_transcript(path.read_bytes(), file_id=path.stem)
        media = transcript.headers.get("Media", "").split(",")[0].strip()
        audio_path = str(Path(audio_dir) / f"{media or transcript.file_id}{audio_ext}")
        segments = extract_dialog(transcript, patient, clinician)
        for seg in segments:
            u = seg.utterance
            rows.append(
                {
                    "id": f"{transcript.file_id}-{u.index:04d}",
                    "file_id": transcript.file_id,
                    "index": u.index,
                    "speaker": f"{transcript.file_id}:{u.speaker}",
                    "speaker_code": u.speaker,
                    "start_ms": u.time.start_ms if u.time else None,
                    "end_ms": u.time.end_ms if u.time else None,
                    "audio_path": audio_path,
                    "raw_text": u.raw_text,
                    "context": seg.context.raw_text if seg.context else None,
                }
            )
        events.emit(
            "parsed",
            file=str(path),
            utterances=len(transcript.utterances),
            dialog_rows=len(segments),
        )
    n = write_jsonl(out / "parsed.jsonl", rows)
    _echo_config(
        out,
        "parse",
        {
            "inputs": [str(p) for p in files],
            "patient": sorted(patient),
            "clinician": sorted(clinician),
            "audio_dir": audio_dir,
            "audio_ext": audio_ext,
        },
    )
    events.emit("done", command="parse", rows=n, out=str(out / "parsed.jsonl"))
    return 0


# ---------------------------------------------------------------- clean


def _policy_from(args, cfg: PipelineConfig) -> CleanPolicy:
    keep_fillers = pick(args.keep_fillers, cfg.get("clean", "keep_fillers"), False)
    drop_fragments = pick(args.drop_fragments, cfg.get("clean", "drop_fragments"), False)
    return CleanPolicy(
        fillers=not keep_fillers,
        fragments="delete" if drop_fragments else "keep",
    )


def _cmd_clean(args, cfg: PipelineConfig) -> int:
    out = _out_dir(args, cfg)
    policy = _policy_from(args, cfg)
    version = policy.effective_version()
    from collections import Counter

    codes: Counter = Counter()
    flagged = dropped = 0
    rows = []
    for row in read_jsonl(args.input):
        try:
            text = clean_text(row["raw_text"], policy, index=row.get("index"), code_counts=codes)
        except UnbalancedDelimiterError as exc:
            flagged += 1
            events.emit("clean_error", id=row.get("id"), error=str(exc))
            row = {**row, "clean_text": "", "dropped": True, "clean_error": str(exc)}
            rows.append(row)
            continue
        context_clean = None
        if row.get("context"):
            try:
                context_clean = clean_text(row["context"], policy) or None
            except UnbalancedDelimiterError:
                context_clean = None
        dropped += not text
        rows.append(
            {
                **row,
                "clean_text": text,
                "context_clean": context_clean,
                "dropped": not text,
                "policy_version": version,
            }
        )
    n = write_jsonl(out / "cleaned.jsonl", rows)
    write_json(
        out / "clean-summary.json",
        {
            "rows": n,
            "dropped": dropped,
            "flagged": flagged,
            "policy_version": version,
            "other_bracket_codes": dict(sorted(codes.items())),
        },
    )
    _echo_config(out, "clean", {"input": args.input, "policy_version": version})
    events.emit("done", command="clean", rows=n, dropped=dropped, flagged=flagged)
    return 0


# ---------------------------------------------------------------- enhance


def _cmd_enhance(args, cfg: PipelineConfig) -> int:
    out = _out_dir(args, cfg)
    mode = pick(args.mode, cfg.get("enhance", "mode"), "replay")
    model_id = pick(args.model, cfg.get("enhance", "model_id"), "gpt-4")
    prompt_version = pick(args.prompt_version, cfg.get("enhance", "prompt_version"), "v1")
    temperature = float(pick(args.temperature, cfg.get("enhance", "temperature"), 0.0))
    use_context = pick(args.use_context, cfg.get("enhance", "use_context"), False)
    endpoint = pick(args.endpoint, cfg.get("enhance", "endpoint"))
    jobs = int(pick(args.jobs, cfg.get("enhance", "max_in_flight"), 4))
    cache_path = pick(args.cache, cfg.get("paths", "cache"), str(out / CACHE_FILENAME))

    cache = EnhanceCache(cache_path)
    client = None
    if mode == "live":
        if not endpoint:
            raise AskitError("live mode needs --endpoint (or [enhance] endpoint in config)")
        client = ChatClient(endpoint)

    rows = list(read_jsonl(args.input))
    todo: list[tuple[int, EnhancementRequest]] = []
    skipped = 0
    for i, row in enumerate(rows):
        if row.get("dropped") or not row.get("clean_text"):
            skipped += 1
            continue
        todo.append(
            (
                i,
                EnhancementRequest(
                    input_text=row["clean_text"],
                    context=row.get("context_clean") if use_context else None,
                    model_id=model_id,
                    prompt_version=prompt_version,
                    temperature=temperature,
                ),
            )
        )

    records, failures = enhance_batch(
        [req for _, req in todo], mode, cache, client, max_in_flight=jobs
    )
    hits = 0
    for (i, req), record in zip(todo, records):
        if record is None:
            continue
        hits += record.source == "cache"
        rows[i] = {
            **rows[i],
            "enhanced_text": record.output_text,
            "prompt_version": prompt_version,
        }
    for failure in failures:
        i = todo[failure.index][0]
        rows[i] = {**rows[i], "enhance_error": failure.error}
        events.emit("enhance_error", id=rows[i].get("id"), key=failure.key, error=failure.error)

    n = write_jsonl(out / "enhanced.jsonl", rows)
    _echo_config(
        out,
        "enhance",
        {
            "input": args.input,
            "mode": mode,
            "model_id": model_id,
            "prompt_version": prompt_version,
            "temperature": temperature,
            "use_context": bool(use_context),
            "endpoint": endpoint,
            "max_in_flight": jobs,
            "cache": str(cache_path),
        },
    )
    events.emit(
        "done",
        command="enhance",
        rows=n,
        enhanced=sum(1 for r in records if r is not None),
        cache_hits=hits,
        skipped=skipped,
        failures=len(failures),
    )
    return 1 if failures else 0


# ------------------------------------------------------- ingest-standard


def _cmd_ingest_standard(args, cfg: PipelineConfig) -> int:
    out = _out_dir(args, cfg)
    audio_dir = pick(args.audio_dir, cfg.get("paths", "audio_dir"), "")
    audio_ext = pick(args.audio_ext, cfg.get("paths", "audio_ext"), ".wav")
    records, skipped = read_stm(args.stm, audio_dir=audio_dir, audio_ext=audio_ext)
    n = write_jsonl(out / "standard.jsonl", (record_to_row(r, None) for r in records))
    _echo_config(
        out,
        "ingest-standard",
        {"stm": args.stm, "audio_dir": audio_dir, "audio_ext": audio_ext},
    )
    events.emit("done", command="ingest-standard", rows=n, **skipped)
    return 0


# ------------------------------------------------------------------ mix


def _parse_ratio(raw: str) -> Fraction:
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise AskitError(f"bad --ratio {raw!r}: use a decimal like 0.5 or a fraction like 1/2")


def _cmd_mix(args, cfg: PipelineConfig) -> int:
    out = _out_dir(args, cfg)
    raw_ratio = pick(args.ratio, cfg.get("mix", "ratio"))
    if raw_ratio is None:
        raise AskitError("--ratio is required (flag or [mix] ratio in config)")
    ratio = _parse_ratio(str(raw_ratio))
    total = int(pick(args.total, cfg.get("mix", "total"), 14000))
    seed = int(pick(args.seed, cfg.get("mix", "seed"), 0))
    spec = MixSpec(ratio_aphasia=ratio, total=total, seed=seed)

    pools = {}
    pool_stats = {}
    for domain, path in (("aphasia", args.aphasia), ("standard", args.standard)):
        require = domain == "aphasia" and not args.allow_unenhanced
        pools[domain], skipped = load_pool(path, domain, require_enhanced=require)
        pool_stats[domain] = {"usable": len(pools[domain]), **skipped}
        events.emit("pool_loaded", domain=domain, path=path, **pool_stats[domain])

    manifest = build_manifest(pools, spec, speaker_disjoint=args.speaker_disjoint)
    n = write_manifest(manifest, out / "manifest.jsonl")
    write_counts(manifest, out / "counts.json")
    _echo_config(
        out,
        "mix",
        {
            "aphasia": args.aphasia,
            "standard": args.standard,
            "ratio": str(ratio),
            "total": total,
            "seed": seed,
            "speaker_disjoint": bool(args.speaker_disjoint),
            "allow_unenhanced": bool(args.allow_unenhanced),
            "pools": pool_stats,
        },
    )
    events.emit("done", command="mix", rows=n, counts=manifest.counts)
    return 0


# ---------------------------------------------------------------- slice


def _cmd_slice(args, cfg: PipelineConfig) -> int:
    out = _out_dir(args, cfg)
    audio_root = Path(pick(args.audio_root, cfg.get("paths", "audio_root"), ""))
    jobs = int(pick(args.jobs, None, os.cpu_count() or 1))
    rows = list(read_jsonl(args.manifest))

    def one(row: dict) -> tuple[dict | None, str]:
        rel = Path("audio") / (row.get("split") or "all") / f"{row['id']}.wav"
        src = Path(row["audio_path"])
        if not src.is_absolute():
            src = audio_root / src
        try:
            slice_audio(src, out / rel, row["start_ms"], row["end_ms"])
        except (AskitError, OSError) as exc:
            return None, f"{type(exc).__name__}: {exc}"
        span = row["end_ms"] - row["start_ms"]
        return {**row, "audio_path": str(rel), "start_ms": 0, "end_ms": span}, ""

    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        outcomes = list(pool.map(one, rows))

    sliced = []
    failures = 0
    for row, (new_row, error) in zip(rows, outcomes):
        if new_row is None:
            failures += 1
            events.emit("slice_error", id=row.get("id"), error=error)
        else:
            sliced.append(new_row)
    n = write_jsonl(out / "sliced-manifest.jsonl", sliced)
    _echo_config(
        out, "slice", {"manifest": args.manifest, "audio_root": str(audio_root), "jobs": jobs}
    )
    events.emit("done", command="slice", rows=n, failures=failures)
    return 1 if failures else 0


# ---------------------------------------------------------------- score


def _reference_text(row: dict) -> str:
    return row.get("enhanced_text") or row.get("clean_text") or row.get("text") or ""


def _cmd_score(args, cfg: PipelineConfig) -> int:
    out = _out_dir(args, cfg)
    norm = NormPolicy(
        lowercase=not pick(args.no_lowercase, cfg.get("normalize", "no_lowercase"), False),
        strip_punct=not pick(args.keep_punct, cfg.get("normalize", "keep_punct"), False),
    )
    refs = [
        row
        for row in read_jsonl(args.refs)
        if args.split is None or row.get("split") == args.split
    ]
    if not refs:
        raise AskitError(f"no reference rows for split {args.split!r} in {args.refs}")
    hyp_map = {row["id"]: row.get("text", "") for row in read_jsonl(args.hyps)}
    missing = sum(1 for row in refs if row["id"] not in hyp_map)
    if missing:
        events.emit("missing_hypotheses", count=missing)

    def scored(rows: list[dict]):
        return score_corpus(
            [(_reference_text(r), hyp_map.get(r["id"], "")) for r in rows],
            norm=norm,
            ids=[r["id"] for r in rows],
        )

    report = scored(refs)
    by_domain = {}
    domains = sorted({r.get("domain") for r in refs} - {None})
    for domain in domains:
        subset = [r for r in refs if r.get("domain") == domain]
        if subset:
            sub = scored(subset)
            by_domain[domain] = {**sub.summary(), "id_set_hash": sub.id_set_hash()}

    meta = {
        "run": pick(args.run_name, None, out.name),
        "model": args.model or "",
        "dataset": args.dataset or "",
        "split": args.split or "",
        "ratio": args.ratio,
    }
    write_json(
        out / "score.json",
        {
            "meta": meta,
            "summary": report.summary(),
            "id_set_hash": report.id_set_hash(),
            "missing_hypotheses": missing,
            **({"by_domain": by_domain} if by_domain else {}),
        },
    )
    write_jsonl(
        out / "utterances.jsonl",
        (
            {
                "id": s.id,
                "S": s.breakdown.S,
                "D": s.breakdown.D,
                "I": s.breakdown.I,
                "N": s.breakdown.N,
                "wer": s.breakdown.wer,
            }
            for s in report.scores
        ),
    )
    _echo_config(
        out,
        "score",
        {
            "refs": args.refs,
            "hyps": args.hyps,
            "split": args.split,
            "lowercase": norm.lowercase,
            "strip_punct": norm.strip_punct,
            **meta,
        },
    )
    events.emit(
        "done",
        command="score",
        macro_wer=report.macro_wer,
        micro_wer=report.micro_wer,
        utterances=report.n_scored,
        excluded_empty_refs=report.excluded_empty_refs,
        missing_hypotheses=missing,
    )
    return 0


# --------------------------------------------------------------- report


def _cmd_report(args, cfg: PipelineConfig) -> int:
    import json

    out = _out_dir(args, cfg)
    reports = []
    for path in args.scores:
        with open(path, encoding="utf-8") as fh:
            reports.append(LabeledReport.from_json(json.load(fh)))
    layout = args.layout.replace("-", "_")
    comparison = compare_runs(reports, layout)
    (out / "report.md").write_text(comparison.to_markdown(), encoding="utf-8")
    (out / "report.csv").write_text(comparison.to_csv(), encoding="utf-8")
    write_json(out / "report.json", comparison.to_json())
    _echo_config(out, "report", {"layout": layout, "scores": list(args.scores)})
    events.emit("done", command="report", layout=layout, rows=len(comparison.rows))
    return 0


# ------------------------------------------------------------- plumbing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="askit",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"askit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p: argparse.ArgumentParser):
        p.add_argument("--config", help="TOML config file")
        p.add_argument("--out-dir", help="output directory (default: out)")

    p = sub.add_parser("parse", help="parse .cha transcripts into dialog segment rows")
    common(p)
    p.add_argument("inputs", nargs="+", help=".cha files or directories")
    p.add_argument("--patient", help="comma-separated patient speaker codes (default PAR)")
    p.add_argument("--clinician", help="comma-separated clinician codes (default INV)")
    p.add_argument("--audio-dir", help="directory prefix for session audio paths")
    p.add_argument("--audio-ext", help="session audio extension (default .wav)")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("clean", help="strip transcription markup from parsed rows")
    common(p)
    p.add_argument("--in", dest="input", required=True, help="parsed.jsonl from `parse`")
    p.add_argument(
        "--keep-fillers",
        action="store_const",
        const=True,
        default=None,
        help="preserve &-fillers instead of removing them",
    )
    p.add_argument(
        "--drop-fragments",
        action="store_const",
        const=True,
        default=None,
        help="delete &+fragments entirely instead of keeping their letters",
    )
    p.set_defaults(func=_cmd_clean)

    p = sub.add_parser("enhance", help="rewrite cleaned utterances via chat-completions LLM")
    common(p)
    p.add_argument("--in", dest="input", required=True, help="cleaned.jsonl from `clean`")
    p.add_argument("--mode", choices=["live", "replay"], help="replay = cache only, no network")
    p.add_argument("--cache", help="enhancement cache JSONL path")
    p.add_argument("--endpoint", help="chat-completions base URL (live mode)")
    p.add_argument("--model", help="model id (default gpt-4)")
    p.add_argument("--prompt-version", help="instruction template version (default v1)")
    p.add_argument("--temperature", type=float, help="sampling temperature (default 0)")
    p.add_argument(
        "--use-context",
        action="store_const",
        const=True,
        default=None,
        help="include the preceding clinician turn in the prompt",
    )
    p.add_argument("--jobs", type=int, help="max in-flight requests (default 4)")
    p.set_defaults(func=_cmd_enhance)

    p = sub.add_parser("ingest-standard", help="build the standard-speech pool from an STM file")
    common(p)
    p.add_argument("--stm", required=True, help="STM reference file")
    p.add_argument("--audio-dir", help="directory prefix for audio paths")
    p.add_argument("--audio-ext", help="audio extension (default .wav)")
    p.set_defaults(func=_cmd_ingest_standard)

    p = sub.add_parser("mix", help="mix domain pools at a ratio and split train/dev/test")
    common(p)
    p.add_argument("--aphasia", required=True, help="aphasia pool JSONL (from enhance)")
    p.add_argument("--standard", required=True, help="standard pool JSONL (from ingest-standard)")
    p.add_argument("--ratio", help="aphasia share of the total, e.g. 0.5 or 1/2")
    p.add_argument("--total", type=int, help="total segment count (default 14000)")
    p.add_argument("--seed", type=int, help="shuffle seed (default 0)")
    p.add_argument(
        "--speaker-disjoint",
        action="store_true",
        help="assign whole speakers to splits (greedy; counts still exact)",
    )
    p.add_argument(
        "--allow-unenhanced",
        action="store_true",
        help="admit aphasia rows without enhanced_text",
    )
    p.set_defaults(func=_cmd_mix)

    p = sub.add_parser("slice", help="materialize per-utterance WAV files from a manifest")
    common(p)
    p.add_argument("--manifest", required=True, help="manifest.jsonl from `mix`")
    p.add_argument("--audio-root", help="prefix for relative audio paths in the manifest")
    p.add_argument("--jobs", type=int, help="parallel slicers (default: all cores)")
    p.set_defaults(func=_cmd_slice)

    p = sub.add_parser("score", help="word error rate of hypotheses against references")
    common(p)
    p.add_argument("--refs", required=True, help="manifest.jsonl or {id,text} reference JSONL")
    p.add_argument("--hyps", required=True, help="hypothesis JSONL with {id, text}")
    p.add_argument("--split", help="score only rows with this split label")
    p.add_argument("--run-name", help="run label for reports (default: out-dir name)")
    p.add_argument("--model", help="model label for reports")
    p.add_argument("--dataset", help="dataset label for reports")
    p.add_argument("--ratio", help="training mixing ratio label for ratio-sweep reports")
    p.add_argument(
        "--no-lowercase",
        action="store_const",
        const=True,
        default=None,
        help="keep case when normalizing",
    )
    p.add_argument(
        "--keep-punct",
        action="store_const",
        const=True,
        default=None,
        help="keep punctuation when normalizing",
    )
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("report", help="tabulate scored runs side by side")
    common(p)
    p.add_argument("scores", nargs="+", help="score.json files from `score`")
    p.add_argument(
        "--layout",
        required=True,
        choices=["baseline-table", "ratio-sweep"],
        help="baseline-table: model x dataset; ratio-sweep: one row per mixing ratio",
    )
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = PipelineConfig.load(args.config)
        return args.func(args, cfg)
    except (AskitError, OSError) as exc:
        events.emit(
            "error",
            command=args.command,
            error=type(exc).__name__,
            message=str(exc),
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
