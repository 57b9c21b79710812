#!/usr/bin/env python3
"""Regenerate the golden test fixtures under tests/fixtures/.

The .cha corpus is small but deliberately exercises every markup rule
class the cleaner handles (retraces, replacements, bracket codes,
&-tokens, pauses/unintelligible, parenthesized expansions, terminator
codes), plus the parser edge cases (continuation lines, dependent
tiers, missing timestamps, extra speakers).

The enhancement cache fixture is derived *through* the real parse and
clean steps so its keys always match what a replay run computes; the
rewrites themselves are the hand-written REWRITES table below. Run this
script after changing cleaning semantics and commit the result.
"""

from __future__ import annotations

import sys
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

B = "\x15"  # CHAT timestamp bullet delimiter

CHA_FILES = {
    "adler01a.cha": f"""@UTF8
@Begin
@Languages:\teng
@Participants:\tPAR Adler Participant, INV Investigator
@ID:\teng|corpus|PAR|62;|male|||Participant|||
@ID:\teng|corpus|INV|||||Investigator|||
@Media:\tadler01a, audio
*INV:\twhat did you do this morning ? {B}100_2000{B}
*PAR:\t&-uh <I go> [//] I went to the
\tstore . {B}2100_5000{B}
%mor:\tpro:sub|I v|go&PAST prep|to det:art|the n|store .
*PAR:\tI get [: got] bread and &=laughs milk . {B}5200_8000{B}
*INV:\tdid you pay with cash ? {B}8100_9000{B}
*PAR:\txxx . {B}9100_10000{B}
*PAR:\tmoney (.) yes money .
@End
""",
    "adler02a.cha": f"""@UTF8
@Begin
@Languages:\teng
@Participants:\tPAR Adler Participant, INV Investigator
@ID:\teng|corpus|PAR|57;|female|||Participant|||
@Media:\tadler02a, audio
*INV:\twhat would you like to drink ? {B}500_2200{B}
*PAR:\t&+cuh I brown water . {B}2300_6000{B}
*PAR:\t(be)cause I thirsty . {B}6100_8000{B}
*INV:\tokay . {B}8100_8500{B}
*PAR:\tI drink it (..) all +... {B}8600_11000{B}
*PAR:\tand nice [+ exc] . {B}11100_12500{B}
@End
""",
    "elman05b.cha": f"""@UTF8
@Begin
@Languages:\teng
@Participants:\tPAR Participant, INV Investigator, BRO Brother
@ID:\teng|corpus|PAR|70;|male|||Participant|||
@Media:\telman05b, audio
*BRO:\the walks every day . {B}300_1800{B}
*INV:\ttell me about your walk . {B}1900_3500{B}
*PAR:\tI walk [/] walk yyy park . {B}3600_6200{B}
*PAR:\tmy dog [* s:r] comes too . {B}6300_8100{B}
%gra:\t1|2|DET 2|3|SUBJ 3|0|ROOT
*PAR:\twe see birds and +/. {B}8200_9800{B}
*PAR:\t+< yes very tired . {B}9900_12000{B}
@End
""",
    "kurland12c.cha": f"""@UTF8
@Begin
@Languages:\teng
@Participants:\tPAR Participant
@ID:\teng|corpus|PAR|48;|female|||Participant|||
@Media:\tkurland12c, audio
*PAR:\t<my son> [//] my daughter visit (2.5) Sunday . {B}400_4000{B}
*PAR:\tshe bring (0:03.5) food yummy . {B}4100_7300{B}
*PAR:\twe talk and &=sighs rest . {B}7400_9500{B}
@End
""",
}

# cleaned utterance -> standard-English rewrite
REWRITES = {
    "I went to the store .": "I went to the store.",
    "I get bread and milk .": "I got bread and milk.",
    "money yes money .": "Yes, I paid with money.",
    "cuh I brown water .": "I want a coffee.",
    "because I thirsty .": "Because I am thirsty.",
    "I drink it all .": "I drank it all.",
    "and nice .": "And it was nice.",
    "walk park .": "I walk in the park.",
    "my dog comes too .": "My dog comes too.",
    "we see birds and .": "We see birds.",
    "yes very tired .": "Yes, I am very tired.",
    "my daughter visit Sunday .": "My daughter visits on Sunday.",
    "she bring food yummy .": "She brings delicious food.",
    "we talk and rest .": "We talk and rest.",
}

STM = """;; Transcript references for the standard-speech pool fixture.
;; CAT "0" "" ""
;; LABEL "o" "Overall" "All segments"
ted_talk_01 1 ted_talk_01_spk 0.00 2.50 <o,f0,male> the quick brown fox jumps over the lazy dog
ted_talk_01 1 ted_talk_01_spk 2.50 5.10 <o,f0,male> we choose to go to the moon this decade
ted_talk_01 1 inter_segment_gap 5.10 6.00 ignore_time_segment_in_scoring
ted_talk_01 1 ted_talk_01_spk 6.00 9.25 <o,f0,male> not because it is easy but because it is hard
ted_talk_01 1 ted_talk_01_spk 9.25 12.00 <o,f0,male> ideas are worth spreading to everyone
ted_talk_01 1 ted_talk_01_spk 12.00 15.40 <o,f0,male> a small step can become a giant leap
ted_talk_01 1 ted_talk_01_spk 15.40 18.00 <o,f0,male> thank you all very much
ted_talk_02 1 ted_talk_02_spk 0.50 3.00 <o,f0,female> good morning everyone and welcome
ted_talk_02 1 ted_talk_02_spk 3.00 6.75 <o,f0,female> today I want to talk about language
ted_talk_02 1 ted_talk_02_spk 6.75 9.00 <o,f0,female> the brain adapts in remarkable ways
ted_talk_02 1 ted_talk_02_spk 9.00 12.30 <o,f0,female> recovery is a long road but a real one
ted_talk_02 1 ted_talk_02_spk 12.30 15.00 <o,f0,female> science gives us reasons for hope
ted_talk_02 1 ted_talk_02_spk 15.00 17.80 <o,f0,female> thank you for listening
"""

CREATED_AT = "2025-06-01T00:00:00Z"
MODEL_ID = "gpt-4"
PROMPT_VERSION = "v1"


def build_cache_rows() -> list[dict]:
    from askit.chat import extract_dialog, parse_transcript
    from askit.cleaning import clean_text
    from askit.enhance.keys import request_key
    from askit.enhance.prompts import prompt_checksum

    rows = []
    seen = set()
    for name, content in CHA_FILES.items():
        t = parse_transcript(content.encode("utf-8"), file_id=name.removesuffix(".cha"))
        for seg in extract_dialog(t, {"PAR"}, {"INV"}):
            cleaned = clean_text(seg.utterance.raw_text)
            if not cleaned:
                continue
            if cleaned not in REWRITES:
                raise SystemExit(f"no rewrite for cleaned text {cleaned!r} ({name})")
            key = request_key(PROMPT_VERSION, MODEL_ID, 0.0, None, cleaned)
            if key in seen:
                continue
            seen.add(key)
            rows.append(
                {
                    "key": key,
                    "prompt_version": PROMPT_VERSION,
                    "prompt_sha256": prompt_checksum(PROMPT_VERSION),
                    "model_id": MODEL_ID,
                    "temperature": 0.0,
                    "context": None,
                    "input_text": cleaned,
                    "output_text": REWRITES[cleaned],
                    "created_at": CREATED_AT,
                }
            )
    missing = set(REWRITES) - {r["input_text"] for r in rows}
    if missing:
        raise SystemExit(f"REWRITES entries never produced by the corpus: {missing}")
    return rows


def main() -> int:
    from askit.jsonl import write_jsonl

    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, content in CHA_FILES.items():
        (FIXTURES / name).write_bytes(content.encode("utf-8"))
        print(f"wrote {FIXTURES / name}")
    (FIXTURES / "standard.stm").write_text(STM, encoding="utf-8")
    print(f"wrote {FIXTURES / 'standard.stm'}")
    n = write_jsonl(FIXTURES / "enhance-cache.jsonl", build_cache_rows())
    print(f"wrote {FIXTURES / 'enhance-cache.jsonl'} ({n} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
