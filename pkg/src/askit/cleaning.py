"""Deterministic removal of CHAT markup from patient utterances.

The goal is to isolate linguistic content: annotation codes for gestures,
sound effects, pauses, retracing and editorial material are stripped so
that downstream enhancement and scoring see plain words.

Rule classes, applied in this fixed order (the order makes a single pass
idempotent):

1. retraces     -- ``<scope> [/]``, ``[//]``, ``[///]``: drop the retraced
                   scope and the marker, keep the repair. An unscoped
                   marker drops everything before it in the utterance
                   (bounded by the previous marker), so
                   ``I go [//] I went`` -> ``I went``.
2. replacements -- ``word [: target]``: keep the surface word and drop the
                   annotation; with ``substitute_replacements`` the target
                   is substituted instead.
   other brackets -- any remaining ``[...]`` code is deleted conservatively
                   and tallied (pass a Counter as ``code_counts`` to see
                   which codes a corpus actually uses). Scope brackets
                   left without an operator are unwrapped, keeping text.
3. amp tokens   -- ``&=event`` (gestures, sound effects) deleted;
                   ``&-filler`` (uh, um) deleted; ``&+frag`` / legacy
                   ``&frag`` word fragments keep their letters by default
                   (they are speech attempts, not annotations) or are
                   deleted when ``fragments == "delete"``.
4. pauses       -- ``(.)``, ``(..)``, ``(...)`` and timed pauses like
                   ``(2.5)`` or ``(0:03)`` deleted.
   unintelligible -- bare ``xxx`` / ``yyy`` tokens deleted.
5. paren forms  -- omitted material ``(be)cause`` expands to the full form
                   ``because`` by default; with ``expand_parens`` off only
                   the spoken surface ``cause`` is kept. Either way no
                   parentheses survive.
6. terminators  -- trailing-off ``+...``, interruption ``+/.`` and other
                   ``+`` terminators become a plain period; non-final
                   ``+``-codes (``+^``, ``+<``, ``++``, ``+,``) are deleted.
7. whitespace   -- runs collapse to single spaces, ends trimmed. If no
                   word character remains the text becomes empty and the
                   utterance is marked dropped.

Unbalanced delimiters raise instead of guessing: a truncated ``[`` means
the transcript line is damaged and the row should be flagged, not mangled.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from askit import AskitError
from askit.chat.parser import Utterance

POLICY_VERSION = "v1"


class UnbalancedDelimiterError(AskitError):
    """Raised when markup delimiters do not pair up.

    `index` is the utterance ordinal the caller passed in (None for bare
    strings) so batch cleaning can flag the row.
    """

    def __init__(self, message: str, index: int | None = None):
        where = f"utterance {index}: " if index is not None else ""
        super().__init__(where + message)
        self.index = index


@dataclass(frozen=True)
class CleanPolicy:
    """Per-rule-class toggles. Defaults implement the full rule table."""

    retraces: bool = True
    substitute_replacements: bool = False
    drop_other_brackets: bool = True
    events: bool = True
    fillers: bool = True
    fragments: str = "keep"  # "keep" strips the &+ marker, "delete" drops the token
    unintelligible: bool = True
    pauses: bool = True
    expand_parens: bool = True
    normalize_terminators: bool = True
    policy_version: str = POLICY_VERSION

    def effective_version(self) -> str:
        """Version string embedded in manifests; changes with any toggle."""
        flags = [
            "r" if self.retraces else "",
            "s" if self.substitute_replacements else "",
            "b" if self.drop_other_brackets else "",
            "e" if self.events else "",
            "f" if self.fillers else "",
            "g" if self.fragments == "keep" else "",
            "u" if self.unintelligible else "",
            "p" if self.pauses else "",
            "x" if self.expand_parens else "",
            "t" if self.normalize_terminators else "",
        ]
        return f"{self.policy_version}+{''.join(flags)}"


@dataclass(frozen=True)
class CleanedUtterance:
    source: Utterance
    text: str
    dropped: bool  # no linguistic content survived cleaning


_SCOPED_RETRACE_RE = re.compile(r"<([^<>]*)>\s*\[/{1,3}\]")
_RETRACE_MARK_RE = re.compile(r"\[/{1,3}\]")
_SUBSTITUTION_RE = re.compile(r"(\S+)\s*\[:\s*([^\]]*)\]")
_REPLACEMENT_RE = re.compile(r"\s*\[:\s*[^\]]*\]")
_BRACKET_CODE_RE = re.compile(r"\[([^\[\]]*)\]")
_SCOPE_WRAP_RE = re.compile(r"<([^<>]*)>")
# amp rules anchor at token start so a kept remainder can never re-form a
# marker and break idempotence (e.g. "&&a", "&+a&+b")
_EVENT_RE = re.compile(r"&=\S+")
_FILLER_DROP_RE = re.compile(r"(?<!\S)&-\S+")
_FILLER_KEEP_RE = re.compile(r"(?<!\S)&-([^&\s]\S*)")
_FRAGMENT_DROP_RE = re.compile(r"(?<!\S)&(?![=-])\+?\S+")
_FRAGMENT_KEEP_RE = re.compile(r"(?<!\S)&(?![=-])\+?([\w':]+)")
_PAUSE_RE = re.compile(r"\((?:\.{1,3}|[\d.:]+)\)")
_UNINTELLIGIBLE_RE = re.compile(r"(?<![\w'])(?:xxx|yyy)(?![\w'])")
_PAREN_FORM_RE = re.compile(r"\(([\w']*)\)")
_PLUS_CODE_RE = re.compile(r"(?<!\S)\+[<^+,./!?\"]*(?!\S)")
_WS_RE = re.compile(r"\s+")


def _check_balance(text: str, index: int | None) -> None:
    for opener, closer in (("[", "]"), ("(", ")")):
        depth = 0
        for ch in text:
            if ch == opener:
                depth += 1
            elif ch == closer:
                depth -= 1
                if depth < 0:
                    raise UnbalancedDelimiterError(f"{closer!r} with no {opener!r}", index)
        if depth:
            raise UnbalancedDelimiterError(f"{opener!r} with no {closer!r}", index)
    # angle scopes: "<" opens only at a token start, ">" closes only at a
    # token end, so +< (lazy overlap) is not an opener
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "<" and (pos == 0 or text[pos - 1].isspace()):
            depth += 1
        elif ch == ">" and depth and (pos + 1 == len(text) or text[pos + 1].isspace()):
            depth -= 1
    if depth:
        raise UnbalancedDelimiterError("'<' scope with no '>'", index)


def clean_text(
    text: str,
    policy: CleanPolicy | None = None,
    *,
    index: int | None = None,
    code_counts: Counter | None = None,
) -> str:
    """Apply the rule table to a bare string. Total over any input; idempotent."""
    p = policy or CleanPolicy()
    _check_balance(text, index)

    if p.retraces:
        prev = None
        while prev != text:
            prev = text
            text = _SCOPED_RETRACE_RE.sub(" ", text)
        m = _RETRACE_MARK_RE.search(text)
        while m:
            text = text[m.end():]
            m = _RETRACE_MARK_RE.search(text)

    if p.substitute_replacements:
        text = _SUBSTITUTION_RE.sub(lambda m: m.group(2).strip(), text)
    else:
        text = _REPLACEMENT_RE.sub(" ", text)
    if p.drop_other_brackets:
        def _drop(m: re.Match) -> str:
            if code_counts is not None:
                code_counts[m.group(1).strip()] += 1
            return " "

        prev = None
        while prev != text:
            prev = text
            text = _BRACKET_CODE_RE.sub(_drop, text)
        text = _SCOPE_WRAP_RE.sub(lambda m: m.group(1), text)

    if p.events:
        text = _EVENT_RE.sub(" ", text)
    if p.fillers:
        text = _FILLER_DROP_RE.sub(" ", text)
    else:
        # preserved fillers still lose the &- marker itself
        text = _FILLER_KEEP_RE.sub(lambda m: m.group(1), text)
    if p.fragments == "delete":
        text = _FRAGMENT_DROP_RE.sub(" ", text)
    else:
        text = _FRAGMENT_KEEP_RE.sub(lambda m: m.group(1), text)

    if p.pauses:
        text = _PAUSE_RE.sub(" ", text)
    if p.unintelligible:
        text = _UNINTELLIGIBLE_RE.sub(" ", text)

    if p.expand_parens:
        text = _PAREN_FORM_RE.sub(lambda m: m.group(1), text)
    else:
        text = _PAREN_FORM_RE.sub("", text)

    if p.normalize_terminators:
        text = _PLUS_CODE_RE.sub(
            lambda m: "." if re.search(r"[.!?]", m.group(0)) else " ", text
        )

    text = _WS_RE.sub(" ", text).strip()
    if not re.search(r"\w", text):
        return ""
    return text


def clean(
    u: Utterance,
    policy: CleanPolicy | None = None,
    code_counts: Counter | None = None,
) -> CleanedUtterance:
    text = clean_text(u.raw_text, policy, index=u.index, code_counts=code_counts)
    return CleanedUtterance(source=u, text=text, dropped=not text)


def clean_many(
    utterances: list[Utterance],
    policy: CleanPolicy | None = None,
) -> tuple[list[CleanedUtterance], list[UnbalancedDelimiterError], Counter]:
    """Clean a batch; damaged utterances are collected, not fatal.

    Returns (cleaned, flagged_errors, other_bracket_code_counts). Flagged
    utterances are excluded from the cleaned list.
    """
    cleaned: list[CleanedUtterance] = []
    flagged: list[UnbalancedDelimiterError] = []
    counts: Counter = Counter()
    for u in utterances:
        try:
            cleaned.append(clean(u, policy, code_counts=counts))
        except UnbalancedDelimiterError as exc:
            flagged.append(exc)
    return cleaned, flagged, counts
