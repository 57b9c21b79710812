"""Corpus engineering and WER evaluation toolkit for aphasic speech ASR.

Pipeline stages, each exposed as a library module and a CLI subcommand:

- ``askit.chat``: parse CHAT (.cha) transcripts into speaker turns with
  millisecond spans.
- ``askit.cleaning``: strip CHAT markup from patient utterances.
- ``askit.enhance``: rewrite cleaned utterances into standard English via
  a chat-completions API, with a content-addressed replay cache.
- ``askit.corpus``: mix aphasic and standard segment pools at a fixed
  ratio, partition 80/10/10 deterministically, slice WAV audio.
- ``askit.wer``: word error rate with full S/D/I alignment and
  comparison reports.
"""

__version__ = "0.1.0"


class AskitError(Exception):
    """Base class for all domain errors raised by this package."""
