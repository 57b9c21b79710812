"""Text normalization applied identically to references and hypotheses.

Light by default: lowercase, unicode apostrophes folded to ASCII then
removed (so contractions compare as one token), remaining ASCII
punctuation replaced by space, whitespace tokenization. References in
this pipeline are standardized rewrites, so heavier ASR normalization
(number expansion etc.) is deliberately out of scope.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass

_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})
_PUNCT_TO_SPACE = str.maketrans({c: " " for c in string.punctuation if c != "'"})
_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class NormPolicy:
    lowercase: bool = True
    strip_punct: bool = True

    def normalize(self, text: str) -> str:
        if self.lowercase:
            text = text.lower()
        if self.strip_punct:
            text = text.translate(_APOSTROPHES)
            text = text.replace("'", "")
            text = text.translate(_PUNCT_TO_SPACE)
        return _WS_RE.sub(" ", text).strip()

    def tokens(self, text: str) -> list[str]:
        return self.normalize(text).split()
