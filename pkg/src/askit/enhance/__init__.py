from askit.enhance.cache import CACHE_FILENAME, EnhanceCache
from askit.enhance.client import API_KEY_ENV, ApiError, ChatClient
from askit.enhance.core import (
    BatchFailure,
    CacheMissError,
    EmptyCompletionError,
    EnhancementRecord,
    EnhancementRequest,
    build_prompt,
    enhance,
    enhance_batch,
)
from askit.enhance.keys import request_key
from askit.enhance.prompts import UnknownPromptVersionError, load_prompt, prompt_checksum

__all__ = [
    "CACHE_FILENAME",
    "EnhanceCache",
    "API_KEY_ENV",
    "ApiError",
    "ChatClient",
    "BatchFailure",
    "CacheMissError",
    "EmptyCompletionError",
    "EnhancementRecord",
    "EnhancementRequest",
    "build_prompt",
    "enhance",
    "enhance_batch",
    "request_key",
    "UnknownPromptVersionError",
    "load_prompt",
    "prompt_checksum",
]
