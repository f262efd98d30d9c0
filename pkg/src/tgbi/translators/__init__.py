"""Translators module - sends the corpus to translation backends."""

from __future__ import annotations

import asyncio
import logging
from datetime import datetime, timezone

import httpx

from tgbi.cache import TranslationCache
from tgbi.corpus import EecCorpus, EecSentence
from tgbi.errors import BackendConfigError, BackendUnreachable
from tgbi.translators.base import (
    BackendDescriptor,
    BackendKind,
    BaseTranslator,
    BatchResult,
    TranslationFailure,
    TranslationRecord,
    load_backend,
    load_records,
    save_failures,
    save_records,
)
from tgbi.translators.fixture import FixtureTranslator, load_fixture
from tgbi.translators.http import HttpTranslator
from tgbi.translators.synthetic import SyntheticTranslator

__all__ = [
    "BackendDescriptor",
    "BackendKind",
    "BaseTranslator",
    "BatchResult",
    "FixtureTranslator",
    "HttpTranslator",
    "SyntheticTranslator",
    "TranslationFailure",
    "TranslationRecord",
    "build_translator",
    "load_backend",
    "load_fixture",
    "load_records",
    "save_failures",
    "save_records",
    "translate_batch",
]

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 3


def build_translator(descriptor: BackendDescriptor) -> BaseTranslator:
    """Instantiate the translator for a backend descriptor."""
    descriptor.validate()
    if descriptor.kind is BackendKind.HTTP_ADAPTER:
        return HttpTranslator(descriptor)
    if descriptor.kind is BackendKind.FIXTURE_FILE:
        return FixtureTranslator(descriptor)
    return SyntheticTranslator(descriptor)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


async def _translate_one(
    translator: BaseTranslator,
    sentence: EecSentence,
    source: str,
    cache: TranslationCache,
    semaphore: asyncio.Semaphore,
    retry_delay: float,
) -> TranslationRecord | TranslationFailure:
    backend_id = translator.backend_id
    last_error: Exception | None = None
    for attempt in range(1, MAX_ATTEMPTS + 1):
        try:
            async with semaphore:
                output = await translator.translate(sentence, source)
        except BackendConfigError:
            raise
        except (httpx.HTTPError, ValueError, KeyError) as e:
            last_error = e
            logger.warning("%s: attempt %d/%d for %s failed: %s", backend_id, attempt, MAX_ATTEMPTS, sentence.sentence_id, e)
            if attempt < MAX_ATTEMPTS:
                await asyncio.sleep(retry_delay * 2 ** (attempt - 1))
            continue
        entry = cache.append(backend_id, source, output, _now())
        return TranslationRecord(
            sentence_id=sentence.sentence_id,
            backend_id=backend_id,
            source_hangul=source,
            output_english=entry.output,
            fetched_at=entry.fetched_at,
            from_cache=False,
        )
    return TranslationFailure(
        sentence_id=sentence.sentence_id,
        backend_id=backend_id,
        error=f"{type(last_error).__name__}: {last_error}",
        attempts=MAX_ATTEMPTS,
        transport_error=isinstance(last_error, httpx.TransportError),
    )


async def _translate_all(
    translator: BaseTranslator,
    pending: list[tuple[EecSentence, str]],
    cache: TranslationCache,
    retry_delay: float,
) -> list[TranslationRecord | TranslationFailure]:
    semaphore = asyncio.Semaphore(translator.descriptor.max_parallel)
    try:
        return await asyncio.gather(
            *(_translate_one(translator, s, source, cache, semaphore, retry_delay) for s, source in pending)
        )
    finally:
        await translator.aclose()


def translate_batch(
    corpus: EecCorpus,
    backend: BackendDescriptor,
    cache: TranslationCache | None = None,
    append_period: bool = False,
    retry_delay: float = 1.0,
    translator: BaseTranslator | None = None,
) -> BatchResult:
    """
    Translate every corpus sentence with one backend.

    The cache is consulted first; the rest are fetched with at most
    max_parallel requests in flight and 3 attempts each (backoff 1s, 2s).
    Sentences that still fail are returned in `failures`, never dropped.

    Args:
        corpus: The generated EEC
        backend: Backend descriptor
        cache: Persistent journal (an in-memory one is used if None)
        append_period: Send sentences with a final "."
        retry_delay: Initial backoff in seconds
        translator: Prebuilt translator, e.g. with a mock transport

    Returns:
        BatchResult in corpus order
    """
    backend.validate()
    cache = cache if cache is not None else TranslationCache(None)
    translator = translator or build_translator(backend)
    translator.prepare(list(corpus.sentences))

    suffix = "." if append_period else ""
    results: dict[str, TranslationRecord | TranslationFailure] = {}
    pending: list[tuple[EecSentence, str]] = []
    for sentence in corpus.sentences:
        source = sentence.text_hangul + suffix
        cached = cache.get(backend.backend_id, source)
        if cached is not None:
            results[sentence.sentence_id] = TranslationRecord(
                sentence_id=sentence.sentence_id,
                backend_id=backend.backend_id,
                source_hangul=source,
                output_english=cached.output,
                fetched_at=cached.fetched_at,
                from_cache=True,
            )
        else:
            pending.append((sentence, source))

    logger.info("%s: %d cached, %d to fetch", backend.backend_id, len(results), len(pending))
    if pending:
        fetched = asyncio.run(_translate_all(translator, pending, cache, retry_delay))
        for (sentence, _), outcome in zip(pending, fetched):
            results[sentence.sentence_id] = outcome
    else:
        asyncio.run(translator.aclose())

    records = [r for r in (results[s.sentence_id] for s in corpus.sentences) if isinstance(r, TranslationRecord)]
    failures = [r for r in (results[s.sentence_id] for s in corpus.sentences) if isinstance(r, TranslationFailure)]

    if failures and not records:
        if all(f.transport_error for f in failures):
            raise BackendUnreachable(backend.backend_id, f"all {len(failures)} requests failed: {failures[0].error}")
    if failures:
        logger.warning("%s: %d of %d sentences failed", backend.backend_id, len(failures), len(corpus))
    return BatchResult(backend_id=backend.backend_id, records=records, failures=failures)
