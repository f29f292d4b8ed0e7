"""Funnel stage: distill a noisy bitext pool into a verified dialectal seed.

Normalization and tokenization here are the comparison layer for the whole
toolkit: deduplication keys, lexicon matching, density scoring and context
inference all go through them. Record text itself is never rewritten.
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Iterator

from .schema import Context, Region, Register, SentenceRecord

if TYPE_CHECKING:
    from .lexicon import Lexicon

# Tashkeel and related combining marks, e.g. fatha/damma/kasra/shadda/sukun.
_DIACRITICS = re.compile(r"[ؐ-ًؚ-ٰٟ]")
_TATWEEL = "ـ"
_ALEF_VARIANTS = str.maketrans({"أ": "ا", "إ": "ا", "آ": "ا"})
_WHITESPACE = re.compile(r"\s+")

# ASCII punctuation plus the Arabic marks that show up in web bitext.
_PUNCT = string.punctuation + "،؛؟«»…–—٪۔"


def normalize_arabic(text: str) -> str:
    """Normalize Arabic orthography for matching and deduplication.

    Strips diacritics and tatweel, unifies alef variants (أ/إ/آ → ا) and
    collapses whitespace runs. Ta marbuta and ya are meaning-bearing and are
    left alone. Idempotent.
    """
    text = _DIACRITICS.sub("", text)
    text = text.replace(_TATWEEL, "")
    text = text.translate(_ALEF_VARIANTS)
    return _WHITESPACE.sub(" ", text).strip()


def split_token_punct(raw: str) -> tuple[str, str, str]:
    """Split one whitespace token into (leading punct, core, trailing punct)."""
    core = raw.strip(_PUNCT)
    if not core:
        return raw, "", ""
    start = raw.find(core)
    return raw[:start], core, raw[start + len(core):]


def tokenize(text: str) -> list[str]:
    """Whitespace tokens with leading/trailing punctuation stripped.

    No clitic segmentation; tokens that are pure punctuation are dropped.
    """
    tokens = []
    for raw in text.split():
        token = raw.strip(_PUNCT)
        if token:
            tokens.append(token)
    return tokens


def normalize_token(raw: str) -> str:
    """Normalized core of one raw whitespace token ("" for pure punctuation)."""
    return normalize_arabic(split_token_punct(raw)[1])


class DedupMode(Enum):
    EXACT = "exact"
    NORMALIZED = "normalized"


@dataclass(frozen=True)
class FunnelConfig:
    """Knobs for the filtering stage.

    ``density_threshold`` admits a row into the dialect pool; rows with zero
    density pass into the MSA pool when ``keep_msa`` is set and are rejected
    otherwise.
    """

    density_threshold: float = 0.15
    dedup_mode: DedupMode = DedupMode.NORMALIZED
    keep_msa: bool = True

    def __post_init__(self):
        if not 0.0 <= self.density_threshold <= 1.0:
            raise ValueError("density_threshold must be in [0, 1]")


def dedup(records: Iterable[SentenceRecord],
          mode: DedupMode = DedupMode.NORMALIZED) -> list[SentenceRecord]:
    """Keep the first record per (input, target) key, preserving order."""
    seen = set()
    kept = []
    for record in records:
        if mode is DedupMode.EXACT:
            key = (record.input, record.target)
        else:
            key = (normalize_arabic(record.input), normalize_arabic(record.target))
        if key in seen:
            continue
        seen.add(key)
        kept.append(record)
    return kept


def dialect_density(text: str, lexicon: "Lexicon") -> float:
    """Fraction of tokens whose normalized form is a dialect marker."""
    tokens = tokenize(text)
    if not tokens:
        return 0.0
    hits = sum(1 for t in tokens if lexicon.marker_regions(t))
    return hits / len(tokens)


def filter_by_density(
    records: Iterable[SentenceRecord],
    config: FunnelConfig,
    lexicon: "Lexicon",
) -> tuple[list[SentenceRecord], list[SentenceRecord], list[SentenceRecord]]:
    """Partition records into (dialect_pool, msa_pool, rejected).

    Density is scored on the target side, where the dialectal realization
    lives. The three pools are disjoint and exhaustive.
    """
    dialect_pool, msa_pool, rejected = [], [], []
    for record in records:
        density = dialect_density(record.target, lexicon)
        if density >= config.density_threshold:
            dialect_pool.append(record)
        elif density == 0.0 and config.keep_msa:
            msa_pool.append(record)
        else:
            rejected.append(record)
    return dialect_pool, msa_pool, rejected


_CONTEXT_TIE_ORDER = (Context.HOSPITAL, Context.TOURIST, Context.RESTAURANT, Context.EDUCATION)


def infer_context(text: str, lexicon: "Lexicon") -> Context:
    """Pick the context whose keywords hit the text most often.

    Keyword matching is token-exact on normalized, casefolded tokens (the
    keyword map may mix English and Arabic). Ties break by the fixed
    priority Hospital > Tourist > Restaurant > Education; no hits → General.
    """
    hits: dict[Context, int] = {}
    for token in tokenize(text):
        context = lexicon.context_keywords.get(normalize_arabic(token).casefold())
        if context is not None:
            hits[context] = hits.get(context, 0) + 1
    if not hits:
        return Context.GENERAL
    best = max(hits.values())
    for context in _CONTEXT_TIE_ORDER:
        if hits.get(context, 0) == best:
            return context
    return Context.GENERAL


def funnel_stream(
    records: Iterable[SentenceRecord],
    config: FunnelConfig,
    lexicon: "Lexicon",
    infer_contexts: bool = True,
) -> Iterator[tuple[str, SentenceRecord]]:
    """First-wins dedup + density partition + schema normalization, streamed.

    Yields ("dialect"|"msa"|"rejected"|"duplicate", record) per input row in
    input order. Zero-density keepers pass as the MSA-General class with
    Formal style; dialect-pool rows keep their region label and get
    Informal style. Rows still carrying the General context get a
    keyword-inferred one.
    """
    def fill_context(record: SentenceRecord) -> SentenceRecord:
        if not infer_contexts or record.context is not Context.GENERAL:
            return record
        inferred = infer_context(record.input + " " + record.target, lexicon)
        return record if inferred is record.context else replace(record, context=inferred)

    seen: set = set()
    for record in records:
        if config.dedup_mode is DedupMode.EXACT:
            key = (record.input, record.target)
        else:
            key = (normalize_arabic(record.input), normalize_arabic(record.target))
        if key in seen:
            yield "duplicate", record
            continue
        seen.add(key)
        density = dialect_density(record.target, lexicon)
        if density >= config.density_threshold:
            yield "dialect", fill_context(replace(record, style=Register.INFORMAL))
        elif density == 0.0 and config.keep_msa:
            yield "msa", fill_context(
                replace(record, region=Region.MSA_GENERAL, style=Register.FORMAL))
        else:
            yield "rejected", record


def run_funnel(
    records: Iterable[SentenceRecord],
    config: FunnelConfig,
    lexicon: "Lexicon",
    infer_contexts: bool = True,
) -> tuple[list[SentenceRecord], list[SentenceRecord], list[SentenceRecord]]:
    """Collect :func:`funnel_stream` into (dialect_pool, msa_pool, rejected)."""
    pools: dict[str, list[SentenceRecord]] = {"dialect": [], "msa": [], "rejected": []}
    for pool, record in funnel_stream(records, config, lexicon, infer_contexts):
        if pool != "duplicate":
            pools[pool].append(record)
    return pools["dialect"], pools["msa"], pools["rejected"]
