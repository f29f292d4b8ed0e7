"""Rule-based augmentation: lexical injection, balancing, tagging, stats.

MSA rows are rewritten into per-region dialectal variants by greedy
longest-first substitution over the verified lexicon, then region classes
are equalized by seeded up/downsampling and formatted as tagged examples.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import EmptyPool, MissingClass
from .funnel import infer_context, normalize_arabic, split_token_punct
from .lexicon import Lexicon
from .schema import (
    DIALECT_REGIONS,
    Context,
    ControlVector,
    Region,
    Register,
    SentenceRecord,
    TaggedExample,
    format_control_prefix,
)

_REGION_ORDER = {region: i for i, region in enumerate(Region)}


@dataclass(frozen=True)
class Substitution:
    """One applied lexical injection.

    Token indices are inclusive positions into the whitespace-split tokens
    of the original text. ``dialect_form`` is the bare variant; punctuation
    attached to the replaced span is preserved around it in the output.
    """

    start_token: int
    end_token: int
    msa_form: str
    dialect_form: str
    rule_id: str

    def __post_init__(self):
        if self.start_token > self.end_token:
            raise ValueError("start_token must be <= end_token")
        if normalize_arabic(self.msa_form) == normalize_arabic(self.dialect_form):
            raise ValueError("substitution must change the surface form")


class VariantChoice(Enum):
    FIRST = "first"
    SEEDED_RANDOM = "seeded-random"


@dataclass(frozen=True)
class AugmentConfig:
    regions: frozenset[Region] = frozenset(DIALECT_REGIONS)
    target_per_region: int = 6400
    rng_seed: int = 42
    keep_unchanged: bool = False
    variant_choice: VariantChoice = VariantChoice.FIRST
    reinfer_context: bool = False

    def __post_init__(self):
        if self.target_per_region < 1:
            raise ValueError("target_per_region must be >= 1")
        if not self.regions:
            raise ValueError("regions must be non-empty")

    def sorted_regions(self) -> list[Region]:
        return sorted(self.regions, key=_REGION_ORDER.__getitem__)


def apply_substitutions(text: str, substitutions: Sequence[Substitution]) -> str:
    """Replay substitutions against the original text.

    The substitution list of :func:`dialectalize` replayed here reproduces
    its output exactly; substitutions must be non-overlapping and ordered
    left to right.
    """
    tokens = text.split()
    out: list[str] = []
    cursor = 0
    for sub in substitutions:
        if sub.start_token < cursor or sub.end_token >= len(tokens):
            raise ValueError(f"substitution out of order or range: {sub}")
        out.extend(tokens[cursor:sub.start_token])
        prefix = split_token_punct(tokens[sub.start_token])[0]
        suffix = split_token_punct(tokens[sub.end_token])[2]
        out.append(prefix + sub.dialect_form + suffix)
        cursor = sub.end_token + 1
    out.extend(tokens[cursor:])
    return " ".join(out)


def dialectalize(
    text: str,
    cv: ControlVector,
    lexicon: Lexicon,
    variant_choice: VariantChoice = VariantChoice.FIRST,
    rng: random.Random | None = None,
) -> tuple[str, list[Substitution]]:
    """Rewrite MSA surface forms into variants for the requested region.

    Matching is greedy longest-first, left to right, non-overlapping, on
    normalized tokens; everything unmatched keeps its original orthography.
    Zero substitutions is a valid outcome.
    """
    raw_tokens = text.split()
    norm_tokens = [normalize_arabic(split_token_punct(t)[1]) for t in raw_tokens]
    substitutions: list[Substitution] = []
    i = 0
    while i < len(raw_tokens):
        entry = None
        if norm_tokens[i]:
            entry = lexicon.match_at(norm_tokens, i, cv.region, cv.context, cv.register)
        if entry is None:
            i += 1
            continue
        variants = entry.variants[cv.region]
        if variant_choice is VariantChoice.SEEDED_RANDOM:
            if rng is None:
                rng = random.Random(0)
            variant = rng.choice(variants)
        else:
            variant = variants[0]
        span = len(entry.msa_tokens)
        substitutions.append(Substitution(
            start_token=i,
            end_token=i + span - 1,
            msa_form=entry.msa_form,
            dialect_form=variant,
            rule_id=entry.rule_id,
        ))
        i += span
    return apply_substitutions(text, substitutions), substitutions


def augment_record(
    record: SentenceRecord,
    config: AugmentConfig,
    lexicon: Lexicon,
    rng: random.Random | None = None,
) -> list[SentenceRecord]:
    """Dialectal variants of one MSA row, one per configured region.

    Rows that come through unchanged are dropped unless keep_unchanged is
    set: an untouched MSA sentence under a dialect label would teach the
    tags nothing.
    """
    out = []
    for region in config.sorted_regions():
        if region is Region.MSA_GENERAL:
            continue
        cv = ControlVector(region, record.context, Register.INFORMAL)
        target, substitutions = dialectalize(
            record.target, cv, lexicon, config.variant_choice, rng)
        if not substitutions and not config.keep_unchanged:
            continue
        context = record.context
        if config.reinfer_context:
            context = infer_context(record.input + " " + target, lexicon)
        out.append(SentenceRecord(
            input=record.input, target=target,
            region=region, context=context, style=Register.INFORMAL,
        ))
    return out


def augment_corpus(
    msa_pool: Sequence[SentenceRecord],
    config: AugmentConfig,
    lexicon: Lexicon,
) -> list[SentenceRecord]:
    """Expand an MSA pool into dialectal rows across the configured regions."""
    msa_pool = list(msa_pool)
    if not msa_pool:
        raise EmptyPool("augmentation source pool is empty")
    for record in msa_pool:
        if record.region is not Region.MSA_GENERAL:
            raise ValueError(
                f"augment source rows must be MSA-General, got {record.region.value}")
    rng = random.Random(f"{config.rng_seed}|augment")
    out = []
    for record in msa_pool:
        out.extend(augment_record(record, config, lexicon, rng))
    return out


def augment_stream(
    records: Iterable[SentenceRecord],
    config: AugmentConfig,
    lexicon: Lexicon,
) -> Iterator[SentenceRecord]:
    """Pass every row through; expand MSA-General rows into dialect rows.

    This is the pipeline-stage view of :func:`augment_corpus`: labeled
    dialect rows survive untouched, each MSA row is followed by its
    augmented variants. Raises EmptyPool when the stream held no MSA rows.
    """
    rng = random.Random(f"{config.rng_seed}|augment")
    msa_seen = 0
    for record in records:
        yield record
        if record.region is Region.MSA_GENERAL:
            msa_seen += 1
            yield from augment_record(record, config, lexicon, rng)
    if msa_seen == 0:
        raise EmptyPool("no MSA-General rows in the augmentation input")


def balance(
    records: Iterable[SentenceRecord],
    target_per_region: int,
    rng_seed: int,
    regions: Iterable[Region] | None = None,
) -> list[SentenceRecord]:
    """Equalize region classes to exactly target_per_region rows each.

    Deficient classes are upsampled with replacement, overfull classes
    downsampled without replacement; both draws are seeded per class, so
    the output is a pure function of (records, target, seed). When
    ``regions`` is given the output contains exactly those classes and a
    class with zero rows raises MissingClass.
    """
    if target_per_region < 1:
        raise ValueError("target_per_region must be >= 1")
    by_region: dict[Region, list[SentenceRecord]] = {}
    for record in records:
        by_region.setdefault(record.region, []).append(record)
    if regions is None:
        wanted = sorted(by_region, key=_REGION_ORDER.__getitem__)
    else:
        wanted = sorted(set(regions), key=_REGION_ORDER.__getitem__)
    out: list[SentenceRecord] = []
    for region in wanted:
        rows = by_region.get(region, [])
        if not rows:
            raise MissingClass(region.value)
        rng = random.Random(f"{rng_seed}|balance|{region.value}")
        if len(rows) < target_per_region:
            rows = rows + rng.choices(rows, k=target_per_region - len(rows))
        elif len(rows) > target_per_region:
            rows = rng.sample(rows, target_per_region)
        out.extend(rows)
    return out


def tag_record(record: SentenceRecord, three_tag: bool = False) -> TaggedExample:
    return TaggedExample(
        tagged_input=format_control_prefix(record.control_vector, record.input, three_tag),
        target=record.target,
    )


def tag_corpus(records: Iterable[SentenceRecord],
               three_tag: bool = False) -> list[TaggedExample]:
    """Format each record's input with its bracketed control prefix."""
    return [tag_record(r, three_tag) for r in records]


def corpus_stats(records: Iterable[SentenceRecord]) -> dict:
    """Region/context/style histograms plus the total row count."""
    regions = {r.value: 0 for r in Region}
    contexts = {c.value: 0 for c in Context}
    styles = {s.value: 0 for s in Register}
    total = 0
    for record in records:
        regions[record.region.value] += 1
        contexts[record.context.value] += 1
        styles[record.style.value] += 1
        total += 1
    return {"regions": regions, "contexts": contexts, "styles": styles, "total": total}
