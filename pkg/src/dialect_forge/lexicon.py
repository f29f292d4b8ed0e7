"""Verified MSA→dialect synonym map, marker inventory, and keyword map.

The lexicon drives everything dialect-aware: density scoring (markers),
lexical injection (entries), context inference (keywords) and authenticity
scoring (markers + entries). It is immutable after load and safe to share.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .bundled import seed_lexicon_path
from .errors import DuplicateRuleId, LexiconFormatError, UnknownLabel
from .funnel import normalize_arabic, tokenize
from .schema import Context, Region, Register

MAX_MSA_TOKENS = 4


@dataclass(frozen=True)
class LexiconEntry:
    """One substitution rule: an MSA surface phrase and its regional variants.

    ``contexts`` / ``register``, when present, restrict where the rule
    applies. A variant must actually change the surface form.
    """

    rule_id: str
    msa_form: str
    variants: dict[Region, tuple[str, ...]]
    contexts: frozenset[Context] | None = None
    register: Register | None = None

    @property
    def msa_tokens(self) -> tuple[str, ...]:
        return tuple(normalize_arabic(self.msa_form).split())

    def admits(self, region: Region, context: Context, register: Register) -> bool:
        if region not in self.variants:
            return False
        if self.contexts is not None and context not in self.contexts:
            return False
        if self.register is not None and register is not self.register:
            return False
        return True


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[LexiconEntry, ...]
    markers: dict[Region, frozenset[str]]
    context_keywords: dict[str, Context]
    # matching index: normalized first msa token -> entries, longest first
    _index: dict[str, tuple[LexiconEntry, ...]] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        index: dict[str, list[LexiconEntry]] = {}
        for entry in self.entries:
            tokens = entry.msa_tokens
            if tokens:
                index.setdefault(tokens[0], []).append(entry)
        for first, bucket in index.items():
            bucket.sort(key=lambda e: (-len(e.msa_tokens), e.rule_id))
            self._index[first] = tuple(bucket)

    def marker_regions(self, token: str) -> frozenset[Region]:
        """Regions whose marker inventory contains the normalized token."""
        normalized = normalize_arabic(token)
        return frozenset(r for r, markers in self.markers.items() if normalized in markers)

    def match_at(self, norm_tokens: list[str], pos: int,
                 region: Region, context: Context, register: Register) -> LexiconEntry | None:
        """Longest admissible entry whose msa tokens match at ``pos``.

        Ties on length break by smallest rule_id (the index is pre-sorted).
        """
        for entry in self._index.get(norm_tokens[pos], ()):
            tokens = entry.msa_tokens
            if pos + len(tokens) > len(norm_tokens):
                continue
            if not entry.admits(region, context, register):
                continue
            if tuple(norm_tokens[pos:pos + len(tokens)]) == tokens:
                return entry
        return None

    def lookup(self, msa_form: str, region: Region, context: Context,
               register: Register) -> list[str]:
        """Variant phrases for an MSA phrase under the given control triple.

        Matching is on normalized forms; when several entries share the
        normalized form, the longest msa_form wins, then smallest rule_id.
        """
        wanted = tuple(normalize_arabic(msa_form).split())
        if not wanted:
            return []
        candidates = [
            e for e in self.entries
            if e.msa_tokens == wanted and e.admits(region, context, register)
        ]
        if not candidates:
            return []
        best = min(candidates, key=lambda e: (-len(e.msa_tokens), e.rule_id))
        return list(best.variants[region])

    def msa_forms_for(self, region: Region) -> frozenset[str]:
        """Normalized single-token msa_forms of entries with variants for region."""
        return frozenset(
            e.msa_tokens[0] for e in self.entries
            if len(e.msa_tokens) == 1 and region in e.variants
        )


def _parse_entry(obj, location: str, problems: list[str]) -> LexiconEntry | None:
    if not isinstance(obj, dict):
        problems.append(f"{location}: entry must be an object")
        return None
    rule_id = obj.get("rule_id")
    if not isinstance(rule_id, str) or not rule_id:
        problems.append(f"{location}: missing rule_id")
        return None
    where = f"{location} ({rule_id!r})"
    msa = obj.get("msa")
    if not isinstance(msa, str) or not msa.strip():
        problems.append(f"{where}: missing msa form")
        return None
    n_tokens = len(normalize_arabic(msa).split())
    if not 1 <= n_tokens <= MAX_MSA_TOKENS:
        problems.append(f"{where}: msa form must be 1..{MAX_MSA_TOKENS} tokens, got {n_tokens}")
    variants: dict[Region, tuple[str, ...]] = {}
    raw_variants = obj.get("variants")
    if not isinstance(raw_variants, dict) or not raw_variants:
        problems.append(f"{where}: variants must be a non-empty object")
        return None
    msa_norm = normalize_arabic(msa)
    for region_label, forms in raw_variants.items():
        try:
            region = Region.from_label(region_label)
        except UnknownLabel as exc:
            problems.append(f"{where}: {exc}")
            continue
        if not isinstance(forms, list) or not forms:
            problems.append(f"{where}: variants for {region_label} must be a non-empty list")
            continue
        clean = []
        for form in forms:
            if not isinstance(form, str) or not form.strip():
                problems.append(f"{where}: empty variant for {region_label}")
            elif normalize_arabic(form) == msa_norm:
                problems.append(
                    f"{where}: variant {form!r} equals the msa form after normalization"
                )
            else:
                clean.append(form)
        if clean:
            variants[region] = tuple(clean)
    contexts = None
    if "contexts" in obj:
        raw = obj["contexts"]
        if not isinstance(raw, list):
            problems.append(f"{where}: contexts must be a list")
        else:
            parsed = set()
            for label in raw:
                try:
                    parsed.add(Context.from_label(label))
                except UnknownLabel as exc:
                    problems.append(f"{where}: {exc}")
            contexts = frozenset(parsed)
    register = None
    if "register" in obj:
        try:
            register = Register.from_label(obj["register"])
        except UnknownLabel as exc:
            problems.append(f"{where}: {exc}")
    if not variants:
        return None
    return LexiconEntry(rule_id=rule_id, msa_form=msa, variants=variants,
                        contexts=contexts, register=register)


def load_lexicon(path: str | Path) -> Lexicon:
    """Load and validate a lexicon JSON file.

    All invariant violations are collected and reported together. The
    per-region marker inventory is the union of the file's ``markers`` and
    every variant token, so marker coverage of variants holds by
    construction.
    """
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise LexiconFormatError([f"{path}: invalid JSON: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise LexiconFormatError([f"{path}: top level must be an object"])

    problems: list[str] = []
    duplicate_ids: list[str] = []
    entries: list[LexiconEntry] = []
    seen_ids: set[str] = set()
    raw_entries = doc.get("entries")
    if not isinstance(raw_entries, list):
        problems.append("entries: must be a list")
        raw_entries = []
    for i, raw in enumerate(raw_entries):
        entry = _parse_entry(raw, f"entries[{i}]", problems)
        if entry is None:
            continue
        if entry.rule_id in seen_ids:
            duplicate_ids.append(entry.rule_id)
            problems.append(f"entries[{i}]: duplicate rule_id {entry.rule_id!r}")
            continue
        seen_ids.add(entry.rule_id)
        entries.append(entry)

    markers: dict[Region, set[str]] = {}
    raw_markers = doc.get("markers", {})
    if not isinstance(raw_markers, dict):
        problems.append("markers: must be an object")
        raw_markers = {}
    for region_label, tokens in raw_markers.items():
        try:
            region = Region.from_label(region_label)
        except UnknownLabel as exc:
            problems.append(f"markers: {exc}")
            continue
        if not isinstance(tokens, list):
            problems.append(f"markers[{region_label}]: must be a list")
            continue
        markers.setdefault(region, set()).update(
            normalize_arabic(t) for t in tokens if isinstance(t, str) and t.strip()
        )
    for entry in entries:
        for region, forms in entry.variants.items():
            for form in forms:
                markers.setdefault(region, set()).update(tokenize(normalize_arabic(form)))

    context_keywords: dict[str, Context] = {}
    raw_keywords = doc.get("context_keywords", {})
    if not isinstance(raw_keywords, dict):
        problems.append("context_keywords: must be an object")
        raw_keywords = {}
    for keyword, label in raw_keywords.items():
        try:
            context_keywords[normalize_arabic(keyword).casefold()] = Context.from_label(label)
        except UnknownLabel as exc:
            problems.append(f"context_keywords[{keyword!r}]: {exc}")

    if duplicate_ids:
        raise DuplicateRuleId(duplicate_ids[0], problems)
    if problems:
        raise LexiconFormatError(problems)
    return Lexicon(
        entries=tuple(entries),
        markers={r: frozenset(tokens) for r, tokens in markers.items()},
        context_keywords=context_keywords,
    )


def load_seed_lexicon() -> Lexicon:
    """Load the starter lexicon shipped with the package."""
    return load_lexicon(seed_lexicon_path())
