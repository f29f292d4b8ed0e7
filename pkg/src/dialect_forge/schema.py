"""Record schema, control-tag formatting/parsing, and (de)serialization.

A corpus row is a five-field record {input, target, region, context, style}.
Steering metadata travels either inside the record or, for tagged training
examples, as a bracketed prefix on the input line: ``[Region] [Context] text``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from enum import Enum
from typing import IO, Iterable, Iterator

from .errors import MalformedPrefix, SchemaViolation, UnknownLabel


class Region(Enum):
    MSA_GENERAL = "MSA-General"
    EGYPTIAN = "Egyptian"
    LEVANTINE_NORTH = "Levantine-North"
    LEVANTINE_SOUTH = "Levantine-South"
    GULF = "Gulf"
    IRAQI = "Iraqi"
    LIBYAN = "Libyan"
    MOROCCAN = "Moroccan"
    ALGERIAN = "Algerian"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_label(cls, label: str) -> "Region":
        label = label.strip()
        if label in _REGION_BY_LABEL:
            return _REGION_BY_LABEL[label]
        if label in REGION_ALIASES:
            return REGION_ALIASES[label]
        raise UnknownLabel(label, kind="region")


# Bare "Levantine" resolves to the northern class; both Levantine classes
# share one lexicon family anyway.
REGION_ALIASES = {"Levantine": Region.LEVANTINE_NORTH}
_REGION_BY_LABEL = {r.value: r for r in Region}

#: The eight vernacular classes (everything except the MSA baseline class).
DIALECT_REGIONS = tuple(r for r in Region if r is not Region.MSA_GENERAL)


class Context(Enum):
    GENERAL = "General"
    RESTAURANT = "Restaurant"
    EDUCATION = "Education"
    HOSPITAL = "Hospital"
    TOURIST = "Tourist"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_label(cls, label: str) -> "Context":
        label = label.strip()
        if label in _CONTEXT_BY_LABEL:
            return _CONTEXT_BY_LABEL[label]
        if label in CONTEXT_ALIASES:
            return CONTEXT_ALIASES[label]
        raise UnknownLabel(label, kind="context")


CONTEXT_ALIASES = {
    "Medical": Context.HOSPITAL,
    "Travel": Context.TOURIST,
    "General Life": Context.GENERAL,
}
_CONTEXT_BY_LABEL = {c.value: c for c in Context}


class Register(Enum):
    FORMAL = "Formal"
    INFORMAL = "Informal"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_label(cls, label: str) -> "Register":
        label = label.strip()
        try:
            return _REGISTER_BY_LABEL[label]
        except KeyError:
            raise UnknownLabel(label, kind="register") from None


_REGISTER_BY_LABEL = {r.value: r for r in Register}


@dataclass(frozen=True)
class ControlVector:
    """The (region, context, register) triple that conditions generation."""

    region: Region
    context: Context
    register: Register


@dataclass(frozen=True)
class SentenceRecord:
    """One parallel example with steering metadata.

    ``input`` is the source text, ``target`` the (possibly dialectal)
    target text. Both must be non-empty after trimming.
    """

    input: str
    target: str
    region: Region
    context: Context
    style: Register

    def __post_init__(self):
        if not self.input.strip():
            raise ValueError("record input must be non-empty")
        if not self.target.strip():
            raise ValueError("record target must be non-empty")

    @property
    def control_vector(self) -> ControlVector:
        return ControlVector(self.region, self.context, self.style)

    def to_json_obj(self) -> dict:
        return {
            "input": self.input,
            "target": self.target,
            "region": self.region.value,
            "context": self.context.value,
            "style": self.style.value,
        }


@dataclass(frozen=True)
class TaggedExample:
    """A training example whose input carries the bracketed control prefix."""

    tagged_input: str
    target: str


def format_control_prefix(cv: ControlVector, body: str, three_tag: bool = False) -> str:
    """Prefix ``body`` with bracketed control tags.

    Default surface form is ``[Region] [Context] body``. Register rides in
    record metadata only; with ``three_tag`` set, an Informal register is
    additionally emitted as a third tag so the prefix round-trips the full
    control vector. Exactly one ASCII space separates tags and body.
    """
    if not body:
        raise ValueError("body must be non-empty")
    tags = [f"[{cv.region.value}]", f"[{cv.context.value}]"]
    if three_tag and cv.register is Register.INFORMAL:
        tags.append(f"[{cv.register.value}]")
    return " ".join(tags) + " " + body


def _take_tag(s: str) -> tuple[str, str] | None:
    """Split a leading ``[label]`` off ``s``; None when there is none."""
    if not s.startswith("["):
        return None
    end = s.find("]")
    if end < 0:
        return None
    return s[1:end], s[end + 1:]


def _take_separator(s: str) -> str | None:
    """Consume the single space after a tag; None when neither space nor end."""
    if s == "":
        return ""
    if s.startswith(" "):
        return s[1:]
    return None


def parse_control_prefix(line: str) -> tuple[ControlVector, str]:
    """Invert :func:`format_control_prefix`.

    Register defaults to Formal when no third tag is present. A third
    bracketed token is consumed only when it is a valid register label;
    anything else stays part of the body (which makes register labels
    reserved words at the head of a two-tag body).
    """
    taken = _take_tag(line)
    if taken is None:
        raise MalformedPrefix(f"no [Region] [Context] prefix in {line!r}")
    region_label, rest = taken
    rest = _take_separator(rest)
    taken = _take_tag(rest) if rest is not None else None
    if taken is None:
        raise MalformedPrefix(f"no [Region] [Context] prefix in {line!r}")
    context_label, rest = taken
    region = Region.from_label(region_label)
    context = Context.from_label(context_label)
    remainder = _take_separator(rest)
    if remainder is None:
        raise MalformedPrefix(f"tags must be followed by a single space in {line!r}")
    register = Register.FORMAL
    taken = _take_tag(remainder)
    if taken is not None and taken[0] in _REGISTER_BY_LABEL:
        after = _take_separator(taken[1])
        if after is not None:
            register = _REGISTER_BY_LABEL[taken[0]]
            remainder = after
    return ControlVector(region, context, register), remainder


_RECORD_FIELDS = ("input", "target", "region", "context", "style")


def _record_from_obj(obj: dict, line_no: int, lenient: bool) -> SentenceRecord | None:
    if not isinstance(obj, dict):
        if lenient:
            return None
        raise SchemaViolation(line_no, "<line>", "not a JSON object")
    for field in ("input", "target"):
        value = obj.get(field)
        if not isinstance(value, str) or not value.strip():
            if lenient:
                return None
            raise SchemaViolation(line_no, field, "missing or empty")
    defaults = {"region": "MSA-General", "context": "General", "style": "Formal"}
    labels = {}
    for field, parse in (("region", Region.from_label),
                         ("context", Context.from_label),
                         ("style", Register.from_label)):
        raw = obj.get(field)
        if raw is None:
            if not lenient:
                raise SchemaViolation(line_no, field, "missing")
            raw = defaults[field]
        try:
            labels[field] = parse(raw)
        except UnknownLabel as exc:
            if lenient:
                return None
            raise SchemaViolation(line_no, field, str(exc)) from exc
    return SentenceRecord(
        input=obj["input"], target=obj["target"],
        region=labels["region"], context=labels["context"], style=labels["style"],
    )


def read_records(stream: IO[str], lenient: bool = False) -> Iterator[SentenceRecord]:
    """Yield records from a JSONL stream.

    In strict mode (default) any malformed line raises SchemaViolation with
    its line number. In lenient mode malformed lines are skipped and missing
    metadata fields fall back to MSA-General / General / Formal.
    """
    for line_no, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            if lenient:
                continue
            raise SchemaViolation(line_no, "<line>", f"invalid JSON: {exc}") from exc
        record = _record_from_obj(obj, line_no, lenient)
        if record is not None:
            yield record


def write_records(records: Iterable[SentenceRecord], stream: IO[str]) -> int:
    """Write records as JSONL (UTF-8, Arabic stored as-is). Returns row count."""
    n = 0
    for record in records:
        stream.write(json.dumps(record.to_json_obj(), ensure_ascii=False) + "\n")
        n += 1
    return n


def read_tsv_records(
    stream: IO[str],
    region: Region = Region.MSA_GENERAL,
    context: Context = Context.GENERAL,
    style: Register = Register.FORMAL,
) -> Iterator[SentenceRecord]:
    """Import two-column source<TAB>target bitext lacking metadata."""
    for line_no, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise SchemaViolation(line_no, "<line>", "expected exactly 2 tab-separated columns")
        src, tgt = parts
        if not src.strip() or not tgt.strip():
            raise SchemaViolation(line_no, "<line>", "empty source or target column")
        yield SentenceRecord(input=src, target=tgt, region=region, context=context, style=style)


def write_tagged(examples: Iterable[TaggedExample], stream: IO[str]) -> int:
    """Write tagged examples as JSONL of {"tagged_input", "target"}."""
    n = 0
    for ex in examples:
        stream.write(json.dumps(asdict(ex), ensure_ascii=False) + "\n")
        n += 1
    return n
