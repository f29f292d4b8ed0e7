"""Dialect-sensitive evaluation: BLEU, chrF++, exact-match METEOR,
per-region breakdowns, marker-based authenticity, and the audit prompt.

The three overlap metrics are self-contained reimplementations pinned by
brute-force oracles in the test suite. meteor_exact deliberately skips the
stem/synonym stages of full METEOR (they need external linguistic
resources), and BLEU floors zero match counts at 1/(2*total) because desk
scale corpora hit zero 4-gram matches constantly.
"""
from __future__ import annotations

import math
import os
import re
import urllib.request
from collections import Counter, deque
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import EmptyEvalSet, UnparseableAudit
from .funnel import normalize_arabic, tokenize
from .schema import Region

if TYPE_CHECKING:
    from .lexicon import Lexicon

BLEU_MAX_ORDER = 4
CHRF_CHAR_ORDER = 6
CHRF_WORD_ORDER = 2
CHRF_BETA = 2.0


@dataclass(frozen=True)
class EvalPair:
    hypothesis: str
    reference: str
    region: Region

    def __post_init__(self):
        if not self.hypothesis.strip() or not self.reference.strip():
            raise ValueError("hypothesis and reference must be non-empty")


@dataclass(frozen=True)
class RegionScores:
    bleu: float
    chrf: float
    meteor: float
    authenticity: float
    n_pairs: int


@dataclass(frozen=True)
class EvalReport:
    corpus_bleu: float
    corpus_chrf: float
    corpus_meteor: float
    avg_dialect_score: float
    per_region: dict[Region, RegionScores]
    n_pairs: int

    def to_json_obj(self) -> dict:
        return {
            "corpus_bleu": self.corpus_bleu,
            "corpus_chrf": self.corpus_chrf,
            "corpus_meteor": self.corpus_meteor,
            "avg_dialect_score": self.avg_dialect_score,
            "per_region": {
                region.value: {
                    "bleu": scores.bleu,
                    "chrf": scores.chrf,
                    "meteor": scores.meteor,
                    "authenticity": scores.authenticity,
                    "n_pairs": scores.n_pairs,
                }
                for region, scores in self.per_region.items()
            },
            "n_pairs": self.n_pairs,
        }


def _require_pairs(pairs: Sequence[EvalPair]) -> None:
    if not pairs:
        raise EmptyEvalSet("no evaluation pairs")


def _ngram_counts(tokens: Sequence, n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu(pairs: Sequence[EvalPair]) -> float:
    """Corpus BLEU on 0..100: orders 1..4, uniform weights, exp brevity
    penalty when the candidate side is shorter.

    Orders with zero candidate n-grams in the whole corpus are dropped from
    the geometric mean; orders with candidates but no matches take the
    1/(2*total) smoothing floor.
    """
    _require_pairs(pairs)
    matches = [0] * (BLEU_MAX_ORDER + 1)
    totals = [0] * (BLEU_MAX_ORDER + 1)
    cand_len = 0
    ref_len = 0
    for pair in pairs:
        hyp = tokenize(pair.hypothesis)
        ref = tokenize(pair.reference)
        cand_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, BLEU_MAX_ORDER + 1):
            hyp_counts = _ngram_counts(hyp, n)
            ref_counts = _ngram_counts(ref, n)
            matches[n] += sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())
            totals[n] += max(0, len(hyp) - n + 1)
    if cand_len == 0:
        return 0.0
    log_sum = 0.0
    orders = 0
    for n in range(1, BLEU_MAX_ORDER + 1):
        if totals[n] == 0:
            continue
        precision = matches[n] / totals[n] if matches[n] else 1.0 / (2.0 * totals[n])
        log_sum += math.log(precision)
        orders += 1
    if orders == 0:
        return 0.0
    brevity = 1.0 if cand_len >= ref_len else math.exp(1.0 - ref_len / cand_len)
    return 100.0 * brevity * math.exp(log_sum / orders)


def _char_ngram_counts(text: str, n: int) -> tuple[Counter, int]:
    squeezed = "".join(text.split())
    total = max(0, len(squeezed) - n + 1)
    return Counter(squeezed[i:i + n] for i in range(total)), total


def _fscore(overlap: int, hyp_total: int, ref_total: int, beta: float) -> float:
    precision = overlap / hyp_total if hyp_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    denom = beta * beta * precision + recall
    if denom == 0.0:
        return 0.0
    return (1.0 + beta * beta) * precision * recall / denom


def chrf_pp(pairs: Sequence[EvalPair]) -> float:
    """Sentence-average chrF++ on 0..100.

    Character orders 1..6 (whitespace excluded) plus word orders 1..2;
    per-order F-scores with beta=2 are averaged over orders, then over the
    corpus. Orders empty on both sides are skipped.
    """
    _require_pairs(pairs)
    sentence_scores = []
    for pair in pairs:
        order_scores = []
        for n in range(1, CHRF_CHAR_ORDER + 1):
            hyp_counts, hyp_total = _char_ngram_counts(pair.hypothesis, n)
            ref_counts, ref_total = _char_ngram_counts(pair.reference, n)
            if hyp_total == 0 and ref_total == 0:
                continue
            overlap = sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())
            order_scores.append(_fscore(overlap, hyp_total, ref_total, CHRF_BETA))
        hyp_words = tokenize(pair.hypothesis)
        ref_words = tokenize(pair.reference)
        for n in range(1, CHRF_WORD_ORDER + 1):
            hyp_counts = _ngram_counts(hyp_words, n)
            ref_counts = _ngram_counts(ref_words, n)
            hyp_total = max(0, len(hyp_words) - n + 1)
            ref_total = max(0, len(ref_words) - n + 1)
            if hyp_total == 0 and ref_total == 0:
                continue
            overlap = sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())
            order_scores.append(_fscore(overlap, hyp_total, ref_total, CHRF_BETA))
        sentence_scores.append(
            sum(order_scores) / len(order_scores) if order_scores else 0.0)
    return 100.0 * sum(sentence_scores) / len(sentence_scores)


def _align_exact(hyp: list[str], ref: list[str]) -> list[tuple[int, int]]:
    """Greedy first-available exact alignment, left to right."""
    positions: dict[str, deque] = {}
    for j, token in enumerate(ref):
        positions.setdefault(token, deque()).append(j)
    alignment = []
    for i, token in enumerate(hyp):
        queue = positions.get(token)
        if queue:
            alignment.append((i, queue.popleft()))
    return alignment


def meteor_exact(pairs: Sequence[EvalPair]) -> float:
    """Exact-match unigram METEOR on 0..1 (no stemming or synonymy).

    Per sentence: P = m/|hyp|, R = m/|ref|, F = 10PR/(R+9P), fragmentation
    penalty 0.5*(chunks/m)^3; zero matches score 0. Corpus score is the
    sentence mean.
    """
    _require_pairs(pairs)
    sentence_scores = []
    for pair in pairs:
        hyp = tokenize(pair.hypothesis)
        ref = tokenize(pair.reference)
        alignment = _align_exact(hyp, ref)
        m = len(alignment)
        if m == 0:
            sentence_scores.append(0.0)
            continue
        chunks = 1
        for (h_prev, r_prev), (h_cur, r_cur) in zip(alignment, alignment[1:]):
            if h_cur != h_prev + 1 or r_cur != r_prev + 1:
                chunks += 1
        precision = m / len(hyp)
        recall = m / len(ref)
        f_mean = 10.0 * precision * recall / (recall + 9.0 * precision)
        penalty = 0.5 * (chunks / m) ** 3
        sentence_scores.append(f_mean * (1.0 - penalty))
    return sum(sentence_scores) / len(sentence_scores)


def authenticity_score(text: str, target_region: Region, lexicon: "Lexicon") -> int:
    """Deterministic 1..5 rubric for how well text matches the region.

    Counts target-region marker tokens (m_r), marker tokens belonging only
    to other regions (m_o), and single-token MSA forms that still have an
    unused variant for the target region (m_msa, missed substitutions).
    No target markers scores 1; markers with no foreign markers and no
    missed substitutions score 5; anything between lands on 2..4 by the
    share of target markers.
    """
    msa_forms = lexicon.msa_forms_for(target_region)
    m_r = m_o = m_msa = 0
    for token in tokenize(text):
        normalized = normalize_arabic(token)
        regions = lexicon.marker_regions(normalized)
        if target_region in regions:
            m_r += 1
        elif regions:
            m_o += 1
        elif normalized in msa_forms:
            m_msa += 1
    if m_r == 0:
        return 1
    if m_o == 0 and m_msa == 0:
        return 5
    ratio = 4.0 * m_r / (m_r + m_o + m_msa)
    rounded = math.floor(ratio + 0.5)  # half-up, not banker's
    return min(4, max(2, 1 + rounded))


def per_region_report(pairs: Sequence[EvalPair], lexicon: "Lexicon") -> EvalReport:
    """Corpus metrics plus per-region breakdown and authenticity means.

    The average dialect score is the unweighted mean of the per-region
    authenticity means.
    """
    _require_pairs(pairs)
    by_region: dict[Region, list[EvalPair]] = {}
    for pair in pairs:
        by_region.setdefault(pair.region, []).append(pair)
    per_region = {}
    for region, group in by_region.items():
        auth = [authenticity_score(p.hypothesis, region, lexicon) for p in group]
        per_region[region] = RegionScores(
            bleu=bleu(group),
            chrf=chrf_pp(group),
            meteor=meteor_exact(group),
            authenticity=sum(auth) / len(auth),
            n_pairs=len(group),
        )
    avg_dialect = sum(s.authenticity for s in per_region.values()) / len(per_region)
    return EvalReport(
        corpus_bleu=bleu(pairs),
        corpus_chrf=chrf_pp(pairs),
        corpus_meteor=meteor_exact(pairs),
        avg_dialect_score=avg_dialect,
        per_region=per_region,
        n_pairs=len(pairs),
    )


AUDIT_PROMPT_TEMPLATE = """\
You are auditing machine translation output for dialectal authenticity.
Target dialect: {region}.

Judge dialectal alignment rather than fluency or semantic adequacy.
Rate the output on a 1-5 scale:
  5 = unmistakably {region}: distinctive regional vocabulary throughout
  4 = mostly {region}, with minor standard-Arabic carryover
  3 = mixed: regional and standard or foreign-region forms in equal measure
  2 = mostly standard Arabic with a trace of {region}
  1 = no {region} features at all (e.g. plain standard Arabic)

Output to rate:
{text}

Answer with a single integer from 1 to 5."""


def audit_prompt(text: str, target_region: Region) -> str:
    """Prompt for an external rater; embeds the region label and rubric."""
    return AUDIT_PROMPT_TEMPLATE.format(region=target_region.value, text=text)


_INT_RE = re.compile(r"\d+")


def parse_audit_response(response: str) -> int:
    """First integer in 1..5 anywhere in the response."""
    for match in _INT_RE.finditer(response):
        value = int(match.group())
        if 1 <= value <= 5:
            return value
    raise UnparseableAudit(f"no 1..5 score in {response!r}")


def llm_audit(text: str, target_region: Region, timeout: float = 30.0) -> int | None:
    """Score via an external completion endpoint, when one is configured.

    Reads AUDIT_URL (required) and AUDIT_KEY (optional bearer token) from
    the environment; returns None when AUDIT_URL is unset. Request and
    response bodies are plain text.
    """
    url = os.environ.get("AUDIT_URL")
    if not url:
        return None
    request = urllib.request.Request(
        url,
        data=audit_prompt(text, target_region).encode("utf-8"),
        headers={"Content-Type": "text/plain; charset=utf-8"},
        method="POST",
    )
    key = os.environ.get("AUDIT_KEY")
    if key:
        request.add_header("Authorization", f"Bearer {key}")
    with urllib.request.urlopen(request, timeout=timeout) as response:
        return parse_audit_response(response.read().decode("utf-8"))


def evaluate_pairs(pairs: Iterable[EvalPair], lexicon: "Lexicon") -> EvalReport:
    """Convenience wrapper used by the CLI and service."""
    return per_region_report(list(pairs), lexicon)
