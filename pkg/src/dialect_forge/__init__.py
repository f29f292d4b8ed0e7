"""dialect_forge: corpus engineering for steerable dialectal Arabic MT data.

Pipeline: funnel (dedup + dialect-density filtering) -> augment (lexicon
substitution across regions) -> balance (seeded class equalization) ->
tag (bracketed control prefixes), with a dialect-sensitive evaluation
suite and an HTTP steering service on top.
"""

from .schema import (
    Context,
    ControlVector,
    DIALECT_REGIONS,
    Region,
    Register,
    SentenceRecord,
    TaggedExample,
    format_control_prefix,
    parse_control_prefix,
    read_records,
    read_tsv_records,
    write_records,
)
from .funnel import (
    DedupMode,
    FunnelConfig,
    dedup,
    dialect_density,
    filter_by_density,
    infer_context,
    normalize_arabic,
    tokenize,
)
from .lexicon import Lexicon, LexiconEntry, load_lexicon, load_seed_lexicon
from .augment import (
    AugmentConfig,
    Substitution,
    VariantChoice,
    apply_substitutions,
    augment_corpus,
    balance,
    corpus_stats,
    dialectalize,
    tag_corpus,
)
from .metrics import (
    EvalPair,
    EvalReport,
    audit_prompt,
    authenticity_score,
    bleu,
    chrf_pp,
    meteor_exact,
    parse_audit_response,
    per_region_report,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentConfig", "Context", "ControlVector", "DIALECT_REGIONS",
    "DedupMode", "EvalPair", "EvalReport", "FunnelConfig", "Lexicon",
    "LexiconEntry", "Region", "Register", "SentenceRecord", "Substitution",
    "TaggedExample", "VariantChoice", "apply_substitutions", "audit_prompt",
    "augment_corpus", "authenticity_score", "balance", "bleu", "chrf_pp",
    "corpus_stats", "dedup", "dialect_density", "dialectalize",
    "filter_by_density", "format_control_prefix", "infer_context",
    "load_lexicon", "load_seed_lexicon", "meteor_exact", "normalize_arabic",
    "parse_audit_response", "parse_control_prefix", "per_region_report",
    "read_records", "read_tsv_records", "tag_corpus", "tokenize",
    "write_records",
]
