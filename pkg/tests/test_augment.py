import io

import pytest
from hypothesis import given, strategies as st

from dialect_forge.augment import (
    AugmentConfig,
    Substitution,
    VariantChoice,
    apply_substitutions,
    augment_corpus,
    augment_stream,
    balance,
    corpus_stats,
    dialectalize,
    tag_corpus,
)
from dialect_forge.errors import EmptyPool, MissingClass
from dialect_forge.funnel import tokenize
from dialect_forge.schema import (
    Context,
    ControlVector,
    Region,
    Register,
    SentenceRecord,
    parse_control_prefix,
    write_records,
)


def _cv(region, context=Context.GENERAL, register=Register.INFORMAL):
    return ControlVector(region, context, register)


def _msa(target, input_text="src", context=Context.GENERAL):
    return SentenceRecord(input_text, target, Region.MSA_GENERAL, context,
                          Register.FORMAL)


def test_dialectalize_egyptian_market_sentence(lexicon):
    out, subs = dialectalize("أريد أن أذهب إلى السوق", _cv(Region.EGYPTIAN), lexicon)
    assert "عايز" in out
    assert "أروح" in out
    assert "أريد" not in out
    assert len(subs) >= 2


def test_dialectalize_moroccan_phrase(lexicon):
    out, subs = dialectalize("الطعام لذيذ", _cv(Region.MOROCCAN), lexicon)
    assert out == "الماكلة بنينة"
    assert len(subs) == 1
    assert subs[0].start_token == 0
    assert subs[0].end_token == 1


def test_dialectalize_no_match_is_identity(lexicon):
    out, subs = dialectalize("إلى السوق", _cv(Region.GULF), lexicon)
    assert out == "إلى السوق"
    assert subs == []


def test_dialectalize_preserves_attached_punctuation(lexicon):
    out, subs = dialectalize("أريد.", _cv(Region.EGYPTIAN), lexicon)
    assert out == "عايز."
    assert subs[0].dialect_form == "عايز"


def test_dialectalize_matches_despite_diacritics(lexicon):
    out, _ = dialectalize("أُريدُ أن أذهبَ", _cv(Region.EGYPTIAN), lexicon)
    assert out == "عايز أن أروح"


def test_dialectalize_register_gate(lexicon):
    formal = _cv(Region.GULF, register=Register.FORMAL)
    informal = _cv(Region.GULF, register=Register.INFORMAL)
    assert dialectalize("طبيب", formal, lexicon)[0] == "طبيب"
    assert dialectalize("طبيب", informal, lexicon)[0] == "دكتور"


def test_substitution_list_replays_to_output(lexicon, seed_records):
    for record in seed_records:
        for region in Region:
            if region is Region.MSA_GENERAL:
                continue
            out, subs = dialectalize(record.target, _cv(region), lexicon)
            assert apply_substitutions(record.target, subs) == out


def test_marker_soundness(lexicon, seed_records):
    for record in seed_records:
        for region in (Region.EGYPTIAN, Region.GULF, Region.MOROCCAN, Region.IRAQI):
            _, subs = dialectalize(record.target, _cv(region), lexicon)
            for sub in subs:
                for token in tokenize(sub.dialect_form):
                    assert region in lexicon.marker_regions(token)


_WORDS = st.sampled_from([
    "أريد", "أذهب", "يجب", "طبيب", "إلى", "السوق", "اليوم", "الطعام",
    "لذيذ", "معدتي", "تؤلمني", "أريد.", "(يجب)", "جدا،",
])


@given(words=st.lists(_WORDS, min_size=1, max_size=10),
       region=st.sampled_from([r for r in Region if r is not Region.MSA_GENERAL]))
def test_replay_faithfulness_property(lexicon, words, region):
    text = " ".join(words)
    out, subs = dialectalize(text, _cv(region), lexicon)
    assert apply_substitutions(text, subs) == out


def test_substitution_validates_span_order():
    with pytest.raises(ValueError):
        Substitution(3, 1, "أريد", "عايز", "want-1")


def test_substitution_must_change_surface():
    with pytest.raises(ValueError):
        Substitution(0, 0, "أريد", "أَريد", "want-1")


def test_augment_one_row_two_regions(lexicon):
    config = AugmentConfig(regions=frozenset({Region.EGYPTIAN, Region.GULF}),
                           target_per_region=10)
    rows = augment_corpus([_msa("يجب أن أذهب")], config, lexicon)
    assert len(rows) == 2
    assert {r.region for r in rows} == {Region.EGYPTIAN, Region.GULF}
    assert all(r.style is Register.INFORMAL for r in rows)


def test_augment_drops_unchanged_rows(lexicon):
    config = AugmentConfig(regions=frozenset({Region.GULF}), target_per_region=10)
    assert augment_corpus([_msa("إلى السوق")], config, lexicon) == []


def test_augment_keep_unchanged_flag(lexicon):
    config = AugmentConfig(regions=frozenset({Region.GULF}), target_per_region=10,
                           keep_unchanged=True)
    rows = augment_corpus([_msa("إلى السوق")], config, lexicon)
    assert len(rows) == 1
    assert rows[0].target == "إلى السوق"
    assert rows[0].region is Region.GULF


def test_augment_empty_pool(lexicon):
    config = AugmentConfig(regions=frozenset({Region.GULF}), target_per_region=10)
    with pytest.raises(EmptyPool):
        augment_corpus([], config, lexicon)


def test_augment_rejects_non_msa_rows(lexicon):
    config = AugmentConfig(regions=frozenset({Region.GULF}), target_per_region=10)
    row = SentenceRecord("x", "بدي", Region.LEVANTINE_NORTH, Context.GENERAL,
                         Register.INFORMAL)
    with pytest.raises(ValueError):
        augment_corpus([row], config, lexicon)


def _serialize(records):
    buffer = io.StringIO()
    write_records(records, buffer)
    return buffer.getvalue()


def test_augment_deterministic_under_seed(lexicon, seed_records):
    msa = [r for r in seed_records if r.region is Region.MSA_GENERAL]
    config = AugmentConfig(target_per_region=10, rng_seed=7,
                           variant_choice=VariantChoice.SEEDED_RANDOM)
    first = _serialize(augment_corpus(msa, config, lexicon))
    second = _serialize(augment_corpus(msa, config, lexicon))
    assert first == second


def test_augment_stream_passes_rows_through(lexicon):
    rows = [
        SentenceRecord("x", "بدي", Region.LEVANTINE_NORTH, Context.GENERAL,
                       Register.INFORMAL),
        _msa("يجب أن أذهب"),
    ]
    config = AugmentConfig(regions=frozenset({Region.GULF}), target_per_region=10)
    out = list(augment_stream(rows, config, lexicon))
    assert out[0] is rows[0]
    assert out[1] is rows[1]
    assert out[2].region is Region.GULF


def _rows(region, n, context=Context.GENERAL):
    return [
        SentenceRecord(f"in-{region.value}-{i}", f"t-{region.value}-{i}",
                       region, context, Register.INFORMAL)
        for i in range(n)
    ]


def test_balance_upsamples_to_target():
    records = _rows(Region.EGYPTIAN, 10) + _rows(Region.GULF, 3)
    balanced = balance(records, 10, rng_seed=1)
    stats = corpus_stats(balanced)
    assert stats["regions"]["Egyptian"] == 10
    assert stats["regions"]["Gulf"] == 10
    assert stats["total"] == 20


def test_balance_downsamples_to_target():
    balanced = balance(_rows(Region.EGYPTIAN, 12), 10, rng_seed=1)
    assert len(balanced) == 10


def test_balance_missing_class():
    with pytest.raises(MissingClass):
        balance(_rows(Region.EGYPTIAN, 5), 10, rng_seed=1,
                regions=[Region.EGYPTIAN, Region.GULF])


def test_balance_membership_is_conserved():
    records = _rows(Region.EGYPTIAN, 4) + _rows(Region.GULF, 17)
    pool = set(records)
    for row in balance(records, 9, rng_seed=3):
        assert row in pool


def test_balance_deterministic():
    records = _rows(Region.EGYPTIAN, 4) + _rows(Region.GULF, 17)
    first = _serialize(balance(records, 9, rng_seed=3))
    second = _serialize(balance(records, 9, rng_seed=3))
    assert first == second


@given(n_egy=st.integers(1, 30), n_gulf=st.integers(1, 30),
       target=st.integers(1, 40), seed=st.integers(0, 5))
def test_balance_exactness_property(n_egy, n_gulf, target, seed):
    records = _rows(Region.EGYPTIAN, n_egy) + _rows(Region.GULF, n_gulf)
    balanced = balance(records, target, seed)
    stats = corpus_stats(balanced)
    assert stats["regions"]["Egyptian"] == target
    assert stats["regions"]["Gulf"] == target
    assert stats["total"] == 2 * target


def test_tag_corpus_formats_prefix():
    record = SentenceRecord("I want to go to the market", "بدي أروح السوق",
                            Region.LEVANTINE_NORTH, Context.GENERAL,
                            Register.INFORMAL)
    tagged = tag_corpus([record])
    assert tagged[0].tagged_input == \
        "[Levantine-North] [General] I want to go to the market"
    assert tagged[0].target == "بدي أروح السوق"


def test_tag_corpus_empty():
    assert tag_corpus([]) == []


def test_tag_round_trip_recovers_metadata(seed_records):
    for record, example in zip(seed_records, tag_corpus(seed_records, three_tag=True)):
        cv, body = parse_control_prefix(example.tagged_input)
        assert cv == record.control_vector
        assert body == record.input


def test_corpus_stats_counts():
    records = _rows(Region.EGYPTIAN, 2) + _rows(Region.GULF, 1)
    stats = corpus_stats(records)
    assert stats["regions"]["Egyptian"] == 2
    assert stats["regions"]["Gulf"] == 1
    assert stats["total"] == 3
    assert sum(stats["regions"].values()) == 3
    assert sum(stats["contexts"].values()) == 3
    assert sum(stats["styles"].values()) == 3


def test_corpus_stats_empty_is_all_zero():
    stats = corpus_stats([])
    assert stats["total"] == 0
    assert set(stats["regions"].values()) == {0}
    assert set(stats["contexts"].values()) == {0}
    assert set(stats["styles"].values()) == {0}
