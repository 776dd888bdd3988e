import json

import pytest

from phishpond.corpus import (
    Corpus,
    DuplicateId,
    InsufficientCorpus,
    LevelPlan,
    Mode,
    ParseError,
    Tier,
    Truth,
    generate_level_set,
    load_corpus,
    round_half_up,
    validate_corpus,
)


def worm_record(worm_id, payload="https://www.example.com/", truth="legit", tier="beginner", mode="url"):
    return {"id": worm_id, "mode": mode, "truth": truth, "tier": tier, "payload": payload}


def corpus_text(worms, version="t1"):
    return json.dumps({"version": version, "lexicon_ref": "default", "worms": worms})


def test_minimal_corpus_loads():
    corpus = load_corpus(corpus_text([worm_record("w1")]))
    assert len(corpus.worms) == 1
    assert corpus.worms[0].truth is Truth.LEGIT


def test_paper_url_loads_as_phish():
    record = worm_record("w1", payload="http://81.153.192.106/www.hsbc.co.uk", truth="phish")
    corpus = load_corpus(corpus_text([record]))
    assert corpus.worms[0].truth is Truth.PHISH
    assert corpus.worms[0].tier is Tier.BEGINNER


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateId) as err:
        load_corpus(corpus_text([worm_record("w1"), worm_record("w1")]))
    assert err.value.worm_id == "w1"


def test_syntax_error_reports_line():
    with pytest.raises(ParseError) as err:
        load_corpus('{\n  "worms": [\n    {bad}\n  ]\n}')
    assert err.value.line == 3


def test_bad_enum_reports_record():
    record = worm_record("weird")
    record["truth"] = "maybe"
    with pytest.raises(ParseError) as err:
        load_corpus(corpus_text([record]))
    assert "weird" not in err.value.reason or err.value.line > 0


def test_email_payload_must_be_object():
    record = worm_record("w1", mode="email", payload="not an object")
    with pytest.raises(ParseError):
        load_corpus(corpus_text([record]))


def test_empty_corpus_rejected():
    with pytest.raises(ValueError):
        Corpus(worms=(), lexicon_ref="default", version="x")


# -- validation -----------------------------------------------------------------


def test_shipped_corpus_has_zero_findings(corpus, settings):
    report = validate_corpus(corpus, settings.lexicon, settings.cues)
    assert report.ok, [f.to_dict() for f in report.findings]


def test_phish_without_cues_is_unlearnable(settings):
    record = worm_record("w1", payload="https://www.quietcorner.org/home", truth="phish")
    corpus = load_corpus(corpus_text([record]))
    report = validate_corpus(corpus, settings.lexicon, settings.cues)
    assert [f.kind for f in report.findings] == ["unlearnable"]


def test_beginner_phish_needs_a_loud_cue(settings):
    record = worm_record("w1", payload="http://www.quietcorner.org/home", truth="phish")
    corpus = load_corpus(corpus_text([record]))
    kinds = [f.kind for f in validate_corpus(corpus, settings.lexicon, settings.cues).findings]
    # 0.1 of insecure_scheme: mislabeled overall and too subtle for beginner.
    assert "label_mismatch" in kinds
    assert "tier_violation" in kinds


def test_advanced_phish_must_stay_subtle(settings):
    record = worm_record(
        "w1", payload="http://81.153.192.106/login", truth="phish", tier="advanced"
    )
    corpus = load_corpus(corpus_text([record]))
    kinds = [f.kind for f in validate_corpus(corpus, settings.lexicon, settings.cues).findings]
    assert kinds == ["tier_violation"]


def test_advanced_lookalike_is_acceptable(settings):
    record = worm_record("w1", payload="https://paypa1.com/x", truth="phish", tier="advanced")
    corpus = load_corpus(corpus_text([record]))
    assert validate_corpus(corpus, settings.lexicon, settings.cues).ok


def test_unknown_logo_brand_reported(settings):
    record = worm_record(
        "w1",
        mode="email",
        truth="phish",
        payload={
            "sender_display": "X",
            "sender_address": "x@nowhere.org",
            "subject": "S",
            "body": "Dear customer,\nAct now or your account will be suspended.",
            "links": [{"display_text": "paypal.com", "target_url": "http://1.2.3.4/x"}],
            "attachments": [],
            "claimed_brand_logo": "nosuchbrand",
        },
    )
    corpus = load_corpus(corpus_text([record]))
    kinds = [f.kind for f in validate_corpus(corpus, settings.lexicon, settings.cues).findings]
    assert "unknown_brand" in kinds


# -- level generation --------------------------------------------------------------


def plan(corpus_seed=42, count=10, fraction=0.5, tier=Tier.BEGINNER, mode=Mode.URL):
    return LevelPlan(
        level=tier, mode=mode, worm_count=count, phish_fraction=fraction,
        time_limit=180.0, seed=corpus_seed,
    )


def test_generation_is_reproducible(corpus):
    first = generate_level_set(corpus, plan())
    second = generate_level_set(corpus, plan())
    assert [w.id for w in first] == [w.id for w in second]


def test_exact_phish_count(corpus):
    worms = generate_level_set(corpus, plan(count=10, fraction=0.5))
    assert sum(1 for w in worms if w.truth is Truth.PHISH) == 5
    assert len({w.id for w in worms}) == 10


def test_insufficient_corpus_raises(corpus):
    with pytest.raises(InsufficientCorpus) as err:
        generate_level_set(corpus, plan(count=99))
    assert err.value.tier is Tier.BEGINNER
    assert err.value.needed == 99
    assert err.value.available < 99


def test_mode_filtering(corpus):
    worms = generate_level_set(corpus, plan(mode=Mode.EMAIL))
    assert all(w.mode is Mode.EMAIL for w in worms)


def test_round_half_up():
    assert round_half_up(7.5) == 8
    assert round_half_up(6.5) == 7
    assert round_half_up(4.0) == 4
    assert round_half_up(4.4) == 4


def test_seeds_change_order(corpus):
    a = [w.id for w in generate_level_set(corpus, plan(corpus_seed=1))]
    b = [w.id for w in generate_level_set(corpus, plan(corpus_seed=2))]
    assert a != b


def test_shuffle_does_not_leak_labels(corpus):
    """Sequence position carries ~no information about the truth label."""
    count, positions = 10, []
    labels = []
    for seed in range(1000):
        worms = generate_level_set(corpus, plan(corpus_seed=seed, count=count, fraction=0.5))
        for position, worm in enumerate(worms):
            positions.append(position)
            labels.append(1.0 if worm.truth is Truth.PHISH else 0.0)
    n = len(positions)
    mean_p = sum(positions) / n
    mean_l = sum(labels) / n
    cov = sum((p - mean_p) * (l - mean_l) for p, l in zip(positions, labels)) / n
    var_p = sum((p - mean_p) ** 2 for p in positions) / n
    var_l = sum((l - mean_l) ** 2 for l in labels) / n
    correlation = cov / (var_p * var_l) ** 0.5
    assert abs(correlation) < 0.05
