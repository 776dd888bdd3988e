"""Acceptance gate: one test per criterion, one printed verdict line each.

Run `pytest tests/test_acceptance.py -v -s` to see the verdict lines.
"""

import json
import random
import time

from click.testing import CliRunner

from phishpond.analyzer import CueKind, EmailMessage, extract_email_cues, extract_url_cues, parse_url
from phishpond.frontdoor.cli import cli
from phishpond.game import GameConfig, LevelConfig
from phishpond.corpus import Tier
from phishpond.persistence import canonical_json, config_hash, replay
from phishpond.ttat import TtatWeights, avoidance_motivation, perceived_threat

import oracle
from driving import check_invariants, drive_random_script, record_random_session


def verdict(number, ok, text):
    print(f"[acceptance] criterion {number}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, f"criterion {number} failed: {text}"


def test_criterion_1_paper_example_fidelity(settings):
    runner = CliRunner()
    t0 = time.monotonic()
    result = runner.invoke(cli, ["lint-url", "http://81.153.192.106/www.hsbc.co.uk"])
    lint_elapsed = time.monotonic() - t0
    report = json.loads(result.output)
    url_ok = (
        result.exit_code == 0
        and "ip_host" in [c["kind"] for c in report["cues"]]
        and report["label"] == "phish"
        and lint_elapsed < 0.1
    )

    message = EmailMessage(
        sender_display="RBS",
        sender_address="service@rbs.co.uk",
        subject="Welcome",
        body="Dear customer of The Royal Bank of Scotland,\nThanks for joining.",
    )
    t0 = time.monotonic()
    kinds = {c.kind for c in extract_email_cues(message, settings.lexicon, settings.cues)}
    email_elapsed = time.monotonic() - t0
    email_ok = kinds == {CueKind.GENERIC_SALUTATION} and email_elapsed < 0.1

    verdict(
        1,
        url_ok and email_ok,
        f"paper URL -> IpHost+phish in {lint_elapsed * 1000:.1f}ms; "
        f"RBS salutation -> GenericSalutation in {email_elapsed * 1000:.1f}ms",
    )


def test_criterion_2_oracle_equivalence(settings, oracle_items):
    t0 = time.monotonic()
    mismatches = 0
    for item in oracle_items:
        if item["kind"] == "url":
            parsed = parse_url(item["raw"], settings.cues.extra_suffixes)
            got = {c.kind.value for c in extract_url_cues(parsed, settings.lexicon, settings.cues)}
        else:
            message = EmailMessage.from_dict(item["message"])
            got = {c.kind.value for c in extract_email_cues(message, settings.lexicon, settings.cues)}
        expected = oracle.cue_kinds_for_item(item, settings.lexicon, settings.cues)
        if got != expected:
            mismatches += 1
    elapsed = time.monotonic() - t0
    verdict(
        2,
        len(oracle_items) == 200 and mismatches == 0 and elapsed < 5.0,
        f"{len(oracle_items)} items, {mismatches} mismatches, {elapsed:.2f}s",
    )


def test_criterion_3_game_rule_fuzz(default_config, corpus, analysis):
    rng = random.Random(161803)
    t0 = time.monotonic()
    violations = 0
    scripts = 10_000
    for _ in range(scripts):
        try:
            drive_random_script(rng, default_config, corpus, analysis,
                                max_steps=60, check=check_invariants)
        except AssertionError:
            violations += 1
    elapsed = time.monotonic() - t0
    verdict(
        3,
        violations == 0 and elapsed < 60.0,
        f"{scripts} scripts, {violations} invariant violations, {elapsed:.1f}s",
    )


def test_criterion_4_replay_determinism(default_config, corpus, analysis):
    digest = config_hash(default_config.to_dict())
    rng = random.Random(271828)
    sessions = 1_000
    mismatches = 0
    t0 = time.monotonic()
    for _ in range(sessions):
        log, summary = record_random_session(rng, default_config, corpus, analysis,
                                             digest, max_steps=60)
        replayed = replay(log.events, corpus, default_config,
                          analysis=analysis, config_digest=digest)
        if canonical_json(replayed.to_dict()) != canonical_json(summary.to_dict()):
            mismatches += 1
    elapsed = time.monotonic() - t0
    verdict(
        4,
        mismatches == 0,
        f"{sessions} sessions logged+replayed, {mismatches} summary mismatches, {elapsed:.1f}s",
    )


def test_criterion_5_ttat_properties():
    w = TtatWeights()
    rng = random.Random(314159)
    failures = 0
    for _ in range(1_000):
        sev, sus = rng.random(), rng.random()
        threat = perceived_threat(sev, sus, w)
        eff, cost, selfeff = rng.random(), rng.random(), rng.random()
        motivation = avoidance_motivation(threat, eff, cost, selfeff, w)
        if not (0.0 <= threat <= 1.0 and 0.0 <= motivation <= 1.0):
            failures += 1
            continue
        bump = rng.uniform(0.01, 0.3)
        if perceived_threat(min(1.0, sev + bump), sus, w) < threat:
            failures += 1
        if perceived_threat(sev, min(1.0, sus + bump), w) < threat:
            failures += 1
        if avoidance_motivation(min(1.0, threat + bump), eff, cost, selfeff, w) < motivation:
            failures += 1
        if avoidance_motivation(threat, min(1.0, eff + bump), cost, selfeff, w) < motivation:
            failures += 1
        if avoidance_motivation(threat, eff, min(1.0, cost + bump), selfeff, w) > motivation:
            failures += 1
        if avoidance_motivation(threat, eff, cost, min(1.0, selfeff + bump), w) < motivation:
            failures += 1
    boundaries = perceived_threat(0.0, 0.0, w) == 0.0 and perceived_threat(1.0, 1.0, w) == 1.0
    verdict(
        5,
        failures == 0 and boundaries,
        f"1000 random inputs in range, monotone; threat(0,0)=0 and threat(1,1)=1 exact: {boundaries}",
    )


def test_criterion_6_headless_end_to_end():
    runner = CliRunner()
    t0 = time.monotonic()
    perfect_args = ["simulate", "--players", "1", "--seed", "7", "--policy", "perfect"]
    first = runner.invoke(cli, perfect_args)
    second = runner.invoke(cli, perfect_args)
    report = json.loads(first.output)
    player = report["players"][0]
    limits = report["time_limits"]
    perfect_ok = (
        first.exit_code == 0
        and first.output == second.output
        and player["summary"]["outcome"] == "completed"
        and player["summary"]["accuracy"] == 1.0
        and player["summary"]["hints_used"] == 0
        and player["constructs"]["safeguard_cost"] == 0.0
        and set(player["summary"]["per_level_accuracy"]) == {"beginner", "intermediate", "advanced"}
        and limits["beginner"] > limits["intermediate"] > limits["advanced"]
    )

    random_args = ["simulate", "--players", "5", "--seed", "7", "--policy", "random"]
    r_first = runner.invoke(cli, random_args)
    r_second = runner.invoke(cli, random_args)
    r_report = json.loads(r_first.output)
    random_ok = (
        r_first.exit_code == 0
        and r_first.output == r_second.output
        and all(p["summary"]["outcome"] in ("game_over", "completed") for p in r_report["players"])
    )
    elapsed = time.monotonic() - t0
    verdict(
        6,
        perfect_ok and random_ok and elapsed < 60.0,
        f"perfect: completed, acc 1.0, hints 0, cost 0.0, limits {limits['beginner']}>"
        f"{limits['intermediate']}>{limits['advanced']}; random terminates; both seed-stable "
        f"({elapsed:.1f}s)",
    )


def test_criterion_7_config_directionality():
    tiers = (Tier.BEGINNER, Tier.INTERMEDIATE, Tier.ADVANCED)

    def build(limits):
        return GameConfig(
            levels={
                tier: LevelConfig(
                    time_limit=limits[i], worm_count=10, phish_fraction=0.5,
                    points_correct=10, points_wrong=-5, hint_penalty=-3,
                )
                for i, tier in enumerate(tiers)
            },
            lives=3,
        )

    rejected = 0
    for limits in ((90.0, 90.0, 30.0), (30.0, 60.0, 90.0), (90.0, 120.0, 60.0), (90.0, 60.0, 60.0)):
        try:
            build(limits)
        except ValueError:
            rejected += 1
    accepted = build((180.0, 120.0, 90.0)) is not None
    verdict(
        7,
        rejected == 4 and accepted,
        f"non-decreasing limits rejected ({rejected}/4), valid config accepted",
    )
