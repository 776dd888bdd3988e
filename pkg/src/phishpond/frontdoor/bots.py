"""Scripted players for headless simulation and acceptance runs.

Bots run server-side against the real game core, so the perfect policy
may read ground truth; it plays the role of an ideal learner, not a
cheating client.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..corpus import Corpus, CorpusAnalysis, Mode, Tier, Truth, WormSpec
from ..game import Action, Phase
from ..persistence import MemoryEventLog, SessionRecorder, config_hash
from ..rng import GameRng, derive_seed
from ..settings import Settings
from ..ttat import NoDecisions, estimate_constructs


@dataclass(frozen=True)
class BotChoice:
    action: Action
    ask_teacher: bool
    think_time: float


class PerfectPolicy:
    name = "perfect"

    def choose(self, worm: WormSpec, analysis: CorpusAnalysis, rng: GameRng) -> BotChoice:
        action = Action.EAT if worm.truth is Truth.LEGIT else Action.REJECT
        return BotChoice(action=action, ask_teacher=False, think_time=1.0)


class RandomPolicy:
    name = "random"

    def choose(self, worm: WormSpec, analysis: CorpusAnalysis, rng: GameRng) -> BotChoice:
        action = Action.EAT if rng.below(2) == 0 else Action.REJECT
        ask = rng.below(4) == 0
        think = 0.5 + rng.below(20) / 10.0
        return BotChoice(action=action, ask_teacher=ask, think_time=think)


class CueThresholdPolicy:
    """Plays by the analyzer verdict; buys a hint near the threshold."""

    name = "cue-threshold"

    def choose(self, worm: WormSpec, analysis: CorpusAnalysis, rng: GameRng) -> BotChoice:
        verdict = analysis.verdict(worm)
        borderline = abs(verdict.risk_score - analysis.cue_config.threshold) < 0.15
        action = Action.REJECT if verdict.risk_score >= analysis.cue_config.threshold else Action.EAT
        return BotChoice(action=action, ask_teacher=borderline, think_time=1.5)


POLICIES = {
    PerfectPolicy.name: PerfectPolicy,
    RandomPolicy.name: RandomPolicy,
    CueThresholdPolicy.name: CueThresholdPolicy,
}


def run_bot_session(
    policy_name: str,
    mode: Mode,
    settings: Settings,
    corpus: Corpus,
    seed: int,
    player_id: str = "bot",
    log: MemoryEventLog | None = None,
) -> dict:
    """Play one full session; deterministic for a given seed."""
    policy = POLICIES[policy_name]()
    analysis = CorpusAnalysis(corpus, settings.lexicon, settings.cues)
    rng = GameRng(derive_seed(seed, 97))
    recorder = SessionRecorder(
        log=log if log is not None else MemoryEventLog(),
        mode=mode,
        config=settings.game,
        corpus=corpus,
        seed=seed,
        player_id=player_id,
        analysis=analysis,
        config_digest=config_hash(settings.to_dict()),
    )
    session = recorder.session

    while session.phase in (Phase.IN_LEVEL, Phase.LEVEL_COMPLETE):
        if session.phase is Phase.LEVEL_COMPLETE:
            if session.level is Tier.ADVANCED:
                break
            recorder.advance_level()
            continue
        worm = session.current
        assert worm is not None
        choice = policy.choose(worm, analysis, rng)
        if choice.ask_teacher and not session.hinted_current:
            recorder.ask_teacher()
        at = min(choice.think_time, session.clock_remaining)
        recorder.apply_action(choice.action, at)
        recorder.tick(at)

    summary = recorder.finish(settings.ttat)
    try:
        constructs = estimate_constructs(summary, session.decided, settings.game, settings.ttat)
        constructs_data = constructs.to_dict()
    except NoDecisions:
        constructs_data = None

    return {
        "player_id": player_id,
        "seed": seed,
        "summary": summary.to_dict(),
        "constructs": constructs_data,
        "final_level": session.level.value,
    }


def simulate(
    players: int,
    seed: int,
    policy_name: str,
    mode: Mode,
    settings: Settings,
    corpus: Corpus,
) -> dict:
    """Run ``players`` independent bot sessions; fully seed-deterministic."""
    if policy_name not in POLICIES:
        raise ValueError(f"unknown policy {policy_name!r}; choose from {sorted(POLICIES)}")
    reports = [
        run_bot_session(
            policy_name,
            mode,
            settings,
            corpus,
            seed=derive_seed(seed, i),
            player_id=f"bot-{i + 1}",
        )
        for i in range(players)
    ]
    completed = sum(1 for r in reports if r["summary"]["outcome"] == "completed")
    mean_accuracy = (
        sum(r["summary"]["accuracy"] for r in reports) / len(reports) if reports else 0.0
    )
    return {
        "policy": policy_name,
        "mode": mode.value,
        "seed": seed,
        "players": reports,
        "time_limits": {
            tier.value: settings.game.level(tier).time_limit
            for tier in (Tier.BEGINNER, Tier.INTERMEDIATE, Tier.ADVANCED)
        },
        "aggregate": {"completed": completed, "mean_accuracy": mean_accuracy},
    }
