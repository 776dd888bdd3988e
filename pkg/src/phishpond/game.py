"""The deterministic game state machine.

A session presents worms one at a time; the player eats, rejects, or
asks the teacher (for a score penalty). The core owns no timer: callers
feed elapsed time through tick(), which keeps every session replayable
from its seed and recorded actions alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from .analyzer import TeacherTip
from .corpus import (
    Corpus,
    CorpusAnalysis,
    LevelPlan,
    Mode,
    TIER_ORDER,
    Tier,
    Truth,
    WormSpec,
    generate_level_set,
    tier_index,
)
from .rng import derive_seed, mix64

CORRECT_FEEDBACK = "WOW well done!"


class Action(str, Enum):
    EAT = "eat"
    REJECT = "reject"


class Phase(str, Enum):
    IN_LEVEL = "in_level"
    LEVEL_COMPLETE = "level_complete"
    GAME_OVER = "game_over"
    FINISHED = "finished"


class SessionOutcome(str, Enum):
    COMPLETED = "completed"
    GAME_OVER = "game_over"
    QUIT = "quit"


class GameError(Exception):
    pass


class NoCurrentWorm(GameError):
    pass


class SessionNotActive(GameError):
    pass


class AlreadyHinted(GameError):
    pass


class NotComplete(GameError):
    pass


class AlreadyAtTop(GameError):
    pass


class SessionStillActive(GameError):
    pass


class InvalidDecisionTime(GameError):
    pass


@dataclass(frozen=True)
class LevelConfig:
    time_limit: float
    worm_count: int
    phish_fraction: float
    points_correct: int
    points_wrong: int
    hint_penalty: int

    def __post_init__(self):
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.worm_count < 1:
            raise ValueError("worm_count must be positive")
        if not 0.0 < self.phish_fraction < 1.0:
            raise ValueError("phish_fraction must be in (0, 1)")
        if self.points_correct < 1:
            raise ValueError("points_correct must be positive")
        if self.points_wrong > 0:
            raise ValueError("points_wrong must be <= 0")
        if self.hint_penalty >= 0:
            raise ValueError("hint_penalty must be negative")


@dataclass(frozen=True)
class GameConfig:
    levels: dict[Tier, LevelConfig]
    lives: int

    def __post_init__(self):
        missing = [t.value for t in TIER_ORDER if t not in self.levels]
        if missing:
            raise ValueError(f"levels missing: {', '.join(missing)}")
        limits = [self.levels[t].time_limit for t in TIER_ORDER]
        if not (limits[0] > limits[1] > limits[2]):
            raise ValueError("time limits must strictly decrease beginner > intermediate > advanced")
        if self.lives < 1:
            raise ValueError("lives must be >= 1")

    def level(self, tier: Tier) -> LevelConfig:
        return self.levels[tier]

    def to_dict(self) -> dict:
        return {
            "lives": self.lives,
            "levels": {
                tier.value: {
                    "time_limit": cfg.time_limit,
                    "worm_count": cfg.worm_count,
                    "phish_fraction": cfg.phish_fraction,
                    "points_correct": cfg.points_correct,
                    "points_wrong": cfg.points_wrong,
                    "hint_penalty": cfg.hint_penalty,
                }
                for tier, cfg in ((t, self.levels[t]) for t in TIER_ORDER)
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GameConfig":
        levels = {
            Tier(name): LevelConfig(
                time_limit=float(level["time_limit"]),
                worm_count=int(level["worm_count"]),
                phish_fraction=float(level["phish_fraction"]),
                points_correct=int(level["points_correct"]),
                points_wrong=int(level["points_wrong"]),
                hint_penalty=int(level["hint_penalty"]),
            )
            for name, level in data["levels"].items()
        }
        return cls(levels=levels, lives=int(data["lives"]))


@dataclass(frozen=True)
class DecisionRecord:
    worm_id: str
    action: str
    correct: bool
    hint_used: bool
    decision_time: float
    level: Tier

    def to_dict(self) -> dict:
        return {
            "worm_id": self.worm_id,
            "action": self.action,
            "correct": self.correct,
            "hint_used": self.hint_used,
            "decision_time": self.decision_time,
            "level": self.level.value,
        }


@dataclass(frozen=True)
class ActionOutcome:
    feedback_text: str
    score_delta: int
    life_delta: int
    correct: bool | None = None
    tip: TeacherTip | None = None

    def to_dict(self) -> dict:
        data: dict = {
            "feedback_text": self.feedback_text,
            "score_delta": self.score_delta,
            "life_delta": self.life_delta,
        }
        if self.correct is not None:
            data["correct"] = self.correct
        if self.tip is not None:
            data["tip"] = {
                "text": self.tip.text,
                "cue_kind": self.tip.cue_kind.value if self.tip.cue_kind else None,
            }
        return data


@dataclass(frozen=True)
class SessionSummary:
    final_score: int
    accuracy: float
    per_level_accuracy: dict[str, float]
    hints_used: int
    phish_missed: int
    legit_rejected: int
    duration: float
    outcome: SessionOutcome
    timed_out: bool
    decisions: int

    def to_dict(self) -> dict:
        return {
            "final_score": self.final_score,
            "accuracy": self.accuracy,
            "per_level_accuracy": dict(self.per_level_accuracy),
            "hints_used": self.hints_used,
            "phish_missed": self.phish_missed,
            "legit_rejected": self.legit_rejected,
            "duration": self.duration,
            "outcome": self.outcome.value,
            "timed_out": self.timed_out,
            "decisions": self.decisions,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SessionSummary":
        return cls(
            final_score=int(data["final_score"]),
            accuracy=float(data["accuracy"]),
            per_level_accuracy={k: float(v) for k, v in data["per_level_accuracy"].items()},
            hints_used=int(data["hints_used"]),
            phish_missed=int(data["phish_missed"]),
            legit_rejected=int(data["legit_rejected"]),
            duration=float(data["duration"]),
            outcome=SessionOutcome(data["outcome"]),
            timed_out=bool(data["timed_out"]),
            decisions=int(data["decisions"]),
        )


class GameSession:
    """Single-writer session state; all transitions go through methods."""

    def __init__(
        self,
        mode: Mode,
        config: GameConfig,
        corpus: Corpus,
        seed: int,
        analysis: CorpusAnalysis,
        session_id: str,
    ):
        self.session_id = session_id
        self.mode = mode
        self.config = config
        self.corpus = corpus
        self.seed = seed
        self.analysis = analysis

        self.level: Tier = Tier.BEGINNER
        self.score = 0
        self.lives_remaining = config.lives
        self.decided: list[DecisionRecord] = []
        self.phase = Phase.IN_LEVEL
        self.elapsed_total = 0.0
        self.timed_out = False
        self.hinted_current = False

        self.pending: list[WormSpec] = []
        self.current: WormSpec | None = None
        self.clock_remaining = 0.0
        self._enter_level(Tier.BEGINNER)

    # -- transitions ---------------------------------------------------

    def apply_action(self, action: Action, at: float) -> ActionOutcome:
        """Eat or reject the current worm; ``at`` is the decision latency."""
        self._require_active()
        worm = self.current
        if worm is None:
            raise NoCurrentWorm
        if at < 0 or at > self.clock_remaining:
            raise InvalidDecisionTime(f"decision time {at} outside [0, {self.clock_remaining}]")

        correct = (action is Action.EAT and worm.truth is Truth.LEGIT) or (
            action is Action.REJECT and worm.truth is Truth.PHISH
        )
        level_cfg = self.config.level(self.level)
        life_delta = 0
        if correct:
            delta = level_cfg.points_correct
            feedback = CORRECT_FEEDBACK
        else:
            delta = max(0, self.score + level_cfg.points_wrong) - self.score
            life_delta = -1
            tip = self.analysis.tip(worm)
            was = "a fake" if worm.truth is Truth.PHISH else "real"
            feedback = f"That worm was {was}. {tip.text}"

        self.decided.append(
            DecisionRecord(
                worm_id=worm.id,
                action=action.value,
                correct=correct,
                hint_used=self.hinted_current,
                decision_time=at,
                level=self.level,
            )
        )
        self.score += delta
        self.lives_remaining += life_delta
        self.hinted_current = False
        self.current = self.pending.pop(0) if self.pending else None

        if self.lives_remaining == 0:
            self.phase = Phase.GAME_OVER
        elif self.current is None:
            self.phase = Phase.LEVEL_COMPLETE

        return ActionOutcome(
            feedback_text=feedback,
            score_delta=delta,
            life_delta=life_delta,
            correct=correct,
        )

    def ask_teacher(self) -> ActionOutcome:
        """Buy the tip for the current worm; once per worm, costs score."""
        self._require_active()
        worm = self.current
        if worm is None:
            raise NoCurrentWorm
        if self.hinted_current:
            raise AlreadyHinted(worm.id)
        level_cfg = self.config.level(self.level)
        delta = max(0, self.score + level_cfg.hint_penalty) - self.score
        self.score += delta
        self.hinted_current = True
        tip = self.analysis.tip(worm)
        return ActionOutcome(
            feedback_text=tip.text,
            score_delta=delta,
            life_delta=0,
            tip=tip,
        )

    def tick(self, elapsed: float) -> None:
        """Advance the level clock; expiry with worms left ends the game."""
        if self.phase is not Phase.IN_LEVEL:
            return
        if elapsed < 0:
            raise ValueError("elapsed must be non-negative")
        self.elapsed_total += min(elapsed, self.clock_remaining)
        self.clock_remaining = max(0.0, self.clock_remaining - elapsed)
        if self.clock_remaining == 0.0:
            self.phase = Phase.GAME_OVER
            self.timed_out = True

    def advance_level(self) -> None:
        if self.phase is not Phase.LEVEL_COMPLETE:
            raise NotComplete(self.phase.value)
        if self.level is Tier.ADVANCED:
            raise AlreadyAtTop
        self._enter_level(TIER_ORDER[tier_index(self.level) + 1])
        self.phase = Phase.IN_LEVEL

    def quit(self) -> None:
        """Mark the session finished by the player; idempotent on ended sessions."""
        if self.phase in (Phase.GAME_OVER, Phase.FINISHED):
            return
        self.phase = Phase.FINISHED

    def finish(self) -> SessionSummary:
        if self.phase is Phase.IN_LEVEL:
            raise SessionStillActive
        if self.phase is Phase.LEVEL_COMPLETE and self.level is not Tier.ADVANCED:
            raise SessionStillActive("level complete but not at the top tier; advance or quit")

        if self.phase is Phase.GAME_OVER:
            outcome = SessionOutcome.GAME_OVER
        elif self.phase is Phase.FINISHED:
            outcome = SessionOutcome.QUIT
        else:
            outcome = SessionOutcome.COMPLETED

        decisions = len(self.decided)
        correct = sum(1 for r in self.decided if r.correct)
        per_level: dict[str, float] = {}
        for tier in TIER_ORDER:
            records = [r for r in self.decided if r.level is tier]
            if records:
                per_level[tier.value] = sum(1 for r in records if r.correct) / len(records)

        return SessionSummary(
            final_score=self.score,
            accuracy=correct / decisions if decisions else 0.0,
            per_level_accuracy=per_level,
            hints_used=sum(1 for r in self.decided if r.hint_used),
            phish_missed=sum(1 for r in self.decided if r.action == "eat" and not r.correct),
            legit_rejected=sum(1 for r in self.decided if r.action == "reject" and not r.correct),
            duration=self.elapsed_total,
            outcome=outcome,
            timed_out=self.timed_out,
            decisions=decisions,
        )

    # -- helpers --------------------------------------------------------

    def snapshot(self) -> dict:
        """Full state as plain data; two equal snapshots mean equal sessions."""
        return {
            "session_id": self.session_id,
            "mode": self.mode.value,
            "level": self.level.value,
            "score": self.score,
            "lives_remaining": self.lives_remaining,
            "clock_remaining": self.clock_remaining,
            "elapsed_total": self.elapsed_total,
            "pending": [w.id for w in self.pending],
            "current": self.current.id if self.current else None,
            "decided": [r.to_dict() for r in self.decided],
            "phase": self.phase.value,
            "hinted_current": self.hinted_current,
            "timed_out": self.timed_out,
        }

    def level_worm_ids(self) -> set[str]:
        """Worm ids of the level in play (pending + current + decided there)."""
        ids = {w.id for w in self.pending}
        if self.current is not None:
            ids.add(self.current.id)
        ids.update(r.worm_id for r in self.decided if r.level is self.level)
        return ids

    def _require_active(self) -> None:
        if self.phase is not Phase.IN_LEVEL:
            raise SessionNotActive(self.phase.value)

    def _enter_level(self, tier: Tier) -> None:
        level_cfg = self.config.level(tier)
        plan = LevelPlan(
            level=tier,
            mode=self.mode,
            worm_count=level_cfg.worm_count,
            phish_fraction=level_cfg.phish_fraction,
            time_limit=level_cfg.time_limit,
            seed=derive_seed(self.seed, tier_index(tier)),
        )
        worms = generate_level_set(self.corpus, plan)
        self.level = tier
        self.current = worms[0]
        self.pending = worms[1:]
        self.clock_remaining = level_cfg.time_limit
        self.hinted_current = False


def new_session(
    mode: Mode,
    config: GameConfig,
    corpus: Corpus,
    seed: int,
    session_id: str | None = None,
    analysis: CorpusAnalysis | None = None,
) -> GameSession:
    """Fresh session at the beginner tier; deterministic for a given seed."""
    if analysis is None:
        from .settings import default_settings

        defaults = default_settings()
        analysis = CorpusAnalysis(corpus, defaults.lexicon, defaults.cues)
    if session_id is None:
        session_id = f"sess-{mix64(seed ^ 0x5E551D0F):016x}"
    return GameSession(
        mode=mode,
        config=config,
        corpus=corpus,
        seed=seed,
        analysis=analysis,
        session_id=session_id,
    )
