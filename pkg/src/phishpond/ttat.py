"""Threat-avoidance player model estimated from play telemetry.

Perceived severity and susceptibility combine (with their interaction)
into perceived threat; threat, safeguard effectiveness, their
interaction, and self-efficacy push avoidance motivation up while
safeguard cost pushes it down. All quantities live in [0, 1] and the
functional forms are clamped linear models with non-negative weights,
so every path keeps its sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .game import DecisionRecord, GameConfig, GameSession, LevelConfig, SessionSummary
from .corpus import TIER_ORDER


class NoDecisions(Exception):
    """Constructs cannot be estimated from an empty session."""


def clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x


@dataclass(frozen=True)
class TtatWeights:
    threat_severity: float = 0.4
    threat_susceptibility: float = 0.4
    threat_interaction: float = 0.2
    motivation_threat: float = 0.3
    motivation_effectiveness: float = 0.25
    motivation_threat_effectiveness: float = 0.15
    motivation_self_efficacy: float = 0.3
    motivation_cost: float = 0.25
    effectiveness_default: float = 1.0

    def __post_init__(self):
        values = (
            self.threat_severity,
            self.threat_susceptibility,
            self.threat_interaction,
            self.motivation_threat,
            self.motivation_effectiveness,
            self.motivation_threat_effectiveness,
            self.motivation_self_efficacy,
            self.motivation_cost,
        )
        if any(v < 0 for v in values):
            raise ValueError("weights must be non-negative")
        threat_sum = self.threat_severity + self.threat_susceptibility + self.threat_interaction
        if threat_sum > 1.0 + 1e-9:
            raise ValueError("threat weights must sum to at most 1")
        if not 0.0 <= self.effectiveness_default <= 1.0:
            raise ValueError("effectiveness_default must be in [0, 1]")

    def to_dict(self) -> dict:
        return {
            "threat": {
                "severity": self.threat_severity,
                "susceptibility": self.threat_susceptibility,
                "interaction": self.threat_interaction,
            },
            "motivation": {
                "threat": self.motivation_threat,
                "effectiveness": self.motivation_effectiveness,
                "threat_effectiveness": self.motivation_threat_effectiveness,
                "self_efficacy": self.motivation_self_efficacy,
                "cost": self.motivation_cost,
            },
            "effectiveness_default": self.effectiveness_default,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TtatWeights":
        threat = data.get("threat", {})
        motivation = data.get("motivation", {})
        kwargs = {}
        if "severity" in threat:
            kwargs["threat_severity"] = float(threat["severity"])
        if "susceptibility" in threat:
            kwargs["threat_susceptibility"] = float(threat["susceptibility"])
        if "interaction" in threat:
            kwargs["threat_interaction"] = float(threat["interaction"])
        if "threat" in motivation:
            kwargs["motivation_threat"] = float(motivation["threat"])
        if "effectiveness" in motivation:
            kwargs["motivation_effectiveness"] = float(motivation["effectiveness"])
        if "threat_effectiveness" in motivation:
            kwargs["motivation_threat_effectiveness"] = float(motivation["threat_effectiveness"])
        if "self_efficacy" in motivation:
            kwargs["motivation_self_efficacy"] = float(motivation["self_efficacy"])
        if "cost" in motivation:
            kwargs["motivation_cost"] = float(motivation["cost"])
        if "effectiveness_default" in data:
            kwargs["effectiveness_default"] = float(data["effectiveness_default"])
        return cls(**kwargs)


@dataclass(frozen=True)
class TtatConstructs:
    perceived_severity: float
    perceived_susceptibility: float
    perceived_threat: float
    safeguard_effectiveness: float
    safeguard_cost: float
    self_efficacy: float
    avoidance_motivation: float

    def __post_init__(self):
        for name, value in self.to_dict().items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} outside [0, 1]: {value}")

    def to_dict(self) -> dict:
        return {
            "perceived_severity": self.perceived_severity,
            "perceived_susceptibility": self.perceived_susceptibility,
            "perceived_threat": self.perceived_threat,
            "safeguard_effectiveness": self.safeguard_effectiveness,
            "safeguard_cost": self.safeguard_cost,
            "self_efficacy": self.self_efficacy,
            "avoidance_motivation": self.avoidance_motivation,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TtatConstructs":
        return cls(**{k: float(v) for k, v in data.items()})


def perceived_threat(severity: float, susceptibility: float, w: TtatWeights) -> float:
    return clamp01(
        w.threat_severity * severity
        + w.threat_susceptibility * susceptibility
        + w.threat_interaction * severity * susceptibility
    )


def avoidance_motivation(
    threat: float, effectiveness: float, cost: float, self_efficacy: float, w: TtatWeights
) -> float:
    return clamp01(
        w.motivation_threat * threat
        + w.motivation_effectiveness * effectiveness
        + w.motivation_threat_effectiveness * threat * effectiveness
        + w.motivation_self_efficacy * self_efficacy
        - w.motivation_cost * cost
    )


def estimate_constructs(
    summary: SessionSummary,
    decided: Iterable[DecisionRecord],
    config: GameConfig,
    weights: TtatWeights,
) -> TtatConstructs:
    """Operationalize the constructs from what the player actually did.

    susceptibility: share of presented phish that got eaten.
    severity:       points lost to mistakes over the maximum losable.
    effectiveness:  correctness after buying a hint (default when unused).
    cost:           hint penalties paid relative to earnable points.
    self-efficacy:  unaided correct decisions over all decisions.
    """
    records = list(decided)
    if not records:
        raise NoDecisions

    phish_presented = sum(
        1
        for r in records
        if (r.action == "reject" and r.correct) or (r.action == "eat" and not r.correct)
    )
    phish_missed = sum(1 for r in records if r.action == "eat" and not r.correct)
    susceptibility = phish_missed / phish_presented if phish_presented else 0.0

    def level_cfg(record: DecisionRecord) -> LevelConfig:
        return config.level(record.level)

    lost = sum(abs(level_cfg(r).points_wrong) for r in records if not r.correct)
    losable = sum(abs(level_cfg(r).points_wrong) for r in records)
    severity = lost / losable if losable else 0.0

    hinted = [r for r in records if r.hint_used]
    if hinted:
        effectiveness = sum(1 for r in hinted if r.correct) / len(hinted)
    else:
        effectiveness = weights.effectiveness_default

    paid = sum(abs(level_cfg(r).hint_penalty) for r in hinted)
    earnable = sum(level_cfg(r).points_correct for r in records)
    cost = clamp01(paid / earnable) if earnable else 0.0

    self_efficacy = sum(1 for r in records if r.correct and not r.hint_used) / len(records)

    threat = perceived_threat(severity, susceptibility, weights)
    motivation = avoidance_motivation(threat, effectiveness, cost, self_efficacy, weights)
    return TtatConstructs(
        perceived_severity=severity,
        perceived_susceptibility=susceptibility,
        perceived_threat=threat,
        safeguard_effectiveness=effectiveness,
        safeguard_cost=cost,
        self_efficacy=self_efficacy,
        avoidance_motivation=motivation,
    )


def constructs_for_session(session: GameSession, weights: TtatWeights) -> TtatConstructs:
    return estimate_constructs(session.finish(), session.decided, session.config, weights)


def adapt(constructs: TtatConstructs, config: GameConfig) -> GameConfig:
    """Tighten the game when the player looks strong or leaky.

    High self-efficacy shrinks every time limit by 10% (scaling keeps
    the strict decrease); high susceptibility raises every phish
    fraction by 0.1, capped at 0.7. Otherwise the config is unchanged.
    """
    scale_time = constructs.self_efficacy >= 0.8
    raise_phish = constructs.perceived_susceptibility >= 0.5
    if not scale_time and not raise_phish:
        return config

    levels = {}
    for tier in TIER_ORDER:
        cfg = config.level(tier)
        levels[tier] = LevelConfig(
            time_limit=cfg.time_limit * 0.9 if scale_time else cfg.time_limit,
            worm_count=cfg.worm_count,
            phish_fraction=min(0.7, cfg.phish_fraction + 0.1) if raise_phish else cfg.phish_fraction,
            points_correct=cfg.points_correct,
            points_wrong=cfg.points_wrong,
            hint_penalty=cfg.hint_penalty,
        )
    return GameConfig(levels=levels, lives=config.lives)
