"""Worm content: loading, validation, and seeded level assembly.

A corpus file is a JSON object: {"version", "lexicon_ref", "worms": [...]}
with one record per worm (see docs/file-formats.md). Corpora are
immutable after load and safe to share between sessions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from .analyzer import (
    BrandLexicon,
    CueConfig,
    EmailMessage,
    TeacherTip,
    Verdict,
    analyze_email,
    analyze_url,
    tip_for,
)
from .analyzer.cues import CueKind
from .rng import GameRng


class Mode(str, Enum):
    URL = "url"
    EMAIL = "email"


class Truth(str, Enum):
    LEGIT = "legit"
    PHISH = "phish"


class Tier(str, Enum):
    BEGINNER = "beginner"
    INTERMEDIATE = "intermediate"
    ADVANCED = "advanced"


TIER_ORDER: tuple[Tier, ...] = (Tier.BEGINNER, Tier.INTERMEDIATE, Tier.ADVANCED)


def tier_index(tier: Tier) -> int:
    return TIER_ORDER.index(tier)


class CorpusError(Exception):
    pass


class ParseError(CorpusError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateId(CorpusError):
    def __init__(self, worm_id: str):
        super().__init__(f"duplicate worm id {worm_id!r}")
        self.worm_id = worm_id


class InsufficientCorpus(CorpusError):
    def __init__(self, tier: Tier, needed: int, available: int, detail: str = ""):
        message = f"{tier.value}: need {needed}, have {available}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)
        self.tier = tier
        self.needed = needed
        self.available = available


@dataclass(frozen=True)
class WormSpec:
    id: str
    mode: Mode
    payload: str | EmailMessage
    truth: Truth
    tier: Tier
    tip_override: str | None = None

    def payload_view(self) -> dict:
        """Player-facing payload only; never includes truth or tier."""
        if self.mode is Mode.URL:
            return {"url": self.payload}
        assert isinstance(self.payload, EmailMessage)
        return {"email": self.payload.to_dict()}

    def to_dict(self) -> dict:
        data = {
            "id": self.id,
            "mode": self.mode.value,
            "truth": self.truth.value,
            "tier": self.tier.value,
            "payload": self.payload if self.mode is Mode.URL else self.payload.to_dict(),
        }
        if self.tip_override is not None:
            data["tip_override"] = self.tip_override
        return data


@dataclass(frozen=True)
class Corpus:
    worms: tuple[WormSpec, ...]
    lexicon_ref: str
    version: str

    def __post_init__(self):
        if not self.worms:
            raise ValueError("corpus is empty")
        seen = set()
        for worm in self.worms:
            if worm.id in seen:
                raise DuplicateId(worm.id)
            seen.add(worm.id)

    def worms_for(self, tier: Tier, mode: Mode) -> list[WormSpec]:
        return [w for w in self.worms if w.tier is tier and w.mode is mode]

    def get(self, worm_id: str) -> WormSpec | None:
        for worm in self.worms:
            if worm.id == worm_id:
                return worm
        return None


def _locate_line(text: str, needle: str) -> int:
    idx = text.find(needle)
    if idx == -1:
        return 0
    return text.count("\n", 0, idx) + 1


def load_corpus(source: bytes | str) -> Corpus:
    """Parse a corpus file; rejects duplicate ids and malformed records."""
    if isinstance(source, bytes):
        try:
            text = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(0, f"not UTF-8: {exc}") from exc
    else:
        text = source

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from exc

    if not isinstance(data, dict) or "worms" not in data:
        raise ParseError(1, "expected an object with a 'worms' array")

    worms: list[WormSpec] = []
    seen: set[str] = set()
    for index, record in enumerate(data["worms"]):
        worm = _parse_record(record, index, text)
        if worm.id in seen:
            raise DuplicateId(worm.id)
        seen.add(worm.id)
        worms.append(worm)

    return Corpus(
        worms=tuple(worms),
        lexicon_ref=str(data.get("lexicon_ref", "default")),
        version=str(data.get("version", "0")),
    )


def _parse_record(record: dict, index: int, text: str) -> WormSpec:
    def fail(reason: str) -> ParseError:
        anchor = f'"{record.get("id")}"' if isinstance(record.get("id"), str) else ""
        line = _locate_line(text, anchor) if anchor else 0
        return ParseError(line, f"worm #{index}: {reason}")

    if not isinstance(record, dict):
        raise ParseError(0, f"worm #{index}: record is not an object")
    worm_id = record.get("id")
    if not worm_id or not isinstance(worm_id, str):
        raise ParseError(0, f"worm #{index}: missing id")
    try:
        mode = Mode(record["mode"])
        truth = Truth(record["truth"])
        tier = Tier(record["tier"])
    except (KeyError, ValueError) as exc:
        raise fail(f"bad enum field: {exc}") from exc

    payload = record.get("payload")
    if mode is Mode.URL:
        if not isinstance(payload, str) or not payload:
            raise fail("url payload must be a non-empty string")
        parsed_payload: str | EmailMessage = payload
    else:
        if not isinstance(payload, dict):
            raise fail("email payload must be an object")
        try:
            parsed_payload = EmailMessage.from_dict(payload)
        except (KeyError, TypeError) as exc:
            raise fail(f"bad email payload: {exc}") from exc

    tip_override = record.get("tip_override")
    if tip_override is not None and not isinstance(tip_override, str):
        raise fail("tip_override must be a string")

    return WormSpec(
        id=worm_id,
        mode=mode,
        payload=parsed_payload,
        truth=truth,
        tier=tier,
        tip_override=tip_override,
    )


class CorpusAnalysis:
    """Cached analyzer verdicts over an immutable corpus."""

    def __init__(self, corpus: Corpus, lexicon: BrandLexicon, cue_config: CueConfig):
        self.corpus = corpus
        self.lexicon = lexicon
        self.cue_config = cue_config
        self._verdicts: dict[str, Verdict] = {}

    def verdict(self, worm: WormSpec) -> Verdict:
        cached = self._verdicts.get(worm.id)
        if cached is None:
            cached = worm_verdict(worm, self.lexicon, self.cue_config)
            self._verdicts[worm.id] = cached
        return cached

    def tip(self, worm: WormSpec) -> TeacherTip:
        tip = tip_for(self.verdict(worm).cues)
        if worm.tip_override is not None:
            return TeacherTip(text=worm.tip_override, cue_kind=tip.cue_kind)
        return tip


def worm_verdict(worm: WormSpec, lexicon: BrandLexicon, cue_config: CueConfig) -> Verdict:
    if worm.mode is Mode.URL:
        assert isinstance(worm.payload, str)
        return analyze_url(worm.payload, lexicon, cue_config)
    assert isinstance(worm.payload, EmailMessage)
    return analyze_email(worm.payload, lexicon, cue_config)


@dataclass(frozen=True)
class Finding:
    worm_id: str
    kind: str
    detail: str

    def to_dict(self) -> dict:
        return {"worm_id": self.worm_id, "kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]

    @property
    def ok(self) -> bool:
        return not self.findings

    def to_dict(self) -> dict:
        return {"ok": self.ok, "findings": [f.to_dict() for f in self.findings]}


# Tier rules: beginner phish must be obvious (a heavyweight cue),
# advanced phish must be subtle (lightweight cues, or the two
# "inspect closely" kinds). Ground truth stays the corpus label.
_SUBTLE_KINDS = frozenset({CueKind.LOOKALIKE_DOMAIN, CueKind.FAKE_LINK})


def validate_corpus(corpus: Corpus, lexicon: BrandLexicon, cue_config: CueConfig) -> ValidationReport:
    findings: list[Finding] = []
    for worm in corpus.worms:
        if worm.mode is Mode.EMAIL:
            assert isinstance(worm.payload, EmailMessage)
            logo = worm.payload.claimed_brand_logo
            if logo is not None and lexicon.get(logo) is None:
                findings.append(Finding(worm.id, "unknown_brand", f"claimed_brand_logo {logo!r} not in lexicon"))

        verdict = worm_verdict(worm, lexicon, cue_config)
        if worm.truth is Truth.PHISH and not verdict.cues:
            findings.append(Finding(worm.id, "unlearnable", "phish item with no detectable cues"))
            continue
        if verdict.label.value != worm.truth.value:
            findings.append(
                Finding(
                    worm.id,
                    "label_mismatch",
                    f"labeled {worm.truth.value} but analyzer scores {verdict.risk_score:.2f}",
                )
            )
        if worm.truth is Truth.PHISH:
            if worm.tier is Tier.BEGINNER:
                if max(cue.weight for cue in verdict.cues) < 0.5:
                    findings.append(
                        Finding(worm.id, "tier_violation", "beginner phish needs a cue of weight >= 0.5")
                    )
            elif worm.tier is Tier.ADVANCED:
                loud = [
                    cue.kind.value
                    for cue in verdict.cues
                    if cue.weight > 0.4 and cue.kind not in _SUBTLE_KINDS
                ]
                if loud:
                    findings.append(
                        Finding(
                            worm.id,
                            "tier_violation",
                            f"advanced phish carries non-subtle cues: {', '.join(loud)}",
                        )
                    )
    return ValidationReport(findings=tuple(findings))


@dataclass(frozen=True)
class LevelPlan:
    level: Tier
    mode: Mode
    worm_count: int
    phish_fraction: float
    time_limit: float
    seed: int

    def __post_init__(self):
        if self.worm_count < 1:
            raise ValueError("worm_count must be positive")
        if not 0.0 < self.phish_fraction < 1.0:
            raise ValueError("phish_fraction must be in (0, 1)")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


def round_half_up(x: float) -> int:
    """Pinned rounding for phish counts: half away from zero."""
    return int(math.floor(x + 0.5))


def generate_level_set(corpus: Corpus, plan: LevelPlan) -> list[WormSpec]:
    """Seeded sample of a level's worms: exact phish count, no repeats.

    Draws and the final ordering come from one pinned rng stream
    seeded with plan.seed, so the same plan always yields the same
    sequence on every platform.
    """
    pool = corpus.worms_for(plan.level, plan.mode)
    if len(pool) < plan.worm_count:
        raise InsufficientCorpus(plan.level, plan.worm_count, len(pool))

    phish = [w for w in pool if w.truth is Truth.PHISH]
    legit = [w for w in pool if w.truth is Truth.LEGIT]
    want_phish = round_half_up(plan.worm_count * plan.phish_fraction)
    want_legit = plan.worm_count - want_phish
    if len(phish) < want_phish:
        raise InsufficientCorpus(plan.level, want_phish, len(phish), "phish pool")
    if len(legit) < want_legit:
        raise InsufficientCorpus(plan.level, want_legit, len(legit), "legit pool")

    rng = GameRng(plan.seed)
    phish_pool = list(phish)
    rng.shuffle(phish_pool)
    legit_pool = list(legit)
    rng.shuffle(legit_pool)
    chosen = phish_pool[:want_phish] + legit_pool[:want_legit]
    rng.shuffle(chosen)
    return chosen
