"""Append-only session event logs, player profiles, and exact replay.

One JSONL file per session, one JSON file per player, under a plain
data directory. Events are the only source of truth for what happened;
replaying a log re-drives the game core and must land on the identical
summary, byte for byte under canonical serialization.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .corpus import Corpus, CorpusAnalysis, Mode
from .game import (
    Action,
    ActionOutcome,
    GameConfig,
    Phase,
    SessionSummary,
    new_session,
)
from .ttat import TtatConstructs, TtatWeights


class PersistenceError(Exception):
    pass


class SequenceGap(PersistenceError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"expected seq {expected}, got {got}")
        self.expected = expected
        self.got = got


class StorageFailure(PersistenceError):
    pass


class VersionMismatch(PersistenceError):
    pass


class CorruptLog(PersistenceError):
    def __init__(self, seq: int, reason: str = ""):
        super().__init__(f"corrupt log at seq {seq}" + (f": {reason}" if reason else ""))
        self.seq = seq
        self.reason = reason


class NotFound(PersistenceError):
    pass


class EventKind(str, Enum):
    SESSION_STARTED = "session_started"
    WORM_PRESENTED = "worm_presented"
    ACTION_TAKEN = "action_taken"
    OUTCOME_EMITTED = "outcome_emitted"
    TICKED = "ticked"
    LEVEL_ADVANCED = "level_advanced"
    SESSION_ENDED = "session_ended"


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    at: float
    kind: EventKind
    data: dict

    def to_dict(self) -> dict:
        return {"seq": self.seq, "at": self.at, "kind": self.kind.value, "data": self.data}

    @classmethod
    def from_dict(cls, data: dict) -> "SessionEvent":
        return cls(
            seq=int(data["seq"]),
            at=float(data["at"]),
            kind=EventKind(data["kind"]),
            data=dict(data["data"]),
        )


def canonical_json(obj) -> bytes:
    """Stable byte serialization: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def config_hash(config_data: dict) -> str:
    return hashlib.sha256(canonical_json(config_data)).hexdigest()


class MemoryEventLog:
    """Validating append-only log; first event must open the session."""

    def __init__(self):
        self.events: list[SessionEvent] = []

    @property
    def last_seq(self) -> int:
        return self.events[-1].seq if self.events else 0

    def append(self, event: SessionEvent) -> None:
        if event.seq != self.last_seq + 1:
            raise SequenceGap(self.last_seq + 1, event.seq)
        if not self.events and event.kind is not EventKind.SESSION_STARTED:
            raise CorruptLog(event.seq, "first event must be session_started")
        if self.events and self.events[-1].kind is EventKind.SESSION_ENDED:
            raise CorruptLog(event.seq, "log already ended")
        self._write(event)
        self.events.append(event)

    def _write(self, event: SessionEvent) -> None:
        pass


class FileEventLog(MemoryEventLog):
    """JSONL-backed log; every append is flushed and fsynced before ack."""

    def __init__(self, path: Path):
        super().__init__()
        self.path = path
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = open(path, "a", encoding="utf-8")
        except OSError as exc:
            raise StorageFailure(str(exc)) from exc

    def _write(self, event: SessionEvent) -> None:
        try:
            self._fh.write(canonical_json(event.to_dict()).decode("utf-8") + "\n")
            self._fh.flush()
            os.fsync(self._fh.fileno())
        except OSError as exc:
            raise StorageFailure(str(exc)) from exc

    def close(self) -> None:
        self._fh.close()


def read_events(path: Path) -> list[SessionEvent]:
    events = []
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StorageFailure(str(exc)) from exc
    for line in text.splitlines():
        if line.strip():
            events.append(SessionEvent.from_dict(json.loads(line)))
    return events


class SessionRecorder:
    """Drives a GameSession and logs every transition as it happens."""

    def __init__(
        self,
        log: MemoryEventLog,
        mode: Mode,
        config: GameConfig,
        corpus: Corpus,
        seed: int,
        session_id: str | None = None,
        player_id: str = "anonymous",
        analysis: CorpusAnalysis | None = None,
        config_digest: str | None = None,
    ):
        self.log = log
        self.session = new_session(mode, config, corpus, seed, session_id=session_id, analysis=analysis)
        digest = config_digest if config_digest is not None else config_hash(config.to_dict())
        self._emit(
            EventKind.SESSION_STARTED,
            {
                "seed": seed,
                "config_hash": digest,
                "corpus_version": corpus.version,
                "mode": mode.value,
                "session_id": self.session.session_id,
                "player_id": player_id,
            },
        )
        self._present()

    def _emit(self, kind: EventKind, data: dict) -> None:
        self.log.append(
            SessionEvent(seq=self.log.last_seq + 1, at=self.session.elapsed_total, kind=kind, data=data)
        )

    def _present(self) -> None:
        if self.session.current is not None and self.session.phase is Phase.IN_LEVEL:
            self._emit(EventKind.WORM_PRESENTED, {"worm_id": self.session.current.id})

    def apply_action(self, action: Action, at: float) -> ActionOutcome:
        outcome = self.session.apply_action(action, at)
        self._emit(EventKind.ACTION_TAKEN, {"action": action.value, "decision_time": at})
        self._emit(EventKind.OUTCOME_EMITTED, {"outcome": outcome.to_dict()})
        self._present()
        return outcome

    def ask_teacher(self) -> ActionOutcome:
        outcome = self.session.ask_teacher()
        self._emit(EventKind.ACTION_TAKEN, {"action": "teacher"})
        self._emit(EventKind.OUTCOME_EMITTED, {"outcome": outcome.to_dict()})
        return outcome

    def tick(self, elapsed: float) -> None:
        if self.session.phase is not Phase.IN_LEVEL:
            return
        self.session.tick(elapsed)
        self._emit(EventKind.TICKED, {"elapsed": elapsed})

    def advance_level(self) -> None:
        self.session.advance_level()
        self._emit(EventKind.LEVEL_ADVANCED, {"level": self.session.level.value})
        self._present()

    def quit(self) -> None:
        self.session.quit()
        self._emit(EventKind.ACTION_TAKEN, {"action": "quit"})

    def finish(self, ttat_weights: "TtatWeights | None" = None) -> SessionSummary:
        """Close the log; with weights given, the end event also carries
        the estimated player-model constructs."""
        summary = self.session.finish()
        data: dict = {"summary": summary.to_dict()}
        if ttat_weights is not None:
            from .ttat import NoDecisions, estimate_constructs

            try:
                constructs = estimate_constructs(
                    summary, self.session.decided, self.session.config, ttat_weights
                )
                data["constructs"] = constructs.to_dict()
            except NoDecisions:
                data["constructs"] = None
        self._emit(EventKind.SESSION_ENDED, data)
        return summary


def replay(
    events: list[SessionEvent],
    corpus: Corpus,
    config: GameConfig,
    analysis: CorpusAnalysis | None = None,
    config_digest: str | None = None,
) -> SessionSummary:
    """Re-drive the game from a log; the summary must match exactly.

    Raises VersionMismatch when the log was recorded against different
    content or config, CorruptLog at the first event that cannot be
    reproduced (missing, reordered, or divergent payloads).
    """
    if not events:
        raise CorruptLog(1, "empty log")
    if events[0].kind is not EventKind.SESSION_STARTED:
        raise CorruptLog(events[0].seq, "first event must be session_started")

    start = events[0].data
    digest = config_digest if config_digest is not None else config_hash(config.to_dict())
    if start.get("corpus_version") != corpus.version:
        raise VersionMismatch(
            f"log corpus {start.get('corpus_version')!r} != loaded {corpus.version!r}"
        )
    if start.get("config_hash") != digest:
        raise VersionMismatch("config hash differs from the recorded session")

    session = new_session(
        Mode(start["mode"]),
        config,
        corpus,
        int(start["seed"]),
        session_id=start.get("session_id"),
        analysis=analysis,
    )

    expected_seq = events[0].seq
    summary: SessionSummary | None = None
    index = 1
    while index < len(events):
        event = events[index]
        expected_seq += 1
        if event.seq != expected_seq:
            raise CorruptLog(expected_seq, f"expected seq {expected_seq}, found {event.seq}")
        if summary is not None:
            raise CorruptLog(event.seq, "events after session_ended")

        if event.kind is EventKind.WORM_PRESENTED:
            current = session.current.id if session.current else None
            if current != event.data.get("worm_id"):
                raise CorruptLog(event.seq, f"presented {event.data.get('worm_id')!r}, state has {current!r}")
        elif event.kind is EventKind.ACTION_TAKEN:
            action = event.data.get("action")
            if action in ("eat", "reject"):
                outcome = session.apply_action(Action(action), float(event.data["decision_time"]))
                index, expected_seq = _expect_outcome(events, index, expected_seq, outcome)
            elif action == "teacher":
                outcome = session.ask_teacher()
                index, expected_seq = _expect_outcome(events, index, expected_seq, outcome)
            elif action == "quit":
                session.quit()
            else:
                raise CorruptLog(event.seq, f"unknown action {action!r}")
        elif event.kind is EventKind.OUTCOME_EMITTED:
            raise CorruptLog(event.seq, "outcome without a preceding action")
        elif event.kind is EventKind.TICKED:
            session.tick(float(event.data["elapsed"]))
        elif event.kind is EventKind.LEVEL_ADVANCED:
            session.advance_level()
            if session.level.value != event.data.get("level"):
                raise CorruptLog(event.seq, "level mismatch after advance")
        elif event.kind is EventKind.SESSION_ENDED:
            summary = session.finish()
            if canonical_json(summary.to_dict()) != canonical_json(event.data.get("summary")):
                raise CorruptLog(event.seq, "replayed summary differs from the log")
        else:  # pragma: no cover - enum is closed
            raise CorruptLog(event.seq, f"unknown kind {event.kind}")
        index += 1

    if summary is None:
        raise CorruptLog(expected_seq + 1, "log has no session_ended")
    return summary


def _expect_outcome(
    events: list[SessionEvent], index: int, expected_seq: int, outcome: ActionOutcome
) -> tuple[int, int]:
    nxt = index + 1
    if nxt >= len(events) or events[nxt].kind is not EventKind.OUTCOME_EMITTED:
        raise CorruptLog(expected_seq + 1, "action without outcome_emitted")
    event = events[nxt]
    expected_seq += 1
    if event.seq != expected_seq:
        raise CorruptLog(expected_seq, f"expected seq {expected_seq}, found {event.seq}")
    if canonical_json(event.data.get("outcome")) != canonical_json(outcome.to_dict()):
        raise CorruptLog(event.seq, "replayed outcome differs from the log")
    return nxt, expected_seq


# -- player profiles -----------------------------------------------------

_PLAYER_ID_RE = re.compile(r"^[A-Za-z0-9_-]{1,64}$")


@dataclass
class ProfileSession:
    session_id: str
    summary: SessionSummary
    constructs: TtatConstructs | None

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "summary": self.summary.to_dict(),
            "constructs": self.constructs.to_dict() if self.constructs else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProfileSession":
        constructs = data.get("constructs")
        return cls(
            session_id=data["session_id"],
            summary=SessionSummary.from_dict(data["summary"]),
            constructs=TtatConstructs.from_dict(constructs) if constructs else None,
        )


@dataclass
class PlayerProfile:
    player_id: str
    display_name: str
    sessions: list[ProfileSession] = field(default_factory=list)
    best_scores: dict[str, int] = field(default_factory=dict)

    def add_session(self, entry: ProfileSession, mode: Mode, final_level: str) -> None:
        if any(s.session_id == entry.session_id for s in self.sessions):
            raise ValueError(f"session {entry.session_id!r} already recorded")
        self.sessions.append(entry)
        key = f"{mode.value}/{final_level}"
        best = self.best_scores.get(key)
        if best is None or entry.summary.final_score > best:
            self.best_scores[key] = entry.summary.final_score

    def to_dict(self) -> dict:
        return {
            "player_id": self.player_id,
            "display_name": self.display_name,
            "sessions": [s.to_dict() for s in self.sessions],
            "best_scores": dict(self.best_scores),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PlayerProfile":
        return cls(
            player_id=data["player_id"],
            display_name=data.get("display_name", data["player_id"]),
            sessions=[ProfileSession.from_dict(s) for s in data.get("sessions", [])],
            best_scores={k: int(v) for k, v in data.get("best_scores", {}).items()},
        )


class ProfileStore:
    """One JSON file per player under <data_dir>/profiles."""

    def __init__(self, data_dir: Path):
        self.root = Path(data_dir) / "profiles"

    def _path(self, player_id: str) -> Path:
        if not _PLAYER_ID_RE.match(player_id):
            raise ValueError(f"invalid player id {player_id!r}")
        return self.root / f"{player_id}.json"

    def save(self, profile: PlayerProfile) -> None:
        path = self._path(profile.player_id)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(canonical_json(profile.to_dict()))
            tmp.replace(path)
        except OSError as exc:
            raise StorageFailure(str(exc)) from exc

    def load(self, player_id: str) -> PlayerProfile:
        path = self._path(player_id)
        if not path.exists():
            raise NotFound(player_id)
        try:
            return PlayerProfile.from_dict(json.loads(path.read_text(encoding="utf-8")))
        except OSError as exc:
            raise StorageFailure(str(exc)) from exc

    def load_or_create(self, player_id: str, display_name: str | None = None) -> PlayerProfile:
        try:
            return self.load(player_id)
        except NotFound:
            return PlayerProfile(player_id=player_id, display_name=display_name or player_id)


class SessionStore:
    """One JSONL log per session under <data_dir>/sessions."""

    def __init__(self, data_dir: Path):
        self.root = Path(data_dir) / "sessions"

    def open_log(self, session_id: str) -> FileEventLog:
        return FileEventLog(self.root / f"{session_id}.jsonl")

    def read(self, session_id: str) -> list[SessionEvent]:
        path = self.root / f"{session_id}.jsonl"
        if not path.exists():
            raise NotFound(session_id)
        return read_events(path)

    def list_sessions(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(p.stem for p in self.root.glob("*.jsonl"))
