"""Message schema v1 and the transport-free session host.

Every message, both directions, carries ``"v": 1``. The host owns no
game rules: it validates envelopes, forwards to the game core, and
shapes replies. Worm messages never carry the truth label, tier, or
cue list; the player sees only what a mail client or address bar would
show. See docs/protocol.md for the full schema.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field
from pathlib import Path

from ..corpus import Corpus, CorpusAnalysis, InsufficientCorpus, Mode, Tier, WormSpec
from ..game import Action, ActionOutcome, GameError, Phase
from ..persistence import (
    FileEventLog,
    MemoryEventLog,
    ProfileSession,
    ProfileStore,
    SessionRecorder,
    SessionStore,
    config_hash,
)
from ..settings import Settings
from ..ttat import NoDecisions, TtatConstructs, estimate_constructs

PROTOCOL_VERSION = 1
REFERENCE_GUIDE_URL = "http://education.apwg.org/"

CLIENT_TYPES = ("start_session", "action", "next_level", "quit")


@dataclass
class _LiveSession:
    recorder: SessionRecorder
    player_id: str
    mode: Mode
    since_presented: float = 0.0
    log: MemoryEventLog | FileEventLog = field(default_factory=MemoryEventLog)


class Frontdoor:
    """Connection registry: one live session per connection at most."""

    def __init__(self, settings: Settings, corpus: Corpus, data_dir: Path | None = None):
        self.settings = settings
        self.corpus = corpus
        self.analysis = CorpusAnalysis(corpus, settings.lexicon, settings.cues)
        self.config_digest = config_hash(settings.to_dict())
        self.sessions: dict[str, _LiveSession] = {}
        self.session_store = SessionStore(data_dir) if data_dir else None
        self.profile_store = ProfileStore(data_dir) if data_dir else None

    # -- connection lifecycle -------------------------------------------

    def connect(self, connection_id: str) -> None:
        self.sessions.pop(connection_id, None)

    def disconnect(self, connection_id: str) -> None:
        live = self.sessions.pop(connection_id, None)
        if live is not None and live.recorder.session.phase in (Phase.IN_LEVEL, Phase.LEVEL_COMPLETE):
            live.recorder.quit()
            self._finalize(live)

    # -- message handling -------------------------------------------------

    def handle_message(self, connection_id: str, msg: object) -> list[dict]:
        if not isinstance(msg, dict):
            return [_error("bad_message", "message must be a JSON object")]
        if msg.get("v") != PROTOCOL_VERSION:
            return [_error("bad_message", f"missing or unsupported 'v' (expected {PROTOCOL_VERSION})")]
        msg_type = msg.get("type")
        if msg_type not in CLIENT_TYPES:
            return [_error("bad_message", f"unknown type {msg_type!r}")]

        if msg_type == "start_session":
            return self._start_session(connection_id, msg)

        live = self.sessions.get(connection_id)
        if live is None:
            return [_error("no_session", "start a session first")]

        if msg_type == "action":
            return self._action(connection_id, live, msg)
        if msg_type == "next_level":
            return self._next_level(live)
        return self._quit(connection_id, live)

    def handle_tick(self, connection_id: str, elapsed: float) -> list[dict]:
        """Server clock: advances the live session, pushes clock and expiry."""
        live = self.sessions.get(connection_id)
        if live is None or live.recorder.session.phase is not Phase.IN_LEVEL:
            return []
        live.recorder.tick(elapsed)
        live.since_presented += elapsed
        session = live.recorder.session
        messages = [_msg("tick", clock_remaining=session.clock_remaining)]
        if session.phase is Phase.GAME_OVER:
            messages.append(self._end_session(connection_id, live))
        return messages

    # -- handlers ---------------------------------------------------------

    def _start_session(self, connection_id: str, msg: dict) -> list[dict]:
        if connection_id in self.sessions:
            return [_error("rule_violation", "a session is already active on this connection")]
        try:
            mode = Mode(msg.get("mode"))
        except ValueError:
            return [_error("bad_message", "mode must be one of: url, email")]
        player_id = msg.get("player_id", "anonymous")
        if not isinstance(player_id, str) or not player_id:
            return [_error("bad_message", "player_id must be a non-empty string")]
        seed = msg.get("seed", secrets.randbits(63))
        if not isinstance(seed, int):
            return [_error("bad_message", "seed must be an integer")]

        session_id = f"sess-{secrets.token_hex(8)}" if "seed" not in msg else None
        log: MemoryEventLog | FileEventLog
        if self.session_store is not None:
            # File name needs the id up front; pin it for stored sessions.
            session_id = session_id or f"sess-{secrets.token_hex(8)}"
            log = self.session_store.open_log(session_id)
        else:
            log = MemoryEventLog()

        try:
            recorder = SessionRecorder(
                log=log,
                mode=mode,
                config=self.settings.game,
                corpus=self.corpus,
                seed=seed,
                session_id=session_id,
                player_id=player_id,
                analysis=self.analysis,
                config_digest=self.config_digest,
            )
        except InsufficientCorpus as exc:
            return [_error("rule_violation", str(exc))]

        live = _LiveSession(recorder=recorder, player_id=player_id, mode=mode, log=log)
        self.sessions[connection_id] = live
        session = recorder.session
        return [
            _session_started(session),
            _worm(session.current),
        ]

    def _action(self, connection_id: str, live: _LiveSession, msg: dict) -> list[dict]:
        name = msg.get("action")
        if name not in ("eat", "reject", "teacher"):
            return [_error("bad_message", "action must be one of: eat, reject, teacher")]
        session = live.recorder.session
        try:
            if name == "teacher":
                outcome = live.recorder.ask_teacher()
            else:
                at = min(live.since_presented, session.clock_remaining)
                outcome = live.recorder.apply_action(Action(name), at)
        except GameError as exc:
            return [_error("rule_violation", f"{type(exc).__name__}: {exc}")]

        messages = [_outcome(outcome, session)]
        if name == "teacher":
            return messages

        live.since_presented = 0.0
        if session.phase is Phase.IN_LEVEL:
            messages.append(_worm(session.current))
        elif session.phase is Phase.LEVEL_COMPLETE and session.level is not Tier.ADVANCED:
            messages.append(_level_complete(session))
        else:
            messages.append(self._end_session(connection_id, live))
        return messages

    def _next_level(self, live: _LiveSession) -> list[dict]:
        try:
            live.recorder.advance_level()
        except (GameError, InsufficientCorpus) as exc:
            return [_error("rule_violation", f"{type(exc).__name__}: {exc}")]
        live.since_presented = 0.0
        session = live.recorder.session
        return [_session_started(session), _worm(session.current)]

    def _quit(self, connection_id: str, live: _LiveSession) -> list[dict]:
        live.recorder.quit()
        return [self._end_session(connection_id, live)]

    # -- session teardown --------------------------------------------------

    def _end_session(self, connection_id: str, live: _LiveSession) -> dict:
        self.sessions.pop(connection_id, None)
        return self._finalize(live)

    def _finalize(self, live: _LiveSession) -> dict:
        summary = live.recorder.finish(self.settings.ttat)
        session = live.recorder.session
        try:
            constructs: TtatConstructs | None = estimate_constructs(
                summary, session.decided, self.settings.game, self.settings.ttat
            )
        except NoDecisions:
            constructs = None
        if isinstance(live.log, FileEventLog):
            live.log.close()
        if self.profile_store is not None:
            profile = self.profile_store.load_or_create(live.player_id)
            profile.add_session(
                ProfileSession(session_id=session.session_id, summary=summary, constructs=constructs),
                mode=live.mode,
                final_level=session.level.value,
            )
            self.profile_store.save(profile)
        return _msg(
            "session_summary",
            summary=summary.to_dict(),
            constructs=constructs.to_dict() if constructs else None,
            reference_guide_url=REFERENCE_GUIDE_URL,
        )


# -- message shapes ---------------------------------------------------------


def _msg(msg_type: str, **fields) -> dict:
    return {"v": PROTOCOL_VERSION, "type": msg_type, **fields}


def _error(code: str, detail: str) -> dict:
    return _msg("error", code=code, detail=detail)


def _session_started(session) -> dict:
    return _msg(
        "session_started",
        session_id=session.session_id,
        level=session.level.value,
        time_limit=session.config.level(session.level).time_limit,
        lives=session.lives_remaining,
        score=session.score,
    )


def _worm(worm: WormSpec | None) -> dict:
    assert worm is not None
    return _msg("worm", worm={"id": worm.id, "mode": worm.mode.value, "payload": worm.payload_view()})


def _outcome(outcome: ActionOutcome, session) -> dict:
    data = _msg(
        "outcome",
        feedback=outcome.feedback_text,
        score=session.score,
        lives=session.lives_remaining,
    )
    if outcome.correct is not None:
        data["correct"] = outcome.correct
    if outcome.tip is not None:
        data["tip"] = {
            "text": outcome.tip.text,
            "cue_kind": outcome.tip.cue_kind.value if outcome.tip.cue_kind else None,
        }
    return data


def _level_complete(session) -> dict:
    from ..corpus import TIER_ORDER, tier_index

    next_tier = TIER_ORDER[tier_index(session.level) + 1]
    records = [r for r in session.decided if r.level is session.level]
    return _msg(
        "level_complete",
        level=session.level.value,
        next_level=next_tier.value,
        score=session.score,
        lives=session.lives_remaining,
        decisions=len(records),
        correct=sum(1 for r in records if r.correct),
    )
