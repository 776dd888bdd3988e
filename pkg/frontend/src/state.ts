// Pure view state: a fold over server messages. Every game fact on
// screen (score, lives, clock, correctness) comes from the latest
// server message; the reducer never invents one.

import type {
  LevelCompleteMsg,
  ServerMessage,
  SessionSummaryMsg,
  TipView,
  WormView,
} from "./protocol.js";

export type Screen = "mode_menu" | "playing" | "level_complete" | "summary";
export type Connection = "idle" | "connecting" | "open" | "lost";

export interface Hud {
  score: number;
  lives: number;
  clock: number;
  level: string;
  timeLimit: number;
}

export interface ViewState {
  screen: Screen;
  connection: Connection;
  hud: Hud;
  worm: WormView | null;
  teacherTip: TipView | null;
  toast: string | null;
  pendingAction: boolean;
  levelComplete: LevelCompleteMsg | null;
  summary: SessionSummaryMsg | null;
  notice: string | null;
}

export function initialState(): ViewState {
  return {
    screen: "mode_menu",
    connection: "idle",
    hud: { score: 0, lives: 0, clock: 0, level: "", timeLimit: 0 },
    worm: null,
    teacherTip: null,
    toast: null,
    pendingAction: false,
    levelComplete: null,
    summary: null,
    notice: null,
  };
}

export function reduce(state: ViewState, msg: ServerMessage): ViewState {
  switch (msg.type) {
    case "session_started":
      return {
        ...state,
        screen: "playing",
        hud: {
          score: msg.score,
          lives: msg.lives,
          clock: msg.time_limit,
          level: msg.level,
          timeLimit: msg.time_limit,
        },
        worm: null,
        teacherTip: null,
        toast: null,
        pendingAction: false,
        levelComplete: null,
        summary: null,
        notice: null,
      };
    case "worm":
      return { ...state, screen: "playing", worm: msg.worm, teacherTip: null };
    case "outcome": {
      if (!state.pendingAction) return state; // out-of-order reply: ignore
      const next: ViewState = {
        ...state,
        hud: { ...state.hud, score: msg.score, lives: msg.lives },
        pendingAction: false,
      };
      if (msg.tip) {
        next.teacherTip = msg.tip;
      } else {
        next.toast = msg.feedback;
      }
      return next;
    }
    case "level_complete":
      return {
        ...state,
        screen: "level_complete",
        levelComplete: msg,
        hud: { ...state.hud, score: msg.score, lives: msg.lives },
        worm: null,
        teacherTip: null,
        pendingAction: false,
      };
    case "session_summary":
      return {
        ...state,
        screen: "summary",
        summary: msg,
        worm: null,
        teacherTip: null,
        toast: null,
        pendingAction: false,
      };
    case "tick":
      // Authoritative clock sync; display interpolation never drifts past it.
      return { ...state, hud: { ...state.hud, clock: msg.clock_remaining } };
    case "error":
      return { ...state, pendingAction: false, notice: `${msg.code}: ${msg.detail}` };
  }
}

export function actionSent(state: ViewState): ViewState {
  return { ...state, pendingAction: true, toast: null, notice: null };
}

export function connectionChanged(state: ViewState, connection: Connection): ViewState {
  // A lost connection resumes only to the summary of an ended session;
  // anything mid-session becomes a retry banner.
  return { ...state, connection };
}

export function motivationPercent(summary: SessionSummaryMsg): number | null {
  if (!summary.constructs) return null;
  return Math.round(summary.constructs.avoidance_motivation * 100);
}
