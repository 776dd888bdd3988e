// Wire types for protocol v1. Mirrors docs/protocol.md exactly; the
// client renders what the server says and computes no game facts.

export const PROTOCOL_VERSION = 1;

export type Mode = "url" | "email";
export type ClientAction = "eat" | "reject" | "teacher";

export interface EmailLinkView {
  display_text: string;
  target_url: string;
}

export interface EmailView {
  sender_display: string;
  sender_address: string;
  subject: string;
  salutation: string;
  body: string;
  links: EmailLinkView[];
  attachments: { filename: string }[];
  claimed_brand_logo?: string;
}

export type WormPayload = { url: string } | { email: EmailView };

export interface WormView {
  id: string;
  mode: Mode;
  payload: WormPayload;
}

export interface TipView {
  text: string;
  cue_kind: string | null;
}

export interface SummaryView {
  final_score: number;
  accuracy: number;
  per_level_accuracy: Record<string, number>;
  hints_used: number;
  phish_missed: number;
  legit_rejected: number;
  duration: number;
  outcome: "completed" | "game_over" | "quit";
  timed_out: boolean;
  decisions: number;
}

export interface ConstructsView {
  perceived_severity: number;
  perceived_susceptibility: number;
  perceived_threat: number;
  safeguard_effectiveness: number;
  safeguard_cost: number;
  self_efficacy: number;
  avoidance_motivation: number;
}

export interface SessionStartedMsg {
  v: number;
  type: "session_started";
  session_id: string;
  level: string;
  time_limit: number;
  lives: number;
  score: number;
}

export interface WormMsg {
  v: number;
  type: "worm";
  worm: WormView;
}

export interface OutcomeMsg {
  v: number;
  type: "outcome";
  feedback: string;
  score: number;
  lives: number;
  correct?: boolean;
  tip?: TipView;
}

export interface LevelCompleteMsg {
  v: number;
  type: "level_complete";
  level: string;
  next_level: string;
  score: number;
  lives: number;
  decisions: number;
  correct: number;
}

export interface SessionSummaryMsg {
  v: number;
  type: "session_summary";
  summary: SummaryView;
  constructs: ConstructsView | null;
  reference_guide_url: string;
}

export interface TickMsg {
  v: number;
  type: "tick";
  clock_remaining: number;
}

export interface ErrorMsg {
  v: number;
  type: "error";
  code: string;
  detail: string;
}

export type ServerMessage =
  | SessionStartedMsg
  | WormMsg
  | OutcomeMsg
  | LevelCompleteMsg
  | SessionSummaryMsg
  | TickMsg
  | ErrorMsg;

export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const msg = data as { v?: unknown; type?: unknown };
  if (msg.v !== PROTOCOL_VERSION || typeof msg.type !== "string") return null;
  return data as ServerMessage;
}

export function startSessionMsg(mode: Mode, playerId?: string): object {
  const msg: Record<string, unknown> = { v: PROTOCOL_VERSION, type: "start_session", mode };
  if (playerId) msg.player_id = playerId;
  return msg;
}

export function actionMsg(action: ClientAction): object {
  return { v: PROTOCOL_VERSION, type: "action", action };
}

export function nextLevelMsg(): object {
  return { v: PROTOCOL_VERSION, type: "next_level" };
}

export function quitMsg(): object {
  return { v: PROTOCOL_VERSION, type: "quit" };
}
