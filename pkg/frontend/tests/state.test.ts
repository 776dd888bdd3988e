import { describe, expect, it } from "vitest";

import type { OutcomeMsg, ServerMessage, SessionSummaryMsg } from "../src/protocol.js";
import { parseServerMessage } from "../src/protocol.js";
import {
  actionSent,
  connectionChanged,
  initialState,
  motivationPercent,
  reduce,
} from "../src/state.js";
import { sessionStarted, summaryMsg, urlWorm } from "./fake_socket.js";

const started = sessionStarted() as ServerMessage;
const worm = urlWorm("w1", "https://www.example.org/") as ServerMessage;

describe("reduce", () => {
  it("session_started moves to playing and fills the hud", () => {
    const state = reduce(initialState(), started);
    expect(state.screen).toBe("playing");
    expect(state.hud).toEqual({ score: 0, lives: 3, clock: 180, level: "beginner", timeLimit: 180 });
  });

  it("worm message shows the worm without inventing facts", () => {
    const state = reduce(reduce(initialState(), started), worm);
    expect(state.worm?.id).toBe("w1");
    expect(state.teacherTip).toBeNull();
  });

  it("outcome updates hud from the server values only", () => {
    let state = reduce(reduce(initialState(), started), worm);
    state = actionSent(state);
    const outcome: OutcomeMsg = {
      v: 1, type: "outcome", feedback: "WOW well done!", score: 10, lives: 3, correct: true,
    };
    state = reduce(state, outcome);
    expect(state.hud.score).toBe(10);
    expect(state.toast).toBe("WOW well done!");
    expect(state.pendingAction).toBe(false);
  });

  it("out-of-order outcome is ignored", () => {
    const state = reduce(reduce(initialState(), started), worm);
    const stray: OutcomeMsg = { v: 1, type: "outcome", feedback: "x", score: 99, lives: 1 };
    expect(reduce(state, stray)).toBe(state);
  });

  it("teacher outcome raises the bubble and keeps the worm", () => {
    let state = reduce(reduce(initialState(), started), worm);
    state = actionSent(state);
    const outcome: OutcomeMsg = {
      v: 1, type: "outcome", feedback: "tip", score: 0, lives: 3,
      tip: { text: "look at the address", cue_kind: "ip_host" },
    };
    state = reduce(state, outcome);
    expect(state.teacherTip?.text).toBe("look at the address");
    expect(state.worm?.id).toBe("w1");
  });

  it("tick snaps the clock to the server value", () => {
    let state = reduce(initialState(), started);
    state = { ...state, hud: { ...state.hud, clock: 170.2 } };
    state = reduce(state, { v: 1, type: "tick", clock_remaining: 168 });
    expect(state.hud.clock).toBe(168);
  });

  it("summary switches to the summary screen", () => {
    const state = reduce(reduce(initialState(), started), summaryMsg() as ServerMessage);
    expect(state.screen).toBe("summary");
    expect(state.summary?.reference_guide_url).toBe("http://education.apwg.org/");
  });

  it("errors unblock pending actions and surface a notice", () => {
    let state = actionSent(reduce(initialState(), started));
    state = reduce(state, { v: 1, type: "error", code: "rule_violation", detail: "nope" });
    expect(state.pendingAction).toBe(false);
    expect(state.notice).toContain("rule_violation");
  });
});

describe("helpers", () => {
  it("maps motivation to a gauge percentage", () => {
    expect(motivationPercent(summaryMsg(0.45) as SessionSummaryMsg)).toBe(45);
    expect(motivationPercent(summaryMsg(1.0) as SessionSummaryMsg)).toBe(100);
    const bare = { ...(summaryMsg() as SessionSummaryMsg), constructs: null };
    expect(motivationPercent(bare)).toBeNull();
  });

  it("connection changes keep the rest of the state", () => {
    const playing = reduce(initialState(), started);
    const lost = connectionChanged(playing, "lost");
    expect(lost.connection).toBe("lost");
    expect(lost.screen).toBe("playing");
  });

  it("rejects messages with the wrong protocol version", () => {
    expect(parseServerMessage(JSON.stringify({ v: 2, type: "tick", clock_remaining: 1 }))).toBeNull();
    expect(parseServerMessage("not json")).toBeNull();
    expect(parseServerMessage(JSON.stringify({ v: 1, type: "tick", clock_remaining: 1 }))).not.toBeNull();
  });
});
