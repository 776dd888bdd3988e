// Scripted stand-in for the game server, mirroring protocol v1 shapes.

import type { SocketLike } from "../src/net.js";

type Scripter = (msg: Record<string, unknown>, socket: FakeSocket) => object[];

export class FakeSocket implements SocketLike {
  sent: Record<string, unknown>[] = [];
  onopen: ((ev?: unknown) => void) | null = null;
  onmessage: ((ev: { data: string }) => void) | null = null;
  onclose: ((ev?: unknown) => void) | null = null;
  onerror: ((ev?: unknown) => void) | null = null;

  constructor(private scripter: Scripter) {}

  open(): void {
    this.onopen?.();
  }

  send(data: string): void {
    const msg = JSON.parse(data) as Record<string, unknown>;
    this.sent.push(msg);
    for (const reply of this.scripter(msg, this)) {
      this.push(reply);
    }
  }

  push(msg: object): void {
    this.onmessage?.({ data: JSON.stringify(msg) });
  }

  close(): void {
    this.onclose?.();
  }
}

export function urlWorm(id: string, url: string): object {
  return { v: 1, type: "worm", worm: { id, mode: "url", payload: { url } } };
}

export function sessionStarted(level = "beginner", timeLimit = 180): object {
  return {
    v: 1,
    type: "session_started",
    session_id: "sess-test",
    level,
    time_limit: timeLimit,
    lives: 3,
    score: 0,
  };
}

export function summaryMsg(motivation = 0.45): object {
  return {
    v: 1,
    type: "session_summary",
    summary: {
      final_score: 17,
      accuracy: 0.75,
      per_level_accuracy: { beginner: 0.75 },
      hints_used: 1,
      phish_missed: 1,
      legit_rejected: 0,
      duration: 30.5,
      outcome: "quit",
      timed_out: false,
      decisions: 4,
    },
    constructs: {
      perceived_severity: 0.25,
      perceived_susceptibility: 0.5,
      perceived_threat: 0.3625,
      safeguard_effectiveness: 1.0,
      safeguard_cost: 0.075,
      self_efficacy: 0.5,
      avoidance_motivation: motivation,
    },
    reference_guide_url: "http://education.apwg.org/",
  };
}

// A small scripted game: two worms, teacher costs 3 points, then summary.
export function standardScripter(): Scripter {
  let score = 0;
  let served = 0;
  const worms = [
    urlWorm("w-a", "https://www.example.org/welcome"),
    urlWorm("w-b", "https://another.example.net/offer"),
  ];
  return (msg) => {
    if (msg.type === "start_session") {
      served = 1;
      return [sessionStarted(), worms[0]];
    }
    if (msg.type === "action" && msg.action === "teacher") {
      score = Math.max(0, score - 3);
      return [
        {
          v: 1,
          type: "outcome",
          feedback: "tip text",
          score,
          lives: 3,
          tip: { text: "check the address against the one you know", cue_kind: null },
        },
      ];
    }
    if (msg.type === "action") {
      const correct = msg.action === "eat" ? served === 1 : served !== 1;
      score += correct ? 10 : -5;
      score = Math.max(0, score);
      const outcome = {
        v: 1,
        type: "outcome",
        feedback: correct ? "WOW well done!" : "That worm was a fake. look closer",
        score,
        lives: 3,
        correct,
      };
      if (served < worms.length) {
        const next = worms[served];
        served += 1;
        return [outcome, next];
      }
      return [outcome, summaryMsg()];
    }
    if (msg.type === "quit") {
      return [summaryMsg()];
    }
    return [{ v: 1, type: "error", code: "bad_message", detail: "unexpected" }];
  };
}
