// DOM view: one render function, re-run on every state change.
// Phone-first layout; the pond is CSS, the facts are server-sent.

import type { EmailView, SessionSummaryMsg, WormView } from "./protocol.js";
import { motivationPercent, type ViewState } from "./state.js";

export interface Handlers {
  pickMode(mode: "url" | "email"): void;
  act(action: "eat" | "reject" | "teacher"): void;
  nextLevel(): void;
  quit(): void;
  retry(): void;
  playAgain(): void;
}

export function render(root: HTMLElement, state: ViewState, handlers: Handlers): void {
  root.textContent = "";
  if (state.connection === "lost") {
    root.appendChild(retryBanner(handlers));
  }
  switch (state.screen) {
    case "mode_menu":
      root.appendChild(modeMenu(state, handlers));
      break;
    case "playing":
      root.appendChild(playScreen(state, handlers));
      break;
    case "level_complete":
      root.appendChild(levelCompleteScreen(state, handlers));
      break;
    case "summary":
      root.appendChild(summaryScreen(state, handlers));
      break;
  }
}

function el(tag: string, className: string, testId?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (testId) node.setAttribute("data-testid", testId);
  if (text !== undefined) node.textContent = text;
  return node;
}

function button(label: string, testId: string, onClick: () => void, className = "btn"): HTMLElement {
  const node = el("button", className, testId, label);
  node.addEventListener("click", onClick);
  return node;
}

function retryBanner(handlers: Handlers): HTMLElement {
  const banner = el("div", "banner", "retry-banner", "Connection lost. ");
  banner.appendChild(button("Retry", "retry-btn", () => handlers.retry(), "btn btn-small"));
  return banner;
}

function modeMenu(state: ViewState, handlers: Handlers): HTMLElement {
  const menu = el("section", "menu", "mode-menu");
  menu.appendChild(el("h1", "title", undefined, "phishpond"));
  menu.appendChild(
    el("p", "tagline", undefined,
       "Help the small fish eat the real worms and spit out the fakes."),
  );
  menu.appendChild(button("Website addresses", "mode-url", () => handlers.pickMode("url"), "btn btn-mode"));
  menu.appendChild(button("Emails", "mode-email", () => handlers.pickMode("email"), "btn btn-mode"));
  if (state.notice) menu.appendChild(el("p", "notice", "notice", state.notice));
  return menu;
}

function hud(state: ViewState): HTMLElement {
  const bar = el("header", "hud", "hud");
  bar.appendChild(el("span", "hud-item", "level", state.hud.level));
  bar.appendChild(el("span", "hud-item", "score", `Score ${state.hud.score}`));
  bar.appendChild(el("span", "hud-item", "lives", `${"❤".repeat(Math.max(0, state.hud.lives))}`));
  bar.appendChild(el("span", "hud-item", "clock", `${Math.ceil(state.hud.clock)}s`));
  return bar;
}

function playScreen(state: ViewState, handlers: Handlers): HTMLElement {
  const screen = el("section", "play", "play-screen");
  screen.appendChild(hud(state));

  const pond = el("div", "pond", "pond");
  pond.appendChild(el("div", "fish", "fish", "\u{1F41F}"));
  if (state.worm) {
    const worm = el("div", "worm", "worm");
    worm.appendChild(el("div", "worm-icon", undefined, "\u{1FAB1}"));
    worm.appendChild(wormDialog(state.worm));
    pond.appendChild(worm);
  }
  if (state.teacherTip) {
    const bubble = el("div", "teacher", "teacher-bubble");
    bubble.appendChild(el("div", "teacher-icon", undefined, "\u{1F420}"));
    bubble.appendChild(el("p", "teacher-text", "teacher-text", state.teacherTip.text));
    pond.appendChild(bubble);
  }
  if (state.toast) {
    pond.appendChild(el("div", "toast", "toast", state.toast));
  }
  screen.appendChild(pond);

  const controls = el("div", "controls", "controls");
  controls.appendChild(button("Eat", "eat-btn", () => handlers.act("eat"), "btn btn-eat"));
  controls.appendChild(button("Reject", "reject-btn", () => handlers.act("reject"), "btn btn-reject"));
  controls.appendChild(button("Ask teacher", "teacher-btn", () => handlers.act("teacher"), "btn btn-teacher"));
  controls.appendChild(button("Give up", "quit-btn", () => handlers.quit(), "btn btn-quiet"));
  screen.appendChild(controls);
  if (state.notice) screen.appendChild(el("p", "notice", "notice", state.notice));
  return screen;
}

function wormDialog(worm: WormView): HTMLElement {
  const dialog = el("div", "dialog", "worm-dialog");
  if ("url" in worm.payload) {
    dialog.appendChild(el("code", "url-text", "worm-url", worm.payload.url));
    return dialog;
  }
  const email: EmailView = worm.payload.email;
  const header = el("div", "email-header");
  header.appendChild(el("div", "email-from", "email-from", `From: ${email.sender_display} <${email.sender_address}>`));
  header.appendChild(el("div", "email-subject", "email-subject", `Subject: ${email.subject}`));
  dialog.appendChild(header);
  if (email.claimed_brand_logo) {
    dialog.appendChild(el("div", "email-logo", "email-logo", `[${email.claimed_brand_logo} logo]`));
  }
  dialog.appendChild(el("pre", "email-body", "email-body", email.body));
  for (const link of email.links) {
    const row = el("div", "email-link", "email-link", `\u{1F517} ${link.display_text}`);
    row.title = link.target_url;
    row.appendChild(el("span", "link-target", "link-target", ` → ${link.target_url}`));
    dialog.appendChild(row);
  }
  for (const attachment of email.attachments) {
    dialog.appendChild(el("div", "email-attachment", "email-attachment", `\u{1F4CE} ${attachment.filename}`));
  }
  return dialog;
}

function levelCompleteScreen(state: ViewState, handlers: Handlers): HTMLElement {
  const screen = el("section", "level-complete", "level-complete");
  const done = state.levelComplete;
  screen.appendChild(hud(state));
  screen.appendChild(el("h2", "title", undefined, "Level cleared!"));
  if (done) {
    screen.appendChild(
      el("p", "level-stats", "level-stats",
         `${done.correct} of ${done.decisions} correct on ${done.level}.`),
    );
    screen.appendChild(
      button(`Dive into ${done.next_level}`, "next-level-btn", () => handlers.nextLevel(), "btn btn-mode"),
    );
  }
  screen.appendChild(button("Stop here", "quit-btn", () => handlers.quit(), "btn btn-quiet"));
  return screen;
}

function summaryScreen(state: ViewState, handlers: Handlers): HTMLElement {
  const screen = el("section", "summary", "summary-screen");
  const msg = state.summary as SessionSummaryMsg;
  const summary = msg.summary;
  const headline =
    summary.outcome === "completed"
      ? "You cleared the pond!"
      : summary.outcome === "game_over"
        ? summary.timed_out
          ? "Time ran out!"
          : "The phishers got you!"
        : "Session ended.";
  screen.appendChild(el("h2", "title", "summary-headline", headline));
  const facts = el("dl", "facts", "summary-facts");
  const fact = (label: string, value: string, testId?: string) => {
    facts.appendChild(el("dt", "fact-label", undefined, label));
    facts.appendChild(el("dd", "fact-value", testId, value));
  };
  fact("Final score", String(summary.final_score), "final-score");
  fact("Accuracy", `${Math.round(summary.accuracy * 100)}%`, "accuracy");
  fact("Hints used", String(summary.hints_used), "hints-used");
  fact("Fakes eaten", String(summary.phish_missed));
  fact("Real worms rejected", String(summary.legit_rejected));
  screen.appendChild(facts);

  const percent = motivationPercent(msg);
  if (percent !== null) {
    const gauge = el("div", "gauge", "motivation-gauge");
    gauge.appendChild(el("div", "gauge-label", undefined, "Avoidance motivation"));
    const track = el("div", "gauge-track");
    const fill = el("div", "gauge-fill", "gauge-fill");
    fill.style.width = `${percent}%`;
    fill.setAttribute("data-percent", String(percent));
    track.appendChild(fill);
    gauge.appendChild(track);
    gauge.appendChild(el("div", "gauge-value", "gauge-value", `${percent}%`));
    screen.appendChild(gauge);
  }

  const guide = el("p", "guide");
  guide.appendChild(document.createTextNode("Learn more about phishing: "));
  const link = el("a", "guide-link", "guide-link", "APWG phishing education") as HTMLAnchorElement;
  link.href = msg.reference_guide_url;
  guide.appendChild(link);
  screen.appendChild(guide);

  screen.appendChild(button("Play again", "play-again-btn", () => handlers.playAgain(), "btn btn-mode"));
  return screen;
}
