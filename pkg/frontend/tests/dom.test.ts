// @vitest-environment happy-dom
//
// Automated UI session at the DOM level: a user starts a URL-mode
// game, eats, rejects, asks the teacher (score visibly drops), and
// lands on a summary whose reference link is the APWG education page.

import { beforeEach, describe, expect, it } from "vitest";

import { GameClient } from "../src/net.js";
import { render, type Handlers } from "../src/render.js";
import { FakeSocket, standardScripter } from "./fake_socket.js";

function byTestId(id: string): HTMLElement {
  const node = document.querySelector(`[data-testid="${id}"]`);
  if (!node) throw new Error(`missing element ${id}`);
  return node as HTMLElement;
}

function maybeByTestId(id: string): HTMLElement | null {
  return document.querySelector(`[data-testid="${id}"]`) as HTMLElement | null;
}

function bootApp() {
  document.body.innerHTML = '<div id="app"></div>';
  const root = document.getElementById("app") as HTMLElement;
  let socket: FakeSocket | null = null;
  const client = new GameClient(
    "ws://test/play",
    (state) => render(root, state, handlers),
    () => {
      socket = new FakeSocket(standardScripter());
      return socket;
    },
  );
  const handlers: Handlers = {
    pickMode: (mode) => client.start(mode),
    act: (action) => client.act(action),
    nextLevel: () => client.nextLevel(),
    quit: () => client.quit(),
    retry: () => client.connect(),
    playAgain: () => client.connect(),
  };
  client.connect();
  socket!.open();
  render(root, client.state, handlers);
  return { client, socket: socket! as FakeSocket };
}

describe("browser session", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("offers exactly the two modes of the game", () => {
    bootApp();
    expect(byTestId("mode-url")).toBeTruthy();
    expect(byTestId("mode-email")).toBeTruthy();
    expect(document.querySelectorAll(".btn-mode").length).toBe(2);
  });

  it("plays a url-mode round trip: eat, teacher, reject, summary", () => {
    bootApp();
    byTestId("mode-url").click();

    // Playing: the worm dialog shows a URL string and no verdict data.
    expect(byTestId("worm-url").textContent).toContain("https://www.example.org/welcome");
    expect(document.body.innerHTML).not.toContain("truth");

    // Ask the teacher: bubble appears, score visibly reduced (0 floored).
    byTestId("teacher-btn").click();
    expect(byTestId("teacher-text").textContent).toContain("address");

    // Correct eat: celebratory toast straight from the server.
    byTestId("eat-btn").click();
    expect(byTestId("toast").textContent).toBe("WOW well done!");
    expect(byTestId("score").textContent).toBe("Score 10");

    // Teacher on the second worm: score drops from 10 to 7 on screen.
    byTestId("teacher-btn").click();
    expect(byTestId("score").textContent).toBe("Score 7");

    // Reject the second worm, session ends with the reference guide.
    byTestId("reject-btn").click();
    const link = byTestId("guide-link") as HTMLAnchorElement;
    expect(link.href).toBe("http://education.apwg.org/");
    expect(byTestId("gauge-fill").getAttribute("data-percent")).toBe("45");
    expect(byTestId("gauge-value").textContent).toBe("45%");
  });

  it("renders email worms with sender, body, links and attachments", () => {
    const { socket } = bootApp();
    byTestId("mode-email").click();
    // The server pushes an email worm; the dialog shows what a mail
    // client would show and nothing more.
    socket.push({
      v: 1,
      type: "worm",
      worm: {
        id: "e1",
        mode: "email",
        payload: {
          email: {
            sender_display: "HSBC",
            sender_address: "service@hsbc.co.uk",
            subject: "Statement",
            salutation: "Dear Alice Morgan,",
            body: "Dear Alice Morgan,\nYour statement is ready.",
            links: [{ display_text: "www.hsbc.co.uk", target_url: "https://www.hsbc.co.uk/x" }],
            attachments: [{ filename: "statement.pdf" }],
            claimed_brand_logo: "hsbc",
          },
        },
      },
    });
    expect(byTestId("email-from").textContent).toContain("service@hsbc.co.uk");
    expect(byTestId("email-subject").textContent).toContain("Statement");
    expect(byTestId("email-body").textContent).toContain("Your statement is ready.");
    expect(byTestId("email-link").textContent).toContain("www.hsbc.co.uk");
    expect(byTestId("email-attachment").textContent).toContain("statement.pdf");
    expect(byTestId("email-logo").textContent).toContain("hsbc");
    expect(document.body.innerHTML).not.toContain("truth");
  });

  it("shows a retry banner when the server is unreachable", () => {
    document.body.innerHTML = '<div id="app"></div>';
    const root = document.getElementById("app") as HTMLElement;
    const client = new GameClient(
      "ws://nowhere/play",
      (state) => render(root, state, handlers),
      () => {
        throw new Error("refused");
      },
    );
    const handlers: Handlers = {
      pickMode: () => undefined,
      act: () => undefined,
      nextLevel: () => undefined,
      quit: () => undefined,
      retry: () => client.connect(),
      playAgain: () => undefined,
    };
    client.connect();
    expect(byTestId("retry-banner").textContent).toContain("Connection lost");
    expect(byTestId("retry-btn")).toBeTruthy();
  });

  it("game over by timeout is labelled as such on the summary", () => {
    const { client, socket } = bootApp();
    byTestId("mode-url").click();
    socket.push({
      v: 1,
      type: "session_summary",
      summary: {
        final_score: 5, accuracy: 0.5, per_level_accuracy: { beginner: 0.5 },
        hints_used: 0, phish_missed: 1, legit_rejected: 0, duration: 180,
        outcome: "game_over", timed_out: true, decisions: 2,
      },
      constructs: null,
      reference_guide_url: "http://education.apwg.org/",
    });
    expect(byTestId("summary-headline").textContent).toBe("Time ran out!");
    expect(maybeByTestId("motivation-gauge")).toBeNull(); // no constructs, no gauge
    expect(client.state.screen).toBe("summary");
  });
});
