// The client must hold no answer keys: no truth labels, no cue data,
// no corpus content may ship in the built bundle. `npm test` builds
// first, so dist/ is always fresh here.

import { readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

const DIST = fileURLToPath(new URL("../dist", import.meta.url));

function builtSources(): { name: string; text: string }[] {
  return readdirSync(DIST)
    .filter((name) => name.endsWith(".js") || name.endsWith(".html"))
    .map((name) => ({ name, text: readFileSync(join(DIST, name), "utf-8") }));
}

describe("built bundle", () => {
  it("exists and has the app entry", () => {
    const names = builtSources().map((f) => f.name);
    expect(names).toContain("main.js");
    expect(names).toContain("index.html");
  });

  it("contains no labels, verdicts, or corpus data", () => {
    const forbidden = [
      "truth",            // the label key never reaches the client
      "tip_override",
      '"legit"',          // label values
      '"phish"',
      "risk_score",
      "cue_kind\":",      // cue lists are server-side (tip objects arrive at runtime only)
      "81.153.192.106",   // seed corpus content markers
      "b-url-p",
      "b-eml-p",
      "corpus",
    ];
    for (const file of builtSources()) {
      for (const marker of forbidden) {
        expect(file.text.includes(marker), `${file.name} leaks ${marker}`).toBe(false);
      }
    }
  });

  it("keeps the reference guide as the only external link", () => {
    const texts = builtSources().map((f) => f.text).join("\n");
    const urls = texts.match(/https?:\/\/[^\s"'<>]+/g) ?? [];
    for (const url of urls) {
      expect(url.startsWith("http://education.apwg.org")).toBe(true);
    }
  });
});
