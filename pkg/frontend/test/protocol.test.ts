/** Protocol fixtures: shape, option labels, and the value mapping. */

import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { join } from "node:path";

import { optionValue, parseProtocol, questionsBySection } from "../src/protocol.js";

const FIXTURES = join(__dirname, "..", "fixtures");

function load(name: string) {
  return parseProtocol(JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")));
}

describe("protocol fixtures", () => {
  it("face protocol carries 11 questions, body 10", () => {
    expect(load("face_dyadic.protocol.json").questions).toHaveLength(11);
    expect(load("body_dyadic.protocol.json").questions).toHaveLength(10);
  });

  it("options map onto the five-point scale in order", () => {
    const protocol = load("face_dyadic.protocol.json");
    expect(protocol.scale_values).toEqual([-2, -1, 0, 1, 2]);
    for (const question of protocol.questions) {
      expect(question.options).toHaveLength(5);
    }
    expect(optionValue(protocol, 0)).toBe(-2);
    expect(optionValue(protocol, 2)).toBe(0);
    expect(optionValue(protocol, 4)).toBe(2);
  });

  it("lifelike options carry the A/B preference phrasing", () => {
    const protocol = load("face_dyadic.protocol.json");
    const lifelike = protocol.questions.find((q) => q.dimension_id === "lifelike")!;
    expect(lifelike.options[0]).toBe("Candidate A is much more lifelike");
    expect(lifelike.options[4]).toBe("Candidate B is much more lifelike");
  });

  it("sections are ordered overall, listening, speaking", () => {
    const protocol = load("body_dyadic.protocol.json");
    const sections = questionsBySection(protocol);
    expect([...sections.keys()]).toEqual(["overall", "listening", "speaking"]);
    expect(sections.get("overall")).toHaveLength(3);
    expect(sections.get("listening")).toHaveLength(4);
    expect(sections.get("speaking")).toHaveLength(3);
  });

  it("flag list ends with the note-requiring catch-all", () => {
    const protocol = load("face_dyadic.protocol.json");
    expect(protocol.flag_categories).toContain("Audio is distorted");
    expect(protocol.flag_categories).toContain("Video freezes and/or skips");
    expect(protocol.flag_categories.at(-1)).toBe("Other");
    expect(protocol.flag_note_required).toBe("Other");
  });

  it("malformed payloads are rejected", () => {
    expect(() => parseProtocol({})).toThrow();
    expect(() =>
      parseProtocol({ scale_values: [0, 1], questions: [{ options: ["a"] }] }),
    ).toThrow();
  });
});
