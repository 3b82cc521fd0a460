/** Form gating, flag validation, and dual-player behavior. */

import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { join } from "node:path";

import { RatingForm } from "../src/form.js";
import { DualPlayer, FakePlayer } from "../src/player.js";
import { parseProtocol } from "../src/protocol.js";

const protocol = parseProtocol(
  JSON.parse(
    readFileSync(join(__dirname, "..", "fixtures", "face_dyadic.protocol.json"), "utf-8"),
  ),
);

function playedPair() {
  const left = new FakePlayer();
  const right = new FakePlayer();
  const player = new DualPlayer(left, right);
  left.play();
  right.play();
  left.tick(1);
  right.tick(1);
  return { left, right, player };
}

describe("RatingForm", () => {
  it("blocks answers until both videos have been played", () => {
    const left = new FakePlayer();
    const right = new FakePlayer();
    const player = new DualPlayer(left, right);
    const form = new RatingForm(protocol, () => player.bothPlayed());
    expect(form.sectionsUnlocked()).toBe(false);
    expect(() => form.answer("lifelike", 0)).toThrow(/play both/);
    left.play();
    left.tick(0.5);
    expect(form.sectionsUnlocked()).toBe(false); // one video is not enough
    right.play();
    right.tick(0.5);
    expect(form.sectionsUnlocked()).toBe(true);
    form.answer("lifelike", 3);
    expect(form.answeredCount()).toBe(1);
  });

  it("incomplete forms cannot be serialized", () => {
    const { player } = playedPair();
    const form = new RatingForm(protocol, () => player.bothPlayed());
    form.answer("lifelike", 0);
    expect(form.isComplete()).toBe(false);
    expect(() => form.toResponses()).toThrow(/unanswered/);
    for (const question of protocol.questions) form.answer(question.dimension_id, 2);
    expect(form.isComplete()).toBe(true);
    const responses = form.toResponses();
    expect(responses).toHaveLength(11);
    expect(responses.every((r) => r.value === 0)).toBe(true);
  });

  it("maps option indices to scale values through the shared table", () => {
    const { player } = playedPair();
    const form = new RatingForm(protocol, () => player.bothPlayed());
    for (const question of protocol.questions) form.answer(question.dimension_id, 4);
    expect(new Set(form.toResponses().map((r) => r.value))).toEqual(new Set([2]));
  });

  it("flag validation requires categories and notes for Other", () => {
    const { player } = playedPair();
    const form = new RatingForm(protocol, () => player.bothPlayed());
    expect(form.validateFlag({ categories: [], note: "" })).toMatch(/at least one/);
    expect(form.validateFlag({ categories: ["Audio is distorted"], note: "" })).toBeNull();
    expect(form.validateFlag({ categories: ["Other"], note: "" })).toMatch(/justification/);
    expect(form.validateFlag({ categories: ["Other"], note: "corrupt file" })).toBeNull();
    expect(form.validateFlag({ categories: ["Not a reason"], note: "" })).toMatch(/unknown/);
  });
});

describe("DualPlayer", () => {
  it("sync play aligns playheads within 100 ms", () => {
    const left = new FakePlayer();
    const right = new FakePlayer();
    const player = new DualPlayer(left, right);
    left.play();
    left.tick(3.2); // left ran ahead
    expect(player.playheadSkewSeconds()).toBeGreaterThan(3);
    player.syncPlay();
    expect(player.playheadSkewSeconds()).toBeLessThan(0.1);
    left.tick(0.5);
    right.tick(0.5);
    expect(player.playheadSkewSeconds()).toBeLessThan(0.1);
  });

  it("highlights the speaking channel during VAD segments", () => {
    const left = new FakePlayer();
    const right = new FakePlayer();
    const player = new DualPlayer(left, right, [
      { channel: "anchor", start_s: 0.0, end_s: 2.0 },
      { channel: "candidate", start_s: 2.0, end_s: 4.0 },
    ]);
    const seen: string[][] = [];
    player.onHighlight((channels) => seen.push([...channels].sort()));
    left.play();
    left.tick(1.0); // t = 1.0: anchor speaking
    left.tick(2.0); // t = 3.0: candidate speaking
    left.tick(2.0); // t = 5.0: silence
    expect(seen).toEqual([["anchor"], ["candidate"], []]);
    expect([...player.activeChannels(0.5)]).toEqual(["anchor"]);
  });
});
