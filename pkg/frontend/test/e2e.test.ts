/** Headless end-to-end: a real rater session against the live backend.
 *
 * Spawns the Python rating service on a scratch study, drives the DOM
 * app through one full face-protocol item (play both videos, answer all
 * 11 questions, submit) and a flag-and-skip on the next item, then
 * checks the backend's append-only event log holds exactly the expected
 * records. Option labels rendered by the app must byte-match the
 * protocol fixtures.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { ApiClient } from "../src/api.js";
import { RatingApp } from "../src/app.js";
import { FakePlayer } from "../src/player.js";

const PORT = 8743;
const BASE = `http://127.0.0.1:${PORT}`;
const RATER = "headless-rater";

let server: ChildProcess | null = null;
let studyDir: string;
let studyId: string;

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt += 1) {
    try {
      const response = await fetch(`${BASE}/api/study/${studyId}/protocol`);
      if (response.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("backend never became ready");
}

beforeAll(async () => {
  studyDir = mkdtempSync(join(tmpdir(), "study-"));
  studyId = studyDir.split("/").at(-1)!;
  const build = spawnSync(
    "dyadicmotion",
    ["study", "build", "--out", studyDir, "--samples", "2", "--systems", "GT,A",
     "--seed", "5", "--protocol", "face_dyadic"],
    { encoding: "utf-8" },
  );
  if (build.status !== 0) throw new Error(`study build failed: ${build.stderr}`);
  server = spawn(
    "dyadicmotion",
    ["study", "serve", "--study", studyDir, "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForServer();
});

afterAll(() => {
  server?.kill();
});

describe("headless rater session", () => {
  it("completes a full item, flags the next, and the event log matches", async () => {
    const root = document.createElement("div");
    document.body.append(root);

    const fakes: FakePlayer[] = [];
    const api = new ApiClient(BASE, studyId, (url, init) => fetch(url, init));
    const app = new RatingApp({
      api,
      raterId: RATER,
      root,
      adapterFactory: () => {
        const player = new FakePlayer();
        fakes.push(player);
        return player;
      },
    });

    await app.start();
    expect(app.item).not.toBeNull();
    const firstItem = app.item!.item_id;

    // the face protocol renders 11 questions in three gated sections
    const questions = root.querySelectorAll(".question");
    expect(questions).toHaveLength(11);
    const fieldsets = root.querySelectorAll<HTMLFieldSetElement>("fieldset");
    expect([...fieldsets].every((fs) => fs.disabled)).toBe(true);

    // option labels byte-match the generated protocol fixture
    const fixture = JSON.parse(
      readFileSync(join(__dirname, "..", "fixtures", "face_dyadic.protocol.json"), "utf-8"),
    );
    const lifelikeLabels = [...questions[0].querySelectorAll("label")].map(
      (label) => label.textContent,
    );
    expect(lifelikeLabels).toEqual(fixture.questions[0].options);

    // no rating can be submitted before both candidate videos played
    expect(() => app.form!.answer("lifelike", 4)).toThrow(/play both/);

    // play both videos (left via its button, right via sync-play)
    (root.querySelector<HTMLButtonElement>("#play-a"))!.click();
    fakes[0].tick(1.0);
    (root.querySelector<HTMLButtonElement>("#sync-play"))!.click();
    fakes[0].tick(1.0);
    fakes[1].tick(1.0);
    expect(app.player!.bothPlayed()).toBe(true);
    expect(app.player!.playheadSkewSeconds()).toBeLessThan(0.1);
    expect([...root.querySelectorAll<HTMLFieldSetElement>("fieldset")]
      .every((fs) => !fs.disabled)).toBe(true);

    // answer all 11 questions through the radio inputs ("Tie" for all)
    for (const question of root.querySelectorAll(".question")) {
      const radios = question.querySelectorAll<HTMLInputElement>("input[type=radio]");
      radios[2].click();
    }
    const submit = root.querySelector<HTMLButtonElement>("#submit")!;
    expect(submit.disabled).toBe(false);
    submit.click();
    await new Promise((resolve) => setTimeout(resolve, 500));

    // a second item is now on screen; flag it instead of rating
    expect(app.item!.item_id).not.toBe(firstItem);
    const flaggedItem = app.item!.item_id;
    root.querySelector<HTMLButtonElement>("#open-flag")!.click();
    const boxes = root.querySelectorAll<HTMLInputElement>(".flag-category");
    expect([...boxes].map((b) => b.value)).toEqual(fixture.flag_categories);

    // "Other" without a note is rejected client-side
    boxes[boxes.length - 1].click();
    root.querySelector<HTMLButtonElement>("#send-flag")!.click();
    await new Promise((resolve) => setTimeout(resolve, 200));
    expect(root.querySelector("#flag-error")!.textContent).toMatch(/justification/);

    boxes[boxes.length - 1].click(); // uncheck Other
    boxes[3].click(); // "Video freezes and/or skips"
    root.querySelector<HTMLButtonElement>("#send-flag")!.click();
    await new Promise((resolve) => setTimeout(resolve, 500));

    // backend event log: one registration, 11 ratings for the first item,
    // one flag for the second
    const events = readFileSync(join(studyDir, "events.jsonl"), "utf-8")
      .trim()
      .split("\n")
      .map((line) => JSON.parse(line));
    const registers = events.filter((e) => e.type === "register");
    const ratings = events.filter((e) => e.type === "rating");
    const flags = events.filter((e) => e.type === "flag");
    expect(registers).toHaveLength(1);
    expect(registers[0].rater_id).toBe(RATER);
    expect(ratings).toHaveLength(11);
    expect(new Set(ratings.map((e) => e.item_id))).toEqual(new Set([firstItem]));
    expect(new Set(ratings.map((e) => e.dimension_id)).size).toBe(11);
    expect(ratings.every((e) => e.value === 0)).toBe(true);
    expect(flags).toHaveLength(1);
    expect(flags[0].item_id).toBe(flaggedItem);
    expect(flags[0].categories).toEqual(["Video freezes and/or skips"]);
  });

  it("backend protocol endpoint matches the shipped fixture byte for byte", async () => {
    const live = await (await fetch(`${BASE}/api/study/${studyId}/protocol`)).json();
    const fixture = JSON.parse(
      readFileSync(join(__dirname, "..", "fixtures", "face_dyadic.protocol.json"), "utf-8"),
    );
    expect(live).toEqual(fixture);
  });
});
