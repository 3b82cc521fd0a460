/** API client: retry queue and idempotency keys. */

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("ApiClient", () => {
  it("retries transient failures and reuses one client key", async () => {
    const bodies: any[] = [];
    let attempts = 0;
    const flaky = async (_url: string, init?: RequestInit) => {
      attempts += 1;
      if (init?.body) bodies.push(JSON.parse(String(init.body)));
      if (attempts < 3) throw new Error("network down");
      return jsonResponse({ ok: true });
    };
    const api = new ApiClient("http://x", "demo", flaky, 5, 1);
    const key = api.newClientKey();
    const response = await api.submitRatings(
      "item1", "r1", [{ dimension_id: "lifelike", value: 1 }], key,
    );
    expect(response.ok).toBe(true);
    expect(attempts).toBe(3);
    expect(new Set(bodies.map((b) => b.client_key)).size).toBe(1); // one logical record
  });

  it("does not retry 4xx validation failures", async () => {
    let attempts = 0;
    const rejecting = async () => {
      attempts += 1;
      return jsonResponse({ detail: "bad" }, 422);
    };
    const api = new ApiClient("http://x", "demo", rejecting, 5, 1);
    const response = await api.submitFlag("item1", "r1", ["Other"], "");
    expect(response.status).toBe(422);
    expect(attempts).toBe(1);
  });

  it("surfaces exhaustion after maxRetries server errors", async () => {
    const failing = async () => jsonResponse({}, 503);
    const api = new ApiClient("http://x", "demo", failing, 2, 1);
    await expect(
      api.submitRatings("item1", "r1", [], api.newClientKey()),
    ).rejects.toThrow();
  });

  it("client keys are unique per logical submission", () => {
    const api = new ApiClient("http://x", "demo", async () => jsonResponse({}));
    expect(api.newClientKey()).not.toBe(api.newClientKey());
  });
});
