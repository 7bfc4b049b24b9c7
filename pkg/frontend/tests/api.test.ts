import { describe, expect, it } from "vitest";

import { ApiClient, FetchLike } from "../src/api.js";
import { commitConflictBody, commitGroundZBody } from "./fixtures.js";

interface Recorded {
  url: string;
  method: string;
  body: unknown;
}

function fetchReturning(
  status: number,
  payload: unknown,
  log: Recorded[]
): FetchLike {
  return async (url, init) => {
    log.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : null,
    });
    return new Response(
      typeof payload === "string" ? payload : JSON.stringify(payload),
      { status, headers: { "content-type": "application/json" } }
    );
  };
}

describe("ApiClient", () => {
  it("posts convert requests with the ruleText field", async () => {
    const log: Recorded[] = [];
    const client = new ApiClient(
      fetchReturning(200, { status: "ok", axioms: [], freshDeclarations: [], warnings: [] }, log)
    );
    await client.convert("A(?x) -> B(?x)");
    expect(log).toEqual([
      {
        url: "/api/convert",
        method: "POST",
        body: { ruleText: "A(?x) -> B(?x)" },
      },
    ]);
  });

  it("includes ground only when given", async () => {
    const log: Recorded[] = [];
    const client = new ApiClient(fetchReturning(200, commitGroundZBody, log));
    await client.commit("rule", ["z"], true);
    await client.commit("rule", null, false);
    expect(log[0].body).toEqual({ ruleText: "rule", declareMissing: true, ground: ["z"] });
    expect(log[1].body).toEqual({ ruleText: "rule", declareMissing: false });
  });

  it("maps 200 commits to committed", async () => {
    const client = new ApiClient(fetchReturning(200, commitGroundZBody, []));
    const result = await client.commit("rule", ["z"], true);
    expect(result.kind).toBe("committed");
    if (result.kind !== "committed") return;
    expect(result.committed).toHaveLength(5);
  });

  it("maps 409 commits to conflict with the options", async () => {
    const client = new ApiClient(fetchReturning(409, commitConflictBody, []));
    const result = await client.commit("rule", null, true);
    expect(result).toEqual({
      kind: "conflict",
      options: [["y"], ["z"]],
      message: commitConflictBody.message,
    });
  });

  it("maps other failures to error", async () => {
    const client = new ApiClient(fetchReturning(400, { message: "bad" }, []));
    const result = await client.commit("rule", null, true);
    expect(result).toEqual({ kind: "error", message: "bad" });
  });

  it("fetches the ontology as text", async () => {
    const client = new ApiClient(fetchReturning(200, "Ontology()\n", []));
    expect(await client.ontology()).toBe("Ontology()\n");
  });
});
