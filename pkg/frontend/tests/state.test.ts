// The workflow the UI drives: convert -> preview, untranslatable -> prompt,
// commit (with ground when prompted) -> panes refresh, editor clears.

import { describe, expect, it } from "vitest";

import type { ApiClient } from "../src/api.js";
import {
  actionCommit,
  actionConvert,
  canConvert,
  cancelPrompt,
  initialState,
  undeclaredNames,
} from "../src/state.js";
import type { CommitResult, ConvertResponse, SignatureInfo } from "../src/types.js";
import {
  GOLDEN_MANCHESTER,
  STUDENT_WORKER,
  TAUGHT_BY_UNCLE,
  commitConflictBody,
  commitGroundZBody,
  convertParseError,
  convertStudentWorker,
  convertTaughtByUncle,
  emptySignature,
  ontologyAfterGroundZ,
  signatureAfterGroundZ,
} from "./fixtures.js";

interface MockCalls {
  convert: string[];
  commit: Array<{ ruleText: string; ground: string[] | null }>;
}

function mockApi(overrides: {
  convert?: ConvertResponse;
  commit?: CommitResult;
  signature?: SignatureInfo;
  ontology?: string;
}): { api: ApiClient; calls: MockCalls } {
  const calls: MockCalls = { convert: [], commit: [] };
  const api = {
    async convert(ruleText: string) {
      calls.convert.push(ruleText);
      return overrides.convert ?? convertStudentWorker;
    },
    async commit(ruleText: string, ground: string[] | null) {
      calls.commit.push({ ruleText, ground });
      return overrides.commit ?? { kind: "committed", committed: [] };
    },
    async signature() {
      return overrides.signature ?? emptySignature;
    },
    async ontology() {
      return overrides.ontology ?? "Ontology()\n";
    },
  } as unknown as ApiClient;
  return { api, calls };
}

describe("editor state", () => {
  it("convert is disabled for empty input", () => {
    expect(canConvert(initialState)).toBe(false);
  });

  it("convert is enabled for a parsing rule", () => {
    expect(canConvert({ ...initialState, ruleText: STUDENT_WORKER })).toBe(true);
  });

  it("five will-be-declared badges for the student-worker rule on an empty ontology", () => {
    const names = undeclaredNames({ ...initialState, ruleText: STUDENT_WORKER });
    expect(names).toEqual([
      "Course",
      "Dept",
      "StudentWorker",
      "attends",
      "worksFor",
    ]);
  });

  it("declared names lose their badge", () => {
    const names = undeclaredNames({
      ...initialState,
      ruleText: STUDENT_WORKER,
      signature: { classes: ["Course", "Dept"], objectProperties: ["attends"] },
    });
    expect(names).toEqual(["StudentWorker", "worksFor"]);
  });
});

describe("actionConvert", () => {
  it("successful conversion shows the golden Manchester line", async () => {
    const { api } = mockApi({ convert: convertStudentWorker });
    const state = await actionConvert(
      { ...initialState, ruleText: STUDENT_WORKER },
      api
    );
    expect(state.lastResponse?.status).toBe("ok");
    expect(state.lastResponse?.axioms[0].manchester).toBe(GOLDEN_MANCHESTER);
    expect(state.pendingOptions).toBeNull();
  });

  it("untranslatable rule opens the prompt with two choices and previews", async () => {
    const { api } = mockApi({ convert: convertTaughtByUncle });
    const state = await actionConvert(
      { ...initialState, ruleText: TAUGHT_BY_UNCLE },
      api
    );
    expect(state.pendingOptions).toEqual([["y"], ["z"]]);
    expect(state.optionPreviews).toHaveLength(2);
    expect(state.optionPreviews[1]).toContain("{?z}");
  });

  it("prompt state matches the untranslatable status (invariant)", async () => {
    for (const response of [convertStudentWorker, convertTaughtByUncle, convertParseError]) {
      const { api } = mockApi({ convert: response });
      const state = await actionConvert(
        { ...initialState, ruleText: "A(?x) -> B(?x)" },
        api
      );
      expect(state.pendingOptions !== null).toBe(
        state.lastResponse?.status === "untranslatable"
      );
    }
  });

  it("parse errors surface the position, no prompt", async () => {
    const { api } = mockApi({ convert: convertParseError });
    const state = await actionConvert({ ...initialState, ruleText: "A(?x" }, api);
    expect(state.lastResponse?.status).toBe("error");
    expect(state.lastResponse?.position).toEqual({ line: 1, column: 5 });
    expect(state.pendingOptions).toBeNull();
  });
});

describe("actionCommit", () => {
  it("never commits an untranslatable rule without a chosen option", async () => {
    const { api, calls } = mockApi({ convert: convertTaughtByUncle });
    let state = await actionConvert(
      { ...initialState, ruleText: TAUGHT_BY_UNCLE },
      api
    );
    state = await actionCommit(state, api, null);
    expect(calls.commit).toHaveLength(0);
    expect(state.banner).toContain("grounding option");
  });

  it("commits with the chosen ground and refreshes the panes", async () => {
    const { api, calls } = mockApi({
      convert: convertTaughtByUncle,
      commit: { kind: "committed", committed: commitGroundZBody.committed },
      signature: signatureAfterGroundZ,
      ontology: ontologyAfterGroundZ,
    });
    let state = await actionConvert(
      { ...initialState, ruleText: TAUGHT_BY_UNCLE },
      api
    );
    state = await actionCommit(state, api, ["z"]);
    expect(calls.commit).toEqual([{ ruleText: TAUGHT_BY_UNCLE, ground: ["z"] }]);
    // the ontology pane now shows the annotated rule
    expect(state.ontologyText).toContain('rowl:nominalSchemaVariables "z"');
    expect(state.signature.classes).toContain("TaughtByUncle");
    // the editor cleared and the prompt closed
    expect(state.ruleText).toBe("");
    expect(state.pendingOptions).toBeNull();
  });

  it("ordinary commits send no ground field", async () => {
    const { api, calls } = mockApi({
      convert: convertStudentWorker,
      commit: { kind: "committed", committed: [] },
    });
    let state = await actionConvert(
      { ...initialState, ruleText: STUDENT_WORKER },
      api
    );
    state = await actionCommit(state, api, null);
    expect(calls.commit).toEqual([{ ruleText: STUDENT_WORKER, ground: null }]);
    expect(state.banner).toBeNull();
  });

  it("a 409 re-opens the prompt with the server's options", async () => {
    const { api } = mockApi({
      convert: convertTaughtByUncle,
      commit: {
        kind: "conflict",
        options: commitConflictBody.options,
        message: commitConflictBody.message,
      },
    });
    let state = await actionConvert(
      { ...initialState, ruleText: TAUGHT_BY_UNCLE },
      api
    );
    state = await actionCommit(state, api, ["y"]);
    expect(state.pendingOptions).toEqual([["y"], ["z"]]);
    expect(state.banner).toBe(commitConflictBody.message);
  });

  it("cancelling the fallback dialog changes nothing but the prompt", async () => {
    const { api, calls } = mockApi({ convert: convertTaughtByUncle });
    const before = await actionConvert(
      { ...initialState, ruleText: TAUGHT_BY_UNCLE },
      api
    );
    const after = cancelPrompt(before);
    expect(after.pendingOptions).toBeNull();
    expect(after.ruleText).toBe(before.ruleText);
    expect(after.ontologyText).toBe(before.ontologyText);
    expect(after.signature).toEqual(before.signature);
    expect(calls.commit).toHaveLength(0);
  });
});
