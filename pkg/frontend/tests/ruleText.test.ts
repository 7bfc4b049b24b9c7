import { describe, expect, it } from "vitest";

import { parseRuleText, ruleNames } from "../src/ruleText.js";
import { STUDENT_WORKER, TAUGHT_BY_UNCLE } from "./fixtures.js";

describe("parseRuleText", () => {
  it("parses the student-worker rule into four body atoms and one head", () => {
    const parse = parseRuleText(STUDENT_WORKER);
    expect(parse.ok).toBe(true);
    if (!parse.ok) return;
    expect(parse.body).toHaveLength(4);
    expect(parse.head).toHaveLength(1);
    expect(parse.head[0].predicate).toBe("StudentWorker");
    expect(parse.head[0].args).toEqual(["x"]);
  });

  it("reports syntax errors at the offending position", () => {
    const parse = parseRuleText("A(?x -> B(?x)");
    expect(parse).toMatchObject({ ok: false, line: 1, column: 6 });
  });

  it("rejects unsafe rules at the head atom", () => {
    const parse = parseRuleText("Mouse(?x) -> smallerThan(?x, ?y)");
    expect(parse).toMatchObject({ ok: false, column: 14 });
    if (parse.ok) return;
    expect(parse.message).toContain("?y");
  });

  it("rejects individuals as arguments", () => {
    const parse = parseRuleText("A(john) -> B(?x)");
    expect(parse.ok).toBe(false);
    if (parse.ok) return;
    expect(parse.message).toContain("variables");
  });

  it("rejects arity conflicts", () => {
    const parse = parseRuleText("A(?x) ^ A(?x, ?y) -> B(?x)");
    expect(parse.ok).toBe(false);
  });

  it("rejects the universal property as a head", () => {
    const parse = parseRuleText("A(?x) ^ B(?y) -> owl:topObjectProperty(?x, ?y)");
    expect(parse.ok).toBe(false);
  });

  it("accepts conjunctive heads", () => {
    const parse = parseRuleText("A(?x) -> B(?x) ^ C(?x)");
    expect(parse.ok).toBe(true);
    if (!parse.ok) return;
    expect(parse.head).toHaveLength(2);
  });

  it("treats empty input as not-yet-a-rule", () => {
    expect(parseRuleText("   ").ok).toBe(false);
  });
});

describe("ruleNames", () => {
  it("collects class and property names", () => {
    const parse = parseRuleText(TAUGHT_BY_UNCLE);
    if (!parse.ok) throw new Error("fixture must parse");
    const names = ruleNames(parse);
    expect([...names.classes]).toEqual(["TaughtByUncle"]);
    expect([...names.properties].sort()).toEqual([
      "hasBrother",
      "hasFather",
      "taughtBy",
    ]);
  });

  it("excludes reserved names", () => {
    const parse = parseRuleText(
      "owl:Thing(?x) ^ owl:topObjectProperty(?x, ?y) ^ A(?y) -> B(?x)"
    );
    if (!parse.ok) throw new Error("fixture must parse");
    const names = ruleNames(parse);
    expect([...names.classes].sort()).toEqual(["A", "B"]);
    expect([...names.properties]).toEqual([]);
  });
});
