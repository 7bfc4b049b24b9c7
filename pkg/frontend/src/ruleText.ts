// Client-side mirror of the rule grammar, for live editor feedback only;
// the service remains authoritative.
//
//   rule  ::= body '->' head        body/head ::= atom ('^' atom)*
//   atom  ::= NAME '(' term (',' term)? ')'   term ::= '?' IDENT

export const TOP_CLASS = "owl:Thing";
export const UNIVERSAL_PROPERTY = "owl:topObjectProperty";

export interface ParsedAtom {
  predicate: string;
  args: string[];
  line: number;
  column: number;
}

export interface RuleParse {
  ok: true;
  body: ParsedAtom[];
  head: ParsedAtom[];
}

export interface RuleError {
  ok: false;
  line: number;
  column: number;
  message: string;
}

export type ParseOutcome = RuleParse | RuleError;

interface Token {
  kind: "NAME" | "VAR" | "LPAREN" | "RPAREN" | "COMMA" | "CARET" | "ARROW" | "EOF";
  text: string;
  line: number;
  column: number;
}

const TOKEN_PATTERNS: Array<[Token["kind"] | "WS", RegExp]> = [
  ["WS", /^\s+/],
  ["NAME", /^[A-Za-z_][A-Za-z0-9_]*(?::[A-Za-z_][A-Za-z0-9_]*)?/],
  ["VAR", /^\?[A-Za-z_][A-Za-z0-9_]*/],
  ["ARROW", /^->/],
  ["LPAREN", /^\(/],
  ["RPAREN", /^\)/],
  ["COMMA", /^,/],
  ["CARET", /^\^/],
];

function tokenize(text: string): Token[] | RuleError {
  const tokens: Token[] = [];
  let line = 1;
  let lineStart = 0;
  let pos = 0;
  outer: while (pos < text.length) {
    const rest = text.slice(pos);
    for (const [kind, pattern] of TOKEN_PATTERNS) {
      const match = pattern.exec(rest);
      if (!match) continue;
      const value = match[0];
      if (kind !== "WS") {
        tokens.push({ kind, text: value, line, column: pos - lineStart + 1 });
      }
      const newlines = value.split("\n").length - 1;
      if (newlines > 0) {
        line += newlines;
        lineStart = pos + value.lastIndexOf("\n") + 1;
      }
      pos += value.length;
      continue outer;
    }
    return {
      ok: false,
      line,
      column: pos - lineStart + 1,
      message: `unexpected character ${JSON.stringify(text[pos])}`,
    };
  }
  tokens.push({ kind: "EOF", text: "", line, column: pos - lineStart + 1 });
  return tokens;
}

class Parser {
  private index = 0;

  constructor(private readonly tokens: Token[]) {}

  // a method (not a getter) so type narrowing does not survive advance()
  private peek(): Token {
    return this.tokens[this.index];
  }

  private advance(): Token {
    const token = this.tokens[this.index];
    if (token.kind !== "EOF") this.index += 1;
    return token;
  }

  private fail(message: string, token?: Token): RuleError {
    const at = token ?? this.peek();
    return { ok: false, line: at.line, column: at.column, message };
  }

  atom(): ParsedAtom | RuleError {
    const name = this.peek();
    if (name.kind !== "NAME") {
      return this.fail(
        `expected a class or property name, found ${name.text || "end of input"}`
      );
    }
    this.advance();
    if (this.peek().kind !== "LPAREN") return this.fail("expected '('");
    this.advance();
    const args: string[] = [];
    const first = this.term();
    if (typeof first !== "string") return first;
    args.push(first);
    if (this.peek().kind === "COMMA") {
      this.advance();
      const second = this.term();
      if (typeof second !== "string") return second;
      args.push(second);
    }
    if (this.peek().kind !== "RPAREN") {
      const found = this.peek();
      return this.fail(`expected ')', found ${found.text || "end of input"}`);
    }
    this.advance();
    return { predicate: name.text, args, line: name.line, column: name.column };
  }

  private term(): string | RuleError {
    const token = this.peek();
    if (token.kind === "VAR") {
      this.advance();
      return token.text.slice(1);
    }
    if (token.kind === "NAME") {
      return this.fail(
        `unsupported term '${token.text}': arguments must be variables like ?x`,
        token
      );
    }
    return this.fail(`expected a term, found ${token.text || "end of input"}`);
  }

  atomList(): ParsedAtom[] | RuleError {
    const atoms: ParsedAtom[] = [];
    const first = this.atom();
    if (!("predicate" in first)) return first;
    atoms.push(first);
    while (this.peek().kind === "CARET") {
      this.advance();
      const next = this.atom();
      if (!("predicate" in next)) return next;
      atoms.push(next);
    }
    return atoms;
  }

  rule(): ParseOutcome {
    const body = this.atomList();
    if (!Array.isArray(body)) return body;
    if (this.peek().kind !== "ARROW") {
      const found = this.peek();
      return this.fail(`expected '->', found ${found.text || "end of input"}`);
    }
    this.advance();
    const head = this.atomList();
    if (!Array.isArray(head)) return head;
    if (this.peek().kind !== "EOF") {
      return this.fail(`unexpected trailing input '${this.peek().text}'`);
    }
    return validate(body, head);
  }
}

function validate(body: ParsedAtom[], head: ParsedAtom[]): ParseOutcome {
  const arities = new Map<string, [number, ParsedAtom]>();
  for (const atom of [...body, ...head]) {
    const prior = arities.get(atom.predicate);
    if (prior && prior[0] !== atom.args.length) {
      return {
        ok: false,
        line: atom.line,
        column: atom.column,
        message: `'${atom.predicate}' is used with both ${prior[0]} and ${atom.args.length} arguments`,
      };
    }
    arities.set(atom.predicate, [atom.args.length, atom]);
  }
  const bodyVars = new Set(body.flatMap((a) => a.args));
  for (const atom of head) {
    if (atom.args.length === 2 && atom.predicate === UNIVERSAL_PROPERTY) {
      return {
        ok: false,
        line: atom.line,
        column: atom.column,
        message: `${UNIVERSAL_PROPERTY} cannot be used as a rule head`,
      };
    }
    const unbound = atom.args.filter((v) => !bodyVars.has(v));
    if (unbound.length > 0) {
      return {
        ok: false,
        line: atom.line,
        column: atom.column,
        message: `unsafe rule: head variable(s) ${unbound
          .map((v) => "?" + v)
          .join(", ")} do not occur in the body`,
      };
    }
  }
  return { ok: true, body, head };
}

export function parseRuleText(text: string): ParseOutcome {
  if (text.trim() === "") {
    return { ok: false, line: 1, column: 1, message: "enter a rule" };
  }
  const tokens = tokenize(text);
  if (!Array.isArray(tokens)) return tokens;
  return new Parser(tokens).rule();
}

/** Class / property names appearing in a parsed rule (reserved names have
 * built-in meaning and are excluded). */
export function ruleNames(parse: RuleParse): {
  classes: Set<string>;
  properties: Set<string>;
} {
  const classes = new Set<string>();
  const properties = new Set<string>();
  for (const atom of [...parse.body, ...parse.head]) {
    if (atom.args.length === 1 && atom.predicate !== TOP_CLASS) {
      classes.add(atom.predicate);
    }
    if (atom.args.length === 2 && atom.predicate !== UNIVERSAL_PROPERTY) {
      properties.add(atom.predicate);
    }
  }
  return { classes, properties };
}
