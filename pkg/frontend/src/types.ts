// Wire types for the /api/ endpoints.

export interface AxiomRendering {
  functional: string;
  manchester: string;
}

export interface DeclarationInfo {
  kind: "Class" | "ObjectProperty";
  name: string;
}

export interface ConvertResponse {
  status: "ok" | "untranslatable" | "error";
  axioms: AxiomRendering[];
  freshDeclarations: DeclarationInfo[];
  warnings: string[];
  options?: string[][];
  optionPreviews?: string[];
  message?: string;
  position?: { line: number; column: number };
}

export interface SignatureInfo {
  classes: string[];
  objectProperties: string[];
}

export type CommitResult =
  | { kind: "committed"; committed: string[] }
  | { kind: "conflict"; options: string[][]; message: string }
  | { kind: "error"; message: string };
