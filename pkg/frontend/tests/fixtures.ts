// Response payloads captured verbatim from the running service, so the
// mocked API used in tests matches the real wire format.

import type { ConvertResponse, SignatureInfo } from "../src/types.js";

export const STUDENT_WORKER =
  "attends(?x, ?y) ^ Course(?y) ^ worksFor(?x, ?z) ^ Dept(?z) -> StudentWorker(?x)";

export const TAUGHT_BY_UNCLE =
  "hasFather(?x, ?y) ^ hasBrother(?y, ?z) ^ taughtBy(?x, ?z) -> TaughtByUncle(?x)";

export const GOLDEN_MANCHESTER =
  "(attends some Course) and (worksFor some Dept) SubClassOf StudentWorker";

export const convertStudentWorker: ConvertResponse = {
  status: "ok",
  axioms: [
    {
      functional:
        "SubClassOf(ObjectIntersectionOf(ObjectSomeValuesFrom(:attends :Course) ObjectSomeValuesFrom(:worksFor :Dept)) :StudentWorker)",
      manchester: GOLDEN_MANCHESTER,
    },
  ],
  freshDeclarations: [
    { kind: "Class", name: "Course" },
    { kind: "Class", name: "Dept" },
    { kind: "Class", name: "StudentWorker" },
    { kind: "ObjectProperty", name: "attends" },
    { kind: "ObjectProperty", name: "worksFor" },
  ],
  warnings: [],
};

export const convertTaughtByUncle: ConvertResponse = {
  status: "untranslatable",
  axioms: [],
  freshDeclarations: [],
  warnings: [],
  options: [["y"], ["z"]],
  optionPreviews: [
    "(hasFather some {?y}) and (taughtBy some (inverse hasBrother some {?y})) SubClassOf TaughtByUncle",
    "(hasFather some (hasBrother some {?z})) and (taughtBy some {?z}) SubClassOf TaughtByUncle",
  ],
  message:
    "the body cannot be reduced: each of the variables ?x, ?y, ?z appears in two or more property atoms (a cycle or multiply-connected structure); expressing it in OWL would need role conjunction",
};

export const convertParseError: ConvertResponse = {
  status: "error",
  axioms: [],
  freshDeclarations: [],
  warnings: [],
  message: "expected ')', found 'end of input'",
  position: { line: 1, column: 5 },
};

export const commitConflictBody = {
  message: convertTaughtByUncle.message as string,
  options: [["y"], ["z"]],
};

export const commitGroundZBody = {
  committed: [
    "Declaration(Class(:TaughtByUncle))",
    "Declaration(ObjectProperty(:hasBrother))",
    "Declaration(ObjectProperty(:hasFather))",
    "Declaration(ObjectProperty(:taughtBy))",
    'DLSafeRule(Annotation(rowl:nominalSchemaVariables "z") Body(ObjectPropertyAtom(:hasFather Variable(x) Variable(y)) ObjectPropertyAtom(:hasBrother Variable(y) Variable(z)) ObjectPropertyAtom(:taughtBy Variable(x) Variable(z))) Head(ClassAtom(:TaughtByUncle Variable(x))))',
  ],
};

export const signatureAfterGroundZ: SignatureInfo = {
  classes: ["TaughtByUncle"],
  objectProperties: ["hasBrother", "hasFather", "taughtBy"],
};

export const ontologyAfterGroundZ = [
  "Prefix(:=<http://example.org/ontology#>)",
  "Prefix(owl:=<http://www.w3.org/2002/07/owl#>)",
  "Prefix(rowl:=<http://example.org/rowl#>)",
  "Ontology(",
  "  Declaration(Class(:TaughtByUncle))",
  "  Declaration(ObjectProperty(:hasBrother))",
  "  Declaration(ObjectProperty(:hasFather))",
  "  Declaration(ObjectProperty(:taughtBy))",
  '  DLSafeRule(Annotation(rowl:nominalSchemaVariables "z") Body(ObjectPropertyAtom(:hasFather Variable(x) Variable(y)) ObjectPropertyAtom(:hasBrother Variable(y) Variable(z)) ObjectPropertyAtom(:taughtBy Variable(x) Variable(z))) Head(ClassAtom(:TaughtByUncle Variable(x))))',
  ")",
  "",
].join("\n");

export const emptySignature: SignatureInfo = {
  classes: [],
  objectProperties: [],
};
