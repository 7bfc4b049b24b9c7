import type { ApiClient } from "./api.js";
import { parseRuleText, ruleNames } from "./ruleText.js";
import type { ConvertResponse, SignatureInfo } from "./types.js";

/** All UI state lives here; the DOM layer renders it and dispatches the
 * action functions below. The server owns the ontology — this state is a
 * cache plus the in-flight editing session. */
export interface UiState {
  ruleText: string;
  lastResponse: ConvertResponse | null;
  pendingOptions: string[][] | null;
  optionPreviews: string[];
  chosenOption: string[] | null;
  signature: SignatureInfo;
  ontologyText: string;
  banner: string | null;
  busy: boolean;
}

export const initialState: UiState = {
  ruleText: "",
  lastResponse: null,
  pendingOptions: null,
  optionPreviews: [],
  chosenOption: null,
  signature: { classes: [], objectProperties: [] },
  ontologyText: "",
  banner: null,
  busy: false,
};

export function canConvert(state: UiState): boolean {
  return !state.busy && parseRuleText(state.ruleText).ok;
}

/** Names in the editor that the ontology does not know yet; these get a
 * "will be declared" badge. */
export function undeclaredNames(state: UiState): string[] {
  const parse = parseRuleText(state.ruleText);
  if (!parse.ok) return [];
  const names = ruleNames(parse);
  const known = new Set([
    ...state.signature.classes,
    ...state.signature.objectProperties,
  ]);
  return [...names.classes, ...names.properties]
    .filter((n) => !known.has(n))
    .sort();
}

export async function refreshPanes(
  state: UiState,
  api: ApiClient
): Promise<UiState> {
  const [signature, ontologyText] = await Promise.all([
    api.signature(),
    api.ontology(),
  ]);
  return { ...state, signature, ontologyText };
}

export async function actionConvert(
  state: UiState,
  api: ApiClient
): Promise<UiState> {
  let response: ConvertResponse;
  try {
    response = await api.convert(state.ruleText);
  } catch (error) {
    return { ...state, busy: false, banner: String(error) };
  }
  const next: UiState = {
    ...state,
    busy: false,
    banner: null,
    lastResponse: response,
    pendingOptions: null,
    optionPreviews: [],
    chosenOption: null,
  };
  if (response.status === "untranslatable") {
    next.pendingOptions = response.options ?? [];
    next.optionPreviews = response.optionPreviews ?? [];
  }
  return next;
}

/** Commit the current rule. For untranslatable rules the caller must pass the
 * user's chosen grounding option; without one the commit is refused locally
 * (the server would 409 anyway). */
export async function actionCommit(
  state: UiState,
  api: ApiClient,
  chosenOption: string[] | null,
  declareMissing = true
): Promise<UiState> {
  if (state.lastResponse === null) {
    return { ...state, banner: "convert the rule before committing" };
  }
  const untranslatable = state.lastResponse.status === "untranslatable";
  if (untranslatable && chosenOption === null) {
    return {
      ...state,
      banner: "choose a grounding option before inserting the rule",
    };
  }
  const result = await api.commit(
    state.ruleText,
    untranslatable ? chosenOption : null,
    declareMissing
  );
  if (result.kind === "conflict") {
    return {
      ...state,
      pendingOptions: result.options,
      banner: result.message,
    };
  }
  if (result.kind === "error") {
    return { ...state, banner: result.message };
  }
  const refreshed = await refreshPanes(state, api);
  return {
    ...refreshed,
    ruleText: "",
    lastResponse: null,
    pendingOptions: null,
    optionPreviews: [],
    chosenOption: null,
    banner: null,
    busy: false,
  };
}

/** Close the fallback dialog without inserting anything. */
export function cancelPrompt(state: UiState): UiState {
  return {
    ...state,
    lastResponse: null,
    pendingOptions: null,
    optionPreviews: [],
    chosenOption: null,
  };
}
