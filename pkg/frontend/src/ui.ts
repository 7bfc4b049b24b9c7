import { ApiClient } from "./api.js";
import { parseRuleText } from "./ruleText.js";
import {
  UiState,
  actionCommit,
  actionConvert,
  canConvert,
  cancelPrompt,
  initialState,
  refreshPanes,
  undeclaredNames,
} from "./state.js";

// Thin DOM layer: renders UiState and dispatches the state actions. All
// workflow logic lives in state.ts so it can be tested without a browser.

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export class App {
  private state: UiState = initialState;

  constructor(private readonly api: ApiClient) {}

  async start(): Promise<void> {
    el<HTMLTextAreaElement>("rule-input").addEventListener("input", () => {
      this.state = { ...this.state, ruleText: this.ruleText() };
      this.renderEditorFeedback();
    });
    el<HTMLButtonElement>("convert-button").addEventListener("click", () =>
      this.convert()
    );
    el<HTMLButtonElement>("commit-button").addEventListener("click", () =>
      this.commit(null)
    );
    el<HTMLButtonElement>("option-commit").addEventListener("click", () => {
      const chosen = this.selectedOption();
      if (chosen) void this.commit(chosen);
    });
    el<HTMLButtonElement>("option-cancel").addEventListener("click", () => {
      this.state = cancelPrompt(this.state);
      this.render();
    });
    el<HTMLElement>("banner").addEventListener("click", () => {
      this.state = { ...this.state, banner: null };
      this.render();
    });
    this.state = await refreshPanes(this.state, this.api);
    this.render();
  }

  private ruleText(): string {
    return el<HTMLTextAreaElement>("rule-input").value;
  }

  private selectedOption(): string[] | null {
    const checked = document.querySelector<HTMLInputElement>(
      'input[name="ground-option"]:checked'
    );
    if (!checked || !this.state.pendingOptions) return null;
    return this.state.pendingOptions[Number(checked.value)] ?? null;
  }

  private async convert(): Promise<void> {
    this.state = { ...this.state, busy: true, ruleText: this.ruleText() };
    this.render();
    this.state = await actionConvert(this.state, this.api);
    this.render();
  }

  private async commit(chosen: string[] | null): Promise<void> {
    this.state = { ...this.state, busy: true };
    this.render();
    this.state = await actionCommit(this.state, this.api, chosen);
    this.state = { ...this.state, busy: false };
    el<HTMLTextAreaElement>("rule-input").value = this.state.ruleText;
    this.render();
  }

  private renderEditorFeedback(): void {
    const feedback = el<HTMLElement>("parse-feedback");
    const badges = el<HTMLElement>("declare-badges");
    const parse = parseRuleText(this.state.ruleText);
    if (this.state.ruleText.trim() === "") {
      feedback.textContent = "";
      feedback.className = "feedback";
    } else if (parse.ok) {
      feedback.textContent = "rule parses";
      feedback.className = "feedback ok";
    } else {
      feedback.textContent = `line ${parse.line}, column ${parse.column}: ${parse.message}`;
      feedback.className = "feedback error";
    }
    badges.replaceChildren(
      ...undeclaredNames(this.state).map((name) => {
        const badge = document.createElement("span");
        badge.className = "badge";
        badge.textContent = `${name} — will be declared`;
        return badge;
      })
    );
    el<HTMLButtonElement>("convert-button").disabled = !canConvert(this.state);
  }

  private render(): void {
    this.renderEditorFeedback();
    const banner = el<HTMLElement>("banner");
    banner.textContent = this.state.banner ?? "";
    banner.hidden = this.state.banner === null;

    const preview = el<HTMLElement>("preview");
    const response = this.state.lastResponse;
    if (response && response.status === "ok") {
      const lines = response.axioms.map((a) => {
        const li = document.createElement("li");
        li.textContent = a.manchester;
        return li;
      });
      el<HTMLElement>("axiom-list").replaceChildren(...lines);
      el<HTMLElement>("declaration-list").replaceChildren(
        ...response.freshDeclarations.map((d) => {
          const li = document.createElement("li");
          li.textContent = `${d.kind}: ${d.name}`;
          return li;
        })
      );
      el<HTMLElement>("warning-list").replaceChildren(
        ...response.warnings.map((w) => {
          const li = document.createElement("li");
          li.textContent = w;
          return li;
        })
      );
      preview.hidden = false;
    } else {
      preview.hidden = true;
    }
    el<HTMLButtonElement>("commit-button").disabled =
      this.state.busy || !response || response.status !== "ok";

    const dialog = el<HTMLElement>("option-dialog");
    if (this.state.pendingOptions !== null) {
      const rows = this.state.pendingOptions.map((option, index) => {
        const row = document.createElement("label");
        row.className = "option-row";
        const radio = document.createElement("input");
        radio.type = "radio";
        radio.name = "ground-option";
        radio.value = String(index);
        const title = document.createElement("span");
        title.textContent =
          "ground " + option.map((v) => "?" + v).join(", ");
        const previewLine = document.createElement("code");
        previewLine.textContent = this.state.optionPreviews[index] ?? "";
        row.append(radio, title, previewLine);
        return row;
      });
      el<HTMLElement>("option-list").replaceChildren(...rows);
      dialog.hidden = false;
    } else {
      dialog.hidden = true;
    }

    el<HTMLElement>("class-list").replaceChildren(
      ...this.state.signature.classes.map((name) => {
        const li = document.createElement("li");
        li.textContent = name;
        return li;
      })
    );
    el<HTMLElement>("property-list").replaceChildren(
      ...this.state.signature.objectProperties.map((name) => {
        const li = document.createElement("li");
        li.textContent = name;
        return li;
      })
    );
    el<HTMLElement>("ontology-pane").textContent = this.state.ontologyText;
  }
}
