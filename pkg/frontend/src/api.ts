import type { CommitResult, ConvertResponse, SignatureInfo } from "./types.js";

export type FetchLike = (
  input: string,
  init?: RequestInit
) => Promise<Response>;

/** Thin typed client over the service endpoints; the fetch implementation is
 * injectable so tests can run without a server. */
export class ApiClient {
  constructor(
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
    private readonly base: string = ""
  ) {}

  private async postJson(path: string, payload: unknown): Promise<Response> {
    return this.fetchImpl(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async convert(ruleText: string): Promise<ConvertResponse> {
    const response = await this.postJson("/api/convert", { ruleText });
    if (!response.ok) {
      throw new Error(`convert failed: HTTP ${response.status}`);
    }
    return (await response.json()) as ConvertResponse;
  }

  async commit(
    ruleText: string,
    ground: string[] | null,
    declareMissing: boolean
  ): Promise<CommitResult> {
    const payload: Record<string, unknown> = { ruleText, declareMissing };
    if (ground !== null) {
      payload.ground = ground;
    }
    const response = await this.postJson("/api/commit", payload);
    if (response.status === 409) {
      const body = (await response.json()) as {
        options: string[][];
        message: string;
      };
      return { kind: "conflict", options: body.options, message: body.message };
    }
    if (!response.ok) {
      const body = (await response.json().catch(() => null)) as {
        message?: string;
      } | null;
      return {
        kind: "error",
        message: body?.message ?? `commit failed: HTTP ${response.status}`,
      };
    }
    const body = (await response.json()) as { committed: string[] };
    return { kind: "committed", committed: body.committed };
  }

  async signature(): Promise<SignatureInfo> {
    const response = await this.fetchImpl(this.base + "/api/signature");
    if (!response.ok) {
      throw new Error(`signature failed: HTTP ${response.status}`);
    }
    return (await response.json()) as SignatureInfo;
  }

  async ontology(): Promise<string> {
    const response = await this.fetchImpl(this.base + "/api/ontology");
    if (!response.ok) {
      throw new Error(`ontology fetch failed: HTTP ${response.status}`);
    }
    return response.text();
  }
}
