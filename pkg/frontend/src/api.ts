/** Typed client for the contract validation service.
 *
 * The editor never interprets contract text itself; every parse,
 * linearization and validation goes through these three endpoints.
 */

export interface Span {
  startLine: number;
  startColumn: number;
  endLine: number;
  endColumn: number;
}

export type Severity = "error" | "warning";

export interface Diagnostic {
  severity: Severity;
  code: string;
  message: string;
  span: Span;
}

export interface ParseResult {
  ok: boolean;
  coml?: string;
  diagnostics: Diagnostic[];
}

export interface LinearizeResult {
  ok: boolean;
  text?: string;
  diagnostics: Diagnostic[];
}

export interface ValidateResult {
  ok: boolean;
  diagnostics: Diagnostic[];
  clocks: string[];
}

export type FetchLike = (url: string, init: RequestInit) => Promise<Response>;

export class ServiceClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  parse(text: string): Promise<ParseResult> {
    return this.post<ParseResult>("/api/parse", { text });
  }

  linearize(coml: string): Promise<LinearizeResult> {
    return this.post<LinearizeResult>("/api/linearize", { coml });
  }

  validate(text: string): Promise<ValidateResult> {
    return this.post<ValidateResult>("/api/validate", { text });
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw new Error(`${path} failed: HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }
}

export function errorDiagnostics(diagnostics: Diagnostic[]): Diagnostic[] {
  return diagnostics.filter((d) => d.severity === "error");
}
