import { describe, expect, it } from "vitest";

import { Diagnostic, FetchLike, ServiceClient, errorDiagnostics } from "../src/api";

interface Recorded {
  url: string;
  init: RequestInit;
}

function clientWith(status: number, payload: unknown) {
  const recorded: Recorded[] = [];
  const fetchImpl: FetchLike = (url, init) => {
    recorded.push({ url, init });
    return Promise.resolve(
      new Response(JSON.stringify(payload), {
        status,
        headers: { "content-type": "application/json" },
      }),
    );
  };
  return { client: new ServiceClient("http://service", fetchImpl), recorded };
}

describe("ServiceClient", () => {
  it("posts the buffer to /api/validate", async () => {
    const { client, recorded } = clientWith(200, { ok: true, diagnostics: [], clocks: ["t_x"] });
    const result = await client.validate("x : Mary may wait\n");
    expect(result.clocks).toEqual(["t_x"]);
    expect(recorded[0]!.url).toBe("http://service/api/validate");
    expect(recorded[0]!.init.method).toBe("POST");
    expect(JSON.parse(recorded[0]!.init.body as string)).toEqual({
      text: "x : Mary may wait\n",
    });
  });

  it("posts text to /api/parse and coml to /api/linearize", async () => {
    const { client, recorded } = clientWith(200, { ok: true, diagnostics: [] });
    await client.parse("text");
    await client.linearize("<document/>");
    expect(JSON.parse(recorded[0]!.init.body as string)).toEqual({ text: "text" });
    expect(recorded[1]!.url).toBe("http://service/api/linearize");
    expect(JSON.parse(recorded[1]!.init.body as string)).toEqual({ coml: "<document/>" });
  });

  it("sends JSON content type", async () => {
    const { client, recorded } = clientWith(200, { ok: true, diagnostics: [], clocks: [] });
    await client.validate("x");
    const headers = recorded[0]!.init.headers as Record<string, string>;
    expect(headers["content-type"]).toBe("application/json");
  });

  it("rejects on a non-2xx status", async () => {
    const { client } = clientWith(413, {});
    await expect(client.validate("big")).rejects.toThrow(/413/);
  });
});

describe("errorDiagnostics", () => {
  it("keeps only error severity", () => {
    const span = { startLine: 1, startColumn: 1, endLine: 1, endColumn: 1 };
    const diagnostics: Diagnostic[] = [
      { severity: "warning", code: "undeclared-variable", message: "w", span },
      { severity: "error", code: "grammar", message: "e", span },
    ];
    expect(errorDiagnostics(diagnostics)).toHaveLength(1);
    expect(errorDiagnostics(diagnostics)[0]!.code).toBe("grammar");
  });
});
