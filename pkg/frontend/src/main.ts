import { Diagnostic, ParseResult, ServiceClient, ValidateResult } from "./api";
import { DebouncedRunner } from "./debounce";
import { downloadFile, exportName, formatForName } from "./files";
import { hideLabels } from "./labels";
import { buildOutline, renderOutline } from "./outline";
import { errorRanges, highlightMarkup, spanToRange } from "./spans";
import { loadBuffer, saveBuffer } from "./storage";

interface ValidationCycle {
  validation: ValidateResult;
  /** COML for the outline; null when the buffer has errors. */
  coml: string | null;
}

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (found === null) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function serviceBase(): string {
  const override = new URLSearchParams(window.location.search).get("service");
  return override ?? "http://localhost:8741";
}

function main(): void {
  const buffer = element<HTMLTextAreaElement>("buffer");
  const backdrop = element<HTMLDivElement>("backdrop");
  const banner = element<HTMLDivElement>("banner");
  const diagnosticsList = element<HTMLUListElement>("diagnostics");
  const outlinePane = element<HTMLDivElement>("outline-pane");
  const outlineStatus = element<HTMLSpanElement>("outline-status");
  const readingPane = element<HTMLPreElement>("reading-pane");
  const hideLabelsToggle = element<HTMLInputElement>("hide-labels");
  const importInput = element<HTMLInputElement>("import-file");

  const client = new ServiceClient(serviceBase());

  const runner = new DebouncedRunner<ValidationCycle>(
    async (text) => {
      const validation = await client.validate(text);
      let coml: string | null = null;
      if (validation.ok) {
        const parsed: ParseResult = await client.parse(text);
        coml = parsed.coml ?? null;
      }
      return { validation, coml };
    },
    { deliver: showCycle, failed: showUnreachable },
  );

  function refreshBackdrop(diagnostics: Diagnostic[]): void {
    const ranges = errorRanges(buffer.value, diagnostics);
    backdrop.innerHTML = highlightMarkup(buffer.value, ranges);
  }

  function showDiagnostics(diagnostics: Diagnostic[]): void {
    diagnosticsList.textContent = "";
    for (const diagnostic of diagnostics) {
      const item = document.createElement("li");
      item.className = `diagnostic ${diagnostic.severity}`;
      item.textContent =
        `${diagnostic.span.startLine}:${diagnostic.span.startColumn} ` +
        `${diagnostic.severity}[${diagnostic.code}]: ${diagnostic.message}`;
      item.addEventListener("click", () => jumpTo(diagnostic));
      diagnosticsList.appendChild(item);
    }
  }

  function jumpTo(diagnostic: Diagnostic): void {
    const range = spanToRange(buffer.value, diagnostic.span);
    buffer.focus();
    buffer.setSelectionRange(range.start, range.end);
  }

  function showCycle(cycle: ValidationCycle): void {
    banner.hidden = true;
    refreshBackdrop(cycle.validation.diagnostics);
    showDiagnostics(cycle.validation.diagnostics);
    saveBuffer(window.localStorage, buffer.value);
    if (cycle.coml !== null) {
      renderOutline(outlinePane, buildOutline(cycle.coml));
      outlinePane.classList.remove("stale");
      outlineStatus.hidden = true;
    } else {
      outlinePane.classList.add("stale");
      outlineStatus.hidden = false;
    }
    refreshReadingPane();
  }

  function showUnreachable(error: unknown): void {
    banner.textContent = `service unreachable, edits are not being checked (${String(error)})`;
    banner.hidden = false;
  }

  function refreshReadingPane(): void {
    const hiding = hideLabelsToggle.checked;
    readingPane.hidden = !hiding;
    buffer.parentElement!.classList.toggle("hidden-for-reading", hiding);
    if (hiding) {
      readingPane.textContent = hideLabels(buffer.value);
    }
  }

  function onEdit(): void {
    // The tree no longer matches the buffer until the next cycle lands.
    outlinePane.classList.add("stale");
    outlineStatus.hidden = false;
    refreshBackdrop([]);
    runner.input(buffer.value);
  }

  buffer.addEventListener("input", onEdit);
  buffer.addEventListener("scroll", () => {
    backdrop.scrollTop = buffer.scrollTop;
    backdrop.scrollLeft = buffer.scrollLeft;
  });

  hideLabelsToggle.addEventListener("change", refreshReadingPane);

  element<HTMLButtonElement>("export-cnl").addEventListener("click", () => {
    downloadFile(exportName("cnl"), buffer.value);
  });

  element<HTMLButtonElement>("export-xml").addEventListener("click", () => {
    void (async () => {
      try {
        const parsed = await client.parse(buffer.value);
        if (parsed.ok && parsed.coml !== undefined) {
          downloadFile(exportName("coml"), parsed.coml);
        } else {
          showDiagnostics(parsed.diagnostics);
        }
      } catch (error) {
        showUnreachable(error);
      }
    })();
  });

  importInput.addEventListener("change", () => {
    const file = importInput.files?.[0];
    if (file === undefined) {
      return;
    }
    void (async () => {
      const content = await file.text();
      if (formatForName(file.name) === "coml") {
        try {
          const result = await client.linearize(content);
          if (result.ok && result.text !== undefined) {
            buffer.value = result.text;
          } else {
            showDiagnostics(result.diagnostics);
            return;
          }
        } catch (error) {
          showUnreachable(error);
          return;
        }
      } else {
        buffer.value = content;
      }
      importInput.value = "";
      onEdit();
    })();
  });

  const saved = loadBuffer(window.localStorage);
  if (saved !== null) {
    buffer.value = saved;
  }
  onEdit();
}

main();
