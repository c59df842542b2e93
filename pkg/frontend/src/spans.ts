/** Mapping between service spans (1-based line/column, inclusive) and
 * character offsets in the buffer, plus the underline markup for the
 * highlight backdrop behind the textarea.
 */

import { Diagnostic, Span } from "./api";

export interface Range {
  /** 0-based character offset of the first underlined character. */
  start: number;
  /** 0-based offset one past the last underlined character. */
  end: number;
}

function lineStarts(text: string): number[] {
  const starts = [0];
  for (let i = 0; i < text.length; i++) {
    if (text[i] === "\n") {
      starts.push(i + 1);
    }
  }
  return starts;
}

/** Convert a diagnostic span into buffer offsets, clamped to the text. */
export function spanToRange(text: string, span: Span): Range {
  const starts = lineStarts(text);
  const line = (n: number) => starts[Math.min(Math.max(n, 1), starts.length) - 1] ?? 0;
  const start = Math.min(line(span.startLine) + span.startColumn - 1, text.length);
  const end = Math.min(line(span.endLine) + span.endColumn, text.length);
  return { start, end: Math.max(end, start) };
}

/** Offsets to underline: one merged, ordered range set for the errors. */
export function errorRanges(text: string, diagnostics: Diagnostic[]): Range[] {
  const raw = diagnostics
    .filter((d) => d.severity === "error")
    .map((d) => spanToRange(text, d.span))
    .filter((r) => r.end > r.start)
    .sort((a, b) => a.start - b.start || a.end - b.end);
  const merged: Range[] = [];
  for (const range of raw) {
    const last = merged[merged.length - 1];
    if (last !== undefined && range.start <= last.end) {
      last.end = Math.max(last.end, range.end);
    } else {
      merged.push({ ...range });
    }
  }
  return merged;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

/** HTML for the backdrop layer: buffer text with `<mark>` around errors. */
export function highlightMarkup(text: string, ranges: Range[]): string {
  const parts: string[] = [];
  let cursor = 0;
  for (const range of ranges) {
    parts.push(escapeHtml(text.slice(cursor, range.start)));
    parts.push(`<mark class="squiggle">${escapeHtml(text.slice(range.start, range.end))}</mark>`);
    cursor = range.end;
  }
  parts.push(escapeHtml(text.slice(cursor)));
  // A trailing newline in a div collapses; pad so the layers stay aligned.
  parts.push("\n");
  return parts.join("");
}
