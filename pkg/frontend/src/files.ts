/** File-format plumbing for export and import.
 *
 * `.cnl` files carry the buffer verbatim; `.xml`/`.coml` files carry the
 * COML serialization, converted through the service in both directions.
 */

export type FileFormat = "cnl" | "coml";

export function formatForName(name: string): FileFormat {
  const lower = name.toLowerCase();
  return lower.endsWith(".xml") || lower.endsWith(".coml") ? "coml" : "cnl";
}

export function exportName(format: FileFormat): string {
  return format === "coml" ? "contract.xml" : "contract.cnl";
}

/** Trigger a browser download of `content` as `name`. */
export function downloadFile(name: string, content: string): void {
  const blob = new Blob([content], { type: "text/plain;charset=utf-8" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = name;
  anchor.click();
  URL.revokeObjectURL(url);
}
