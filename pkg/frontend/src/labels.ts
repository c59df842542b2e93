/** Display-only label hiding for the CNL pane.
 *
 * In the grammar a colon only ever follows a box label or the `variables`
 * preamble keyword, so stripping `name : ` occurrences removes exactly the
 * labels. The edit buffer itself is never modified.
 */

const LABEL_RE = /([A-Za-z0-9][A-Za-z0-9_]*) : /g;

export function hideLabels(text: string): string {
  return text.replace(LABEL_RE, (match, label: string) =>
    label === "variables" ? match : "");
}
