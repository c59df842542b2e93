/** Collapsible outline tree built from a COML document.
 *
 * The tree is derived from the service's XML output, never from the raw
 * buffer: the service is the single source of truth for structure.
 */

export type Modality = "obligation" | "permission" | "prohibition";
export type RefinementOp = "and" | "or" | "seq";

export interface OutlineNode {
  /** Box label; null for an unlabelled inline reparation body. */
  label: string | null;
  /** Whether this node is a clause, a named action bullet, or a reparation. */
  role: "contract" | "action" | "reparation";
  modality: Modality | null;
  /** Refinement operator joining the children, if any. */
  op: RefinementOp | null;
  repeats: boolean;
  /** Target label when the body is a cross reference (`see X`). */
  crossref: string | null;
  /** Target label of an `otherwise see X` reparation. */
  reparationTarget: string | null;
  /** Short human summary: the verb phrase for atomic actions. */
  detail: string;
  children: OutlineNode[];
}

const MODALITIES: readonly Modality[] = ["obligation", "permission", "prohibition"];
const OPS: readonly RefinementOp[] = ["and", "or", "seq"];

function children(element: Element, tag: string): Element[] {
  return Array.from(element.children).filter((c) => c.tagName === tag);
}

function child(element: Element, tag: string): Element | null {
  return children(element, tag)[0] ?? null;
}

function npText(np: Element): string {
  if (np.getAttribute("type") === "coord") {
    return children(np, "np").map(npText).join(" and ");
  }
  return np.getAttribute("lemma") ?? "";
}

function actionText(action: Element): string {
  const verb = action.getAttribute("verb") ?? "";
  const objectEl = child(action, "object");
  const np = objectEl === null ? null : child(objectEl, "np");
  return np === null ? verb : `${verb} ${npText(np)}`;
}

function refinementOp(element: Element): RefinementOp {
  const op = element.getAttribute("op");
  if (!OPS.includes(op as RefinementOp)) {
    throw new Error(`unknown refinement operator: ${op}`);
  }
  return op as RefinementOp;
}

function namedActionNode(element: Element): OutlineNode {
  const action = child(element, "action");
  const nested = child(element, "refinement");
  const node = emptyNode(element.getAttribute("name"), "action");
  if (action !== null) {
    node.detail = actionText(action);
  } else if (nested !== null) {
    node.op = refinementOp(nested);
    node.children = children(nested, "namedAction").map(namedActionNode);
  }
  return node;
}

function emptyNode(label: string | null, role: OutlineNode["role"]): OutlineNode {
  return {
    label,
    role,
    modality: null,
    op: null,
    repeats: false,
    crossref: null,
    reparationTarget: null,
    detail: "",
    children: [],
  };
}

function contractNode(element: Element, role: OutlineNode["role"]): OutlineNode {
  const node = emptyNode(element.getAttribute("name"), role);
  for (const body of Array.from(element.children)) {
    const tag = body.tagName;
    if (MODALITIES.includes(tag as Modality)) {
      node.modality = tag as Modality;
      const action = child(body, "action");
      const nested = child(body, "refinement");
      if (action !== null) {
        node.detail = actionText(action);
      } else if (nested !== null) {
        node.op = refinementOp(nested);
        node.children = children(nested, "namedAction").map(namedActionNode);
      }
    } else if (tag === "refinement") {
      node.op = refinementOp(body);
      node.children = children(body, "contract").map((c) => contractNode(c, "contract"));
    } else if (tag === "rep") {
      node.repeats = true;
      const inner = child(body, "contract");
      if (inner !== null) {
        node.children = [contractNode(inner, "contract")];
      }
    } else if (tag === "crossref") {
      node.crossref = body.getAttribute("target");
    } else if (tag === "reparation") {
      const ref = child(body, "crossref");
      const inline = child(body, "contract");
      if (ref !== null) {
        node.reparationTarget = ref.getAttribute("target");
      } else if (inline !== null) {
        node.children = [...node.children, contractNode(inline, "reparation")];
      }
    }
  }
  return node;
}

export type XmlParser = (xml: string) => Document;

const domParse: XmlParser = (xml) => new DOMParser().parseFromString(xml, "text/xml");

/** Build the outline forest from a COML string (one tree per clause). */
export function buildOutline(coml: string, parse: XmlParser = domParse): OutlineNode[] {
  const doc = parse(coml);
  const root = doc.documentElement;
  if (root === null || root.tagName !== "document") {
    throw new Error("not a contract document");
  }
  return children(root, "contract").map((c) => contractNode(c, "contract"));
}

const OP_BADGES: Record<RefinementOp, string> = {
  and: "all of",
  or: "one of",
  seq: "in order",
};

function badge(text: string, cls: string): HTMLElement {
  const span = document.createElement("span");
  span.className = `badge ${cls}`;
  span.textContent = text;
  return span;
}

function renderNode(node: OutlineNode, ul: HTMLElement): void {
  const li = document.createElement("li");
  li.className = `node role-${node.role}`;
  if (node.modality !== null) {
    li.classList.add(`modality-${node.modality}`);
  }
  if (node.label !== null) {
    li.dataset.label = node.label;
  }

  const row = document.createElement("div");
  row.className = "row";
  if (node.children.length > 0) {
    const twist = document.createElement("button");
    twist.type = "button";
    twist.className = "twist";
    twist.textContent = "▾";
    twist.addEventListener("click", () => {
      const collapsed = li.classList.toggle("collapsed");
      twist.textContent = collapsed ? "▸" : "▾";
    });
    row.appendChild(twist);
  }
  if (node.label !== null) {
    const label = document.createElement("span");
    label.className = "node-label";
    label.textContent = node.label;
    row.appendChild(label);
  }
  if (node.role === "reparation") {
    row.appendChild(badge("reparation", "rep-inline"));
  }
  if (node.modality !== null) {
    row.appendChild(badge(node.modality[0]!.toUpperCase(), `mod mod-${node.modality}`));
  }
  if (node.op !== null) {
    row.appendChild(badge(OP_BADGES[node.op], "op"));
  }
  if (node.repeats) {
    row.appendChild(badge("repeat", "repeat"));
  }
  if (node.detail !== "") {
    const detail = document.createElement("span");
    detail.className = "detail";
    detail.textContent = node.detail;
    row.appendChild(detail);
  }
  if (node.crossref !== null) {
    const link = badge(`see ${node.crossref}`, "crossref");
    link.addEventListener("click", () => flashTarget(li, node.crossref!));
    row.appendChild(link);
  }
  if (node.reparationTarget !== null) {
    const edge = badge(`↳ ${node.reparationTarget}`, "rep-edge");
    edge.title = `reparation: see ${node.reparationTarget}`;
    edge.addEventListener("click", () => flashTarget(li, node.reparationTarget!));
    row.appendChild(edge);
  }
  li.appendChild(row);

  if (node.children.length > 0) {
    const kids = document.createElement("ul");
    kids.className = "children";
    for (const childNode of node.children) {
      renderNode(childNode, kids);
    }
    li.appendChild(kids);
  }
  ul.appendChild(li);
}

function flashTarget(origin: HTMLElement, label: string): void {
  const tree = origin.closest(".outline");
  const target = tree?.querySelector<HTMLElement>(`[data-label="${label}"]`);
  if (!target) {
    return;
  }
  target.scrollIntoView({ block: "nearest" });
  target.classList.add("flash");
  setTimeout(() => target.classList.remove("flash"), 600);
}

/** Replace `container`'s content with the rendered outline forest. */
export function renderOutline(container: HTMLElement, nodes: OutlineNode[]): void {
  container.textContent = "";
  const ul = document.createElement("ul");
  ul.className = "outline";
  for (const node of nodes) {
    renderNode(node, ul);
  }
  container.appendChild(ul);
}
