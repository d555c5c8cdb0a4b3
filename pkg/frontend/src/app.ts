/**
 * Wires the annotation view to the service: upload or open a document,
 * pick an element from the schema palette, select text to annotate,
 * run inference and read the normalized record.
 *
 * All index math lives in offsets/selection; this module only moves
 * data between the DOM and the client.
 */

import {
  AnnotationPayload,
  ApiError,
  DocelemClient,
  DocumentPayload,
  InferPayload,
  SchemaPayload,
} from "./api.js";
import { MarkedSpan, paragraphSegments } from "./highlight.js";
import { sliceByCodePoint } from "./offsets.js";
import {
  ParagraphView,
  SelectionPoint,
  findOverlapping,
  resolveSelection,
} from "./selection.js";
import { EMPTY_RESULT_MESSAGE, isEmptyResult, recordRows } from "./panel.js";

const PALETTE_COLORS = 8; // css classes t0..t7 cycle

interface AppState {
  client: DocelemClient | null;
  schema: SchemaPayload | null;
  doc: DocumentPayload | null;
  paragraphs: ParagraphView[];
  annotations: AnnotationPayload[];
  inferred: InferPayload | null;
  selectedType: string | null;
}

const state: AppState = {
  client: null,
  schema: null,
  doc: null,
  paragraphs: [],
  annotations: [],
  inferred: null,
  selectedType: null,
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showStatus(message: string, isError = false): void {
  const status = el<HTMLElement>("status");
  status.textContent = message;
  status.className = isError ? "status error" : "status";
}

function colorClass(typeId: string): string {
  const elements = state.schema?.elements ?? [];
  const index = elements.findIndex((e) => e.id === typeId);
  return `t${(index < 0 ? elements.length : index) % PALETTE_COLORS}`;
}

function displayName(typeId: string): string {
  return (
    state.schema?.elements.find((e) => e.id === typeId)?.display_name ?? typeId
  );
}

// ------------------------------------------------------------ connect ----

async function connect(): Promise<void> {
  const baseUrl = el<HTMLInputElement>("base-url").value.trim();
  const client = new DocelemClient(baseUrl);
  if (!(await client.health())) {
    showStatus(`no service answering at ${baseUrl}`, true);
    return;
  }
  const { schemas } = await client.getSchemas();
  const schema = schemas[0];
  if (!schema) {
    showStatus("service reports no schemas", true);
    return;
  }
  state.client = client;
  state.schema = schema;
  state.selectedType = schema.elements[0]?.id ?? null;
  localStorage.setItem("docelem-base-url", baseUrl);
  renderPalette();
  showStatus(`connected; schema "${schema.name}" with ${schema.elements.length} elements`);
}

function renderPalette(): void {
  const palette = el<HTMLElement>("palette");
  palette.replaceChildren();
  for (const element of state.schema?.elements ?? []) {
    const button = document.createElement("button");
    button.type = "button";
    button.className = `palette-item ${colorClass(element.id)}`;
    button.classList.toggle("selected", element.id === state.selectedType);
    button.title = element.description;
    button.textContent = `${element.display_name} (${element.id})`;
    button.addEventListener("click", () => {
      state.selectedType = element.id;
      renderPalette();
    });
    palette.append(button);
  }
}

// ----------------------------------------------------------- document ----

async function uploadDocument(): Promise<void> {
  if (!state.client) return showStatus("connect to a service first", true);
  const text = el<HTMLTextAreaElement>("upload-text").value;
  try {
    const { doc_id } = await state.client.uploadDocument(text);
    el<HTMLInputElement>("doc-id").value = doc_id;
    await openDocument();
  } catch (error) {
    reportError(error);
  }
}

async function openDocument(): Promise<void> {
  if (!state.client) return showStatus("connect to a service first", true);
  const docId = el<HTMLInputElement>("doc-id").value.trim();
  if (!docId) return showStatus("enter a document id", true);
  try {
    state.doc = await state.client.getDocument(docId);
    state.paragraphs = state.doc.paragraphs.map(([start, end], index) => ({
      index,
      start,
      end,
      text: sliceByCodePoint(state.doc!.text, start, end),
    }));
    state.inferred = null;
    await refreshAnnotations();
    showStatus(`opened ${docId}: ${state.paragraphs.length} paragraphs`);
  } catch (error) {
    reportError(error);
  }
}

async function refreshAnnotations(): Promise<void> {
  if (!state.client || !state.doc) return;
  state.annotations = await state.client.listAnnotations(state.doc.doc_id);
  renderDocument();
  renderAnnotationList();
}

function currentMarks(): MarkedSpan[] {
  const marks: MarkedSpan[] = state.annotations.map((a) => ({
    start: a.start,
    end: a.end,
    type: a.element_type_id,
    kind: "annotation",
    refId: a.id,
  }));
  for (const h of state.inferred?.highlights ?? []) {
    marks.push({ start: h.start, end: h.end, type: h.element_type_id, kind: "inferred" });
  }
  return marks;
}

function renderDocument(): void {
  const view = el<HTMLElement>("docview");
  view.replaceChildren();
  const marks = currentMarks();
  for (const paragraph of state.paragraphs) {
    const p = document.createElement("p");
    p.dataset.para = String(paragraph.index);
    for (const segment of paragraphSegments(paragraph, marks)) {
      if (segment.marks.length === 0) {
        p.append(segment.text);
        continue;
      }
      const mark = document.createElement("mark");
      const classes = segment.marks.map((m) =>
        m.kind === "inferred" ? `inferred ${colorClass(m.type)}` : colorClass(m.type),
      );
      mark.className = [...new Set(classes.join(" ").split(" "))].join(" ");
      const ref = segment.marks.find((m) => m.refId);
      if (ref?.refId) mark.dataset.ann = ref.refId;
      mark.title = segment.marks
        .map((m) => `${displayName(m.type)}${m.kind === "inferred" ? " (inferred)" : ""}`)
        .join(", ");
      mark.textContent = segment.text;
      p.append(mark);
    }
    view.append(p);
  }
}

function renderAnnotationList(): void {
  const list = el<HTMLElement>("annotations");
  list.replaceChildren();
  if (!state.doc) return;
  for (const a of state.annotations) {
    const row = document.createElement("li");
    row.dataset.ann = a.id;
    const swatch = document.createElement("span");
    swatch.className = `swatch ${colorClass(a.element_type_id)}`;
    const label = document.createElement("span");
    label.textContent = `${displayName(a.element_type_id)} [${a.start}, ${a.end}) `;
    const surface = document.createElement("b");
    surface.textContent = sliceByCodePoint(state.doc.text, a.start, a.end);
    const remove = document.createElement("button");
    remove.type = "button";
    remove.textContent = "delete";
    remove.addEventListener("click", async () => {
      try {
        await state.client!.deleteAnnotation(a.id);
        await refreshAnnotations();
      } catch (error) {
        reportError(error);
      }
    });
    row.append(swatch, label, surface, " ", remove);
    list.append(row);
  }
}

// ---------------------------------------------------------- selection ----

/** Paragraph-local UTF-16 offset of a DOM point inside a paragraph block. */
function pointFromDom(node: Node, offset: number): SelectionPoint | null {
  let element: Node | null = node;
  while (element && !(element instanceof HTMLElement && element.dataset.para)) {
    element = element.parentNode;
  }
  if (!element) return null;
  const paragraph = Number((element as HTMLElement).dataset.para);

  let utf16 = 0;
  if (node.nodeType === Node.TEXT_NODE) {
    const walker = document.createTreeWalker(element, NodeFilter.SHOW_TEXT);
    for (let t = walker.nextNode(); t; t = walker.nextNode()) {
      if (t === node) {
        utf16 += offset;
        return { paragraph, utf16 };
      }
      utf16 += (t.textContent ?? "").length;
    }
    return null;
  }
  // the point is an element boundary: count text inside preceding children
  const children = node.childNodes;
  for (let i = 0; i < Math.min(offset, children.length); i++) {
    utf16 += children[i]?.textContent?.length ?? 0;
  }
  return { paragraph, utf16 };
}

async function handleSelection(): Promise<void> {
  if (!state.client || !state.doc) return;
  const selection = window.getSelection();
  if (!selection || selection.isCollapsed || selection.rangeCount === 0) return;
  const anchor = pointFromDom(selection.anchorNode!, selection.anchorOffset);
  const focus = pointFromDom(selection.focusNode!, selection.focusOffset);
  if (!anchor || !focus) return; // the selection leaves the document view
  const outcome = resolveSelection(state.paragraphs, anchor, focus);
  if (!outcome.ok) {
    if (outcome.reason === "cross-paragraph") {
      showStatus("annotations cannot cross paragraphs; select within one", true);
      selection.removeAllRanges();
    }
    return;
  }
  if (!state.selectedType) return showStatus("pick an element type first", true);
  try {
    const created = await state.client.createAnnotation(
      state.doc.doc_id,
      state.selectedType,
      outcome.start,
      outcome.end,
    );
    selection.removeAllRanges();
    await refreshAnnotations();
    showStatus(`annotated ${displayName(created.element_type_id)}: "${outcome.surface}"`);
  } catch (error) {
    if (error instanceof ApiError && error.code === "OverlapConflict") {
      const existing = findOverlapping(
        state.annotations,
        state.selectedType,
        outcome.start,
        outcome.end,
      );
      flashConflict(existing?.id);
      const span = existing ? ` [${existing.start}, ${existing.end})` : "";
      showStatus(`${error.detail}${span}`, true);
      return;
    }
    reportError(error);
  }
}

function flashConflict(annId: string | undefined): void {
  if (!annId) return;
  for (const node of document.querySelectorAll(`[data-ann="${annId}"]`)) {
    node.classList.add("conflict");
    setTimeout(() => node.classList.remove("conflict"), 1500);
  }
}

// ---------------------------------------------------------- inference ----

async function runInference(): Promise<void> {
  if (!state.client || !state.doc) return showStatus("open a document first", true);
  const model = el<HTMLInputElement>("model").value.trim() || "gazetteer";
  try {
    state.inferred = await state.client.infer(state.doc.doc_id, model);
    renderDocument();
    renderPanel();
    showStatus(`inference with "${model}": ${state.inferred.highlights.length} highlights`);
  } catch (error) {
    reportError(error);
  }
}

function renderPanel(): void {
  const panel = el<HTMLElement>("panel");
  panel.replaceChildren();
  const inferred = state.inferred;
  if (!inferred) return;

  if (isEmptyResult(inferred.normalized, inferred.highlights.length)) {
    const empty = document.createElement("p");
    empty.className = "empty-result";
    empty.textContent = EMPTY_RESULT_MESSAGE;
    panel.append(empty);
    return;
  }

  const table = document.createElement("table");
  const head = table.createTHead().insertRow();
  for (const title of ["element", "value", "raw"]) {
    const cell = document.createElement("th");
    cell.textContent = title;
    head.append(cell);
  }
  const body = table.createTBody();
  for (const row of recordRows(inferred.normalized, state.schema?.elements ?? [])) {
    const tr = body.insertRow();
    const name = tr.insertCell();
    name.textContent = row.elementName;
    const value = tr.insertCell();
    value.textContent = row.value;
    if (row.derived) {
      const badge = document.createElement("span");
      badge.className = "derived";
      badge.textContent = "derived";
      value.append(" ", badge);
    }
    tr.insertCell().textContent = row.raw;
  }
  panel.append(table);

  if (inferred.normalized.discards.length > 0) {
    const title = document.createElement("h3");
    title.textContent = "discarded";
    const list = document.createElement("ul");
    list.className = "discards";
    for (const d of inferred.normalized.discards) {
      const item = document.createElement("li");
      item.textContent = `${displayName(d.element_type_id)} "${d.raw}": ${d.reason}`;
      list.append(item);
    }
    panel.append(title, list);
  }
}

// -------------------------------------------------------------- shell ----

function reportError(error: unknown): void {
  if (error instanceof ApiError) {
    showStatus(`${error.code}: ${error.detail}`, true);
  } else {
    showStatus(String(error), true);
  }
}

export function start(): void {
  el<HTMLInputElement>("base-url").value =
    localStorage.getItem("docelem-base-url") ?? "http://127.0.0.1:8000";
  el<HTMLButtonElement>("connect").addEventListener("click", () => void connect());
  el<HTMLButtonElement>("upload").addEventListener("click", () => void uploadDocument());
  el<HTMLButtonElement>("open").addEventListener("click", () => void openDocument());
  el<HTMLButtonElement>("infer").addEventListener("click", () => void runInference());
  el<HTMLElement>("docview").addEventListener("mouseup", () => void handleSelection());
}

start();
