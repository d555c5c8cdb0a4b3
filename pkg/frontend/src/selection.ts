/**
 * Turns a browser text selection into a server annotation span.
 *
 * The document view renders one block per paragraph, so a selection
 * arrives as paragraph-local UTF-16 offsets. Resolution snaps the ends
 * to whole code points, rejects selections that cross paragraphs or
 * collapse to nothing, and returns document-level code-point offsets.
 */

import { snapUtf16, utf16ToCodePoint } from "./offsets.js";

export interface ParagraphView {
  /** position of this paragraph in the document */
  index: number;
  /** document code-point offset where the paragraph starts */
  start: number;
  /** document code-point offset one past its last character */
  end: number;
  text: string;
}

export interface SelectionPoint {
  paragraph: number;
  /** UTF-16 offset within that paragraph's text */
  utf16: number;
}

export type SelectionOutcome =
  | { ok: true; start: number; end: number; surface: string }
  | { ok: false; reason: "cross-paragraph" | "empty" };

export function resolveSelection(
  paragraphs: readonly ParagraphView[],
  anchor: SelectionPoint,
  focus: SelectionPoint,
): SelectionOutcome {
  let from = anchor;
  let to = focus;
  // selections dragged right-to-left put the focus before the anchor
  if (
    to.paragraph < from.paragraph ||
    (to.paragraph === from.paragraph && to.utf16 < from.utf16)
  ) {
    [from, to] = [to, from];
  }
  if (from.paragraph !== to.paragraph) {
    return { ok: false, reason: "cross-paragraph" };
  }
  const paragraph = paragraphs.find((p) => p.index === from.paragraph);
  if (!paragraph) {
    return { ok: false, reason: "empty" };
  }
  const startU = snapUtf16(paragraph.text, from.utf16, "down");
  const endU = snapUtf16(paragraph.text, to.utf16, "up");
  if (startU >= endU) {
    return { ok: false, reason: "empty" };
  }
  return {
    ok: true,
    start: paragraph.start + utf16ToCodePoint(paragraph.text, startU),
    end: paragraph.start + utf16ToCodePoint(paragraph.text, endU),
    surface: paragraph.text.slice(startU, endU),
  };
}

export interface SpanLike {
  element_type_id: string;
  start: number;
  end: number;
}

/**
 * The annotation an attempted span collides with, if any. The server
 * rejects overlaps within one element type; this finds the same span
 * client-side so the conflict can be pointed at in the view.
 */
export function findOverlapping<T extends SpanLike>(
  annotations: readonly T[],
  elementTypeId: string,
  start: number,
  end: number,
): T | undefined {
  return annotations.find(
    (a) => a.element_type_id === elementTypeId && start < a.end && a.start < end,
  );
}
