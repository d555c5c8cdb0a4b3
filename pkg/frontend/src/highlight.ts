/**
 * Splits a paragraph into runs of constant marking so the view can wrap
 * each run in at most one element. Spans arrive as document code-point
 * offsets and may overlap or extend past the paragraph.
 */

import { codePointLength, sliceByCodePoint } from "./offsets.js";
import type { ParagraphView } from "./selection.js";

export interface MarkedSpan {
  start: number;
  end: number;
  type: string;
  /** distinguishes stored annotations from model highlights */
  kind: "annotation" | "inferred";
  refId?: string;
}

export interface Segment {
  text: string;
  /** marks covering this run, outermost first; empty for plain text */
  marks: MarkedSpan[];
}

export function paragraphSegments(
  paragraph: ParagraphView,
  spans: readonly MarkedSpan[],
): Segment[] {
  const length = codePointLength(paragraph.text);
  const clipped = spans
    .map((span) => ({
      ...span,
      start: Math.max(span.start, paragraph.start) - paragraph.start,
      end: Math.min(span.end, paragraph.end) - paragraph.start,
    }))
    .filter((span) => span.start < span.end);

  const cuts = new Set<number>([0, length]);
  for (const span of clipped) {
    cuts.add(span.start);
    cuts.add(span.end);
  }
  const ordered = [...cuts].sort((a, b) => a - b);

  const segments: Segment[] = [];
  for (let i = 0; i + 1 < ordered.length; i++) {
    const a = ordered[i]!;
    const b = ordered[i + 1]!;
    segments.push({
      text: sliceByCodePoint(paragraph.text, a, b),
      marks: clipped.filter((span) => span.start <= a && b <= span.end),
    });
  }
  return segments;
}
