import { describe, expect, it } from "vitest";

import { ParagraphView, findOverlapping, resolveSelection } from "../src/selection.js";
import { codePointLength, sliceByCodePoint } from "../src/offsets.js";

// paragraph offsets are code points, with one-character gaps for the
// separators, the way the document endpoint reports them
function paragraphs(texts: string[]): ParagraphView[] {
  const out: ParagraphView[] = [];
  let cursor = 0;
  texts.forEach((text, index) => {
    const length = codePointLength(text);
    out.push({ index, start: cursor, end: cursor + length, text });
    cursor += length + 1;
  });
  return out;
}

const PARAS = paragraphs([
  "出租方（甲方）：张伟",
  "租金总额：160000元",
  "备注𠮷🏠𪚥尾", // astral characters at units 2-3, 4-5, 6-7
]);

describe("resolveSelection", () => {
  it("maps a plain selection to document offsets", () => {
    const got = resolveSelection(
      PARAS,
      { paragraph: 1, utf16: 5 },
      { paragraph: 1, utf16: 11 },
    );
    expect(got).toEqual({ ok: true, start: 16, end: 22, surface: "160000" });
  });

  it("accepts a right-to-left drag", () => {
    const forward = resolveSelection(
      PARAS,
      { paragraph: 0, utf16: 8 },
      { paragraph: 0, utf16: 10 },
    );
    const backward = resolveSelection(
      PARAS,
      { paragraph: 0, utf16: 10 },
      { paragraph: 0, utf16: 8 },
    );
    expect(backward).toEqual(forward);
    expect(forward.ok && forward.surface).toBe("张伟");
  });

  it("rejects a cross-paragraph selection", () => {
    const got = resolveSelection(
      PARAS,
      { paragraph: 0, utf16: 8 },
      { paragraph: 1, utf16: 2 },
    );
    expect(got).toEqual({ ok: false, reason: "cross-paragraph" });
  });

  it("rejects a collapsed selection", () => {
    const got = resolveSelection(
      PARAS,
      { paragraph: 0, utf16: 4 },
      { paragraph: 0, utf16: 4 },
    );
    expect(got).toEqual({ ok: false, reason: "empty" });
  });

  it("widens ends that land inside a surrogate pair", () => {
    // both ends sit in the middle of 𠮷 (units 2..4)
    const got = resolveSelection(
      PARAS,
      { paragraph: 2, utf16: 3 },
      { paragraph: 2, utf16: 3 },
    );
    expect(got.ok).toBe(true);
    if (got.ok) {
      expect(got.surface).toBe("𠮷");
      const para = PARAS[2]!;
      expect(sliceByCodePoint(para.text, got.start - para.start, got.end - para.start)).toBe("𠮷");
    }
  });

  it("spans several astral characters without unit drift", () => {
    const got = resolveSelection(
      PARAS,
      { paragraph: 2, utf16: 2 },
      { paragraph: 2, utf16: 8 },
    );
    expect(got.ok && got.surface).toBe("𠮷🏠𪚥");
    // three astral characters are three code points, not six units
    if (got.ok) expect(got.end - got.start).toBe(3);
  });

  it("returns empty for an unknown paragraph index", () => {
    const got = resolveSelection(
      PARAS,
      { paragraph: 9, utf16: 0 },
      { paragraph: 9, utf16: 2 },
    );
    expect(got).toEqual({ ok: false, reason: "empty" });
  });
});

describe("findOverlapping", () => {
  const existing = [
    { element_type_id: "rent", start: 16, end: 22 },
    { element_type_id: "lessor", start: 8, end: 10 },
  ];

  it("finds a same-type collision", () => {
    expect(findOverlapping(existing, "rent", 20, 25)).toBe(existing[0]);
  });

  it("ignores other types and disjoint spans", () => {
    expect(findOverlapping(existing, "lessor", 16, 22)).toBeUndefined();
    expect(findOverlapping(existing, "rent", 22, 25)).toBeUndefined();
  });
});
