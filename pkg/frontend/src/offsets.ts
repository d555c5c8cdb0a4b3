/**
 * Offset conversion between JavaScript string indexing and the indexing
 * the server speaks.
 *
 * The server counts Unicode code points; JavaScript strings count UTF-16
 * code units, so every character outside the basic plane (rare CJK
 * ideographs, emoji) occupies two units. All selection math in the app
 * converts at this boundary and nowhere else.
 */

export function isHighSurrogate(unit: number): boolean {
  return unit >= 0xd800 && unit <= 0xdbff;
}

export function isLowSurrogate(unit: number): boolean {
  return unit >= 0xdc00 && unit <= 0xdfff;
}

/** True when the index falls between the two halves of a surrogate pair. */
export function splitsSurrogatePair(text: string, utf16Index: number): boolean {
  if (utf16Index <= 0 || utf16Index >= text.length) return false;
  return (
    isHighSurrogate(text.charCodeAt(utf16Index - 1)) &&
    isLowSurrogate(text.charCodeAt(utf16Index))
  );
}

/**
 * Move an index off the middle of a surrogate pair, widening the
 * selection: "down" is for span starts, "up" for span ends. Indices
 * outside the string clamp to its ends.
 */
export function snapUtf16(text: string, utf16Index: number, mode: "down" | "up"): number {
  if (utf16Index < 0) return 0;
  if (utf16Index > text.length) return text.length;
  if (!splitsSurrogatePair(text, utf16Index)) return utf16Index;
  return mode === "down" ? utf16Index - 1 : utf16Index + 1;
}

/** Code points strictly before utf16Index. The index must not split a pair. */
export function utf16ToCodePoint(text: string, utf16Index: number): number {
  if (utf16Index < 0 || utf16Index > text.length) {
    throw new RangeError(`index ${utf16Index} outside string of length ${text.length}`);
  }
  if (splitsSurrogatePair(text, utf16Index)) {
    throw new RangeError(`index ${utf16Index} splits a surrogate pair`);
  }
  let points = 0;
  let i = 0;
  while (i < utf16Index) {
    const code = text.codePointAt(i)!;
    i += code > 0xffff ? 2 : 1;
    points += 1;
  }
  return points;
}

/** UTF-16 index of the code point at cpIndex (or the string end). */
export function codePointToUtf16(text: string, cpIndex: number): number {
  if (cpIndex < 0) throw new RangeError(`negative code point index ${cpIndex}`);
  let points = 0;
  let i = 0;
  while (points < cpIndex) {
    if (i >= text.length) {
      throw new RangeError(`code point index ${cpIndex} outside string of ${points} points`);
    }
    const code = text.codePointAt(i)!;
    i += code > 0xffff ? 2 : 1;
    points += 1;
  }
  return i;
}

export function codePointLength(text: string): number {
  return utf16ToCodePoint(text, text.length);
}

/** The text between two code-point offsets, server-style slicing. */
export function sliceByCodePoint(text: string, start: number, end: number): string {
  if (end < start) throw new RangeError(`slice end ${end} before start ${start}`);
  const from = codePointToUtf16(text, start);
  const to = codePointToUtf16(text, end);
  return text.slice(from, to);
}
