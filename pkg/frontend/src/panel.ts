/**
 * View models for the result panel: the normalized record with its
 * discard log, flattened for rendering.
 */

import type { NormalizedRecord, SchemaElement } from "./api.js";

export interface RecordRow {
  elementId: string;
  elementName: string;
  value: string;
  raw: string;
  derived: boolean;
}

export const EMPTY_RESULT_MESSAGE = "no elements found";

/** One row per normalized value, in schema element order. */
export function recordRows(
  record: NormalizedRecord,
  elements: readonly SchemaElement[],
): RecordRow[] {
  const names = new Map(elements.map((e) => [e.id, e.display_name]));
  const order = new Map(elements.map((e, i) => [e.id, i]));
  const ids = Object.keys(record.values).sort(
    (a, b) => (order.get(a) ?? order.size) - (order.get(b) ?? order.size),
  );
  const rows: RecordRow[] = [];
  for (const id of ids) {
    for (const entry of record.values[id] ?? []) {
      rows.push({
        elementId: id,
        elementName: names.get(id) ?? id,
        value: entry.value,
        raw: entry.raw,
        derived: entry.derived,
      });
    }
  }
  return rows;
}

/** True when an inference round produced nothing to show. */
export function isEmptyResult(record: NormalizedRecord, highlightCount: number): boolean {
  return highlightCount === 0 && recordTotal(record) === 0;
}

function recordTotal(record: NormalizedRecord): number {
  return Object.values(record.values).reduce((n, entries) => n + entries.length, 0);
}
