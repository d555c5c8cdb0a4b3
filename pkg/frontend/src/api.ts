/**
 * Typed client for the document element service. Works in the browser
 * and under node, both of which ship a global fetch.
 */

export interface SchemaElement {
  id: string;
  display_name: string;
  description: string;
}

export interface SchemaPayload {
  name: string;
  elements: SchemaElement[];
  kinds: Record<string, string>;
  lease_roles?: Record<string, string> | null;
}

export interface DocumentPayload {
  doc_id: string;
  text: string;
  paragraphs: [number, number][];
  split: string;
}

export interface AnnotationPayload {
  id: string;
  doc_id: string;
  element_type_id: string;
  start: number;
  end: number;
  source: string;
}

export interface HighlightPayload {
  element_type_id: string;
  start: number;
  end: number;
  surface: string;
}

export interface NormalizedEntry {
  raw: string;
  value: string;
  derived: boolean;
}

export interface DiscardEntry {
  element_type_id: string;
  raw: string;
  reason: string;
}

export interface NormalizedRecord {
  values: Record<string, NormalizedEntry[]>;
  discards: DiscardEntry[];
}

export interface InferPayload {
  doc_id: string;
  model: string;
  highlights: HighlightPayload[];
  normalized: NormalizedRecord;
}

/** Error envelope the service answers with: {error, detail}. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    public readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

export class DocelemClient {
  private readonly base: string;

  constructor(baseUrl: string, private readonly fetchFn: typeof fetch = fetch) {
    this.base = baseUrl.replace(/\/+$/, "");
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.base}${path}`, init);
    if (!response.ok) {
      let code = `HTTP ${response.status}`;
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { error?: string; detail?: string };
        if (body.error) code = body.error;
        if (body.detail) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(response.status, code, detail);
    }
    return (await response.json()) as T;
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchFn(`${this.base}/healthz`);
      return response.ok && (await response.text()) === "ok";
    } catch {
      return false;
    }
  }

  uploadDocument(text: string): Promise<{ doc_id: string; paragraph_count: number }> {
    return this.request("/v1/documents", {
      method: "POST",
      headers: { "content-type": "text/plain; charset=utf-8" },
      body: text,
    });
  }

  getDocument(docId: string): Promise<DocumentPayload> {
    return this.request(`/v1/documents/${encodeURIComponent(docId)}`);
  }

  getSchemas(): Promise<{ schemas: SchemaPayload[] }> {
    return this.request("/v1/schemas");
  }

  listAnnotations(docId: string): Promise<AnnotationPayload[]> {
    return this.request(`/v1/documents/${encodeURIComponent(docId)}/annotations`);
  }

  createAnnotation(
    docId: string,
    elementTypeId: string,
    start: number,
    end: number,
  ): Promise<AnnotationPayload> {
    return this.request(`/v1/documents/${encodeURIComponent(docId)}/annotations`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ element_type_id: elementTypeId, start, end }),
    });
  }

  deleteAnnotation(annId: string): Promise<{ deleted: string }> {
    return this.request(`/v1/annotations/${encodeURIComponent(annId)}`, {
      method: "DELETE",
    });
  }

  infer(docId: string, model: string): Promise<InferPayload> {
    return this.request(
      `/v1/documents/${encodeURIComponent(docId)}/infer?model=${encodeURIComponent(model)}`,
      { method: "POST" },
    );
  }
}
