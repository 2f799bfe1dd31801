import type {
  GraphResponse,
  GroupDetail,
  HierarchySummary,
  OverlapsResponse,
  SearchResult,
  SlotStats,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }

  get notFound(): boolean {
    return this.status === 404;
  }
}

async function getJson<T>(url: string, signal?: AbortSignal): Promise<T> {
  let res: Response;
  try {
    res = await fetch(url, { signal });
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") throw err;
    // network-level failure: status 0 marks it retryable
    throw new ApiError(0, `cannot reach the server (${String(err)})`);
  }
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = (await res.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body, keep statusText
    }
    throw new ApiError(res.status, detail);
  }
  return (await res.json()) as T;
}

/** Client for the read-only gevi endpoints, all GET. */
export function createApi(base = "") {
  return {
    hierarchies: (signal?: AbortSignal) =>
      getJson<HierarchySummary[]>(`${base}/api/hierarchies`, signal),
    graph: (id: number, signal?: AbortSignal) =>
      getJson<GraphResponse>(`${base}/api/hierarchies/${id}/graph`, signal),
    group: (label: string, signal?: AbortSignal) =>
      getJson<GroupDetail>(
        `${base}/api/groups/${encodeURIComponent(label)}`,
        signal,
      ),
    overlaps: (label: string, signal?: AbortSignal) =>
      getJson<OverlapsResponse>(
        `${base}/api/groups/${encodeURIComponent(label)}/overlaps`,
        signal,
      ),
    slotStats: (slot: number, signal?: AbortSignal) =>
      getJson<SlotStats>(`${base}/api/slots/${slot}/stats`, signal),
    search: (q: string, signal?: AbortSignal) =>
      getJson<SearchResult>(
        `${base}/api/search?q=${encodeURIComponent(q)}`,
        signal,
      ),
  };
}

export type Api = ReturnType<typeof createApi>;
