import type { GraphPayload, IndividualPayload, StudyInfo } from "./types.js";

/** Minimal structural view of a fetch response, easy to fake in tests. */
export interface HttpResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<HttpResponse>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/**
 * Thin client over the study service.  One method per endpoint, one
 * request per call; error bodies ({"detail": ...}) surface as ApiError.
 */
export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const res = await this.fetchFn(this.base + path);
    if (!res.ok) {
      let detail = `request failed with status ${res.status}`;
      try {
        const body = (await res.json()) as { detail?: unknown };
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(res.status, detail);
    }
    return (await res.json()) as T;
  }

  listStudies(): Promise<{ studies: StudyInfo[] }> {
    return this.get("/studies");
  }

  graphNames(studyId: string): Promise<{ graphs: string[] }> {
    return this.get(`/studies/${encodeURIComponent(studyId)}/graphs`);
  }

  graph(studyId: string, name: string): Promise<GraphPayload> {
    return this.get(
      `/studies/${encodeURIComponent(studyId)}/graphs/${encodeURIComponent(name)}`,
    );
  }

  individual(studyId: string, pseudonym: string): Promise<IndividualPayload> {
    return this.get(
      `/studies/${encodeURIComponent(studyId)}/individuals/${encodeURIComponent(pseudonym)}`,
    );
  }

  mediators(studyId: string, pseudonym: string): Promise<{ mediators: string[] }> {
    return this.get(
      `/studies/${encodeURIComponent(studyId)}/individuals/${encodeURIComponent(pseudonym)}/mediators`,
    );
  }

  influencers(studyId: string, pseudonym: string): Promise<{ influencers: string[] }> {
    return this.get(
      `/studies/${encodeURIComponent(studyId)}/individuals/${encodeURIComponent(pseudonym)}/influencers`,
    );
  }
}
