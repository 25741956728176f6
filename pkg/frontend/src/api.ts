import type {
  CatalogDoc,
  CriterionDoc,
  DraftEnvelopeDoc,
  KiviatSeriesDoc,
  ProjectDoc,
  ProjectSummaryDoc,
  RankingInputDoc,
  RankingResultDoc,
  ReportDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: { field: string; message: string }[] = [],
  ) {
    super(message);
  }

  get isConflict(): boolean {
    return this.status === 409;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let code = "internal";
      let message = `${response.status} ${response.statusText}`;
      let details: { field: string; message: string }[] = [];
      try {
        const parsed = (await response.json()) as {
          code?: string;
          message?: string;
          details?: { field: string; message: string }[];
        };
        code = parsed.code ?? code;
        message = parsed.message ?? message;
        details = parsed.details ?? [];
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, code, message, details);
    }
    return (await response.json()) as T;
  }

  getCatalog(): Promise<CatalogDoc> {
    return this.request("GET", "/api/catalog");
  }

  getCriteria(filter: { dimension?: string; layer?: string } = {}): Promise<CriterionDoc[]> {
    const params = new URLSearchParams();
    if (filter.dimension) params.set("dimension", filter.dimension);
    if (filter.layer) params.set("layer", filter.layer);
    const query = params.toString();
    return this.request("GET", `/api/catalog/criteria${query ? `?${query}` : ""}`);
  }

  listProjects(): Promise<ProjectSummaryDoc[]> {
    return this.request("GET", "/api/projects");
  }

  createProject(body: {
    name: string;
    platform_name: string;
    platform_description?: string;
    selected_criteria: string[];
  }): Promise<ProjectDoc> {
    return this.request("POST", "/api/projects", body);
  }

  getProject(id: string): Promise<ProjectDoc> {
    return this.request("GET", `/api/projects/${id}`);
  }

  postResponse(
    projectId: string,
    body: { assessor: string; question: string; value: number; expected_version: number },
  ): Promise<ProjectDoc> {
    return this.request("POST", `/api/projects/${projectId}/responses`, body);
  }

  postSnapshot(
    projectId: string,
    body: { expected_version: number; label?: string },
  ): Promise<{ snapshot_id: string; version: number }> {
    return this.request("POST", `/api/projects/${projectId}/snapshots`, body);
  }

  getReport(projectId: string): Promise<ReportDoc> {
    return this.request("GET", `/api/projects/${projectId}/report`);
  }

  postRanking(input: RankingInputDoc): Promise<RankingResultDoc> {
    return this.request("POST", "/api/rankings", input);
  }

  getRanking(id: string): Promise<RankingResultDoc> {
    return this.request("GET", `/api/rankings/${id}`);
  }

  getKiviat(id: string): Promise<KiviatSeriesDoc[]> {
    return this.request("GET", `/api/rankings/${id}/kiviat`);
  }

  createDraft(document: Record<string, unknown>): Promise<DraftEnvelopeDoc> {
    return this.request("POST", "/api/multi-assessments", document);
  }

  getDraft(id: string): Promise<DraftEnvelopeDoc> {
    return this.request("GET", `/api/multi-assessments/${id}`);
  }

  putDraft(
    id: string,
    document: Record<string, unknown>,
    expectedVersion: number,
  ): Promise<DraftEnvelopeDoc> {
    return this.request("PUT", `/api/multi-assessments/${id}`, {
      expected_version: expectedVersion,
      document,
    });
  }
}
