// Thin fetch client for /api/v1. Errors surface as ApiError carrying the
// server's machine-readable code so forms can render 400/409 details inline.

import type {
  ArtifactPayload,
  AssetsPayload,
  DecisionPayload,
  DeltaPayload,
  DeltaRef,
  NoticePayload,
  RationalePayload,
  WarningsPayload,
} from "./model.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    public readonly detail: string,
    public readonly missing: string[] = [],
  ) {
    super(`${code}: ${detail}`);
  }
}

export interface RationaleDraft {
  kind: "DesignDecision" | "CodeChange";
  subject: string;
  reason?: string;
  alternatives?: string[];
  arguments?: string[];
  justification?: string;
  explanation?: string;
  author?: string;
}

export interface DecisionDraft {
  analyst: string;
  impacts_safety: boolean;
  additional_mitigations_needed: boolean;
  assets_to_update: { kind: string; asset_id: string }[];
  notes: string;
}

export interface Api {
  delta(ref: DeltaRef): Promise<DeltaPayload>;
  warnings(ref: DeltaRef): Promise<WarningsPayload>;
  assets(): Promise<AssetsPayload>;
  pending(ref: DeltaRef): Promise<string[]>;
  artifact(version: string, id: string): Promise<ArtifactPayload>;
  rationalesFor(subject: string): Promise<RationalePayload[]>;
  submitRationale(ref: DeltaRef, draft: RationaleDraft): Promise<RationalePayload>;
  decisions(): Promise<DecisionPayload[]>;
  createDecision(ref: DeltaRef, draft: DecisionDraft): Promise<DecisionPayload>;
  closeDecision(id: string): Promise<{ decision: DecisionPayload; notice: NoticePayload }>;
}

export class HttpApi implements Api {
  constructor(private readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(`${this.base}/api/v1${path}`, init);
    } catch (err) {
      throw new ApiError(0, "NetworkError", String(err));
    }
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        body.code ?? "UnknownError",
        body.detail ?? response.statusText,
        body.missing ?? [],
      );
    }
    return body as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  private refQuery(ref: DeltaRef): string {
    const params = new URLSearchParams(ref as unknown as Record<string, string>);
    return params.toString();
  }

  delta(ref: DeltaRef): Promise<DeltaPayload> {
    return this.request(`/delta?${this.refQuery(ref)}`);
  }

  warnings(ref: DeltaRef): Promise<WarningsPayload> {
    return this.request(`/warnings?${this.refQuery(ref)}`);
  }

  assets(): Promise<AssetsPayload> {
    return this.request("/assets");
  }

  async pending(ref: DeltaRef): Promise<string[]> {
    const body = await this.request<{ pending: string[] }>(
      `/review/pending?${this.refQuery(ref)}`,
    );
    return body.pending;
  }

  artifact(version: string, id: string): Promise<ArtifactPayload> {
    const params = new URLSearchParams({ version, id });
    return this.request(`/artifact?${params}`);
  }

  async rationalesFor(subject: string): Promise<RationalePayload[]> {
    const body = await this.request<{ rationales: RationalePayload[] }>(
      `/rationales?${new URLSearchParams({ subject })}`,
    );
    return body.rationales;
  }

  submitRationale(ref: DeltaRef, draft: RationaleDraft): Promise<RationalePayload> {
    return this.post("/rationales", { ...ref, ...draft });
  }

  async decisions(): Promise<DecisionPayload[]> {
    const body = await this.request<{ decisions: DecisionPayload[] }>("/decisions");
    return body.decisions;
  }

  createDecision(ref: DeltaRef, draft: DecisionDraft): Promise<DecisionPayload> {
    return this.post("/decisions", { ...ref, ...draft });
  }

  closeDecision(id: string): Promise<{ decision: DecisionPayload; notice: NoticePayload }> {
    return this.post(`/decisions/${id}/close`, {});
  }
}
