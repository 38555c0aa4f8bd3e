/** Thin HTTP client for the analysis service.
 *
 * Configuration is a single base URL; every response is schema-checked
 * before it reaches the views.
 */

import {
  CccPayload,
  NetworkPayload,
  parseCccPayload,
  parseNetworkPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

type Fetch = typeof fetch;

export interface NetworkParams {
  lambda?: number;
  gamma?: number;
  shift?: number;
  boxcox?: boolean;
}

export class FlowcastClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: Fetch = fetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body: unknown = await resp.json();
    if (!resp.ok) {
      const err = body as { code?: string; message?: string };
      throw new ApiError(resp.status, err.code ?? "unknown", err.message ?? resp.statusText);
    }
    return body;
  }

  async uploadDataset(csv: string): Promise<string> {
    const body = (await this.request("/datasets", {
      method: "POST",
      body: csv,
      headers: { "Content-Type": "text/csv" },
    })) as { id: string };
    return body.id;
  }

  async network(datasetId: string, params: NetworkParams = {}): Promise<NetworkPayload> {
    const q = new URLSearchParams();
    if (params.lambda !== undefined) q.set("lambda", String(params.lambda));
    if (params.gamma !== undefined) q.set("gamma", String(params.gamma));
    if (params.shift !== undefined) q.set("shift", String(params.shift));
    if (params.boxcox === false) q.set("boxcox", "0");
    const qs = q.toString();
    const raw = await this.request(`/datasets/${datasetId}/network${qs ? "?" + qs : ""}`);
    return parseNetworkPayload(raw);
  }

  async ccc(datasetId: string, alpha: number): Promise<CccPayload> {
    const raw = await this.request(`/datasets/${datasetId}/ccc?alpha=${alpha}`);
    return parseCccPayload(raw);
  }
}
