import type { CentroidMap, Meta } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client over the inference service endpoints. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async meta(): Promise<Meta> {
    const res = await this.fetchFn(this.url("/meta"));
    if (!res.ok) throw new Error(`GET /meta failed: ${res.status}`);
    return (await res.json()) as Meta;
  }

  /** Centroid table, or null when the server has none configured. */
  async centroids(): Promise<CentroidMap | null> {
    const res = await this.fetchFn(this.url("/centroids"));
    if (res.status === 404) return null;
    if (!res.ok) throw new Error(`GET /centroids failed: ${res.status}`);
    return (await res.json()) as CentroidMap;
  }

  async decode(z: number[]): Promise<Uint8Array> {
    const res = await this.fetchFn(this.url("/decode"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ z }),
    });
    if (!res.ok) throw new Error(`POST /decode failed: ${res.status}`);
    return new Uint8Array(await res.arrayBuffer());
  }

  async morphStrip(a: number[], b: number[], steps: number): Promise<Uint8Array> {
    const res = await this.fetchFn(this.url("/morph"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ a, b, steps }),
    });
    if (!res.ok) throw new Error(`POST /morph failed: ${res.status}`);
    return new Uint8Array(await res.arrayBuffer());
  }
}
