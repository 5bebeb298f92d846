import type { DecodedFrame, RangePreset } from "./types.js";

export interface StoreDeps {
  decode(z: number[]): Promise<Uint8Array>;
  onFrame(frame: DecodedFrame): void;
  onError?(message: string): void;
  debounceMs?: number;
  setTimer?(fn: () => void, ms: number): unknown;
  clearTimer?(handle: unknown): void;
  now?(): number;
}

interface StreamState {
  timer: unknown | null;
  inflight: boolean;
  pending: boolean;
  lastIssueAt: number;
}

/**
 * Explorer state machine, free of DOM concerns.
 *
 * Decode requests are rate-limited per interaction stream: a change issues
 * immediately when the stream has been quiet, otherwise it rides a trailing
 * timer fixed at debounceMs past the previous issue, so continuous slider
 * motion decodes live at no more than 1000/debounceMs requests per second.
 * At most one request is outstanding per stream; every request carries a
 * sequence number and a response is applied only when it is newer than the
 * last applied one, so a slow response can never overwrite a newer frame.
 */
export class ExplorerStore {
  z: number[] = [];
  rangePreset: RangePreset = 5;
  endpointA: number[] | null = null;
  endpointB: number[] | null = null;
  scrubT = 0;
  displayed: DecodedFrame | null = null;
  lastError: string | null = null;

  private seq = 0;
  private appliedSeq = 0;
  private streams = new Map<string, StreamState>();
  private readonly debounceMs: number;
  private readonly setTimer: (fn: () => void, ms: number) => unknown;
  private readonly clearTimer: (handle: unknown) => void;
  private readonly now: () => number;

  constructor(private readonly deps: StoreDeps) {
    this.debounceMs = deps.debounceMs ?? 100;
    this.setTimer = deps.setTimer ?? ((fn, ms) => setTimeout(fn, ms));
    this.clearTimer = deps.clearTimer ?? ((h) => clearTimeout(h as number));
    this.now = deps.now ?? (() => Date.now());
  }

  initialize(latentDim: number): void {
    this.z = new Array(latentDim).fill(0);
    this.requestDecode("init", true);
  }

  get inFlight(): boolean {
    for (const st of this.streams.values()) if (st.inflight) return true;
    return false;
  }

  setSlider(dim: number, value: number): void {
    if (dim < 0 || dim >= this.z.length) throw new Error(`slider ${dim} out of range`);
    this.z[dim] = value;
    this.requestDecode("slider");
  }

  /** Jump straight to a latent point (centroid click), decoding immediately. */
  jumpTo(z: number[]): void {
    this.z = z.slice();
    this.requestDecode("slider", true);
  }

  setRangePreset(preset: RangePreset): void {
    this.rangePreset = preset;
  }

  setMorphEndpoints(a: number[], b: number[]): void {
    this.endpointA = a.slice();
    this.endpointB = b.slice();
    this.scrubT = 0;
  }

  get canScrub(): boolean {
    return this.endpointA !== null && this.endpointB !== null;
  }

  /** Scrub position t in [0, 1]; t = 0 and t = 1 are exactly the endpoints. */
  scrub(t: number): void {
    if (!this.canScrub) throw new Error("morph endpoints are not set");
    const a = this.endpointA!;
    const b = this.endpointB!;
    this.scrubT = t;
    if (t === 0) this.z = a.slice();
    else if (t === 1) this.z = b.slice();
    else this.z = a.map((av, i) => (1 - t) * av + t * b[i]);
    this.requestDecode("morph");
  }

  requestDecode(stream: string, immediate = false): void {
    const st = this.stream(stream);
    const elapsed = this.now() - st.lastIssueAt;
    if (immediate || elapsed >= this.debounceMs) {
      if (st.timer !== null) {
        this.clearTimer(st.timer);
        st.timer = null;
      }
      this.issue(stream);
      return;
    }
    if (st.timer !== null) return; // trailing deadline already set; latest z wins
    st.timer = this.setTimer(() => {
      st.timer = null;
      this.issue(stream);
    }, this.debounceMs - elapsed);
  }

  private stream(name: string): StreamState {
    let st = this.streams.get(name);
    if (!st) {
      st = { timer: null, inflight: false, pending: false, lastIssueAt: -Infinity };
      this.streams.set(name, st);
    }
    return st;
  }

  private issue(stream: string): void {
    const st = this.stream(stream);
    st.lastIssueAt = this.now();
    if (st.inflight) {
      st.pending = true;
      return;
    }
    st.inflight = true;
    const seq = ++this.seq;
    const z = this.z.slice();
    this.deps
      .decode(z)
      .then((png) => {
        this.lastError = null;
        this.apply({ z, png, seq });
      })
      .catch((err: unknown) => {
        // Keep current state and frame; surface the failure.
        this.lastError = err instanceof Error ? err.message : String(err);
        this.deps.onError?.(this.lastError);
      })
      .then(() => {
        st.inflight = false;
        if (st.pending) {
          st.pending = false;
          this.issue(stream);
        }
      });
  }

  private apply(frame: DecodedFrame): void {
    if (frame.seq <= this.appliedSeq) return; // stale: a newer frame already rendered
    this.appliedSeq = frame.seq;
    this.displayed = frame;
    this.deps.onFrame(frame);
  }
}
