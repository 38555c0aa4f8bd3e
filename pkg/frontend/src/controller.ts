/** Slider controllers: debounce, stale-request discard, alpha labeling.
 *
 * Network calls are last-write-wins: each slider change bumps a token and a
 * response is rendered only if its token is still the latest when it lands.
 * Timer functions are injectable so tests can drive time explicitly.
 */

export const LAMBDA_MIN = 0.7;
export const LAMBDA_MAX = 1.0;
export const LAMBDA_STEP = 0.01;
export const LAMBDA_DEFAULT = 0.8;
export const DEBOUNCE_MS = 150;

export const ALPHA_STEP = 0.05;
export const ALPHA_DEFAULT = 0.1;

export interface Timers {
  set(fn: () => void, ms: number): number;
  clear(handle: number): void;
}

const realTimers: Timers = {
  set: (fn, ms) => setTimeout(fn, ms) as unknown as number,
  clear: (h) => clearTimeout(h),
};

export class DebouncedFetcher<P, T> {
  private token = 0;
  private timer: number | null = null;

  constructor(
    private fetcher: (params: P) => Promise<T>,
    private onResult: (result: T, params: P) => void,
    private onError: (err: unknown) => void,
    private timers: Timers = realTimers,
    private debounceMs: number = DEBOUNCE_MS,
  ) {}

  /** Schedule a fetch; earlier pending or in-flight requests are discarded. */
  change(params: P): void {
    if (this.timer !== null) this.timers.clear(this.timer);
    const token = ++this.token;
    this.timer = this.timers.set(() => {
      this.timer = null;
      this.fetcher(params).then(
        (result) => {
          if (token === this.token) this.onResult(result, params);
        },
        (err) => {
          if (token === this.token) this.onError(err);
        },
      );
    }, this.debounceMs);
  }
}

/** Continuum label for the alpha slider: endpoints and midpoint are the
 * named special cases, anything else shows the numeric value. */
export function alphaLabel(alpha: number): string {
  if (Math.abs(alpha) < 1e-12) return "CCA";
  if (Math.abs(alpha - 0.5) < 1e-12) return "PLS";
  if (Math.abs(alpha - 1.0) < 1e-12) return "PCA";
  return `α = ${alpha.toFixed(2)}`;
}

/** Blue -> yellow -> red color for a period rank in [0, 1]. */
export function rankColor(rank: number): string {
  const t = Math.min(1, Math.max(0, rank));
  const mix = (a: number, b: number, u: number) => Math.round(a + (b - a) * u);
  const blue = [31, 119, 180];
  const yellow = [255, 221, 0];
  const red = [214, 39, 40];
  const [from, to, u] = t < 0.5 ? [blue, yellow, t * 2] : [yellow, red, (t - 0.5) * 2];
  return `rgb(${mix(from[0], to[0], u)},${mix(from[1], to[1], u)},${mix(from[2], to[2], u)})`;
}
