/** Client-side mirrors of the server JSON payloads.
 *
 * The UI never computes analytics; these types plus the parse functions are
 * the whole contract with the service.  Parsing throws SchemaError on any
 * mismatch so a bad payload produces an error banner, never a partial render.
 */

export type EventKind = "F" | "R" | "S";
export type Hemisphere = "top" | "bottom" | "end";

export interface EventEntry {
  id: string;
  kind: EventKind;
  lag: number;
  x_time: number;
  hemisphere: Hemisphere;
}

export interface EdgeEntry {
  from: string;
  to: string;
  coefficient: number;
  partial_correlation: number;
  sign: "positive" | "negative";
}

export interface TermEntry {
  source: string;
  coefficient: number;
}

export interface DecompositionEntry {
  event: string;
  equation: string;
  terms: TermEntry[];
  epsilon_share: number;
  abs_epsilon_share: number;
  r_squared: number;
  flagged: boolean;
}

export interface NetworkPayload {
  events: EventEntry[];
  edges: EdgeEntry[];
  decompositions: DecompositionEntry[];
  markov_score: number;
  markov_score_note: string;
  lambda: number;
  gamma: number | null;
}

export interface CccPeriod {
  label: string;
  f_score: number;
  r_score: number;
  rank: number;
}

export interface CccPayload {
  alpha: number;
  w: number[];
  v: number[];
  f_star: number[];
  r_star: number[];
  objective: number;
  warn_overfit: boolean;
  transform: string;
  periods: CccPeriod[];
}

export class SchemaError extends Error {}

function fail(path: string, expected: string): never {
  throw new SchemaError(`payload field ${path}: expected ${expected}`);
}

function num(obj: Record<string, unknown>, key: string, path: string): number {
  const v = obj[key];
  if (typeof v !== "number" || !Number.isFinite(v)) fail(`${path}.${key}`, "finite number");
  return v;
}

function str(obj: Record<string, unknown>, key: string, path: string): string {
  const v = obj[key];
  if (typeof v !== "string") fail(`${path}.${key}`, "string");
  return v;
}

function rec(value: unknown, path: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    fail(path, "object");
  }
  return value as Record<string, unknown>;
}

function arr(obj: Record<string, unknown>, key: string, path: string): unknown[] {
  const v = obj[key];
  if (!Array.isArray(v)) fail(`${path}.${key}`, "array");
  return v;
}

function numArr(obj: Record<string, unknown>, key: string, path: string): number[] {
  return arr(obj, key, path).map((v, i) => {
    if (typeof v !== "number" || !Number.isFinite(v)) fail(`${path}.${key}[${i}]`, "number");
    return v;
  });
}

export function parseNetworkPayload(raw: unknown): NetworkPayload {
  const o = rec(raw, "$");
  const events = arr(o, "events", "$").map((e, i) => {
    const ev = rec(e, `$.events[${i}]`);
    const kind = str(ev, "kind", `$.events[${i}]`);
    const hemisphere = str(ev, "hemisphere", `$.events[${i}]`);
    if (kind !== "F" && kind !== "R" && kind !== "S") fail(`$.events[${i}].kind`, "F|R|S");
    if (hemisphere !== "top" && hemisphere !== "bottom" && hemisphere !== "end") {
      fail(`$.events[${i}].hemisphere`, "top|bottom|end");
    }
    return {
      id: str(ev, "id", `$.events[${i}]`),
      kind: kind as EventKind,
      lag: num(ev, "lag", `$.events[${i}]`),
      x_time: num(ev, "x_time", `$.events[${i}]`),
      hemisphere: hemisphere as Hemisphere,
    };
  });
  const ids = new Set(events.map((e) => e.id));
  const edges = arr(o, "edges", "$").map((e, i) => {
    const ed = rec(e, `$.edges[${i}]`);
    const sign = str(ed, "sign", `$.edges[${i}]`);
    if (sign !== "positive" && sign !== "negative") fail(`$.edges[${i}].sign`, "positive|negative");
    const from = str(ed, "from", `$.edges[${i}]`);
    const to = str(ed, "to", `$.edges[${i}]`);
    if (!ids.has(from) || !ids.has(to)) fail(`$.edges[${i}]`, "endpoints among events");
    return {
      from,
      to,
      coefficient: num(ed, "coefficient", `$.edges[${i}]`),
      partial_correlation: num(ed, "partial_correlation", `$.edges[${i}]`),
      sign: sign as "positive" | "negative",
    };
  });
  const decompositions = arr(o, "decompositions", "$").map((d, i) => {
    const de = rec(d, `$.decompositions[${i}]`);
    return {
      event: str(de, "event", `$.decompositions[${i}]`),
      equation: str(de, "equation", `$.decompositions[${i}]`),
      terms: arr(de, "terms", `$.decompositions[${i}]`).map((t, j) => {
        const te = rec(t, `$.decompositions[${i}].terms[${j}]`);
        return {
          source: str(te, "source", `$.decompositions[${i}].terms[${j}]`),
          coefficient: num(te, "coefficient", `$.decompositions[${i}].terms[${j}]`),
        };
      }),
      epsilon_share: num(de, "epsilon_share", `$.decompositions[${i}]`),
      abs_epsilon_share: num(de, "abs_epsilon_share", `$.decompositions[${i}]`),
      r_squared: num(de, "r_squared", `$.decompositions[${i}]`),
      flagged: Boolean(de["flagged"]),
    };
  });
  return {
    events,
    edges,
    decompositions,
    markov_score: num(o, "markov_score", "$"),
    markov_score_note: str(o, "markov_score_note", "$"),
    lambda: num(o, "lambda", "$"),
    gamma: o["gamma"] === null ? null : num(o, "gamma", "$"),
  };
}

export function parseCccPayload(raw: unknown): CccPayload {
  const o = rec(raw, "$");
  return {
    alpha: num(o, "alpha", "$"),
    w: numArr(o, "w", "$"),
    v: numArr(o, "v", "$"),
    f_star: numArr(o, "f_star", "$"),
    r_star: numArr(o, "r_star", "$"),
    objective: num(o, "objective", "$"),
    warn_overfit: Boolean(o["warn_overfit"]),
    transform: str(o, "transform", "$"),
    periods: arr(o, "periods", "$").map((p, i) => {
      const pe = rec(p, `$.periods[${i}]`);
      return {
        label: str(pe, "label", `$.periods[${i}]`),
        f_score: num(pe, "f_score", `$.periods[${i}]`),
        r_score: num(pe, "r_score", `$.periods[${i}]`),
        rank: num(pe, "rank", `$.periods[${i}]`),
      };
    }),
  };
}
