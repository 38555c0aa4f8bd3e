/** Deterministic SVG rendering of the network payload.
 *
 * The renderer builds a plain element tree (tag/attrs/children) so tests can
 * inspect structure without a DOM; toSvgString serializes it for the page.
 * Edges run left to right, blue for positive coefficients and red for
 * negative, stroke width proportional to |coefficient| with the scale capped
 * at the 95th percentile so one outlier cannot flatten the rest.
 */

import { layoutNetwork, LayoutOptions, DEFAULT_LAYOUT } from "./layout.js";
import { DecompositionEntry, EdgeEntry, NetworkPayload } from "./types.js";

export const POSITIVE_COLOR = "#1f77b4"; // blue
export const NEGATIVE_COLOR = "#d62728"; // red
export const DROPLINE_COLOR = "#9ecae1";

const MIN_STROKE = 0.75;
const MAX_STROKE = 6.0;

export interface SvgNode {
  tag: string;
  attrs: Record<string, string>;
  children: SvgNode[];
  text?: string;
}

function el(tag: string, attrs: Record<string, string>, children: SvgNode[] = [], text?: string): SvgNode {
  return { tag, attrs, children, text };
}

/** 95th percentile of |coefficient|, by linear interpolation on the sorted values. */
export function strokeCap(edges: EdgeEntry[]): number {
  if (edges.length === 0) return 1.0;
  const mags = edges.map((e) => Math.abs(e.coefficient)).sort((a, b) => a - b);
  const pos = 0.95 * (mags.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.min(lo + 1, mags.length - 1);
  const cap = mags[lo] + (pos - lo) * (mags[hi] - mags[lo]);
  return cap > 0 ? cap : 1.0;
}

export function strokeWidth(coefficient: number, cap: number): number {
  const frac = Math.min(Math.abs(coefficient), cap) / cap;
  return MIN_STROKE + (MAX_STROKE - MIN_STROKE) * frac;
}

const SUBSCRIPTS = "₀₁₂₃₄₅₆₇₈₉";

/** "F1" -> "F₁", "R12" -> "R₁₂"; "S" is unchanged. */
export function prettyLabel(id: string): string {
  return id.replace(/\d+$/, (digits) =>
    digits.split("").map((d) => SUBSCRIPTS[Number(d)]).join(""),
  );
}

function formatCoefficient(c: number): string {
  return String(Math.round(Math.abs(c) * 100) / 100);
}

/** Mouse-over text, e.g. "F₁ = 0.5·F₂ + 0.4·F₄ + ε (10% new)". */
export function tooltipText(dec: DecompositionEntry): string {
  const parts = dec.terms.map((t, i) => {
    const term = `${formatCoefficient(t.coefficient)}·${prettyLabel(t.source)}`;
    if (i === 0) return t.coefficient < 0 ? `−${term}` : term;
    return `${t.coefficient < 0 ? "−" : "+"} ${term}`;
  });
  const rhs = parts.length > 0 ? `${parts.join(" ")} + ε` : "ε";
  const pct = Math.round(dec.epsilon_share * 100);
  return `${prettyLabel(dec.event)} = ${rhs} (${pct}% new)`;
}

export function renderNetwork(
  payload: NetworkPayload,
  opts: LayoutOptions = DEFAULT_LAYOUT,
): SvgNode {
  const layout = layoutNetwork(payload, opts);
  const cap = strokeCap(payload.edges);
  const tooltips = new Map(payload.decompositions.map((d) => [d.event, tooltipText(d)]));

  const droplines = layout.nodes.map((n) =>
    el("line", {
      class: "dropline",
      x1: n.x.toFixed(2),
      y1: n.y.toFixed(2),
      x2: n.timelineX.toFixed(2),
      y2: n.timelineY.toFixed(2),
      stroke: DROPLINE_COLOR,
      "stroke-width": "0.5",
    }),
  );

  const edges = payload.edges.map((e) => {
    const a = layout.byId.get(e.from)!;
    const b = layout.byId.get(e.to)!;
    return el("line", {
      class: "edge",
      "data-from": e.from,
      "data-to": e.to,
      "data-sign": e.sign,
      x1: a.x.toFixed(2),
      y1: a.y.toFixed(2),
      x2: b.x.toFixed(2),
      y2: b.y.toFixed(2),
      stroke: e.sign === "positive" ? POSITIVE_COLOR : NEGATIVE_COLOR,
      "stroke-width": strokeWidth(e.coefficient, cap).toFixed(2),
      "marker-end": "url(#arrow)",
    });
  });

  const nodes = layout.nodes.map((n) =>
    el(
      "g",
      { class: "node", "data-id": n.id, "data-hemisphere": n.hemisphere },
      [
        el("circle", { cx: n.x.toFixed(2), cy: n.y.toFixed(2), r: "10", fill: "#eeeeee", stroke: "#444444" }),
        el(
          "text",
          {
            x: n.x.toFixed(2),
            y: (n.y + 4).toFixed(2),
            "text-anchor": "middle",
            "font-size": "11",
          },
          [],
          prettyLabel(n.id),
        ),
        el("title", {}, [], tooltips.get(n.id) ?? prettyLabel(n.id)),
      ],
    ),
  );

  const timeline = el("line", {
    class: "timeline",
    x1: "0",
    y1: layout.timelineY.toFixed(2),
    x2: String(opts.width),
    y2: layout.timelineY.toFixed(2),
    stroke: "#444444",
    "stroke-width": "1",
  });

  const defs = el("defs", {}, [
    el(
      "marker",
      {
        id: "arrow",
        viewBox: "0 0 10 10",
        refX: "14",
        refY: "5",
        markerWidth: "6",
        markerHeight: "6",
        orient: "auto-start-reverse",
      },
      [el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#555555" })],
    ),
  ]);

  return el(
    "svg",
    {
      xmlns: "http://www.w3.org/2000/svg",
      width: String(opts.width),
      height: String(opts.height),
      "data-lambda": String(payload.lambda),
    },
    [defs, timeline, ...droplines, ...edges, ...nodes],
  );
}

export function toSvgString(node: SvgNode): string {
  const attrs = Object.entries(node.attrs)
    .map(([k, v]) => ` ${k}="${v.replace(/&/g, "&amp;").replace(/"/g, "&quot;")}"`)
    .join("");
  const inner =
    (node.text !== undefined ? escapeText(node.text) : "") +
    node.children.map(toSvgString).join("");
  return `<${node.tag}${attrs}>${inner}</${node.tag}>`;
}

function escapeText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** All nodes matching a predicate, in document order. */
export function collect(node: SvgNode, pred: (n: SvgNode) => boolean): SvgNode[] {
  const out: SvgNode[] = [];
  const walk = (n: SvgNode) => {
    if (pred(n)) out.push(n);
    n.children.forEach(walk);
  };
  walk(node);
  return out;
}
