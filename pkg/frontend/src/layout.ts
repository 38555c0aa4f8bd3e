/** Pure ellipse layout for the network view.
 *
 * The x coordinate is tied to event time (earliest forecast at the left,
 * shipment at the right end); the y coordinate follows the ellipse, with
 * forecasts on the top hemisphere and responses on the bottom.  Every node
 * also gets a drop point on the horizontal time-line below the ellipse.
 * Constants are tuned for panels up to ~25 events.
 */

import { EventEntry, NetworkPayload } from "./types.js";

export interface LayoutOptions {
  width: number;
  height: number;
  margin: number;
}

export const DEFAULT_LAYOUT: LayoutOptions = { width: 900, height: 420, margin: 60 };

export interface NodePosition {
  id: string;
  x: number;
  y: number;
  hemisphere: EventEntry["hemisphere"];
  timelineX: number;
  timelineY: number;
}

export interface NetworkLayout {
  nodes: NodePosition[];
  byId: Map<string, NodePosition>;
  timelineY: number;
  centerY: number;
}

export function layoutNetwork(
  payload: NetworkPayload,
  opts: LayoutOptions = DEFAULT_LAYOUT,
): NetworkLayout {
  const { width, height, margin } = opts;
  const cx = width / 2;
  const cy = height / 2 - 20;
  const rx = width / 2 - margin;
  const ry = height / 2 - margin;
  const timelineY = height - 20;

  const maxTime = Math.max(1, ...payload.events.map((e) => e.x_time));
  // forecasts/responses stay off the ellipse tips (where the hemispheres
  // meet and the vertical lift vanishes); only the shipment sits at the tip
  const pad = 0.08;
  const nodes = payload.events.map((ev) => {
    const u =
      ev.hemisphere === "end" ? 1 : pad + ((1 - 2 * pad) * ev.x_time) / maxTime;
    const x = cx - rx + 2 * rx * u;
    const rel = (x - cx) / rx;
    const lift = ry * Math.sqrt(Math.max(0, 1 - rel * rel));
    let y: number;
    if (ev.hemisphere === "top") y = cy - lift;
    else if (ev.hemisphere === "bottom") y = cy + lift;
    else y = cy; // shipment sits on the axis at the right end
    return { id: ev.id, x, y, hemisphere: ev.hemisphere, timelineX: x, timelineY };
  });
  return {
    nodes,
    byId: new Map(nodes.map((n) => [n.id, n])),
    timelineY,
    centerY: cy,
  };
}
