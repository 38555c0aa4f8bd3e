/** Page wiring: dataset upload, lambda-steered network view, CCC explorer.
 *
 * All analytics come from the server; this file only moves payloads into
 * the renderers and keeps the previous view on errors.
 */

import { FlowcastClient } from "./api.js";
import {
  alphaLabel,
  ALPHA_DEFAULT,
  ALPHA_STEP,
  DebouncedFetcher,
  LAMBDA_DEFAULT,
  LAMBDA_MAX,
  LAMBDA_MIN,
  LAMBDA_STEP,
  rankColor,
} from "./controller.js";
import { renderNetwork, toSvgString } from "./render.js";
import { CccPayload } from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showBanner(message: string): void {
  const banner = byId<HTMLDivElement>("banner");
  banner.textContent = message;
  banner.style.display = "block";
}

function clearBanner(): void {
  byId<HTMLDivElement>("banner").style.display = "none";
}

function renderCcc(payload: CccPayload): void {
  const host = byId<HTMLDivElement>("ccc-view");
  const w = 420;
  const h = 280;
  const fs = payload.periods.map((p) => p.f_score);
  const rs = payload.periods.map((p) => p.r_score);
  const lo = Math.min(...fs, ...rs);
  const hi = Math.max(...fs, ...rs);
  const sx = (v: number) => 20 + ((v - lo) / (hi - lo || 1)) * (w - 40);
  const sy = (v: number) => h - 20 - ((v - lo) / (hi - lo || 1)) * (h - 40);
  const dots = payload.periods
    .map(
      (p) =>
        `<circle cx="${sx(p.f_score).toFixed(1)}" cy="${sy(p.r_score).toFixed(1)}" ` +
        `r="3" fill="${rankColor(p.rank)}"><title>${p.label}</title></circle>`,
    )
    .join("");
  const warn = payload.warn_overfit
    ? '<div class="warn">short sample: projections may overfit</div>'
    : "";
  host.innerHTML =
    `${warn}<svg width="${w}" height="${h}" xmlns="http://www.w3.org/2000/svg">${dots}</svg>` +
    `<div>objective ${payload.objective.toPrecision(4)}</div>`;
}

export function boot(baseUrl: string): void {
  const client = new FlowcastClient(baseUrl);
  let datasetId: string | null = null;

  const networkFetcher = new DebouncedFetcher(
    (lambda: number) => client.network(datasetId!, { lambda }),
    (payload) => {
      clearBanner();
      byId<HTMLDivElement>("network-view").innerHTML = toSvgString(renderNetwork(payload));
      byId<HTMLSpanElement>("markov").textContent = payload.markov_score.toFixed(2);
    },
    (err) => showBanner(`network request failed: ${String(err)} (retry by moving the slider)`),
  );

  const cccFetcher = new DebouncedFetcher(
    (alpha: number) => client.ccc(datasetId!, alpha),
    (payload) => {
      clearBanner();
      renderCcc(payload);
    },
    (err) => showBanner(`ccc request failed: ${String(err)}`),
  );

  const lambdaSlider = byId<HTMLInputElement>("lambda");
  lambdaSlider.min = String(LAMBDA_MIN);
  lambdaSlider.max = String(LAMBDA_MAX);
  lambdaSlider.step = String(LAMBDA_STEP);
  lambdaSlider.value = String(LAMBDA_DEFAULT);
  lambdaSlider.addEventListener("input", () => {
    byId<HTMLSpanElement>("lambda-value").textContent = lambdaSlider.value;
    if (datasetId) networkFetcher.change(Number(lambdaSlider.value));
  });

  const alphaSlider = byId<HTMLInputElement>("alpha");
  alphaSlider.min = "0";
  alphaSlider.max = "1";
  alphaSlider.step = String(ALPHA_STEP);
  alphaSlider.value = String(ALPHA_DEFAULT);
  alphaSlider.addEventListener("input", () => {
    byId<HTMLSpanElement>("alpha-value").textContent = alphaLabel(Number(alphaSlider.value));
    if (datasetId) cccFetcher.change(Number(alphaSlider.value));
  });

  byId<HTMLInputElement>("upload").addEventListener("change", async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      datasetId = await client.uploadDataset(await file.text());
      clearBanner();
      networkFetcher.change(Number(lambdaSlider.value));
      cccFetcher.change(Number(alphaSlider.value));
    } catch (err) {
      showBanner(`upload failed: ${String(err)}`);
    }
  });
}
