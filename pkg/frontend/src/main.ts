/** DOM wiring: file picker / URL loading, drag-pan, double-click
 * recenter, sliders, reset. */

import { c } from "./mobius.js";
import { parseLayoutFile } from "./layoutFile.js";
import {
  Style,
  ViewState,
  applyStyle,
  hasCoverage,
  newViewState,
  panStep,
  recenterFrames,
  reset,
} from "./viewState.js";
import { draw, pickNode } from "./render.js";

const canvas = document.getElementById("disk") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
let state: ViewState | null = null;
let animation: ViewState[] = [];

function redraw(): void {
  if (state) draw(ctx, state);
}

function setState(next: ViewState): void {
  state = next;
  redraw();
}

function load(doc: unknown): void {
  const layout = parseLayoutFile(doc);
  setState(newViewState(layout));
  syncSliders();
  const covRow = document.getElementById("coverage-row")!;
  covRow.style.display = hasCoverage(state!) ? "" : "none";
}

function syncSliders(): void {
  if (!state) return;
  for (const key of ["edgeOpacity", "labelSize", "zoom", "coverage"] as const) {
    const el = document.getElementById(key) as HTMLInputElement;
    el.value = String(state.style[key]);
  }
}

// --- loading ---------------------------------------------------------------

const picker = document.getElementById("file") as HTMLInputElement;
picker.addEventListener("change", async () => {
  const f = picker.files?.[0];
  if (!f) return;
  load(JSON.parse(await f.text()));
});

const urlParam = new URLSearchParams(location.search).get("layout");
if (urlParam) {
  fetch(urlParam)
    .then((r) => r.json())
    .then(load)
    .catch((e) => alert(`could not load layout: ${e}`));
}

// --- interaction -----------------------------------------------------------

let dragging = false;
let last: [number, number] | null = null;

canvas.addEventListener("mousedown", (e) => {
  dragging = true;
  last = [e.offsetX, e.offsetY];
});
window.addEventListener("mouseup", () => {
  dragging = false;
  last = null;
});
canvas.addEventListener("mousemove", (e) => {
  if (!dragging || !state || !last) return;
  if (state.layout.geometry !== "hyperbolic") return;
  const dx = e.offsetX - last[0];
  const dy = last[1] - e.offsetY; // canvas y points down
  last = [e.offsetX, e.offsetY];
  setState(panStep(state, c(dx, dy)));
});

canvas.addEventListener("dblclick", (e) => {
  if (!state || state.layout.geometry !== "hyperbolic") return;
  const node = pickNode(state, canvas, e.offsetX, e.offsetY);
  if (node < 0) return;
  animation = recenterFrames(state, node);
  const tick = (): void => {
    const next = animation.shift();
    if (!next) return;
    setState(next);
    requestAnimationFrame(tick);
  };
  requestAnimationFrame(tick);
});

for (const key of ["edgeOpacity", "labelSize", "zoom", "coverage"] as const) {
  const el = document.getElementById(key) as HTMLInputElement;
  el.addEventListener("input", () => {
    if (!state) return;
    setState(applyStyle(state, key as keyof Style, Number(el.value)));
  });
}

document.getElementById("reset")!.addEventListener("click", () => {
  if (!state) return;
  animation = [];
  setState(reset(state));
  syncSliders();
});

function resize(): void {
  canvas.width = canvas.clientWidth * devicePixelRatio;
  canvas.height = canvas.clientHeight * devicePixelRatio;
  redraw();
}
window.addEventListener("resize", resize);
resize();
