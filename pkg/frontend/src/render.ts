/** Canvas rendering of a view state: disk, geodesic edges, labels. */

import { C, cabs, geodesic } from "./mobius.js";
import { ViewState, displayPositions } from "./viewState.js";

export function draw(ctx: CanvasRenderingContext2D, state: ViewState): void {
  const w = ctx.canvas.width;
  const h = ctx.canvas.height;
  const radius = (Math.min(w, h) / 2) * state.style.zoom * 0.92;
  const cx = w / 2;
  const cy = h / 2;
  const toScreen = (z: C): [number, number] => [
    cx + z.re * radius,
    cy - z.im * radius,
  ];

  ctx.clearRect(0, 0, w, h);
  ctx.beginPath();
  ctx.arc(cx, cy, radius, 0, 2 * Math.PI);
  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  ctx.stroke();

  const pos = displayPositions(state);
  const hyperbolic = state.layout.geometry === "hyperbolic";

  ctx.strokeStyle = "#3366aa";
  ctx.globalAlpha = state.style.edgeOpacity;
  ctx.lineWidth = 1.2;
  for (const [i, j] of state.layout.graph.edges) {
    const p = pos[i];
    const q = pos[j];
    ctx.beginPath();
    if (!hyperbolic) {
      ctx.moveTo(...toScreen(p));
      ctx.lineTo(...toScreen(q));
    } else {
      const arc = geodesic(p, q);
      if (arc.kind === "segment" || arc.radius! > 50) {
        ctx.moveTo(...toScreen(p));
        ctx.lineTo(...toScreen(q));
      } else {
        const [ax, ay] = toScreen(arc.center!);
        const a0 = Math.atan2(ay - toScreen(p)[1], toScreen(p)[0] - ax);
        const a1 = Math.atan2(ay - toScreen(q)[1], toScreen(q)[0] - ax);
        ctx.arc(ax, ay, arc.radius! * radius, -a0, -a1, arc.sweep === 0);
      }
    }
    ctx.stroke();
  }
  ctx.globalAlpha = 1;

  ctx.fillStyle = "#222";
  for (const z of pos) {
    const [x, y] = toScreen(z);
    ctx.beginPath();
    ctx.arc(x, y, 2.5, 0, 2 * Math.PI);
    ctx.fill();
  }

  if (state.style.labelSize > 0) {
    ctx.fillStyle = "#444";
    for (let i = 0; i < pos.length; i++) {
      // labels shrink toward the rim, vanishing at the boundary
      const size = state.style.labelSize * (1 - cabs(pos[i]) ** 2) ** 0.5;
      if (size < 3) continue;
      ctx.font = `${size.toFixed(1)}px sans-serif`;
      const [x, y] = toScreen(pos[i]);
      ctx.fillText(state.layout.graph.labels[i], x + 4, y - 4);
    }
  }
}

/** Nearest node to a screen point, or -1 when none is within 12 px. */
export function pickNode(
  state: ViewState,
  canvas: HTMLCanvasElement,
  px: number,
  py: number,
): number {
  const w = canvas.width;
  const h = canvas.height;
  const radius = (Math.min(w, h) / 2) * state.style.zoom * 0.92;
  const pos = displayPositions(state);
  let best = -1;
  let bestD = 12;
  for (let i = 0; i < pos.length; i++) {
    const x = w / 2 + pos[i].re * radius;
    const y = h / 2 - pos[i].im * radius;
    const d = Math.hypot(px - x, py - y);
    if (d < bestD) {
      bestD = d;
      best = i;
    }
  }
  return best;
}
