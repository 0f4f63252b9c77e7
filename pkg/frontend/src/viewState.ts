/**
 * Pure navigation state for the Poincare-disk viewer: an accumulated
 * Mobius transform over an immutable layout, plus slider values.  All
 * operations return new states; the DOM layer only renders them.
 */

import {
  C,
  IDENTITY,
  Mobius,
  apply,
  c,
  cabs,
  cscale,
  compose,
  translation,
} from "./mobius.js";
import { LayoutFile, baseDiskCoords } from "./layoutFile.js";

export interface Style {
  edgeOpacity: number; // [0, 1]
  labelSize: number; // [0, 40] px
  zoom: number; // [0.5, 1.5] of window size
  coverage: number; // [0.5, 1.5], projected layouts only
}

export const DEFAULT_STYLE: Style = {
  edgeOpacity: 1,
  labelSize: 15,
  zoom: 1,
  coverage: 1,
};

const RANGES: Record<keyof Style, [number, number]> = {
  edgeOpacity: [0, 1],
  labelSize: [0, 40],
  zoom: [0.5, 1.5],
  coverage: [0.5, 1.5],
};

/** Disk displacement per pan frame; drag speed scales it (capped). */
export const PAN_EPS = 0.01;
export const RECENTER_FRAMES = 30;
const DISPLAY_CLAMP = 0.999;

export interface ViewState {
  readonly layout: LayoutFile;
  readonly base: readonly C[];
  readonly transform: Mobius;
  readonly style: Style;
}

export function newViewState(layout: LayoutFile): ViewState {
  return {
    layout,
    base: baseDiskCoords(layout, DEFAULT_STYLE.coverage),
    transform: IDENTITY,
    style: { ...DEFAULT_STYLE },
  };
}

/** Displayed positions: transformed and clamped to radius 0.999. */
export function displayPositions(state: ViewState): C[] {
  return state.base.map((z) => {
    const w = apply(state.transform, z);
    const r = cabs(w);
    return r > DISPLAY_CLAMP ? cscale(w, DISPLAY_CLAMP / r) : w;
  });
}

/**
 * One pan frame: compose a Mobius translation of step PAN_EPS (scaled by
 * drag speed, capped at 4x) in the drag direction.  Equal and opposite
 * drags compose to the identity, so panning is exactly invertible.
 */
export function panStep(state: ViewState, dragPx: C): ViewState {
  const len = cabs(dragPx);
  if (len === 0) return state;
  const step = PAN_EPS * Math.min(len / 8, 4);
  const w = cscale(dragPx, step / len);
  // translation(-w) moves the origin to w: content follows the drag
  return { ...state, transform: compose(translation(cscale(w, -1)), state.transform) };
}

/**
 * Animated recentering: RECENTER_FRAMES states along the geodesic from
 * the node's current position to the origin, in equal hyperbolic
 * increments; the final frame puts the node at the center.
 */
export function recenterFrames(state: ViewState, node: number): ViewState[] {
  const frames: ViewState[] = [];
  let current = state;
  const start = apply(current.transform, current.base[node]);
  const total = 2 * Math.atanh(Math.min(cabs(start), 1 - 1e-16));
  for (let k = 1; k <= RECENTER_FRAMES; k++) {
    const p = apply(current.transform, current.base[node]);
    const r = cabs(p);
    if (r === 0) {
      frames.push(current);
      continue;
    }
    const dNext = total * (1 - k / RECENTER_FRAMES);
    const rNext = Math.tanh(dNext / 2);
    // translation along the ray through p taking radius r to rNext
    const t = (r - rNext) / (1 - r * rNext);
    const z0 = cscale(p, t / r);
    current = { ...current, transform: compose(translation(z0), current.transform) };
    frames.push(current);
  }
  return frames;
}

/** Set one slider, clamped to its range; coverage reprojects the base. */
export function applyStyle(
  state: ViewState,
  key: keyof Style,
  value: number,
): ViewState {
  const [lo, hi] = RANGES[key];
  const v = Math.min(hi, Math.max(lo, value));
  const style = { ...state.style, [key]: v };
  if (key === "coverage") {
    if (!state.layout.euclideanSource) return { ...state, style };
    return { ...state, style, base: baseDiskCoords(state.layout, v) };
  }
  return { ...state, style };
}

/** Whether the coverage slider applies (projected layouts only). */
export function hasCoverage(state: ViewState): boolean {
  return state.layout.euclideanSource !== null;
}

/** Identity transform, default sliders, base at default coverage. */
export function reset(state: ViewState): ViewState {
  return newViewState(state.layout);
}
