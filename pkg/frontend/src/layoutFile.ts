/** Layout file (version 1) loading and conversion to disk coordinates. */

import { C, c } from "./mobius.js";

export interface LayoutGraph {
  labels: string[];
  edges: [number, number][];
}

export interface LayoutFile {
  geometry: "euclidean" | "hyperbolic" | "spherical";
  method: string;
  coords: number[][];
  graph: LayoutGraph;
  /** centered, coverage-scaled plane coordinates, when the layout was projected */
  euclideanSource: number[][] | null;
}

export class LayoutFileError extends Error {}

export function parseLayoutFile(doc: unknown): LayoutFile {
  if (typeof doc !== "object" || doc === null) {
    throw new LayoutFileError("layout file must be a JSON object");
  }
  const d = doc as Record<string, unknown>;
  if (d.version !== 1) {
    throw new LayoutFileError("missing or unsupported version field");
  }
  const geometry = d.geometry as LayoutFile["geometry"];
  if (!["euclidean", "hyperbolic", "spherical"].includes(geometry)) {
    throw new LayoutFileError(`unknown geometry ${String(d.geometry)}`);
  }
  const coords = d.coords as number[][];
  const graph = d.graph as { nodes: { id: number; label?: string }[]; edges: number[][] };
  if (!Array.isArray(coords) || !graph || !Array.isArray(graph.nodes)) {
    throw new LayoutFileError("malformed layout file");
  }
  if (coords.length !== graph.nodes.length) {
    throw new LayoutFileError("coords length does not match node count");
  }
  const arity = geometry === "spherical" ? 3 : 2;
  for (const row of coords) {
    if (!Array.isArray(row) || row.length !== arity) {
      throw new LayoutFileError(`${geometry} coords must have arity ${arity}`);
    }
  }
  const src = d.euclidean_source as number[][] | undefined;
  return {
    geometry,
    method: typeof d.method === "string" ? d.method : "",
    coords,
    graph: {
      labels: graph.nodes.map((n) => String(n.label ?? n.id)),
      edges: graph.edges.map((e) => [e[0], e[1]] as [number, number]),
    },
    euclideanSource: src ?? null,
  };
}

/** Axial (u, v) coordinates -> Poincare disk. */
export function lobachevskyToDisk(uv: number[]): C {
  const [u, v] = uv;
  const cv = Math.cosh(v);
  const x = Math.sinh(u) * cv;
  const y = Math.sinh(v);
  const z = Math.cosh(u) * cv;
  return c(x / (1 + z), y / (1 + z));
}

const RHO_BASE = 6.0;

/**
 * Re-run the radial projection on the stored plane drawing at a new
 * coverage: rescale so the farthest node lands at hyperbolic radius
 * coverage * RHO_BASE, then map each polar radius r to arccosh(r^2/2 + 1).
 */
export function reprojectAtCoverage(source: number[][], coverage: number): C[] {
  let rmax = 0;
  for (const [x, y] of source) rmax = Math.max(rmax, Math.hypot(x, y));
  const target = Math.sqrt(2 * (Math.cosh(coverage * RHO_BASE) - 1));
  const s = rmax > 0 ? target / rmax : 1;
  return source.map(([x, y]) => {
    const r = Math.hypot(x, y) * s;
    const rho = Math.acosh((r * r) / 2 + 1);
    const t = Math.tanh(rho / 2);
    const theta = Math.atan2(y, x);
    return c(t * Math.cos(theta), t * Math.sin(theta));
  });
}

/** Base (untransformed) disk positions for any geometry. */
export function baseDiskCoords(layout: LayoutFile, coverage: number): C[] {
  if (layout.geometry === "hyperbolic") {
    if (layout.euclideanSource) {
      return reprojectAtCoverage(layout.euclideanSource, coverage);
    }
    return layout.coords.map(lobachevskyToDisk);
  }
  if (layout.geometry === "euclidean") {
    let rmax = 0;
    for (const [x, y] of layout.coords) rmax = Math.max(rmax, Math.hypot(x, y));
    const s = rmax > 0 ? 0.95 / rmax : 1;
    return layout.coords.map(([x, y]) => c(x * s, y * s));
  }
  // spherical: orthographic view of the unit sphere from +z
  return layout.coords.map(([x, y]) => c(x / 2, y / 2));
}
