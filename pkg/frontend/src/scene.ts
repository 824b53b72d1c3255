/**
 * Pure view-model: turns a graph payload into positioned, styled shapes.
 *
 * Everything visual is decided here (and is therefore unit-testable
 * without a DOM): positions from the seeded layout, fills from the
 * gender attribute, radii from the risk zone, highlight rings from the
 * list the caller passes in.  No quantity is computed from the graph
 * structure itself — the service owns all metrics.
 */

import { forceLayout } from "./layout.js";
import { DEFAULT_PALETTE, paletteByName, type Palette } from "./palette.js";
import type { GraphPayload } from "./types.js";

export const ZONE_ORDER = ["I", "II", "III", "IV"] as const;

/** One radius per risk zone, strictly increasing. */
export const ZONE_RADII = [8, 12, 16, 20] as const;

export interface SceneNode {
  label: string;
  x: number;
  y: number;
  r: number;
  fill: string;
  zone: string | null;
  highlighted: boolean;
  selected: boolean;
}

export interface SceneEdge {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  /** Control point for reciprocal pairs, so both arrows stay visible. */
  bend: { x: number; y: number } | null;
  width: number;
}

export interface LegendEntry {
  label: string;
  color?: string;
  r?: number;
}

export interface Scene {
  name: string;
  width: number;
  height: number;
  directed: boolean;
  palette: Palette;
  nodes: SceneNode[];
  edges: SceneEdge[];
  legend: { genders: LegendEntry[]; zones: LegendEntry[] };
}

export interface SceneOptions {
  seed: number;
  palette?: string;
  highlight?: ReadonlyArray<string>;
  selected?: string | null;
  width?: number;
  height?: number;
}

export function zoneRadius(zone: unknown): number {
  const idx = ZONE_ORDER.indexOf(zone as (typeof ZONE_ORDER)[number]);
  return idx >= 0 ? ZONE_RADII[idx]! : ZONE_RADII[0]!;
}

function genderFill(gender: unknown, palette: Palette): string {
  if (gender === "F") return palette.girl;
  if (gender === "M") return palette.boy;
  return palette.unknown;
}

export function buildScene(graph: GraphPayload, opts: SceneOptions): Scene {
  const width = opts.width ?? 900;
  const height = opts.height ?? 620;
  const palette = paletteByName(opts.palette ?? DEFAULT_PALETTE);
  const highlight = new Set(opts.highlight ?? []);

  const positions = forceLayout(graph.nodes.length, graph.ties, {
    seed: opts.seed,
    width,
    height,
  });

  const byId = new Map<number, number>();
  graph.nodes.forEach((node, i) => byId.set(node.id, i));

  const nodes: SceneNode[] = graph.nodes.map((node, i) => ({
    label: node.label,
    x: positions[i]!.x,
    y: positions[i]!.y,
    r: zoneRadius(node.attrs["audit_zone"]),
    fill: genderFill(node.attrs["gender"], palette),
    zone: typeof node.attrs["audit_zone"] === "string" ? (node.attrs["audit_zone"] as string) : null,
    highlighted: highlight.has(node.label),
    selected: opts.selected != null && node.label === opts.selected,
  }));

  const reciprocal = new Set<string>();
  if (graph.directed) {
    const present = new Set(graph.ties.map((t) => `${t.src}>${t.dst}`));
    for (const t of graph.ties) {
      if (present.has(`${t.dst}>${t.src}`)) reciprocal.add(`${t.src}>${t.dst}`);
    }
  }

  const edges: SceneEdge[] = [];
  for (const tie of graph.ties) {
    const si = byId.get(tie.src);
    const di = byId.get(tie.dst);
    if (si === undefined || di === undefined) continue;
    const a = nodes[si]!;
    const b = nodes[di]!;
    const vx = b.x - a.x;
    const vy = b.y - a.y;
    const dist = Math.sqrt(vx * vx + vy * vy) || 1;
    const ux = vx / dist;
    const uy = vy / dist;
    // Stop at the circle border (plus a little nose room for the arrow).
    const gap = graph.directed ? 4 : 1;
    const x1 = a.x + ux * a.r;
    const y1 = a.y + uy * a.r;
    const x2 = b.x - ux * (b.r + gap);
    const y2 = b.y - uy * (b.r + gap);
    let bend: SceneEdge["bend"] = null;
    if (reciprocal.has(`${tie.src}>${tie.dst}`)) {
      // Perpendicular offset; the two directions bow to opposite sides.
      bend = {
        x: (x1 + x2) / 2 - uy * dist * 0.12,
        y: (y1 + y2) / 2 + ux * dist * 0.12,
      };
    }
    edges.push({
      x1,
      y1,
      x2,
      y2,
      bend,
      width: graph.weighted && tie.weight != null ? 0.8 + 0.45 * tie.weight : 1.3,
    });
  }

  return {
    name: graph.name,
    width,
    height,
    directed: graph.directed,
    palette,
    nodes,
    edges,
    legend: {
      genders: [
        { label: "girl", color: palette.girl },
        { label: "boy", color: palette.boy },
      ],
      zones: ZONE_ORDER.map((zone, i) => ({
        label: `zone ${zone}`,
        r: ZONE_RADII[i]!,
      })),
    },
  };
}
