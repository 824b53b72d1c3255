/**
 * Scene → SVG markup.  String assembly rather than DOM construction so
 * the renderer runs identically in tests and in the page, and so output
 * for a fixed seed is stable enough to diff.
 */

import type { Scene, SceneEdge, SceneNode } from "./scene.js";

const fmt = (v: number): string => {
  const s = v.toFixed(1);
  return s === "-0.0" ? "0.0" : s;
};

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function edgeMarkup(e: SceneEdge, scene: Scene): string {
  const marker = scene.directed ? ' marker-end="url(#arrow)"' : "";
  const stroke = ` stroke="${scene.palette.edge}" stroke-width="${fmt(e.width)}"`;
  if (e.bend) {
    const d = `M ${fmt(e.x1)} ${fmt(e.y1)} Q ${fmt(e.bend.x)} ${fmt(e.bend.y)} ${fmt(e.x2)} ${fmt(e.y2)}`;
    return `<path class="tie" d="${d}" fill="none"${stroke}${marker}/>`;
  }
  return `<line class="tie" x1="${fmt(e.x1)}" y1="${fmt(e.y1)}" x2="${fmt(e.x2)}" y2="${fmt(e.y2)}"${stroke}${marker}/>`;
}

function nodeMarkup(n: SceneNode, scene: Scene): string {
  const ring = n.highlighted
    ? ` stroke="${scene.palette.highlight}" stroke-width="3.5"`
    : n.selected
      ? ` stroke="${scene.palette.selected}" stroke-width="3"`
      : ' stroke="#ffffff" stroke-width="1.5"';
  const classes = ["node"];
  if (n.highlighted) classes.push("highlighted");
  if (n.selected) classes.push("selected");
  const label = escapeXml(n.label);
  return (
    `<g class="${classes.join(" ")}" data-label="${label}">` +
    `<circle cx="${fmt(n.x)}" cy="${fmt(n.y)}" r="${fmt(n.r)}" fill="${n.fill}"${ring}/>` +
    `<text x="${fmt(n.x)}" y="${fmt(n.y + n.r + 11)}" text-anchor="middle" font-size="10" fill="${scene.palette.label}">${label}</text>` +
    `</g>`
  );
}

function legendMarkup(scene: Scene): string {
  const parts: string[] = [`<g class="legend" transform="translate(${fmt(scene.width - 128)},16)">`];
  parts.push(
    `<rect x="-10" y="-10" width="122" height="${fmt(42 + scene.legend.zones.length * 24)}" rx="6" fill="#ffffff" opacity="0.85" stroke="#dddddd"/>`,
  );
  let y = 4;
  for (const g of scene.legend.genders) {
    parts.push(`<circle cx="8" cy="${fmt(y)}" r="6" fill="${g.color}"/>`);
    parts.push(
      `<text x="22" y="${fmt(y + 4)}" font-size="11" fill="${scene.palette.label}">${escapeXml(g.label)}</text>`,
    );
    y += 18;
  }
  y += 6;
  for (const z of scene.legend.zones) {
    parts.push(`<circle cx="8" cy="${fmt(y)}" r="${fmt((z.r ?? 6) / 2.2)}" fill="none" stroke="#777777"/>`);
    parts.push(
      `<text x="22" y="${fmt(y + 4)}" font-size="11" fill="${scene.palette.label}">${escapeXml(z.label)}</text>`,
    );
    y += 24;
  }
  parts.push("</g>");
  return parts.join("");
}

export function sceneToSvg(scene: Scene): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${scene.width} ${scene.height}" ` +
      `width="100%" role="img" aria-label="${escapeXml(scene.name)} network">`,
  );
  if (scene.directed) {
    parts.push(
      '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ' +
        'markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
        `<path d="M 0 0 L 10 5 L 0 10 z" fill="${scene.palette.edge}"/></marker></defs>`,
    );
  }
  parts.push('<g class="ties">');
  for (const e of scene.edges) parts.push(edgeMarkup(e, scene));
  parts.push("</g>");
  parts.push('<g class="nodes">');
  for (const n of scene.nodes) parts.push(nodeMarkup(n, scene));
  parts.push("</g>");
  parts.push(legendMarkup(scene));
  parts.push("</svg>");
  return parts.join("");
}
