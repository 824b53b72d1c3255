/**
 * HTML builders for the two person views: the compact detail panel shown
 * next to the graph, and the full individual page with the generated
 * report and the mediator/influencer tools.  Pure string functions; the
 * page layer owns insertion and event wiring.
 */

import type { IndividualPayload } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const show = (v: unknown): string =>
  v === null || v === undefined ? "&mdash;" : escapeHtml(String(v));

function row(label: string, value: string): string {
  return `<div class="field"><dt>${label}</dt><dd>${value}</dd></div>`;
}

/** Compact per-person card: identity, affluence, exposure, test results. */
export function detailPanelHtml(payload: IndividualPayload): string {
  const p = payload.person;
  const rows: string[] = [];
  rows.push(row("Name", show(p.pseudonym)));
  rows.push(row("Age", show(p.age)));
  rows.push(row("Place of birth", show(p.place_of_birth)));
  rows.push(row("Gender", show(p.gender)));
  rows.push(row("Class", show(p.class_ref)));
  rows.push(
    row(
      "Family affluence",
      p.fas ? `${show(p.fas.band)} (score ${show(p.fas.score)})` : "&mdash;",
    ),
  );
  rows.push(row("Friends outside classroom", show(p.friends_outside)));
  rows.push(row("Drinking mates outside classroom", show(p.drinking_mates_outside)));
  rows.push(row("Family drinking frequency", show(p.family_drinking_frequency)));
  rows.push(
    row(
      "AUDIT",
      p.audit
        ? `zone ${show(p.audit.zone)} (score ${show(p.audit.score)}) &middot; ${show(p.audit.intervention)}`
        : "&mdash;",
    ),
  );
  rows.push(
    row(
      "KIDSCREEN",
      p.kidscreen ? `total ${show(p.kidscreen.total)}` : "&mdash;",
    ),
  );
  const scales = p.kidscreen
    ? Object.entries(p.kidscreen.scales)
        .map(([k, v]) => `<li>${escapeHtml(k)}: ${show(v)}</li>`)
        .join("")
    : "";
  return (
    `<section class="detail-panel" data-person="${escapeHtml(p.pseudonym)}">` +
    `<h2>${show(p.pseudonym)}</h2>` +
    `<dl>${rows.join("")}</dl>` +
    (scales ? `<ul class="scales">${scales}</ul>` : "") +
    `<p class="panel-actions"><button data-action="open-individual" data-person="${escapeHtml(p.pseudonym)}">Full profile</button></p>` +
    `</section>`
  );
}

function badge(label: string, value: string): string {
  return (
    `<span class="badge"><span class="badge-label">${label}</span>` +
    `<span class="badge-value">${escapeHtml(value)}</span></span>`
  );
}

/**
 * Full individual page: social position badges, the narrative report
 * verbatim, suggestion buttons, and a selector to jump back to any graph
 * centred on this person.
 */
export function individualPageHtml(
  payload: IndividualPayload,
  graphNames: ReadonlyArray<string>,
): string {
  const p = payload.person;
  const s = payload.social;
  const name = escapeHtml(p.pseudonym);
  const options = graphNames
    .map((g) => `<option value="${escapeHtml(g)}">${escapeHtml(g)}</option>`)
    .join("");
  return (
    `<section class="individual-page" data-person="${name}">` +
    `<header><h2>${name}</h2>` +
    `<div class="badges">` +
    badge("popularity", s.popularity) +
    badge("mediator", s.mediator_role) +
    badge("influence", s.influence) +
    `</div></header>` +
    `<pre class="report">${escapeHtml(payload.report)}</pre>` +
    `<div class="tools">` +
    `<button data-action="find-mediators" data-person="${name}">Find mediators for ${name}</button>` +
    `<button data-action="find-influencers" data-person="${name}">Find influencers for ${name}</button>` +
    `<label>Show ${name} in graph: ` +
    `<select data-action="show-in-graph"><option value="">Select a graph</option>${options}</select>` +
    `</label>` +
    `</div>` +
    `</section>`
  );
}
