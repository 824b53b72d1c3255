/**
 * Browser entry point: wires the store to the document.  Everything
 * below the event listeners is produced by the pure builders in
 * scene/svg/panel, so this file stays a thin shell.
 */

import { ApiClient } from "./api.js";
import { detailPanelHtml, escapeHtml, individualPageHtml } from "./panel.js";
import { buildScene } from "./scene.js";
import { AppStore, type AppState } from "./store.js";
import { sceneToSvg } from "./svg.js";
import { PALETTES } from "./palette.js";

const store = new AppStore(new ApiClient(""));
const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

function headerHtml(s: AppState): string {
  const studyOptions = s.studies
    .map(
      (st) =>
        `<option value="${escapeHtml(st.id)}"${st.id === s.studyId ? " selected" : ""}>` +
        `${escapeHtml(st.title)}</option>`,
    )
    .join("");
  const graphOptions = s.graphNames
    .map(
      (g) =>
        `<option value="${escapeHtml(g)}"${g === s.graphName ? " selected" : ""}>${escapeHtml(g)}</option>`,
    )
    .join("");
  const paletteOptions = Object.keys(PALETTES)
    .map(
      (p) =>
        `<option value="${escapeHtml(p)}"${p === s.paletteName ? " selected" : ""}>${escapeHtml(p)}</option>`,
    )
    .join("");
  return (
    `<header class="topbar">` +
    `<h1>peerscope explorer</h1>` +
    `<label>Study <select data-action="select-study">${studyOptions}</select></label>` +
    `<label>Graph <select data-action="select-graph">${graphOptions}</select></label>` +
    `<label>Colours <select data-action="select-palette">${paletteOptions}</select></label>` +
    `<label>Layout seed <input data-action="set-seed" type="number" value="${s.seed}" size="4"></label>` +
    `</header>`
  );
}

function graphViewHtml(s: AppState): string {
  const svg = s.graph
    ? sceneToSvg(
        buildScene(s.graph, {
          seed: s.seed,
          palette: s.paletteName,
          highlight: s.highlight,
          selected: s.selected,
        }),
      )
    : '<p class="hint">No analyzed study selected.</p>';
  const aside = s.detail
    ? detailPanelHtml(s.detail)
    : '<p class="hint">Click a circle to see that student.</p>';
  const kind = s.highlightKind
    ? `<p class="highlight-note">Showing ${s.highlightKind} for ${escapeHtml(s.selected ?? "")}.</p>`
    : "";
  return (
    `<main class="graph-view">` +
    `<aside class="side">${aside}</aside>` +
    `<section class="canvas">${kind}${svg}</section>` +
    `</main>`
  );
}

function individualViewHtml(s: AppState): string {
  if (!s.detail) return '<main class="individual-view"><p class="hint">Loading…</p></main>';
  const page = individualPageHtml(s.detail, s.graphNames);
  const svg = s.graph
    ? sceneToSvg(
        buildScene(s.graph, {
          seed: s.seed,
          palette: s.paletteName,
          highlight: s.highlight,
          selected: s.selected,
        }),
      )
    : "";
  return (
    `<main class="individual-view">` +
    `<aside class="side">${page}</aside>` +
    `<section class="canvas">${svg}</section>` +
    `</main>`
  );
}

function render(s: AppState): void {
  const body = s.view === "individual" ? individualViewHtml(s) : graphViewHtml(s);
  const error = s.error ? `<div class="error">${escapeHtml(s.error)}</div>` : "";
  root!.innerHTML = headerHtml(s) + error + body;
}

root.addEventListener("click", (event) => {
  const target = event.target as Element | null;
  if (!target) return;
  const nodeEl = target.closest<Element>("g.node[data-label]");
  if (nodeEl) {
    const label = nodeEl.getAttribute("data-label");
    if (label) {
      if (store.getState().selected === label) void store.openIndividual(label);
      else void store.clickNode(label);
    }
    return;
  }
  const button = target.closest<Element>("button[data-action]");
  if (!button) return;
  const action = button.getAttribute("data-action");
  const person = button.getAttribute("data-person");
  if (action === "open-individual" && person) void store.openIndividual(person);
  else if (action === "find-mediators") void store.findMediators();
  else if (action === "find-influencers") void store.findInfluencers();
});

root.addEventListener("change", (event) => {
  const el = event.target as HTMLSelectElement | HTMLInputElement | null;
  if (!el || !el.dataset) return;
  switch (el.dataset["action"]) {
    case "select-study":
      void store.openStudy(el.value);
      break;
    case "select-graph":
      void store.selectGraph(el.value);
      break;
    case "select-palette":
      store.setPalette(el.value);
      break;
    case "set-seed":
      store.setSeed(Number(el.value));
      break;
    case "show-in-graph":
      if (el.value) void store.showInGraph(el.value);
      break;
  }
});

store.subscribe(render);
render(store.getState());
void store.init();
