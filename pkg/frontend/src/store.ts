/**
 * Single state store for the explorer.
 *
 * All mutation goes through the async actions below, each of which ends
 * in exactly one `set` call, so concurrent fetches can't interleave
 * half-updated views.  The page layer subscribes and re-renders from
 * whole-state snapshots.
 */

import { ApiClient, ApiError } from "./api.js";
import { DEFAULT_PALETTE } from "./palette.js";
import type { GraphPayload, IndividualPayload, StudyInfo } from "./types.js";

export type ViewName = "graph" | "individual";

export interface AppState {
  studies: StudyInfo[];
  studyId: string | null;
  graphNames: string[];
  graphName: string | null;
  graph: GraphPayload | null;
  view: ViewName;
  /** Person shown in the side panel / individual page. */
  selected: string | null;
  detail: IndividualPayload | null;
  /** Labels to ring in the graph; exactly what the last tool returned. */
  highlight: string[];
  highlightKind: "mediators" | "influencers" | null;
  seed: number;
  paletteName: string;
  loading: boolean;
  error: string | null;
}

export type Listener = (state: AppState) => void;

const initialState: AppState = {
  studies: [],
  studyId: null,
  graphNames: [],
  graphName: null,
  graph: null,
  view: "graph",
  selected: null,
  detail: null,
  highlight: [],
  highlightKind: null,
  seed: 1,
  paletteName: DEFAULT_PALETTE,
  loading: false,
  error: null,
};

export class AppStore {
  private state: AppState = { ...initialState };
  private listeners: Listener[] = [];

  constructor(private readonly client: ApiClient) {}

  getState(): AppState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private set(patch: Partial<AppState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  private fail(err: unknown): void {
    const message =
      err instanceof ApiError
        ? err.message
        : err instanceof Error
          ? `unexpected error: ${err.message}`
          : String(err);
    this.set({ loading: false, error: message });
  }

  /** Load the study list and open the first analyzed study, if any. */
  async init(): Promise<void> {
    this.set({ loading: true, error: null });
    try {
      const { studies } = await this.client.listStudies();
      const first = studies.find((s) => s.versions > 0) ?? studies[0] ?? null;
      this.set({ studies, loading: false });
      if (first) await this.openStudy(first.id);
    } catch (err) {
      this.fail(err);
    }
  }

  async openStudy(studyId: string): Promise<void> {
    this.set({ loading: true, error: null });
    try {
      const { graphs } = await this.client.graphNames(studyId);
      const name = graphs.includes("friendship") ? "friendship" : (graphs[0] ?? null);
      this.set({
        studyId,
        graphNames: graphs,
        graphName: null,
        graph: null,
        view: "graph",
        selected: null,
        detail: null,
        highlight: [],
        highlightKind: null,
        loading: false,
      });
      if (name) await this.selectGraph(name);
    } catch (err) {
      this.fail(err);
    }
  }

  /** Switch the graph view; clears tool highlights unless asked not to. */
  async selectGraph(name: string, keepHighlight = false): Promise<void> {
    if (!this.state.studyId) return;
    this.set({ loading: true, error: null });
    try {
      const graph = await this.client.graph(this.state.studyId, name);
      this.set({
        graph,
        graphName: name,
        view: "graph",
        loading: false,
        ...(keepHighlight ? {} : { highlight: [], highlightKind: null }),
      });
    } catch (err) {
      this.fail(err);
    }
  }

  /** One click on a circle → one request for that person's detail. */
  async clickNode(pseudonym: string): Promise<void> {
    if (!this.state.studyId) return;
    this.set({ loading: true, error: null });
    try {
      const detail = await this.client.individual(this.state.studyId, pseudonym);
      this.set({ selected: pseudonym, detail, loading: false });
    } catch (err) {
      this.fail(err);
    }
  }

  /** Open the full individual page (fetches only when showing someone new). */
  async openIndividual(pseudonym: string): Promise<void> {
    if (!this.state.studyId) return;
    if (this.state.detail && this.state.detail.person.pseudonym === pseudonym) {
      this.set({ view: "individual", selected: pseudonym });
      return;
    }
    this.set({ loading: true, error: null });
    try {
      const detail = await this.client.individual(this.state.studyId, pseudonym);
      this.set({ view: "individual", selected: pseudonym, detail, loading: false });
    } catch (err) {
      this.fail(err);
    }
  }

  async findMediators(): Promise<void> {
    const { studyId, selected } = this.state;
    if (!studyId || !selected) return;
    this.set({ loading: true, error: null });
    try {
      const { mediators } = await this.client.mediators(studyId, selected);
      this.set({ highlight: [...mediators], highlightKind: "mediators", loading: false });
    } catch (err) {
      this.fail(err);
    }
  }

  async findInfluencers(): Promise<void> {
    const { studyId, selected } = this.state;
    if (!studyId || !selected) return;
    this.set({ loading: true, error: null });
    try {
      const { influencers } = await this.client.influencers(studyId, selected);
      this.set({ highlight: [...influencers], highlightKind: "influencers", loading: false });
    } catch (err) {
      this.fail(err);
    }
  }

  /** From the individual page: back to a graph, keeping rings and focus. */
  async showInGraph(name: string): Promise<void> {
    await this.selectGraph(name, true);
  }

  setSeed(seed: number): void {
    if (Number.isFinite(seed)) this.set({ seed: Math.trunc(seed) });
  }

  setPalette(name: string): void {
    this.set({ paletteName: name });
  }
}
