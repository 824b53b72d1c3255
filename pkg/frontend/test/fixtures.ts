/** Deterministic payloads and a recording fetch fake for contract tests. */

import type { FetchLike, HttpResponse } from "../src/api.js";
import type {
  GraphPayload,
  GraphNode,
  GraphTie,
  IndividualPayload,
  StudyInfo,
} from "../src/types.js";

const ZONES = ["I", "II", "III", "IV"] as const;

export function classroom(
  n: number,
  overrides: Partial<GraphPayload> = {},
): GraphPayload {
  const nodes: GraphNode[] = [];
  for (let i = 0; i < n; i++) {
    nodes.push({
      id: i,
      label: `P${String(i).padStart(2, "0")}`,
      attrs: {
        gender: i % 2 === 0 ? "F" : "M",
        audit_zone: ZONES[i % 4]!,
        audit_score: (i * 3) % 21,
        fas_band: "medium_low",
      },
      annotations: { in_degree: (i * 7) % 5, out_degree: 2, betweenness: 0 },
    });
  }
  const ties: GraphTie[] = [];
  for (let i = 0; i < n; i++) {
    ties.push({ src: i, dst: (i + 1) % n, weight: 1 + (i % 5) });
    if (i % 3 === 0 && n > 4) {
      ties.push({ src: i, dst: (i + 2) % n, weight: 1 + ((i + 2) % 5) });
    }
  }
  return {
    name: "friendship",
    directed: true,
    weighted: true,
    annotations: { density: 0.21, component_count: 1 },
    nodes,
    ties,
    ...overrides,
  };
}

export function studyInfo(overrides: Partial<StudyInfo> = {}): StudyInfo {
  return {
    id: "a1b2c3d4e5f6",
    title: "Class 4A",
    created: "2026-03-02T09:00:00",
    status: "analyzed",
    people: 6,
    events: 1,
    versions: 1,
    ...overrides,
  };
}

export function individual(pseudonym: string): IndividualPayload {
  return {
    person: {
      person: pseudonym,
      pseudonym,
      age: 16,
      gender: "M",
      place_of_birth: "Valencia",
      class_ref: "4A",
      friends_outside: 1,
      drinking_mates_outside: 9,
      family_drinking_frequency: 2,
      audit: { score: 3, zone: "I", intervention: "Alcohol education" },
      audit_items: [0, 0, 0, 0, 0, 1, 0, 0, 0, 2],
      fas: { score: 3, band: "medium_low" },
      kidscreen: {
        scales: { physical_wellbeing: 11, psychological_wellbeing: 21 },
        total: 64,
      },
      self_efficacy: 28,
      estudes_flags: { est_tried_alcohol: true },
      first_drink_age: 14,
      drink_places: "pub/disco",
      incomplete: [],
    },
    social: {
      person: pseudonym,
      declared_friends: 1,
      named_by: 0,
      popularity: "Low",
      mediator_role: "Medium",
      influence: "High",
    },
    report: `Personal and friendship highlights\n\n${pseudonym} is a 16 year old.\n\nAlcohol consumption highlights\n\n${pseudonym} has a low level of alcohol consumption.`,
  };
}

export interface FetchFake {
  fetch: FetchLike;
  /** Every URL requested, in order. */
  calls: string[];
}

export function fakeFetch(routes: Record<string, unknown>): FetchFake {
  const calls: string[] = [];
  const fetch: FetchLike = (url: string): Promise<HttpResponse> => {
    calls.push(url);
    if (url in routes) {
      return Promise.resolve({
        ok: true,
        status: 200,
        json: () => Promise.resolve(routes[url]),
      });
    }
    return Promise.resolve({
      ok: false,
      status: 404,
      json: () => Promise.resolve({ detail: `no route ${url}` }),
    });
  };
  return { fetch, calls };
}
