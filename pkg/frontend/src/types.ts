/**
 * Shapes of the JSON payloads the study service returns.
 *
 * The explorer never derives numbers of its own: everything rendered —
 * radii, colours, badges, report text — is a straight mapping of the
 * fields below.
 */

export interface StudyInfo {
  id: string;
  title: string;
  created: string;
  status: string;
  people: number;
  events: number;
  versions: number;
}

export interface GraphNode {
  id: number;
  label: string;
  /** Per-person survey attributes: gender, audit_zone, audit_score, fas_band. */
  attrs: Record<string, string | number | null>;
  /** Server-computed node metrics (degrees, closeness, betweenness, ...). */
  annotations: Record<string, number>;
}

export interface GraphTie {
  src: number;
  dst: number;
  weight?: number;
}

export interface GraphPayload {
  name: string;
  directed: boolean;
  weighted: boolean;
  annotations: Record<string, number>;
  nodes: GraphNode[];
  ties: GraphTie[];
}

export interface AuditResult {
  score: number;
  zone: string;
  intervention: string;
}

export interface FasResult {
  score: number;
  band: string;
}

export interface KidscreenResult {
  scales: Record<string, number>;
  total: number;
}

export interface PersonDetail {
  person: string;
  pseudonym: string;
  age: number | null;
  gender: string | null;
  place_of_birth: string | null;
  class_ref: string | null;
  friends_outside: number | null;
  drinking_mates_outside: number | null;
  family_drinking_frequency: number | null;
  audit: AuditResult | null;
  audit_items: number[] | null;
  fas: FasResult | null;
  kidscreen: KidscreenResult | null;
  self_efficacy: number | null;
  estudes_flags: Record<string, boolean>;
  first_drink_age: number | null;
  drink_places: string | null;
  incomplete: string[];
}

export interface SocialSummary {
  person: string;
  declared_friends: number;
  named_by: number;
  popularity: string;
  mediator_role: string;
  influence: string;
}

export interface IndividualPayload {
  person: PersonDetail;
  social: SocialSummary;
  report: string;
}
