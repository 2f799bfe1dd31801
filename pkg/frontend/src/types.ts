// Response shapes of the gevi HTTP API, field for field.
// The viewer never derives these numbers itself; everything shown on
// screen is copied from one of these records.

export interface HierarchySummary {
  id: number;
  group_count: number;
  stable_count: number;
  slot_min: number;
  slot_max: number;
}

export interface Flows {
  inflow: number;
  outflow: number;
  external_in: number;
  external_out: number;
}

export interface GraphNode {
  id: string;
  layer: number;
  order: number;
  x: number;
  y: number;
  dummy: boolean;
  // present on real nodes only, absent on dummies
  size?: number;
  flows?: Flows;
  stable?: boolean;
  events?: string[];
}

export interface GraphEdge {
  src: string;
  dst: string;
  style: "solid" | "dashed";
  transition: number | null;
  // present whenever transition is not null
  kind?: string;
  mj?: number;
  stability?: number;
  flow?: number;
}

export interface GraphResponse {
  hierarchy: number;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface Transition {
  src: string;
  dst: string;
  mj: number;
  stability: number;
  flow: number;
  kind: string;
  style: string;
}

export interface GroupDetail {
  label: string;
  slot: number;
  ordinal: number;
  size: number;
  members: string[];
  hierarchy: number;
  stable: boolean;
  events: string[];
  flows: Flows;
  incoming: Transition[];
  outgoing: Transition[];
}

export interface OverlapEntry {
  label: string;
  count: number;
  common_members: string[];
}

export interface OverlapsResponse {
  label: string;
  slot: number;
  overlaps: OverlapEntry[];
}

export interface SlotStats {
  slot: number;
  start: string;
  end: string;
  message_count: number;
  group_count: number;
  stability_mean: number | null;
  stability_std: number | null;
}

export interface SearchResult {
  label: string;
  slot: number;
  ordinal: number;
  size: number;
  hierarchy: number;
  x: number | null;
  y: number | null;
}
