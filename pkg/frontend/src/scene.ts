import { highlightTag, nodeLabel } from "./format.js";
import type { TransitionInfo } from "./format.js";
import type { Flows, GraphEdge, GraphNode, GraphResponse } from "./types.js";

// Turns one /api/hierarchies/{id}/graph response plus the current
// selection into flat drawable primitives. Pure: no DOM, no fetches,
// no mutation of the response. Every number on a primitive is copied
// straight from the response (coordinates, sizes, flows, measures).

export const NODE_W = 92;
export const NODE_H = 30;

export interface SceneNode {
  id: string;
  x: number; // center, artifact coordinates
  y: number;
  dummy: boolean;
  label: string | null; // "92_1 [103]" on real nodes
  stable: boolean;
  selected: boolean;
  highlight: string | null; // "<n>" while an overlapping group is selected
  extOut: string | null; // top-right green glyph: members leaving
  extIn: string | null; // bottom-right green glyph: members entering
}

export interface SceneEdge {
  src: string;
  dst: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  dashed: boolean;
  flowLabel: string | null; // printed once per transition chain
  info: TransitionInfo | null;
}

export interface Scene {
  hierarchy: number;
  nodes: SceneNode[];
  edges: SceneEdge[];
}

export class SchemaError extends Error {
  constructor(path: string, expected: string) {
    super(`${path}: expected ${expected}`);
    this.name = "SchemaError";
  }
}

function isRecord(v: unknown): v is Record<string, unknown> {
  return typeof v === "object" && v !== null && !Array.isArray(v);
}

function needNumber(v: unknown, path: string): number {
  if (typeof v !== "number" || !Number.isFinite(v)) {
    throw new SchemaError(path, "finite number");
  }
  return v;
}

function needString(v: unknown, path: string): string {
  if (typeof v !== "string") throw new SchemaError(path, "string");
  return v;
}

function needBool(v: unknown, path: string): boolean {
  if (typeof v !== "boolean") throw new SchemaError(path, "boolean");
  return v;
}

function needFlows(v: unknown, path: string): Flows {
  if (!isRecord(v)) throw new SchemaError(path, "flows object");
  return {
    inflow: needNumber(v.inflow, `${path}.inflow`),
    outflow: needNumber(v.outflow, `${path}.outflow`),
    external_in: needNumber(v.external_in, `${path}.external_in`),
    external_out: needNumber(v.external_out, `${path}.external_out`),
  };
}

function needNode(v: unknown, path: string): GraphNode {
  if (!isRecord(v)) throw new SchemaError(path, "node object");
  const node: GraphNode = {
    id: needString(v.id, `${path}.id`),
    layer: needNumber(v.layer, `${path}.layer`),
    order: needNumber(v.order, `${path}.order`),
    x: needNumber(v.x, `${path}.x`),
    y: needNumber(v.y, `${path}.y`),
    dummy: needBool(v.dummy, `${path}.dummy`),
  };
  if (!node.dummy) {
    node.size = needNumber(v.size, `${path}.size`);
    node.flows = needFlows(v.flows, `${path}.flows`);
    node.stable = needBool(v.stable, `${path}.stable`);
    if (!Array.isArray(v.events)) throw new SchemaError(`${path}.events`, "array");
    node.events = v.events.map((e, i) => needString(e, `${path}.events[${i}]`));
  }
  return node;
}

function needEdge(v: unknown, path: string, ids: Set<string>): GraphEdge {
  if (!isRecord(v)) throw new SchemaError(path, "edge object");
  const style = needString(v.style, `${path}.style`);
  if (style !== "solid" && style !== "dashed") {
    throw new SchemaError(`${path}.style`, '"solid" or "dashed"');
  }
  const edge: GraphEdge = {
    src: needString(v.src, `${path}.src`),
    dst: needString(v.dst, `${path}.dst`),
    style,
    transition:
      v.transition === null ? null : needNumber(v.transition, `${path}.transition`),
  };
  if (!ids.has(edge.src)) throw new SchemaError(`${path}.src`, "a node id");
  if (!ids.has(edge.dst)) throw new SchemaError(`${path}.dst`, "a node id");
  if (edge.transition !== null) {
    edge.kind = needString(v.kind, `${path}.kind`);
    edge.mj = needNumber(v.mj, `${path}.mj`);
    edge.stability = needNumber(v.stability, `${path}.stability`);
    edge.flow = needNumber(v.flow, `${path}.flow`);
  }
  return edge;
}

/** Validate a graph response; throws SchemaError, never partial data. */
export function validateGraph(raw: unknown): GraphResponse {
  if (!isRecord(raw)) throw new SchemaError("graph", "object");
  const hierarchy = needNumber(raw.hierarchy, "graph.hierarchy");
  if (!Array.isArray(raw.nodes)) throw new SchemaError("graph.nodes", "array");
  if (!Array.isArray(raw.edges)) throw new SchemaError("graph.edges", "array");
  const nodes = raw.nodes.map((n, i) => needNode(n, `graph.nodes[${i}]`));
  const ids = new Set(nodes.map((n) => n.id));
  const edges = raw.edges.map((e, i) => needEdge(e, `graph.edges[${i}]`, ids));
  return { hierarchy, nodes, edges };
}

export interface SelectionView {
  selected: string | null;
  /** label -> common-member count, from the overlaps response */
  highlights: ReadonlyMap<string, number>;
}

export const NO_SELECTION: SelectionView = {
  selected: null,
  highlights: new Map(),
};

// boxes hang from their layout point: (x, y) is the top-left corner;
// dummies are drawn as dots at the middle of that virtual box
function outAnchor(n: GraphNode): { x: number; y: number } {
  if (n.dummy) return { x: n.x + NODE_W / 2, y: n.y + NODE_H / 2 };
  return { x: n.x + NODE_W, y: n.y + NODE_H / 2 };
}

function inAnchor(n: GraphNode): { x: number; y: number } {
  if (n.dummy) return { x: n.x + NODE_W / 2, y: n.y + NODE_H / 2 };
  return { x: n.x, y: n.y + NODE_H / 2 };
}

export function buildScene(graph: GraphResponse, sel: SelectionView): Scene {
  const pos = new Map(graph.nodes.map((n) => [n.id, n]));
  const nodes: SceneNode[] = graph.nodes.map((n) => {
    const highlightCount = sel.highlights.get(n.id);
    return {
      id: n.id,
      x: n.x,
      y: n.y,
      dummy: n.dummy,
      label: n.dummy ? null : nodeLabel(n.id, n.size as number),
      stable: n.stable ?? false,
      selected: sel.selected === n.id,
      highlight:
        highlightCount === undefined ? null : highlightTag(highlightCount),
      extOut:
        !n.dummy && (n.flows as Flows).external_out > 0
          ? String((n.flows as Flows).external_out)
          : null,
      extIn:
        !n.dummy && (n.flows as Flows).external_in > 0
          ? String((n.flows as Flows).external_in)
          : null,
    };
  });
  const edges: SceneEdge[] = graph.edges.map((e) => {
    const a = pos.get(e.src) as GraphNode;
    const b = pos.get(e.dst) as GraphNode;
    const p1 = outAnchor(a);
    const p2 = inAnchor(b);
    // a transition spanning dummies becomes several segments; print the
    // flow once, on the segment leaving the real source node
    const labelHere = e.transition !== null && !a.dummy;
    return {
      src: e.src,
      dst: e.dst,
      x1: p1.x,
      y1: p1.y,
      x2: p2.x,
      y2: p2.y,
      dashed: e.style === "dashed",
      flowLabel: labelHere ? String(e.flow as number) : null,
      info:
        e.transition === null
          ? null
          : {
              kind: e.kind as string,
              mj: e.mj as number,
              stability: e.stability as number,
              flow: e.flow as number,
            },
    };
  });
  return { hierarchy: graph.hierarchy, nodes, edges };
}
