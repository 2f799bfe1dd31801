import { describe, expect, it } from "vitest";

import {
  NO_SELECTION,
  SchemaError,
  buildScene,
  validateGraph,
} from "../src/scene.js";
import { transitionLines } from "../src/format.js";
import type { GraphResponse } from "../src/types.js";

function node(
  id: string,
  layer: number,
  x: number,
  y: number,
  size: number,
  flows?: Partial<{ inflow: number; outflow: number; external_in: number; external_out: number }>,
) {
  return {
    id,
    layer,
    order: 0,
    x,
    y,
    dummy: false,
    size,
    flows: {
      inflow: 0,
      outflow: 0,
      external_in: 0,
      external_out: 0,
      ...flows,
    },
    stable: false,
    events: [],
  };
}

function dummy(id: string, layer: number, x: number, y: number) {
  return { id, layer, order: 0, x, y, dummy: true };
}

// one transition spanning two layers through a dummy vertex
const chained: GraphResponse = {
  hierarchy: 0,
  nodes: [
    node("2_0", 0, 0, 0, 6, { outflow: 5, external_out: 1 }),
    dummy("dummy:2_0:4_0:3", 1, 160, 15),
    node("4_0", 2, 320, 0, 7, { inflow: 5, external_in: 2 }),
  ],
  edges: [
    {
      src: "2_0",
      dst: "dummy:2_0:4_0:3",
      style: "dashed",
      transition: 0,
      kind: "addition",
      mj: 0.83,
      stability: 0.07,
      flow: 5,
    },
    {
      src: "dummy:2_0:4_0:3",
      dst: "4_0",
      style: "dashed",
      transition: 0,
      kind: "addition",
      mj: 0.83,
      stability: 0.07,
      flow: 5,
    },
  ],
};

describe("validateGraph", () => {
  it("accepts a well-formed graph", () => {
    expect(validateGraph(chained).nodes).toHaveLength(3);
  });

  it.each([
    [
      "missing coordinate",
      { hierarchy: 0, nodes: [{ ...node("a", 0, 0, 0, 3), x: undefined }], edges: [] },
      /nodes\[0\]\.x/,
    ],
    [
      "real node without size",
      { hierarchy: 0, nodes: [{ ...node("a", 0, 0, 0, 3), size: undefined }], edges: [] },
      /nodes\[0\]\.size/,
    ],
    [
      "bad edge style",
      {
        hierarchy: 0,
        nodes: [node("a", 0, 0, 0, 3), node("b", 1, 160, 0, 3)],
        edges: [{ src: "a", dst: "b", style: "dotted", transition: null }],
      },
      /edges\[0\]\.style/,
    ],
    [
      "edge to unknown node",
      {
        hierarchy: 0,
        nodes: [node("a", 0, 0, 0, 3)],
        edges: [{ src: "a", dst: "ghost", style: "solid", transition: null }],
      },
      /edges\[0\]\.dst/,
    ],
    [
      "transition edge without stability",
      {
        hierarchy: 0,
        nodes: [node("a", 0, 0, 0, 3), node("b", 1, 160, 0, 3)],
        edges: [
          { src: "a", dst: "b", style: "solid", transition: 0, kind: "growth", mj: 0.7, flow: 2 },
        ],
      },
      /edges\[0\]\.stability/,
    ],
  ])("rejects %s", (_name, raw, pattern) => {
    expect(() => validateGraph(raw)).toThrowError(SchemaError);
    expect(() => validateGraph(raw)).toThrowError(pattern);
  });
});

describe("buildScene", () => {
  it("renders an empty graph as an empty scene", () => {
    const scene = buildScene({ hierarchy: 5, nodes: [], edges: [] }, NO_SELECTION);
    expect(scene.nodes).toEqual([]);
    expect(scene.edges).toEqual([]);
  });

  it("labels real nodes with id and size, dummies with nothing", () => {
    const scene = buildScene(chained, NO_SELECTION);
    expect(scene.nodes.map((n) => n.label)).toEqual(["2_0 [6]", null, "4_0 [7]"]);
    expect(scene.nodes[1]?.dummy).toBe(true);
  });

  it("keeps artifact coordinates untouched", () => {
    const scene = buildScene(chained, NO_SELECTION);
    expect(scene.nodes.map((n) => [n.x, n.y])).toEqual([
      [0, 0],
      [160, 15],
      [320, 0],
    ]);
  });

  it("shows external flows as corner glyph values, zero suppressed", () => {
    const scene = buildScene(chained, NO_SELECTION);
    const [src, , dst] = scene.nodes;
    expect(src?.extOut).toBe("1");
    expect(src?.extIn).toBeNull();
    expect(dst?.extIn).toBe("2");
    expect(dst?.extOut).toBeNull();
  });

  it("prints the flow once per transition chain", () => {
    const scene = buildScene(chained, NO_SELECTION);
    expect(scene.edges.map((e) => e.flowLabel)).toEqual(["5", null]);
  });

  it("propagates the dashed style to every segment", () => {
    const scene = buildScene(chained, NO_SELECTION);
    expect(scene.edges.every((e) => e.dashed)).toBe(true);
  });

  it("marks the selection and tags highlighted nodes with counts", () => {
    const graph: GraphResponse = {
      hierarchy: 0,
      nodes: [
        node("9_0", 0, 0, 0, 4),
        node("9_1", 0, 0, 60, 5),
        node("9_2", 0, 0, 120, 6),
      ],
      edges: [],
    };
    const scene = buildScene(graph, {
      selected: "9_0",
      highlights: new Map([["9_1", 3]]),
    });
    expect(scene.nodes.map((n) => [n.id, n.selected, n.highlight])).toEqual([
      ["9_0", true, null],
      ["9_1", false, "<3>"],
      ["9_2", false, null],
    ]);
  });

  it("exposes transition measures verbatim for the pop-up", () => {
    const scene = buildScene(chained, NO_SELECTION);
    const info = scene.edges[0]?.info;
    expect(info).toEqual({ kind: "addition", mj: 0.83, stability: 0.07, flow: 5 });
    expect(transitionLines(info!)).toEqual([
      "addition",
      "mj 0.83",
      "stability 0.07",
      "flow 5",
    ]);
  });
});
