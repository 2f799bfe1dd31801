import { readFileSync } from "node:fs";

import { describe, expect, it } from "vitest";

import { groupLines, measure, transitionLines } from "../src/format.js";
import { NODE_H, NODE_W, NO_SELECTION, buildScene, validateGraph } from "../src/scene.js";
import type { Scene } from "../src/scene.js";
import {
  applyOverlaps,
  beginSelection,
  centerOn,
  initialState,
  setHierarchy,
  setNotice,
  worldToScreen,
  zoomAt,
} from "../src/state.js";
import type { ViewState } from "../src/state.js";
import type {
  GraphResponse,
  GroupDetail,
  HierarchySummary,
  OverlapsResponse,
  SearchResult,
  SlotStats,
} from "../src/types.js";

// Snapshots of live server responses for a corpus with a known overlap
// pattern; regenerate with scripts/make_fixtures.py.
function fixture<T>(name: string): T {
  return JSON.parse(
    readFileSync(new URL(`./fixtures/${name}.json`, import.meta.url), "utf8"),
  ) as T;
}

const hierarchies = fixture<HierarchySummary[]>("hierarchies");
const rawGraphs = fixture<Record<string, unknown>>("graphs");
const groups = fixture<Record<string, GroupDetail>>("groups");
const overlaps = fixture<Record<string, OverlapsResponse>>("overlaps");
const slots = fixture<Record<string, SlotStats>>("slots");
const searches = fixture<Record<string, SearchResult>>("searches");
const meta = fixture<{
  trailing_space_status: number;
  trailing_space_label: string;
  search_miss_status: number;
  missing_group_status: number;
}>("meta");

const graphs = new Map<number, GraphResponse>(
  Object.entries(rawGraphs).map(([id, raw]) => [Number(id), validateGraph(raw)]),
);

// the constructed selection target: the slot-0 group that shares two
// members with one neighbor and one with another
const analog = Object.values(groups).find(
  (g) => g.slot === 0 && g.members.includes("x") && g.members.includes("a1"),
) as GroupDetail;

function selectInFixture(label: string): ViewState {
  let s = setHierarchy(initialState(), groups[label]!.hierarchy);
  s = beginSelection(s, label);
  return applyOverlaps(s, label, s.seq, overlaps[label]!.overlaps);
}

function scenesWithSelection(state: ViewState): Scene[] {
  const sel = {
    selected: state.selected,
    highlights: new Map(state.highlights.map((h) => [h.label, h.count])),
  };
  return [...graphs.values()].map((g) => buildScene(g, sel));
}

describe("selection highlights exactly the overlaps the API reports", () => {
  it("the analog group lights its two same-slot neighbors with their counts", () => {
    const state = selectInFixture(analog.label);
    const reported = overlaps[analog.label]!.overlaps;
    expect(reported.length).toBe(2);

    // state holds precisely the API's labels and counts
    expect(state.highlights.map((h) => [h.label, h.count])).toEqual(
      reported.map((o) => [o.label, o.count]),
    );

    // rendered tags across every drawing: exactly those labels, "<n>" each
    const tagged = new Map<string, string>();
    for (const scene of scenesWithSelection(state)) {
      for (const n of scene.nodes) {
        if (n.highlight !== null) tagged.set(n.id, n.highlight);
      }
    }
    expect(tagged).toEqual(
      new Map(reported.map((o) => [o.label, `<${o.count}>`])),
    );

    // the selected node itself is marked, never tagged
    const sceneNodes = scenesWithSelection(state).flatMap((s) => s.nodes);
    const self = sceneNodes.find((n) => n.id === analog.label);
    expect(self?.selected).toBe(true);
    expect(self?.highlight).toBeNull();
  });

  it("counts in the overlap response equal the member intersections", () => {
    for (const [label, resp] of Object.entries(overlaps)) {
      const members = new Set(groups[label]!.members);
      for (const o of resp.overlaps) {
        const common = groups[o.label]!.members.filter((m) => members.has(m));
        expect(o.count).toBe(common.length);
        expect([...o.common_members].sort()).toEqual(common.sort());
        expect(groups[o.label]!.slot).toBe(groups[label]!.slot);
      }
    }
  });

  it("the pop-up lists members and the shared members per neighbor", () => {
    const lines = groupLines(analog, overlaps[analog.label]!.overlaps);
    expect(lines[0]).toBe(`${analog.label} [${analog.size}]`);
    expect(lines[1]).toBe(`members: ${analog.members.join(", ")}`);
    for (const o of overlaps[analog.label]!.overlaps) {
      expect(lines).toContain(
        `shares ${o.count} with ${o.label}: ${o.common_members.join(", ")}`,
      );
    }
  });

  it("a group overlapping nothing yields zero highlights", () => {
    const loner = Object.keys(overlaps).find(
      (label) => overlaps[label]!.overlaps.length === 0,
    )!;
    const state = selectInFixture(loner);
    expect(state.highlights).toEqual([]);
    for (const scene of scenesWithSelection(state)) {
      expect(scene.nodes.every((n) => n.highlight === null)).toBe(true);
    }
  });

  it("a vanished label maps to a cleared selection with a notice", () => {
    expect(meta.missing_group_status).toBe(404);
  });
});

describe("search centers the viewport and selects the hit", () => {
  it("centers on the found coordinates with zoom preserved", () => {
    const big = Object.values(groups).find((g) => g.size === 40)!;
    const hit = searches[big.label]!;
    expect(hit.hierarchy).toBe(big.hierarchy);

    // start zoomed into a different hierarchy, as the examples demand
    let state = setHierarchy(initialState(), analog.hierarchy);
    state = zoomAt(state, 1.8, 333, 111);
    const zoomBefore = state.viewport.zoom;

    state = setHierarchy(state, hit.hierarchy);
    state = centerOn(
      state,
      (hit.x as number) + NODE_W / 2,
      (hit.y as number) + NODE_H / 2,
      800,
      600,
    );
    state = beginSelection(state, hit.label);
    state = applyOverlaps(state, hit.label, state.seq, overlaps[hit.label]!.overlaps);

    expect(state.viewport.zoom).toBe(zoomBefore);
    const onScreen = worldToScreen(
      state.viewport,
      (hit.x as number) + NODE_W / 2,
      (hit.y as number) + NODE_H / 2,
    );
    expect(onScreen.x).toBeCloseTo(400, 9);
    expect(onScreen.y).toBeCloseTo(300, 9);
    expect(state.selected).toBe(hit.label);
    expect(state.hierarchy).toBe(hit.hierarchy);

    const scene = buildScene(graphs.get(hit.hierarchy)!, {
      selected: state.selected,
      highlights: new Map(),
    });
    expect(scene.nodes.find((n) => n.id === hit.label)?.selected).toBe(true);
  });

  it("search responses carry the drawn coordinates", () => {
    for (const [label, hit] of Object.entries(searches)) {
      const node = graphs
        .get(hit.hierarchy)!
        .nodes.find((n) => n.id === label)!;
      expect(hit.x).toBe(node.x);
      expect(hit.y).toBe(node.y);
      expect(hit.size).toBe(groups[label]!.size);
    }
  });

  it("trailing whitespace is normalized server-side", () => {
    expect(meta.trailing_space_status).toBe(200);
    expect(meta.trailing_space_label).toBe(
      Object.keys(groups).sort()[0],
    );
  });

  it("a miss is a 404, which the UI maps to an unchanged viewport", () => {
    expect(meta.search_miss_status).toBe(404);
    const before = zoomAt(initialState(), 1.4, 50, 50);
    const after = setNotice(before, 'no group named "999_0"');
    expect(after.viewport).toEqual(before.viewport);
    expect(after.notice).toBe('no group named "999_0"');
  });
});

describe("every rendered number matches an artifact field", () => {
  it("node labels, coordinates and glyphs come from the response", () => {
    for (const [hid, graph] of graphs) {
      const scene = buildScene(graph, NO_SELECTION);
      expect(scene.hierarchy).toBe(hid);
      for (const [i, n] of scene.nodes.entries()) {
        const raw = graph.nodes[i]!;
        expect(n.x).toBe(raw.x);
        expect(n.y).toBe(raw.y);
        if (raw.dummy) {
          expect(n.label).toBeNull();
          continue;
        }
        const detail = groups[raw.id]!;
        expect(n.label).toBe(`${raw.id} [${detail.size}]`);
        expect(raw.size).toBe(detail.size);
        expect(n.extOut).toBe(
          detail.flows.external_out > 0 ? String(detail.flows.external_out) : null,
        );
        expect(n.extIn).toBe(
          detail.flows.external_in > 0 ? String(detail.flows.external_in) : null,
        );
        expect(n.stable).toBe(detail.stable);
      }
    }
  });

  it("edge flow labels and pop-up measures come from the response", () => {
    for (const graph of graphs.values()) {
      const scene = buildScene(graph, NO_SELECTION);
      for (const [i, e] of scene.edges.entries()) {
        const raw = graph.edges[i]!;
        if (raw.transition === null) {
          expect(e.info).toBeNull();
          continue;
        }
        expect(e.info).toEqual({
          kind: raw.kind,
          mj: raw.mj,
          stability: raw.stability,
          flow: raw.flow,
        });
        if (e.flowLabel !== null) expect(e.flowLabel).toBe(String(raw.flow));
        expect(e.dashed).toBe(raw.style === "dashed");
        expect(transitionLines(e.info!)).toEqual([
          raw.kind,
          `mj ${measure(raw.mj!)}`,
          `stability ${measure(raw.stability!)}`,
          `flow ${raw.flow}`,
        ]);
      }
    }
  });

  it("a continuation between identical groups reads stability 1.00", () => {
    const edge = [...graphs.values()]
      .flatMap((g) => g.edges)
      .find((e) => e.kind === "continuation" && e.mj === 1)!;
    expect(transitionLines({ kind: edge.kind!, mj: edge.mj!, stability: edge.stability!, flow: edge.flow! })).toContain("stability 1.00");
  });

  it("the dashed addition edge reads stability 0.10", () => {
    const edge = [...graphs.values()]
      .flatMap((g) => g.edges)
      .find((e) => e.kind === "addition")!;
    expect(edge.style).toBe("dashed");
    expect(edge.stability!).toBeLessThanOrEqual(0.1);
    const lines = transitionLines({
      kind: edge.kind!,
      mj: edge.mj!,
      stability: edge.stability!,
      flow: edge.flow!,
    });
    expect(lines[0]).toBe("addition");
    expect(lines).toContain("stability 0.10");
  });

  it("pop-up flow numbers equal the group's flow fields", () => {
    for (const [label, detail] of Object.entries(groups)) {
      const lines = groupLines(detail, overlaps[label]!.overlaps);
      expect(lines[2]).toBe(
        `in ${detail.flows.inflow} +${detail.flows.external_in} external, ` +
          `out ${detail.flows.outflow} +${detail.flows.external_out} external`,
      );
    }
  });

  it("hierarchy list entries count their graph's real nodes", () => {
    for (const h of hierarchies) {
      const graph = graphs.get(h.id)!;
      const real = graph.nodes.filter((n) => !n.dummy);
      expect(h.group_count).toBe(real.length);
      expect(h.stable_count).toBe(
        real.filter((n) => groups[n.id]!.stable).length,
      );
      const layers = real.map((n) => groups[n.id]!.slot);
      expect(h.slot_min).toBe(Math.min(...layers));
      expect(h.slot_max).toBe(Math.max(...layers));
    }
  });

  it("slot stats agree with the groups listed per slot", () => {
    for (const [slot, stats] of Object.entries(slots)) {
      const inSlot = Object.values(groups).filter(
        (g) => g.slot === Number(slot),
      );
      expect(stats.group_count).toBe(inSlot.length);
      expect(stats.slot).toBe(Number(slot));
    }
  });
});
