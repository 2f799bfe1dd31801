import { ApiError, createApi } from "./api.js";
import { applyViewport, drawScene, wireViewport } from "./dom.js";
import { groupLines, transitionLines } from "./format.js";
import type { SceneEdge, SelectionView } from "./scene.js";
import { NODE_H, NODE_W, SchemaError, buildScene, validateGraph } from "./scene.js";
import * as st from "./state.js";
import type { GraphResponse, GroupDetail, HierarchySummary, OverlapEntry } from "./types.js";

const api = createApi();

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

const svg = byId<HTMLElement>("canvas") as unknown as SVGSVGElement;
const layer = svg.querySelector("g") as SVGGElement;
const sidebar = byId<HTMLUListElement>("hierarchy-list");
const noticeBox = byId<HTMLDivElement>("notice");
const banner = byId<HTMLDivElement>("banner");
const popup = byId<HTMLDivElement>("popup");
const searchInput = byId<HTMLInputElement>("search-input");

let state = st.initialState();
let hierarchies: HierarchySummary[] = [];
const graphs = new Map<number, GraphResponse>();
// data backing the selection pop-up, set only when both fetches landed
let popupData: { detail: GroupDetail; overlaps: OverlapEntry[] } | null = null;
let selectionFetch: AbortController | null = null;

function selectionView(): SelectionView {
  return {
    selected: state.selected,
    highlights: new Map(state.highlights.map((h) => [h.label, h.count])),
  };
}

function showBanner(message: string | null): void {
  banner.textContent = message ?? "";
  banner.style.display = message === null ? "none" : "block";
}

function hidePopup(): void {
  popup.style.display = "none";
}

function showPopupAt(lines: string[], x: number, y: number): void {
  popup.replaceChildren(
    ...lines.map((line) => {
      const div = document.createElement("div");
      div.textContent = line;
      return div;
    }),
  );
  popup.style.left = `${x}px`;
  popup.style.top = `${y}px`;
  popup.style.display = "block";
}

function render(): void {
  for (const item of sidebar.children) {
    const li = item as HTMLLIElement;
    li.classList.toggle("active", Number(li.dataset.id) === state.hierarchy);
  }
  noticeBox.textContent = state.notice ?? "";

  const graph = state.hierarchy === null ? undefined : graphs.get(state.hierarchy);
  if (graph !== undefined) {
    drawScene(layer, buildScene(graph, selectionView()), {
      onSelectNode: (id) => void selectGroup(id),
      onBackground: deselect,
      onEdgeEnter: showEdgePopup,
      onEdgeLeave: hidePopup,
    });
    applyViewport(layer, state.viewport);
  }

  if (state.selected !== null && popupData !== null && graph !== undefined) {
    const node = graph.nodes.find((n) => n.id === state.selected);
    if (node !== undefined) {
      const p = st.worldToScreen(state.viewport, node.x + NODE_W, node.y + NODE_H);
      const rect = svg.getBoundingClientRect();
      showPopupAt(
        groupLines(popupData.detail, popupData.overlaps),
        Math.min(rect.left + p.x + 10, rect.right - 240),
        Math.max(rect.top + p.y + 6, rect.top + 4),
      );
    }
  } else if (state.selected === null) {
    hidePopup();
  }
}

function showEdgePopup(edge: SceneEdge, clientX: number, clientY: number): void {
  if (edge.info === null) return;
  showPopupAt(transitionLines(edge.info), clientX + 12, clientY + 12);
}

function deselect(): void {
  selectionFetch?.abort();
  popupData = null;
  state = st.clearSelection(state);
  render();
}

async function selectGroup(label: string): Promise<void> {
  const next = st.beginSelection(state, label);
  if (next === state) return; // reselecting the selection is a no-op
  state = next;
  popupData = null;
  render();

  selectionFetch?.abort();
  const controller = new AbortController();
  selectionFetch = controller;
  const seq = state.seq;
  try {
    const [detail, overlaps] = await Promise.all([
      api.group(label, controller.signal),
      api.overlaps(label, controller.signal),
    ]);
    state = st.applyOverlaps(state, label, seq, overlaps.overlaps);
    if (state.selected === label && state.seq === seq) {
      popupData = { detail, overlaps: overlaps.overlaps };
    }
    render();
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") return;
    if (err instanceof ApiError && err.notFound) {
      // the label vanished between render and click
      state = st.clearSelection(state, `group ${label} no longer exists`);
    } else {
      state = st.setNotice(state, `loading ${label} failed, try again`);
    }
    render();
  }
}

async function loadHierarchy(id: number): Promise<boolean> {
  if (graphs.has(id)) return true;
  try {
    const raw = await api.graph(id);
    graphs.set(id, validateGraph(raw));
    showBanner(null);
    return true;
  } catch (err) {
    if (err instanceof SchemaError) {
      showBanner(`graph ${id} is malformed: ${err.message}`);
    } else {
      showBanner(`loading hierarchy ${id} failed: ${String(err)}`);
    }
    return false;
  }
}

async function activateHierarchy(id: number): Promise<void> {
  if (!(await loadHierarchy(id))) return;
  selectionFetch?.abort();
  popupData = null;
  state = st.setHierarchy(state, id);
  render();
}

async function runSearch(query: string): Promise<void> {
  const q = query.trim();
  if (q === "") return;
  let hit;
  try {
    hit = await api.search(q);
  } catch (err) {
    if (err instanceof ApiError && err.notFound) {
      state = st.setNotice(state, `no group named "${q}"`);
    } else {
      state = st.setNotice(state, "search failed: server unreachable, try again");
    }
    render();
    return;
  }
  if (hit.hierarchy !== state.hierarchy) {
    if (!(await loadHierarchy(hit.hierarchy))) return;
    state = st.setHierarchy(state, hit.hierarchy);
  }
  if (hit.x !== null && hit.y !== null) {
    const rect = svg.getBoundingClientRect();
    state = st.centerOn(
      state,
      hit.x + NODE_W / 2,
      hit.y + NODE_H / 2,
      rect.width,
      rect.height,
    );
  }
  render();
  await selectGroup(hit.label);
}

function wire(): void {
  wireViewport(svg, {
    onPan: (dx, dy) => {
      state = st.panBy(state, dx, dy);
      applyViewport(layer, state.viewport);
    },
    onZoom: (factor, sx, sy) => {
      state = st.zoomAt(state, factor, sx, sy);
      applyViewport(layer, state.viewport);
    },
    onBackground: deselect,
  });
  byId<HTMLButtonElement>("zoom-in").addEventListener("click", () => {
    const rect = svg.getBoundingClientRect();
    state = st.zoomAt(state, 1.25, rect.width / 2, rect.height / 2);
    applyViewport(layer, state.viewport);
  });
  byId<HTMLButtonElement>("zoom-out").addEventListener("click", () => {
    const rect = svg.getBoundingClientRect();
    state = st.zoomAt(state, 1 / 1.25, rect.width / 2, rect.height / 2);
    applyViewport(layer, state.viewport);
  });
  byId<HTMLFormElement>("search-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    void runSearch(searchInput.value);
  });
}

async function boot(): Promise<void> {
  wire();
  try {
    hierarchies = await api.hierarchies();
  } catch (err) {
    showBanner(`cannot load hierarchy list: ${String(err)}`);
    return;
  }
  sidebar.replaceChildren(
    ...hierarchies.map((h) => {
      const li = document.createElement("li");
      li.dataset.id = String(h.id);
      li.textContent =
        `hierarchy ${h.id}: ${h.group_count} groups ` +
        `(${h.stable_count} stable), slots ${h.slot_min}..${h.slot_max}`;
      li.addEventListener("click", () => void activateHierarchy(h.id));
      return li;
    }),
  );
  const first = hierarchies[0];
  if (first !== undefined) await activateHierarchy(first.id);
}

void boot();
