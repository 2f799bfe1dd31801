import type { OverlapEntry } from "./types.js";

// Pure view-state machine. Every transition returns a fresh state, so
// rendering stays a function of (graph data, ViewState) and nothing
// here ever touches the DOM or the network.

export interface Viewport {
  x: number; // pan offset in screen px
  y: number;
  zoom: number; // > 0 always
}

export interface Highlight {
  label: string;
  count: number;
  common: string[];
}

export interface ViewState {
  hierarchy: number | null;
  selected: string | null;
  // non-empty only while a selection exists
  highlights: Highlight[];
  viewport: Viewport;
  notice: string | null;
  // bumps on every new selection; stale overlap responses are dropped
  seq: number;
}

export const MIN_ZOOM = 0.1;
export const MAX_ZOOM = 8;

export function initialState(): ViewState {
  return {
    hierarchy: null,
    selected: null,
    highlights: [],
    viewport: { x: 0, y: 0, zoom: 1 },
    notice: null,
    seq: 0,
  };
}

export function setHierarchy(s: ViewState, id: number): ViewState {
  if (s.hierarchy === id) return s;
  return {
    ...s,
    hierarchy: id,
    selected: null,
    highlights: [],
    notice: null,
  };
}

/**
 * Start selecting a group. Highlights arrive later via applyOverlaps
 * once the fetch lands; reselecting the current group is a no-op.
 */
export function beginSelection(s: ViewState, label: string): ViewState {
  if (s.selected === label && s.notice === null) return s;
  return {
    ...s,
    selected: label,
    highlights: [],
    notice: null,
    seq: s.seq + 1,
  };
}

/**
 * Attach the overlap response for a selection. Responses from an
 * earlier selection (stale seq or different label) are ignored, so at
 * most the latest fetch ever shows.
 */
export function applyOverlaps(
  s: ViewState,
  label: string,
  seq: number,
  overlaps: OverlapEntry[],
): ViewState {
  if (seq !== s.seq || s.selected !== label) return s;
  return {
    ...s,
    highlights: overlaps.map((o) => ({
      label: o.label,
      count: o.count,
      common: o.common_members,
    })),
  };
}

export function clearSelection(
  s: ViewState,
  notice: string | null = null,
): ViewState {
  return { ...s, selected: null, highlights: [], notice };
}

export function setNotice(s: ViewState, notice: string | null): ViewState {
  return { ...s, notice };
}

// --- viewport ---

export function panBy(s: ViewState, dx: number, dy: number): ViewState {
  const v = s.viewport;
  return { ...s, viewport: { ...v, x: v.x + dx, y: v.y + dy } };
}

/** Zoom by a factor keeping the screen point (sx, sy) fixed. */
export function zoomAt(
  s: ViewState,
  factor: number,
  sx: number,
  sy: number,
): ViewState {
  const v = s.viewport;
  const zoom = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, v.zoom * factor));
  const ratio = zoom / v.zoom;
  return {
    ...s,
    viewport: {
      x: sx - (sx - v.x) * ratio,
      y: sy - (sy - v.y) * ratio,
      zoom,
    },
  };
}

/** Center the viewport on world point (wx, wy), keeping the zoom. */
export function centerOn(
  s: ViewState,
  wx: number,
  wy: number,
  viewWidth: number,
  viewHeight: number,
): ViewState {
  const zoom = s.viewport.zoom;
  return {
    ...s,
    viewport: {
      x: viewWidth / 2 - wx * zoom,
      y: viewHeight / 2 - wy * zoom,
      zoom,
    },
  };
}

export function worldToScreen(
  v: Viewport,
  wx: number,
  wy: number,
): { x: number; y: number } {
  return { x: wx * v.zoom + v.x, y: wy * v.zoom + v.y };
}
