import type { Scene, SceneEdge } from "./scene.js";
import { NODE_H, NODE_W } from "./scene.js";
import type { Viewport } from "./state.js";

// Thin SVG layer: plants a scene into the DOM and wires raw events to
// the callbacks. No state of its own beyond the element references.

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function text(x: number, y: number, content: string, attrs: Record<string, string> = {}): SVGTextElement {
  const t = el("text", { x: String(x), y: String(y), ...attrs });
  t.textContent = content;
  return t;
}

export interface SceneHandlers {
  onSelectNode(id: string): void;
  onBackground(): void;
  onEdgeEnter(edge: SceneEdge, clientX: number, clientY: number): void;
  onEdgeLeave(): void;
}

export function applyViewport(layer: SVGGElement, v: Viewport): void {
  layer.setAttribute("transform", `translate(${v.x} ${v.y}) scale(${v.zoom})`);
}

/** Replace the layer's children with the scene's primitives. */
export function drawScene(
  layer: SVGGElement,
  scene: Scene,
  handlers: SceneHandlers,
): void {
  layer.replaceChildren();

  for (const e of scene.edges) {
    const line = el("line", {
      x1: String(e.x1),
      y1: String(e.y1),
      x2: String(e.x2),
      y2: String(e.y2),
      stroke: "#555",
      "stroke-width": "1.4",
      ...(e.dashed ? { "stroke-dasharray": "6,4" } : {}),
    });
    if (e.info !== null) {
      line.classList.add("edge-hit");
      line.addEventListener("mouseenter", (ev) =>
        handlers.onEdgeEnter(e, ev.clientX, ev.clientY),
      );
      line.addEventListener("mouseleave", () => handlers.onEdgeLeave());
    }
    layer.append(line);
    if (e.flowLabel !== null) {
      layer.append(
        text((e.x1 + e.x2) / 2, (e.y1 + e.y2) / 2 - 4, e.flowLabel, {
          fill: "#333",
          "font-size": "11",
          "text-anchor": "middle",
          "pointer-events": "none",
        }),
      );
    }
  }

  for (const n of scene.nodes) {
    if (n.dummy) {
      layer.append(
        el("circle", {
          cx: String(n.x + NODE_W / 2),
          cy: String(n.y + NODE_H / 2),
          r: "2.5",
          fill: "#bbb",
        }),
      );
      continue;
    }
    const g = el("g", { class: "node", "data-id": n.id });
    const fill = n.highlight !== null ? "#fff3c4" : n.selected ? "#dcecff" : "#e8f0fe";
    const stroke = n.selected ? "#d97706" : n.highlight !== null ? "#b8860b" : "#4a6da7";
    g.append(
      el("rect", {
        x: String(n.x),
        y: String(n.y),
        width: String(NODE_W),
        height: String(NODE_H),
        rx: "5",
        fill,
        stroke,
        "stroke-width": n.selected ? "2.5" : n.stable ? "1.8" : "1",
      }),
    );
    g.append(
      text(n.x + NODE_W / 2, n.y + NODE_H / 2 + 4, n.label ?? "", {
        "text-anchor": "middle",
        "font-size": "12",
        fill: "#1c2733",
      }),
    );
    if (n.highlight !== null) {
      g.append(
        text(n.x + NODE_W / 2, n.y - 5, n.highlight, {
          "text-anchor": "middle",
          "font-size": "12",
          "font-weight": "bold",
          fill: "#9a6a00",
        }),
      );
    }
    if (n.extOut !== null) {
      g.append(
        text(n.x + NODE_W + 3, n.y + 7, `↗${n.extOut}`, {
          fill: "#2d7d2d",
          "font-size": "11",
        }),
      );
    }
    if (n.extIn !== null) {
      g.append(
        text(n.x + NODE_W + 3, n.y + NODE_H + 2, `↘${n.extIn}`, {
          fill: "#2d7d2d",
          "font-size": "11",
        }),
      );
    }
    g.addEventListener("click", (ev) => {
      ev.stopPropagation();
      handlers.onSelectNode(n.id);
    });
    layer.append(g);
  }
}

/** Wire drag-to-pan and wheel-to-zoom on the svg root. */
export function wireViewport(
  svg: SVGSVGElement,
  hooks: {
    onPan(dx: number, dy: number): void;
    onZoom(factor: number, sx: number, sy: number): void;
    onBackground(): void;
  },
): void {
  let dragging = false;
  let moved = false;
  let lastX = 0;
  let lastY = 0;

  svg.addEventListener("mousedown", (ev) => {
    dragging = true;
    moved = false;
    lastX = ev.clientX;
    lastY = ev.clientY;
  });
  window.addEventListener("mousemove", (ev) => {
    if (!dragging) return;
    const dx = ev.clientX - lastX;
    const dy = ev.clientY - lastY;
    if (Math.abs(dx) + Math.abs(dy) > 0) moved = true;
    lastX = ev.clientX;
    lastY = ev.clientY;
    hooks.onPan(dx, dy);
  });
  window.addEventListener("mouseup", () => {
    dragging = false;
  });
  svg.addEventListener("click", (ev) => {
    // a drag that ends on the background is not a deselect click
    if (!moved && ev.target === svg) hooks.onBackground();
  });
  svg.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const rect = svg.getBoundingClientRect();
    const factor = ev.deltaY < 0 ? 1.15 : 1 / 1.15;
    hooks.onZoom(factor, ev.clientX - rect.left, ev.clientY - rect.top);
  });
}
