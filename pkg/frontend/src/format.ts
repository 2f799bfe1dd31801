import type { GroupDetail, OverlapEntry } from "./types.js";

// All user-visible text built from API records. Numbers are copied,
// never recomputed; measures render with two decimals.

export function nodeLabel(id: string, size: number): string {
  return `${id} [${size}]`;
}

export function highlightTag(count: number): string {
  return `<${count}>`;
}

export function measure(value: number): string {
  return value.toFixed(2);
}

export interface TransitionInfo {
  kind: string;
  mj: number;
  stability: number;
  flow: number;
}

/** Pop-up lines for a hovered transition edge. */
export function transitionLines(t: TransitionInfo): string[] {
  return [
    t.kind,
    `mj ${measure(t.mj)}`,
    `stability ${measure(t.stability)}`,
    `flow ${t.flow}`,
  ];
}

/** Pop-up lines for a selected group plus its overlap response. */
export function groupLines(
  detail: GroupDetail,
  overlaps: OverlapEntry[],
): string[] {
  const lines = [
    nodeLabel(detail.label, detail.size),
    `members: ${detail.members.join(", ")}`,
    `in ${detail.flows.inflow} +${detail.flows.external_in} external, ` +
      `out ${detail.flows.outflow} +${detail.flows.external_out} external`,
  ];
  if (detail.events.length > 0) lines.push(`events: ${detail.events.join(", ")}`);
  for (const o of overlaps) {
    lines.push(`shares ${o.count} with ${o.label}: ${o.common_members.join(", ")}`);
  }
  if (overlaps.length === 0) lines.push("no same-slot overlaps");
  return lines;
}
