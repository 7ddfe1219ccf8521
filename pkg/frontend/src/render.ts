/**
 * 2D orthographic views of the arm. The chain is planar once the base yaw
 * is applied, so a top view (x/y) and a side view (horizontal reach/z) are
 * lossless. Geometry computation is pure; canvas drawing is a thin shell.
 */

import type { MenuInfo, UiTelemetry } from "./api.js";
import { chainPositions, type DhRow, type Vec3 } from "./fk.js";

export interface Projection {
  /** Polyline of [h, v] pairs in view coordinates (inches). */
  chain: Array<[number, number]>;
  tip: [number, number];
}

export function topView(rows: DhRow[], frame: UiTelemetry): Projection {
  const pts = chainPositions(rows, frame.q).map((p): [number, number] => [p[0], p[1]]);
  return { chain: pts, tip: pts[pts.length - 1] };
}

/** Side view: signed horizontal distance along the base-yaw ray, and height. */
export function sideView(rows: DhRow[], frame: UiTelemetry): Projection {
  const pts3 = chainPositions(rows, frame.q);
  const tip = pts3[pts3.length - 1];
  const yaw = Math.atan2(tip[1], tip[0]);
  const ux = Math.cos(yaw), uy = Math.sin(yaw);
  const project = (p: Vec3): [number, number] => [p[0] * ux + p[1] * uy, p[2]];
  const pts = pts3.map(project);
  return { chain: pts, tip: pts[pts.length - 1] };
}

const VIEW_EXTENT_IN = 25; // inches from origin to canvas edge

function toCanvas(
  [h, v]: [number, number],
  w: number,
  hgt: number,
): [number, number] {
  const scale = Math.min(w, hgt) / (2 * VIEW_EXTENT_IN);
  return [w / 2 + h * scale, hgt - 20 - v * scale];
}

export function drawProjection(
  ctx: CanvasRenderingContext2D,
  proj: Projection,
  markers: Array<[number, number]> = [],
): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);

  ctx.strokeStyle = "#2b6cb0";
  ctx.lineWidth = 3;
  ctx.beginPath();
  proj.chain.forEach((p, i) => {
    const [cx, cy] = toCanvas(p, width, height);
    if (i === 0) ctx.moveTo(cx, cy);
    else ctx.lineTo(cx, cy);
  });
  ctx.stroke();

  ctx.fillStyle = "#1a202c";
  for (const p of proj.chain) {
    const [cx, cy] = toCanvas(p, width, height);
    ctx.beginPath();
    ctx.arc(cx, cy, 4, 0, 2 * Math.PI);
    ctx.fill();
  }

  ctx.fillStyle = "#c05621";
  for (const m of markers) {
    const [cx, cy] = toCanvas(m, width, height);
    ctx.fillRect(cx - 5, cy - 5, 10, 10);
  }

  ctx.fillStyle = "#e53e3e";
  const [tx, ty] = toCanvas(proj.tip, width, height);
  ctx.beginPath();
  ctx.arc(tx, ty, 6, 0, 2 * Math.PI);
  ctx.fill();
}

/** Top-view markers for the food bowls and the mouth target. */
export function menuMarkers(menu: MenuInfo): Array<[number, number]> {
  const tips = [
    ...menu.slots.map((s) => chainPositions(menu.dh_rows, s.scoop_q)),
    chainPositions(menu.dh_rows, menu.mouth_q),
  ];
  return tips.map((pts) => {
    const tip = pts[pts.length - 1];
    return [tip[0], tip[1]];
  });
}
