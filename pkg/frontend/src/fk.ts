/**
 * Forward kinematics for the 5-joint arm, mirrored client-side so the
 * console can draw the chain from streamed joint angles alone. The D-H
 * rows arrive from GET /menu at startup; nothing is hard-coded here.
 *
 * Angles are degrees, lengths inches, matching the service.
 */

export interface DhRow {
  alpha_prev: number;
  a_prev: number;
  d: number;
  theta_home: number;
}

export type Vec3 = [number, number, number];
type Mat4 = number[][];

const DEG = Math.PI / 180;

const IDENTITY: Mat4 = [
  [1, 0, 0, 0],
  [0, 1, 0, 0],
  [0, 0, 1, 0],
  [0, 0, 0, 1],
];

function linkMatrix(row: DhRow, thetaDeg: number): Mat4 {
  const th = (thetaDeg + row.theta_home) * DEG;
  const al = row.alpha_prev * DEG;
  const ct = Math.cos(th), st = Math.sin(th);
  const ca = Math.cos(al), sa = Math.sin(al);
  return [
    [ct, -st, 0, row.a_prev],
    [st * ca, ct * ca, -sa, -sa * row.d],
    [st * sa, ct * sa, ca, ca * row.d],
    [0, 0, 0, 1],
  ];
}

function matmul(a: Mat4, b: Mat4): Mat4 {
  const out: Mat4 = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]];
  for (let i = 0; i < 4; i++) {
    for (let j = 0; j < 4; j++) {
      let s = 0;
      for (let k = 0; k < 4; k++) s += a[i][k] * b[k][j];
      out[i][j] = s;
    }
  }
  return out;
}

/**
 * Positions of the base and every joint frame origin, base first, tip last.
 * Length is rows.length + 1.
 */
export function chainPositions(rows: DhRow[], qDeg: number[]): Vec3[] {
  if (qDeg.length !== rows.length) {
    throw new Error(`expected ${rows.length} joint angles, got ${qDeg.length}`);
  }
  const points: Vec3[] = [[0, 0, 0]];
  let t = IDENTITY;
  for (let i = 0; i < rows.length; i++) {
    t = matmul(t, linkMatrix(rows[i], qDeg[i]));
    points.push([t[0][3], t[1][3], t[2][3]]);
  }
  return points;
}

/** End-effector position only. */
export function fkTip(rows: DhRow[], qDeg: number[]): Vec3 {
  const pts = chainPositions(rows, qDeg);
  return pts[pts.length - 1];
}
