/**
 * Console-side session state: applies streamed frames in timestamp order
 * (stale frames from a reconnect snapshot are dropped) and measures
 * submit -> first-motion latency from the stream alone. No control
 * decisions happen here; the server is the single source of truth.
 */

import type { UiTelemetry } from "./api.js";

export interface LatencySample {
  command: string;
  submitted: number; // simulated seconds
  firstMotion: number;
  latency: number;
}

function qEqual(a: number[], b: number[]): boolean {
  return a.length === b.length && a.every((v, i) => v === b[i]);
}

export class AppState {
  latest: UiTelemetry | null = null;
  readonly latencies: LatencySample[] = [];
  private pendingSubmit: { command: string; t: number } | null = null;
  private listeners: Array<(f: UiTelemetry) => void> = [];

  onFrame(fn: (f: UiTelemetry) => void): void {
    this.listeners.push(fn);
  }

  /** Returns false when the frame was stale and dropped. */
  applyFrame(frame: UiTelemetry): boolean {
    if (this.latest !== null && frame.t <= this.latest.t) return false;
    if (
      this.pendingSubmit !== null &&
      this.latest !== null &&
      !qEqual(frame.q, this.latest.q)
    ) {
      const { command, t } = this.pendingSubmit;
      this.latencies.push({
        command,
        submitted: t,
        firstMotion: frame.t,
        latency: frame.t - t,
      });
      this.pendingSubmit = null;
    }
    this.latest = frame;
    for (const fn of this.listeners) fn(frame);
    return true;
  }

  /** Call when a serve command is accepted; arms the latency meter. */
  markSubmitted(command: string): void {
    if (this.latest === null) return;
    this.pendingSubmit = { command, t: this.latest.t };
  }

  meanLatency(): number | null {
    if (this.latencies.length === 0) return null;
    const sum = this.latencies.reduce((acc, s) => acc + s.latency, 0);
    return sum / this.latencies.length;
  }

  /** "HOLD" while the arm is presenting to a present user, else the state. */
  badge(): string {
    if (this.latest === null) return "—";
    if (this.latest.state === "Presenting" && this.latest.sensor.present) return "HOLD";
    return this.latest.state;
  }
}
