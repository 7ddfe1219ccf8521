/**
 * Thin client over the service's HTTP + WebSocket API (see ../API.md).
 * The only configuration is the base URL.
 */

import type { DhRow } from "./fk.js";

export interface UiTelemetry {
  t: number;
  state: string;
  q: number[];
  ee: { x: number; y: number; z: number };
  sensor: { t: number; distance_mm: number; present: boolean };
  /** Active command token ("serve:rice", "stop", ...), empty string when none. */
  command: string;
}

export interface TranscriptResult {
  heard: string;
  matched: string | null;
  accepted: boolean;
  reason: string | null;
}

export interface MenuSlot {
  name: string;
  synonyms: string[];
  scoop_q: number[];
  approach_q: number[];
}

export interface MenuInfo {
  slots: MenuSlot[];
  mouth_q: number[];
  idle_q: number[];
  dh_rows: DhRow[];
  timing: Record<string, number>;
}

export interface StateInfo {
  now: number;
  state: string;
  serves_completed: number;
  frame: UiTelemetry | null;
}

export interface SessionOptions {
  clock?: "fast" | "realtime";
  seed?: number;
  dt?: number;
  trace_path?: string;
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const res = await fetch(url, init);
  if (!res.ok) {
    const detail = await res.text();
    throw new Error(`${init?.method ?? "GET"} ${url} -> ${res.status}: ${detail}`);
  }
  return (await res.json()) as T;
}

function post<T>(url: string, body: unknown): Promise<T> {
  return request<T>(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  startSession(opts: SessionOptions = {}): Promise<{ session_id: number; state: string }> {
    return post(`${this.baseUrl}/session`, { clock: "fast", ...opts });
  }

  async endSession(): Promise<void> {
    await request(`${this.baseUrl}/session`, { method: "DELETE" });
  }

  transcript(text: string): Promise<TranscriptResult> {
    return post(`${this.baseUrl}/transcript`, { text });
  }

  presence(present: boolean): Promise<{ accepted: boolean }> {
    return post(`${this.baseUrl}/presence`, { present });
  }

  advance(seconds: number): Promise<{ now: number; state: string }> {
    return post(`${this.baseUrl}/advance`, { seconds });
  }

  reset(): Promise<{ ok: boolean }> {
    return post(`${this.baseUrl}/reset`, {});
  }

  state(): Promise<StateInfo> {
    return request(`${this.baseUrl}/state`);
  }

  menu(): Promise<MenuInfo> {
    return request(`${this.baseUrl}/menu`);
  }

  async telemetryCsv(): Promise<string> {
    const res = await fetch(`${this.baseUrl}/telemetry.csv`);
    if (!res.ok) throw new Error(`telemetry.csv -> ${res.status}`);
    return res.text();
  }

  /**
   * Subscribe to the frame stream. The server replays the latest frame as a
   * snapshot on (re)connect, so dropping and redialing loses nothing the UI
   * cares about. Returns a disposer.
   */
  openTelemetry(onFrame: (f: UiTelemetry) => void, reconnectMs = 1000): () => void {
    const wsUrl = this.baseUrl.replace(/^http/, "ws") + "/telemetry";
    let closed = false;
    let socket: WebSocket | null = null;

    const dial = () => {
      if (closed) return;
      socket = new WebSocket(wsUrl);
      socket.onmessage = (ev) => onFrame(JSON.parse(ev.data as string) as UiTelemetry);
      socket.onclose = () => {
        if (!closed) setTimeout(dial, reconnectMs);
      };
    };
    dial();
    return () => {
      closed = true;
      socket?.close();
    };
  }
}

/** Parse a GET /telemetry.csv body into frames (header-checked). */
export function parseTelemetryCsv(text: string): UiTelemetry[] {
  const lines = text.trim().split("\n");
  const header = "t,state,q1,q2,q3,q4,q5,x,y,z,distance_mm,present,command";
  if (lines[0] !== header) throw new Error(`unexpected telemetry header: ${lines[0]}`);
  return lines.slice(1).map((line) => {
    const c = line.split(",");
    return {
      t: Number(c[0]),
      state: c[1],
      q: c.slice(2, 7).map(Number),
      ee: { x: Number(c[7]), y: Number(c[8]), z: Number(c[9]) },
      sensor: { t: Number(c[0]), distance_mm: Number(c[10]), present: c[11] === "1" },
      command: c[12] ?? "",
    };
  });
}
